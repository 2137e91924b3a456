// Copyright 2026 The spinmod Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SPINMOD_ANALYSIS_HPP
#define SPINMOD_ANALYSIS_HPP

#include <optional>
#include <vector>

namespace spinmod {

// Curve estimators for oscillating correlation data. Deterministic, no fitting
// libraries: frequencies from interpolated zero crossings, envelopes from
// complex demodulation or oscillation peaks.

// Ordinary frequency (cycles per unit x) from the median spacing of linearly
// interpolated sign changes of y over [x_min, x_max]. Needs >= 2 crossings.
std::optional<double> frequency_from_zero_crossings(const std::vector<double> &x,
                                                    const std::vector<double> &y, double x_min,
                                                    double x_max);

// First linearly interpolated zero crossing of y at x >= x_min.
std::optional<double> first_zero_crossing(const std::vector<double> &x,
                                          const std::vector<double> &y, double x_min = 0.0);

// Envelope decay rate of the component of y oscillating at angular frequency
// w: demodulate with e^{+iwx}, low-pass with a one-period moving average, and
// fit log|.| linearly over [x_min, x_max]. Returns the decay rate (1/x units).
std::optional<double> demodulated_envelope_rate(const std::vector<double> &x,
                                                const std::vector<double> &y, double w,
                                                double x_min, double x_max);

// Local maxima of y (strict neighbors-below semantics with plateaus collapsed)
// above min_height, as (x, y) pairs. The point at index 0 is included if it
// dominates its right neighbor.
struct Peak {
    double x;
    double y;
};
std::vector<Peak> find_peaks(const std::vector<double> &x, const std::vector<double> &y,
                             double min_height = 0.0);

// First x at which the peak-interpolated envelope of |y| falls below
// y[0]/e. Uses log-linear interpolation between bracketing peaks.
std::optional<double> envelope_one_over_e_time(const std::vector<double> &x,
                                               const std::vector<double> &y_abs);

// Quadratic-interpolated position of the maximum nearest grid index i.
double parabolic_peak_position(const std::vector<double> &x, const std::vector<double> &y,
                               std::size_t i);

// Full width at half maximum of the peak at index i, via linear interpolation
// of the half-height crossings.
std::optional<double> fwhm_about_peak(const std::vector<double> &x, const std::vector<double> &y,
                                      std::size_t i);

// Intensity-weighted mean of (x, y >= 0).
double weighted_mean(const std::vector<double> &x, const std::vector<double> &y);

} // namespace spinmod

#endif
