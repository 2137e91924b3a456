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

#ifndef SPINMOD_ENSEMBLE_HPP
#define SPINMOD_ENSEMBLE_HPP

#include <optional>
#include <vector>

#include "spinmod/correlations.hpp"
#include "spinmod/quadrature.hpp"
#include "spinmod/trion.hpp"

namespace spinmod {

// Classical quasi-static averaging: the noise parameter is frozen during each
// scattering event and Gaussian-distributed across the acquisition.

enum class JitterKind { gaussian_detuning, gaussian_overhauser };

struct JitterModel {
    JitterKind kind = JitterKind::gaussian_detuning;
    double fwhm = 0.0;  // rad/ns (FWHM of the Gaussian; sigma = fwhm/2.355)
    int n_samples = 21; // Gauss-Hermite nodes, >= 3

    double sigma() const;
    void validate() const;
};

struct DetectorModel {
    double jitter_sigma = 0.0; // ns, Gaussian timing response (per detector)
    double efficiency = 1.0;   // in [0, 1]
    double bin_width = 0.256;  // ns

    void validate() const;
};

enum class ObservableKind { g1, g2, g2_hom };

// Spectral-jitter average over the QD-laser detuning. Unnormalized member
// correlations are averaged with Gaussian weights, then normalized by the
// averaged intensity (g1) or its square (g2-type): the quasi-static baseline
// <I^2>/<I>^2 > 1 is the bunching the ensemble produces.
// Requires n_samples >= 8 * fwhm / gamma.
CorrelationSeries average_over_detuning(const TrionParams &p, const JitterModel &j,
                                        ObservableKind kind, const TauGrid &grid,
                                        const std::optional<HomodyneConfig> &hom = std::nullopt);

// Detuning-averaged spectrum: Gaussian-weighted average of the raw G1 members,
// transformed once.
SpectrumSeries average_spectrum_over_detuning(const TrionParams &p, const JitterModel &j,
                                              const TauGrid &grid);

// Overhauser average: members at omega_b -> omega_b + delta/2 with the
// precession-frequency shift delta ~ N(0, sigma^2); each member is normalized
// before the equal-weight Gauss-Hermite average, which realizes the exact
// Gaussian envelope exp(-(sigma tau)^2/2) on the oscillation. Members carry no
// Markovian spin dephasing; a nonzero Markovian rate in p is rejected
// (double counting).
CorrelationSeries average_over_overhauser(const TrionParams &p, const JitterModel &j,
                                          ObservableKind kind, const TauGrid &grid,
                                          const std::optional<HomodyneConfig> &hom = std::nullopt,
                                          bool phase_averaged = false);

// Raw (unnormalized) G1 averaged over the Overhauser ensemble with per-member
// normalization removed afterwards is not meaningful; for spectra the members'
// raw G1 are averaged with their intensities (spectra add incoherently).
SpectrumSeries average_spectrum_over_overhauser(const TrionParams &p, const JitterModel &j,
                                                const TauGrid &grid);

// Convolution with the pair-detector Gaussian timing response of standard
// deviation sqrt(2)*jitter_sigma (two independent detectors). Even extension
// at tau = 0, constant extension at tau_max; grid unchanged.
// Requires grid step <= jitter_sigma / 2.
CorrelationSeries convolve_detector_jitter(const CorrelationSeries &series,
                                           const DetectorModel &d);

struct DetuningScan {
    std::vector<double> deltas;          // rad/ns
    std::vector<SpectrumSeries> spectra; // common omega grid
    std::vector<double> v_intensity;     // per-delta steady V-port intensity
};

DetuningScan detuning_scan(const TrionParams &p, const std::vector<double> &deltas,
                           const TauGrid &grid);

} // namespace spinmod

#endif
