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

#ifndef SPINMOD_CORRELATIONS_HPP
#define SPINMOD_CORRELATIONS_HPP

#include <complex>
#include <vector>

#include "spinmod/qsys.hpp"
#include "spinmod/trion.hpp"

namespace spinmod {

enum class CorrelationKind { g1, g2, g2_hom, raw_g1, raw_g2 };

// Uniform tau grid starting at 0.
struct TauGrid {
    double tau_max = 0.0;
    int n_points = 0;

    double step() const { return n_points > 1 ? tau_max / (n_points - 1) : 0.0; }
    double tau(int k) const { return step() * k; }
    std::vector<double> values() const;
};

struct CorrelationSeries {
    TauGrid grid;
    std::vector<complex> values;
    CorrelationKind kind = CorrelationKind::raw_g1;
    double normalization = 1.0; // steady-state intensity (g1) or its square (g2)
};

struct SpectrumSeries {
    std::vector<double> omega_grid; // rad/ns, offsets from the drive, ascending
    std::vector<double> values;     // spectral density, arb. units
};

struct HomodyneConfig {
    double alpha = 0.0;            // LO amplitude: I_LO/I_RSF = alpha^2 / <E_V^dag E_V>
    double phi_lo = 0.0;           // LO phase, radians, relative to the scattered-dipole quadrature
    double phase_noise_sigma = 0.0; // Gaussian jitter of the lock point, radians

    void validate() const;
};

// Generic quantum-regression two-time series on a uniform grid:
//   out[k] = Tr[readout * exp(L * tau_k) (start)]
// The grid interval is subdivided so the RK4 substep obeys the generator's
// step bound (or step_override when positive); the per-interval transfer
// matrix is precomputed once.
std::vector<complex> two_time_series(const Superoperator &liouv, const CMatrix &start,
                                     const CMatrix &readout, const TauGrid &grid,
                                     double step_override = 0.0);

// Steady-state V-port intensity <E_V^dag E_V>_ss for the given generator.
double steady_v_intensity(const TrionParams &p);

// G1(tau) = Tr[E_V^dag exp(L tau)(E_V rho_ss)], normalized by G1(0).
// Throws "no scattered field" when the steady V intensity vanishes.
// Grid precondition: step <= 0.05 * min(1/gamma, pi/(2 omega_b)).
CorrelationSeries g1(const TrionParams &p, const TauGrid &grid);

// G2(tau) = Tr[E_V^dag E_V exp(L tau)(E_V rho_ss E_V^dag)] / <E_V^dag E_V>^2.
CorrelationSeries g2(const TrionParams &p, const TauGrid &grid);

// As g2 with E_V replaced by E_tot = alpha u e^{i phi_lo} 1 + E_V, where the
// unit phasor u = <E_H>_ss/|<E_H>_ss| anchors phi_lo = 0 to the mean
// scattered-dipole quadrature (the experiment's fringe-locked reference).
// With phase_noise_sigma > 0 the result is the Gauss-Hermite average over the
// lock-point distribution.
CorrelationSeries g2_hom(const TrionParams &p, const HomodyneConfig &h, const TauGrid &grid);

// Uniform average of g2_hom over phi_lo in [0, 2pi); the unlocked measurement.
CorrelationSeries g2_hom_phase_averaged(const TrionParams &p, const HomodyneConfig &h,
                                        const TauGrid &grid);

// Unnormalized raw counterparts, for ensemble averaging.
CorrelationSeries raw_g1(const TrionParams &p, const TauGrid &grid);
CorrelationSeries raw_g2(const TrionParams &p, const TauGrid &grid);
CorrelationSeries raw_g2_hom(const TrionParams &p, const HomodyneConfig &h, const TauGrid &grid);

// S(omega) = (1/pi) Re int_0^inf G1(tau) e^{i omega tau} dtau, discrete
// transform with zero padding to >= pad_factor * n, trapezoid weighting at the
// origin. Accepts raw_g1 input whose tail has decayed below 2% of its peak;
// otherwise reports the required tau_max. Returned integral over omega equals
// G1(0).
SpectrumSeries spectrum(const CorrelationSeries &raw_g1_series, int pad_factor = 8);

// V(tau) = v0 * |g1(tau)|, 0 < v0 <= 1.
std::vector<double> visibility(const CorrelationSeries &g1_series, double v0);

} // namespace spinmod

#endif
