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

#include "spinmod/ensemble.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <string>

#include "spinmod/errors.hpp"
#include "spinmod/threads.hpp"
#include "spinmod/units.hpp"

namespace spinmod {

void gauss_hermite_nodes(int n, std::vector<double> &nodes, std::vector<double> &weights) {
    if (n < 1) {
        throw config_error("gauss_hermite_nodes: n must be positive");
    }
    // Jacobi matrix of the probabilists' Hermite recurrence: off-diagonal sqrt(k).
    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) {
        jacobi(k - 1, k) = std::sqrt(static_cast<double>(k));
        jacobi(k, k - 1) = jacobi(k - 1, k);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi);
    nodes.resize(n);
    weights.resize(n);
    double sum = 0.0;
    for (int k = 0; k < n; ++k) {
        nodes[k] = es.eigenvalues()(k);
        weights[k] = es.eigenvectors()(0, k) * es.eigenvectors()(0, k);
        sum += weights[k];
    }
    for (auto &w : weights) {
        w /= sum;
    }
}

double JitterModel::sigma() const { return fwhm / (2.0 * std::sqrt(2.0 * std::log(2.0))); }

void JitterModel::validate() const {
    if (fwhm < 0) {
        throw config_error("JitterModel: fwhm must be nonnegative");
    }
    if (n_samples < 3) {
        throw config_error("JitterModel: n_samples must be >= 3");
    }
}

void DetectorModel::validate() const {
    if (jitter_sigma < 0) {
        throw config_error("DetectorModel: jitter_sigma must be nonnegative");
    }
    if (efficiency < 0 || efficiency > 1) {
        throw config_error("DetectorModel: efficiency must be in [0, 1]");
    }
    if (bin_width <= 0) {
        throw config_error("DetectorModel: bin_width must be positive");
    }
}

namespace {

CorrelationSeries member_raw(const TrionParams &p, ObservableKind kind, const TauGrid &grid,
                             const std::optional<HomodyneConfig> &hom) {
    switch (kind) {
        case ObservableKind::g1:
            return raw_g1(p, grid);
        case ObservableKind::g2:
            return raw_g2(p, grid);
        case ObservableKind::g2_hom:
            if (!hom) {
                throw config_error("ensemble: g2_hom observable needs a HomodyneConfig");
            }
            return raw_g2_hom(p, *hom, grid);
    }
    throw config_error("ensemble: unknown observable");
}

CorrelationSeries member_normalized(const TrionParams &p, ObservableKind kind, const TauGrid &grid,
                                    const std::optional<HomodyneConfig> &hom, bool phase_averaged) {
    switch (kind) {
        case ObservableKind::g1:
            return g1(p, grid);
        case ObservableKind::g2:
            return g2(p, grid);
        case ObservableKind::g2_hom:
            if (!hom) {
                throw config_error("ensemble: g2_hom observable needs a HomodyneConfig");
            }
            return phase_averaged ? g2_hom_phase_averaged(p, *hom, grid) : g2_hom(p, *hom, grid);
    }
    throw config_error("ensemble: unknown observable");
}

void check_detuning_samples(const TrionParams &p, const JitterModel &j) {
    const double required = 8.0 * j.fwhm / std::max(p.gamma, 1e-30);
    if (static_cast<double>(j.n_samples) < required) {
        throw config_error("average_over_detuning: n_samples " + std::to_string(j.n_samples) +
                           " too small for fwhm/gamma; need >= " +
                           std::to_string(static_cast<int>(std::ceil(required))));
    }
}

} // namespace

CorrelationSeries average_over_detuning(const TrionParams &p, const JitterModel &j,
                                        ObservableKind kind, const TauGrid &grid,
                                        const std::optional<HomodyneConfig> &hom) {
    j.validate();
    if (j.kind != JitterKind::gaussian_detuning) {
        throw config_error("average_over_detuning: jitter kind must be gaussian_detuning");
    }
    if (j.fwhm == 0) {
        CorrelationSeries out = member_raw(p, kind, grid, hom);
        const double denom = kind == ObservableKind::g1 ? out.normalization
                                                        : out.normalization * out.normalization;
        for (auto &v : out.values) {
            v /= denom;
        }
        out.kind = kind == ObservableKind::g1 ? CorrelationKind::g1 : CorrelationKind::g2;
        return out;
    }
    check_detuning_samples(p, j);

    std::vector<double> nodes, weights;
    gauss_hermite_nodes(j.n_samples, nodes, weights);

    std::vector<CorrelationSeries> members(nodes.size());
    parallel_for_index(nodes.size(), [&](std::size_t k) {
        TrionParams pk = p;
        pk.delta = p.delta + j.sigma() * nodes[k];
        members[k] = member_raw(pk, kind, grid, hom);
    });

    CorrelationSeries acc = members[0];
    for (auto &v : acc.values) {
        v *= weights[0];
    }
    double intensity = weights[0] * members[0].normalization;
    for (std::size_t k = 1; k < members.size(); ++k) {
        for (std::size_t i = 0; i < acc.values.size(); ++i) {
            acc.values[i] += weights[k] * members[k].values[i];
        }
        intensity += weights[k] * members[k].normalization;
    }
    const double denom =
        kind == ObservableKind::g1 ? intensity : intensity * intensity;
    for (auto &v : acc.values) {
        v /= denom;
    }
    acc.kind = kind == ObservableKind::g1 ? CorrelationKind::g1 : CorrelationKind::g2;
    acc.normalization = denom;
    return acc;
}

SpectrumSeries average_spectrum_over_detuning(const TrionParams &p, const JitterModel &j,
                                              const TauGrid &grid) {
    j.validate();
    if (j.kind != JitterKind::gaussian_detuning) {
        throw config_error("average_spectrum_over_detuning: jitter kind must be gaussian_detuning");
    }
    if (j.fwhm == 0) {
        return spectrum(raw_g1(p, grid));
    }
    check_detuning_samples(p, j);
    std::vector<double> nodes, weights;
    gauss_hermite_nodes(j.n_samples, nodes, weights);
    std::vector<CorrelationSeries> members(nodes.size());
    parallel_for_index(nodes.size(), [&](std::size_t k) {
        TrionParams pk = p;
        pk.delta = p.delta + j.sigma() * nodes[k];
        members[k] = raw_g1(pk, grid);
    });
    CorrelationSeries acc = members[0];
    for (auto &v : acc.values) {
        v *= weights[0];
    }
    for (std::size_t k = 1; k < members.size(); ++k) {
        for (std::size_t i = 0; i < acc.values.size(); ++i) {
            acc.values[i] += weights[k] * members[k].values[i];
        }
    }
    return spectrum(acc);
}

CorrelationSeries average_over_overhauser(const TrionParams &p, const JitterModel &j,
                                          ObservableKind kind, const TauGrid &grid,
                                          const std::optional<HomodyneConfig> &hom,
                                          bool phase_averaged) {
    j.validate();
    if (j.kind != JitterKind::gaussian_overhauser) {
        throw config_error("average_over_overhauser: jitter kind must be gaussian_overhauser");
    }
    if (p.markovian_rate() > 0) {
        throw config_error("average_over_overhauser: Markovian spin dephasing must be zero "
                           "(double counting)");
    }
    const double sigma_oh = j.fwhm == 0 ? p.overhauser_sigma() : j.sigma();
    if (sigma_oh == 0) {
        return member_normalized(with_overhauser_shift(p, 0.0), kind, grid, hom, phase_averaged);
    }

    std::vector<double> nodes, weights;
    gauss_hermite_nodes(j.n_samples, nodes, weights);

    std::vector<CorrelationSeries> members(nodes.size());
    parallel_for_index(nodes.size(), [&](std::size_t k) {
        members[k] = member_normalized(with_overhauser_shift(p, sigma_oh * nodes[k]), kind, grid,
                                       hom, phase_averaged);
    });

    CorrelationSeries acc = members[0];
    for (auto &v : acc.values) {
        v *= weights[0];
    }
    for (std::size_t k = 1; k < members.size(); ++k) {
        for (std::size_t i = 0; i < acc.values.size(); ++i) {
            acc.values[i] += weights[k] * members[k].values[i];
        }
    }
    return acc;
}

SpectrumSeries average_spectrum_over_overhauser(const TrionParams &p, const JitterModel &j,
                                                const TauGrid &grid) {
    j.validate();
    if (j.kind != JitterKind::gaussian_overhauser) {
        throw config_error("average_spectrum_over_overhauser: jitter kind must be gaussian_overhauser");
    }
    if (p.markovian_rate() > 0) {
        throw config_error("average_spectrum_over_overhauser: Markovian spin dephasing must be zero");
    }
    const double sigma_oh = j.fwhm == 0 ? p.overhauser_sigma() : j.sigma();
    std::vector<double> nodes, weights;
    gauss_hermite_nodes(j.n_samples, nodes, weights);
    std::vector<CorrelationSeries> members(nodes.size());
    parallel_for_index(nodes.size(), [&](std::size_t k) {
        members[k] = raw_g1(with_overhauser_shift(p, sigma_oh * nodes[k]), grid);
    });
    CorrelationSeries acc = members[0];
    for (auto &v : acc.values) {
        v *= weights[0];
    }
    for (std::size_t k = 1; k < members.size(); ++k) {
        for (std::size_t i = 0; i < acc.values.size(); ++i) {
            acc.values[i] += weights[k] * members[k].values[i];
        }
    }
    return spectrum(acc);
}

CorrelationSeries convolve_detector_jitter(const CorrelationSeries &series,
                                           const DetectorModel &d) {
    d.validate();
    if (d.jitter_sigma == 0) {
        return series;
    }
    const double dt = series.grid.step();
    if (dt > 0.5 * d.jitter_sigma) {
        throw config_error("convolve_detector_jitter: grid step " + std::to_string(dt) +
                           " ns too coarse for jitter_sigma " + std::to_string(d.jitter_sigma) +
                           " ns; need step <= jitter_sigma / 2");
    }
    // Pair timing response: two independent detectors, sigma_pair = sqrt(2) sigma.
    const double sigma = std::sqrt(2.0) * d.jitter_sigma;
    const int half = static_cast<int>(std::ceil(5.0 * sigma / dt));
    std::vector<double> kernel(2 * half + 1);
    double sum = 0.0;
    for (int k = -half; k <= half; ++k) {
        const double x = k * dt / sigma;
        kernel[k + half] = std::exp(-0.5 * x * x);
        sum += kernel[k + half];
    }
    for (auto &v : kernel) {
        v /= sum;
    }

    const int n = static_cast<int>(series.values.size());
    CorrelationSeries out = series;
    for (int i = 0; i < n; ++i) {
        complex acc(0.0, 0.0);
        for (int k = -half; k <= half; ++k) {
            int idx = i + k;
            if (idx < 0) {
                idx = -idx; // even extension: correlations are symmetric in tau
            }
            if (idx >= n) {
                idx = n - 1; // constant extension at the far edge
            }
            acc += kernel[k + half] * series.values[idx];
        }
        out.values[i] = acc;
    }
    return out;
}

DetuningScan detuning_scan(const TrionParams &p, const std::vector<double> &deltas,
                           const TauGrid &grid) {
    if (deltas.empty()) {
        throw config_error("detuning_scan: empty detuning list");
    }
    DetuningScan scan;
    scan.deltas = deltas;
    scan.spectra.resize(deltas.size());
    scan.v_intensity.resize(deltas.size());
    parallel_for_index(deltas.size(), [&](std::size_t k) {
        TrionParams pk = p;
        pk.delta = deltas[k];
        CorrelationSeries raw = raw_g1(pk, grid);
        scan.v_intensity[k] = raw.normalization;
        scan.spectra[k] = spectrum(raw);
    });
    return scan;
}

} // namespace spinmod
