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

#include "spinmod/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>

#include "spinmod/correlator.hpp"
#include "spinmod/errors.hpp"
#include "spinmod/timetag_io.hpp"
#include "spinmod/trajectory.hpp"
#include "spinmod/units.hpp"

namespace spinmod {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void echo_config(ResultTable &table, const RunConfig &cfg, const std::string &scenario) {
    table.add_metadata("spinmod.version", SPINMOD_VERSION);
    table.add_metadata("spinmod.scenario", scenario);
    for (const auto &[key, value] : cfg.to_key_values()) {
        table.add_metadata(key, value);
    }
}

JitterModel overhauser_model(const ResolvedRun &run) {
    JitterModel j;
    j.kind = JitterKind::gaussian_overhauser;
    j.fwhm = 0.0; // sigma taken from the params' quasistatic entry
    j.n_samples = run.overhauser_samples;
    return j;
}

// Normalized g1 plus the member intensity for the configured spin model.
std::pair<CorrelationSeries, double> g1_with_intensity(const ResolvedRun &run,
                                                       const TrionParams &p) {
    if (p.is_quasistatic()) {
        JitterModel j = overhauser_model(run);
        CorrelationSeries s = average_over_overhauser(p, j, ObservableKind::g1, run.grid);
        const double intensity = steady_v_intensity(with_overhauser_shift(p, 0.0));
        return {std::move(s), intensity};
    }
    CorrelationSeries s = g1(p, run.grid);
    const double intensity = s.normalization;
    return {std::move(s), intensity};
}

CorrelationSeries scenario_g2(const ResolvedRun &run, const TrionParams &p) {
    if (p.is_quasistatic()) {
        return average_over_overhauser(p, overhauser_model(run), ObservableKind::g2, run.grid);
    }
    return g2(p, run.grid);
}

std::vector<double> abs_values(const CorrelationSeries &s) {
    std::vector<double> out(s.values.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = std::abs(s.values[i]);
    }
    return out;
}

std::vector<double> real_values(const CorrelationSeries &s) {
    std::vector<double> out(s.values.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = s.values[i].real();
    }
    return out;
}

} // namespace

ResultTable run_mzi(const RunConfig &cfg) {
    const RunConfig canonical = canonicalize(cfg);
    const ResolvedRun run = resolve(canonical);
    ResultTable table;
    echo_config(table, canonical, "mzi");

    CorrelationSeries g1_series;
    if (run.jitter_enabled) {
        // spectral-jitter average; members use the configured spin model
        if (run.params.is_quasistatic()) {
            // outer detuning average over per-member (Overhauser-averaged)
            // normalized curves weighted by member intensity
            std::vector<double> nodes, weights;
            gauss_hermite_nodes(run.detuning_jitter.n_samples, nodes, weights);
            CorrelationSeries acc;
            double intensity_acc = 0.0;
            for (std::size_t k = 0; k < nodes.size(); ++k) {
                TrionParams pk = run.params;
                pk.delta = run.params.delta + run.detuning_jitter.sigma() * nodes[k];
                auto [member, intensity] = g1_with_intensity(run, pk);
                const double w = weights[k] * intensity;
                if (acc.values.empty()) {
                    acc = member;
                    for (auto &v : acc.values) {
                        v *= w;
                    }
                } else {
                    for (std::size_t i = 0; i < acc.values.size(); ++i) {
                        acc.values[i] += w * member.values[i];
                    }
                }
                intensity_acc += w;
            }
            for (auto &v : acc.values) {
                v /= intensity_acc;
            }
            g1_series = std::move(acc);
        } else {
            g1_series = average_over_detuning(run.params, run.detuning_jitter, ObservableKind::g1,
                                              run.grid);
        }
    } else {
        g1_series = g1_with_intensity(run, run.params).first;
    }

    table.add_column("tau_ns", run.grid.values());
    table.add_column("g1_abs", abs_values(g1_series));
    table.add_column("visibility", visibility(g1_series, run.v0));
    return table;
}

ResultTable run_spectrum(const RunConfig &cfg) {
    const RunConfig canonical = canonicalize(cfg);
    const ResolvedRun run = resolve(canonical);
    ResultTable table;
    echo_config(table, canonical, "spectrum");

    const bool si = run.units == "si";
    const double gamma = run.params.gamma;

    std::vector<SpectrumSeries> spectra(run.deltas.size());
    std::vector<double> intensities(run.deltas.size());
    for (std::size_t k = 0; k < run.deltas.size(); ++k) {
        TrionParams pk = run.params;
        pk.delta = run.deltas[k];
        const TrionParams member =
            pk.is_quasistatic() ? with_overhauser_shift(pk, 0.0) : pk;
        intensities[k] = steady_v_intensity(member);
        if (run.jitter_enabled) {
            TrionParams base = pk.is_quasistatic() ? with_overhauser_shift(pk, 0.0) : pk;
            spectra[k] = average_spectrum_over_detuning(base, run.detuning_jitter, run.grid);
        } else if (pk.is_quasistatic()) {
            spectra[k] = average_spectrum_over_overhauser(pk, overhauser_model(run), run.grid);
        } else {
            spectra[k] = spectrum(raw_g1(pk, run.grid));
        }
    }

    // emit a window around the features rather than the full FFT range
    const double omega_cut = std::max(3.0 * gamma, 6.0 * run.params.omega_b + 2.0 * gamma);
    const auto &w_all = spectra[0].omega_grid;
    std::vector<double> omega_col;
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < w_all.size(); ++i) {
        if (std::abs(w_all[i]) <= omega_cut) {
            keep.push_back(i);
            omega_col.push_back(si ? units::ghz_from_rad_per_ns(w_all[i]) : w_all[i] / gamma);
        }
    }
    table.add_column(si ? "omega_ghz" : "omega_over_gamma", std::move(omega_col));
    for (std::size_t k = 0; k < run.deltas.size(); ++k) {
        std::vector<double> col;
        col.reserve(keep.size());
        for (std::size_t i : keep) {
            col.push_back(spectra[k].values[i]);
        }
        char name[64];
        std::snprintf(name, sizeof(name), "s_delta_%+.3f", run.deltas[k] / gamma);
        table.add_column(name, std::move(col));
        table.add_metadata(std::string("intensity.") + name, fmt(intensities[k]));
    }
    return table;
}

ResultTable run_hbt(const RunConfig &cfg) {
    const RunConfig canonical = canonicalize(cfg);
    const ResolvedRun run = resolve(canonical);
    ResultTable table;
    echo_config(table, canonical, "hbt");

    const CorrelationSeries base = scenario_g2(run, run.params);
    const CorrelationSeries jittered = convolve_detector_jitter(base, run.detector);
    // spectral-jitter column; the Overhauser spread is immaterial for the
    // dip/plateau shape, so quasistatic runs use the central member
    const TrionParams ensemble_base = run.params.is_quasistatic()
                                          ? with_overhauser_shift(run.params, 0.0)
                                          : run.params;
    const CorrelationSeries ensemble = average_over_detuning(
        ensemble_base, run.detuning_jitter, ObservableKind::g2, run.grid);

    table.add_column("tau_ns", run.grid.values());
    table.add_column("g2", real_values(base));
    table.add_column("g2_jittered", real_values(jittered));
    table.add_column("g2_ensemble", real_values(ensemble));
    return table;
}

ResultTable run_homodyne(const RunConfig &cfg) {
    const RunConfig canonical = canonicalize(cfg);
    const ResolvedRun run = resolve(canonical);
    ResultTable table;
    echo_config(table, canonical, "homodyne");
    table.add_column("tau_ns", run.grid.values());

    auto compute = [&](double phi, bool averaged) {
        const HomodyneConfig h = make_homodyne(run, phi);
        if (run.params.is_quasistatic()) {
            return average_over_overhauser(run.params, overhauser_model(run),
                                           ObservableKind::g2_hom, run.grid, h, averaged);
        }
        return averaged ? g2_hom_phase_averaged(run.params, h, run.grid)
                        : g2_hom(run.params, h, run.grid);
    };

    for (double phi : run.phi_lo) {
        char name[64];
        std::snprintf(name, sizeof(name), "g2_hom_phi_%.4f", phi);
        table.add_column(name, real_values(compute(phi, false)));
    }
    if (run.phase_averaged) {
        table.add_column("g2_hom_avg", real_values(compute(0.0, true)));
    }
    return table;
}

ResultTable run_trajectories(const RunConfig &cfg, const std::string &out_dir) {
    const RunConfig canonical = canonicalize(cfg);
    const ResolvedRun run = resolve(canonical);
    ResultTable table;
    echo_config(table, canonical, "trajectories");

    TrajectoryConfig tc;
    tc.n_trajectories = run.trajectories_n;
    tc.duration = run.trajectories_segment_ns;
    tc.dt = run.trajectories_dt_ns;
    tc.seed = run.seed;
    if (run.trajectories_detection == "homodyne") {
        tc.detection = HomodyneDetection{make_homodyne(run, run.phi_lo.empty() ? 0.0 : run.phi_lo[0])};
    } else {
        tc.detection = HbtDetection{};
    }

    const TimeTagStream stream = simulate_stream(run.params, tc, run.detector);
    if (!out_dir.empty()) {
        write_tags(stream, out_dir + "/timetags.ttag");
        table.add_metadata("timetags.path", out_dir + "/timetags.ttag");
    }

    const double tau_max = std::min(run.grid.tau_max, tc.duration / 10.0);
    const CoincidenceHistogram hist = correlate(stream, run.detector.bin_width, tau_max);
    const StreamStatistics stats = stream_statistics(stream, tau_max);
    table.add_metadata("stream.counts_a", std::to_string(stats.counts_a));
    table.add_metadata("stream.counts_b", std::to_string(stats.counts_b));
    table.add_metadata("stream.rate_a_per_ns", fmt(stats.rate_a));
    table.add_metadata("stream.rate_b_per_ns", fmt(stats.rate_b));

    std::vector<double> lag(hist.counts.size()), counts(hist.counts.size());
    for (std::size_t i = 0; i < hist.counts.size(); ++i) {
        lag[i] = hist.lag(static_cast<int>(i));
        counts[i] = static_cast<double>(hist.counts[i]);
    }
    table.add_column("tau_ns", std::move(lag));
    table.add_column("counts", std::move(counts));
    table.add_column("g2_norm", hist.normalized());
    return table;
}

ResultTable run_scenario(const std::string &name, const RunConfig &cfg,
                         const std::string &out_dir) {
    if (name == "mzi") {
        return run_mzi(cfg);
    }
    if (name == "spectrum") {
        return run_spectrum(cfg);
    }
    if (name == "hbt") {
        return run_hbt(cfg);
    }
    if (name == "homodyne") {
        return run_homodyne(cfg);
    }
    if (name == "trajectories") {
        return run_trajectories(cfg, out_dir);
    }
    throw config_error("unknown scenario '" + name + "'");
}

} // namespace spinmod
