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

#include "spinmod/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "spinmod/errors.hpp"
#include "spinmod/units.hpp"

namespace spinmod {

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt_list(const std::vector<double> &vs) {
    std::string out;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (i) {
            out += ",";
        }
        out += fmt_double(vs[i]);
    }
    return out;
}

double parse_double(const std::string &key, const std::string &value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        while (pos < value.size() && std::isspace(static_cast<unsigned char>(value[pos]))) {
            ++pos;
        }
        if (pos != value.size()) {
            throw std::invalid_argument("trailing");
        }
        return v;
    } catch (const std::exception &) {
        throw config_error("config: bad number for " + key + ": '" + value + "'");
    }
}

int parse_int(const std::string &key, const std::string &value) {
    const double v = parse_double(key, value);
    if (v != std::floor(v)) {
        throw config_error("config: expected integer for " + key);
    }
    return static_cast<int>(v);
}

bool parse_bool(const std::string &key, const std::string &value) {
    if (value == "true" || value == "1") {
        return true;
    }
    if (value == "false" || value == "0") {
        return false;
    }
    throw config_error("config: expected true/false for " + key);
}

std::vector<double> parse_list(const std::string &key, const std::string &value) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        out.push_back(parse_double(key, item));
    }
    if (out.empty()) {
        throw config_error("config: empty list for " + key);
    }
    return out;
}

std::string trim(const std::string &s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) {
        ++a;
    }
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) {
        --b;
    }
    return s.substr(a, b - a);
}

} // namespace

std::map<std::string, std::string> RunConfig::to_key_values() const {
    std::map<std::string, std::string> kv;
    kv["preset"] = preset;
    kv["model.t1_ps"] = fmt_double(model_t1_ps);
    kv["model.larmor_mhz"] = fmt_double(model_larmor_mhz);
    kv["model.trion_larmor_mhz"] = fmt_double(model_trion_larmor_mhz);
    kv["model.delta_mhz"] = fmt_double(model_delta_mhz);
    kv["model.p_over_psat"] = fmt_double(model_p_over_psat);
    kv["model.rabi_over_gamma"] = fmt_double(model_rabi_over_gamma);
    kv["model.opt_deph_over_gamma"] = fmt_double(model_opt_deph_over_gamma);
    kv["model.spin_dephasing"] = model_spin_dephasing;
    kv["model.t2star_ns"] = fmt_double(model_t2star_ns);
    kv["model.overhauser_samples"] = std::to_string(model_overhauser_samples);
    kv["physical.b_field_mt"] = fmt_double(physical_b_field_mt);
    kv["physical.g_b"] = fmt_double(physical_g_b);
    kv["physical.g_h"] = fmt_double(physical_g_h);
    kv["cavity.kappa_ghz"] = fmt_double(cavity_kappa_ghz);
    kv["cavity.kappa_ext_ghz"] = fmt_double(cavity_kappa_ext_ghz);
    kv["cavity.g_ghz"] = fmt_double(cavity_g_ghz);
    kv["cavity.gamma_x_ghz"] = fmt_double(cavity_gamma_x_ghz);
    kv["cavity.delta_c_ghz"] = fmt_double(cavity_delta_c_ghz);
    kv["jitter.fwhm_uev"] = fmt_double(jitter_fwhm_uev);
    kv["jitter.n_samples"] = std::to_string(jitter_n_samples);
    kv["jitter.enabled"] = jitter_enabled ? "true" : "false";
    kv["detector.jitter_sigma_ps"] = fmt_double(detector_jitter_sigma_ps);
    kv["detector.efficiency"] = fmt_double(detector_efficiency);
    kv["detector.bin_width_ps"] = fmt_double(detector_bin_width_ps);
    kv["homodyne.lo_ratio"] = fmt_double(homodyne_lo_ratio);
    kv["homodyne.phi_lo"] = fmt_list(homodyne_phi_lo);
    kv["homodyne.phase_averaged"] = homodyne_phase_averaged ? "true" : "false";
    kv["homodyne.phase_noise_sigma_rad"] = fmt_double(homodyne_phase_noise_sigma_rad);
    kv["grids.tau_max_ns"] = fmt_double(grids_tau_max_ns);
    kv["grids.n_points"] = std::to_string(grids_n_points);
    kv["grids.deltas_over_gamma"] = fmt_list(grids_deltas_over_gamma);
    kv["trajectories.n"] = std::to_string(trajectories_n);
    kv["trajectories.segment_ns"] = fmt_double(trajectories_segment_ns);
    kv["trajectories.dt_ns"] = fmt_double(trajectories_dt_ns);
    kv["trajectories.detection"] = trajectories_detection;
    kv["visibility.v0"] = fmt_double(visibility_v0);
    kv["seed"] = std::to_string(seed);
    kv["output.units"] = output_units;
    kv["output.format"] = output_format;
    return kv;
}

void RunConfig::apply_key_value(const std::string &key, const std::string &value) {
    if (key == "preset") {
        preset = value;
    } else if (key == "model.t1_ps") {
        model_t1_ps = parse_double(key, value);
    } else if (key == "model.larmor_mhz") {
        model_larmor_mhz = parse_double(key, value);
    } else if (key == "model.trion_larmor_mhz") {
        model_trion_larmor_mhz = parse_double(key, value);
    } else if (key == "model.delta_mhz") {
        model_delta_mhz = parse_double(key, value);
    } else if (key == "model.p_over_psat") {
        model_p_over_psat = parse_double(key, value);
    } else if (key == "model.rabi_over_gamma") {
        model_rabi_over_gamma = parse_double(key, value);
    } else if (key == "model.opt_deph_over_gamma") {
        model_opt_deph_over_gamma = parse_double(key, value);
    } else if (key == "model.spin_dephasing") {
        model_spin_dephasing = value;
    } else if (key == "model.t2star_ns") {
        model_t2star_ns = parse_double(key, value);
    } else if (key == "model.overhauser_samples") {
        model_overhauser_samples = parse_int(key, value);
    } else if (key == "physical.b_field_mt") {
        physical_b_field_mt = parse_double(key, value);
    } else if (key == "physical.g_b") {
        physical_g_b = parse_double(key, value);
    } else if (key == "physical.g_h") {
        physical_g_h = parse_double(key, value);
    } else if (key == "cavity.kappa_ghz") {
        cavity_kappa_ghz = parse_double(key, value);
    } else if (key == "cavity.kappa_ext_ghz") {
        cavity_kappa_ext_ghz = parse_double(key, value);
    } else if (key == "cavity.g_ghz") {
        cavity_g_ghz = parse_double(key, value);
    } else if (key == "cavity.gamma_x_ghz") {
        cavity_gamma_x_ghz = parse_double(key, value);
    } else if (key == "cavity.delta_c_ghz") {
        cavity_delta_c_ghz = parse_double(key, value);
    } else if (key == "jitter.fwhm_uev") {
        jitter_fwhm_uev = parse_double(key, value);
    } else if (key == "jitter.n_samples") {
        jitter_n_samples = parse_int(key, value);
    } else if (key == "jitter.enabled") {
        jitter_enabled = parse_bool(key, value);
    } else if (key == "detector.jitter_sigma_ps") {
        detector_jitter_sigma_ps = parse_double(key, value);
    } else if (key == "detector.efficiency") {
        detector_efficiency = parse_double(key, value);
    } else if (key == "detector.bin_width_ps") {
        detector_bin_width_ps = parse_double(key, value);
    } else if (key == "homodyne.lo_ratio") {
        homodyne_lo_ratio = parse_double(key, value);
    } else if (key == "homodyne.phi_lo") {
        homodyne_phi_lo = parse_list(key, value);
    } else if (key == "homodyne.phase_averaged") {
        homodyne_phase_averaged = parse_bool(key, value);
    } else if (key == "homodyne.phase_noise_sigma_rad") {
        homodyne_phase_noise_sigma_rad = parse_double(key, value);
    } else if (key == "grids.tau_max_ns") {
        grids_tau_max_ns = parse_double(key, value);
    } else if (key == "grids.n_points") {
        grids_n_points = parse_int(key, value);
    } else if (key == "grids.deltas_over_gamma") {
        grids_deltas_over_gamma = parse_list(key, value);
    } else if (key == "trajectories.n") {
        trajectories_n = parse_int(key, value);
    } else if (key == "trajectories.segment_ns") {
        trajectories_segment_ns = parse_double(key, value);
    } else if (key == "trajectories.dt_ns") {
        trajectories_dt_ns = parse_double(key, value);
    } else if (key == "trajectories.detection") {
        trajectories_detection = value;
    } else if (key == "visibility.v0") {
        visibility_v0 = parse_double(key, value);
    } else if (key == "seed") {
        seed = static_cast<std::uint64_t>(std::stoull(value));
    } else if (key == "output.units") {
        output_units = value;
    } else if (key == "output.format") {
        output_format = value;
    } else {
        throw config_error("config: unknown key '" + key + "'");
    }
}

RunConfig preset_config(const std::string &name) {
    RunConfig cfg;
    cfg.preset = name;
    if (name == "qd1") {
        cfg.model_t1_ps = 460.0;
        cfg.model_larmor_mhz = 590.0;
        cfg.model_t2star_ns = 2.7;
        cfg.model_spin_dephasing = "quasistatic";
        cfg.model_p_over_psat = 0.02;
        cfg.model_opt_deph_over_gamma = 0.0;
        cfg.physical_b_field_mt = 108.0;
        cfg.physical_g_b = 0.437;
        cfg.detector_jitter_sigma_ps = 64.0;
        cfg.detector_efficiency = 0.3;
        cfg.detector_bin_width_ps = 256.0;
        cfg.jitter_fwhm_uev = 5.0;
        cfg.homodyne_lo_ratio = 10.0;
    } else if (name == "qd2") {
        cfg.model_t1_ps = 460.0;
        cfg.model_larmor_mhz = 159.0;
        cfg.model_t2star_ns = 12.5;
        cfg.model_spin_dephasing = "markovian";
        cfg.model_p_over_psat = 0.1;
        // unquoted for this dot; chosen to reproduce its observed g2_hom
        // coherence time (12.5 ns) including drive backaction
        cfg.model_opt_deph_over_gamma = 0.3;
        cfg.physical_b_field_mt = 86.0;
        cfg.physical_g_b = 0.15;
        cfg.detector_jitter_sigma_ps = 300.0;
        cfg.detector_efficiency = 0.3;
        cfg.detector_bin_width_ps = 256.0;
        cfg.jitter_fwhm_uev = 5.0;
        cfg.homodyne_lo_ratio = 10.0;
    } else if (name != "custom") {
        throw config_error("unknown preset '" + name + "' (expected qd1, qd2 or custom)");
    }
    return cfg;
}

void apply_config_text(RunConfig &cfg, const std::string &text) {
    std::stringstream ss(text);
    std::string line;
    int line_no = 0;
    // preset line applies first so explicit keys override preset values
    std::vector<std::pair<std::string, std::string>> pairs;
    std::string preset_name;
    while (std::getline(ss, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw config_error("config: line " + std::to_string(line_no) + " is not key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "preset") {
            preset_name = value;
        } else {
            pairs.emplace_back(key, value);
        }
    }
    if (!preset_name.empty() && preset_name != cfg.preset) {
        cfg = preset_config(preset_name);
    }
    for (const auto &[key, value] : pairs) {
        cfg.apply_key_value(key, value);
    }
}

void apply_config_file(RunConfig &cfg, const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw io_error("cannot open config file " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    apply_config_text(cfg, ss.str());
}

ResolvedRun resolve(const RunConfig &cfg) {
    ResolvedRun run;

    if (cfg.model_t1_ps <= 0) {
        throw config_error("model.t1_ps must be positive");
    }
    TrionParams p;
    p.gamma = 1.0 / units::ns_from_ps(cfg.model_t1_ps);
    double larmor_mhz = cfg.model_larmor_mhz;
    if (larmor_mhz <= 0 && cfg.physical_b_field_mt > 0 && cfg.physical_g_b > 0) {
        larmor_mhz = units::mhz_from_rad_per_ns(
            larmor_splitting(cfg.physical_g_b, cfg.physical_b_field_mt * 1e-3));
    }
    p.omega_b = 0.5 * units::rad_per_ns_from_mhz(std::max(0.0, larmor_mhz));
    p.omega_h = 0.5 * units::rad_per_ns_from_mhz(cfg.model_trion_larmor_mhz);
    p.delta = units::rad_per_ns_from_mhz(cfg.model_delta_mhz);
    p.omega_rabi = cfg.model_rabi_over_gamma >= 0
                       ? cfg.model_rabi_over_gamma * p.gamma
                       : p.gamma * std::sqrt(0.5 * cfg.model_p_over_psat);
    p.gamma_opt_deph = cfg.model_opt_deph_over_gamma * p.gamma;
    if (cfg.model_t2star_ns > 0) {
        if (cfg.model_spin_dephasing == "markovian") {
            p.spin_dephasing = MarkovianSpinDephasing{1.0 / cfg.model_t2star_ns};
        } else if (cfg.model_spin_dephasing == "quasistatic") {
            p.spin_dephasing = QuasistaticSpinDephasing{std::sqrt(2.0) / cfg.model_t2star_ns};
        } else {
            throw config_error("model.spin_dephasing must be markovian or quasistatic");
        }
    }
    run.warning = p.validate();
    run.params = p;

    run.cavity.kappa = units::rad_per_ns_from_ghz(cfg.cavity_kappa_ghz);
    run.cavity.kappa_ext = units::rad_per_ns_from_ghz(cfg.cavity_kappa_ext_ghz);
    run.cavity.g_coupling = units::rad_per_ns_from_ghz(cfg.cavity_g_ghz);
    run.cavity.gamma_x = units::rad_per_ns_from_ghz(cfg.cavity_gamma_x_ghz);
    run.cavity.delta_c = units::rad_per_ns_from_ghz(cfg.cavity_delta_c_ghz);

    run.detuning_jitter.kind = JitterKind::gaussian_detuning;
    run.detuning_jitter.fwhm = cfg.jitter_fwhm_uev * units::rad_per_ns_per_uev;
    run.detuning_jitter.n_samples = cfg.jitter_n_samples;
    run.jitter_enabled = cfg.jitter_enabled;

    run.detector.jitter_sigma = units::ns_from_ps(cfg.detector_jitter_sigma_ps);
    run.detector.efficiency = cfg.detector_efficiency;
    run.detector.bin_width = units::ns_from_ps(cfg.detector_bin_width_ps);
    run.detector.validate();

    run.lo_ratio = cfg.homodyne_lo_ratio;
    run.phi_lo = cfg.homodyne_phi_lo;
    run.phase_averaged = cfg.homodyne_phase_averaged;
    run.phase_noise_sigma = cfg.homodyne_phase_noise_sigma_rad;

    const double t2_for_grid = cfg.model_t2star_ns > 0 ? cfg.model_t2star_ns : 5.0 / p.gamma;
    run.grid.tau_max = cfg.grids_tau_max_ns > 0
                           ? cfg.grids_tau_max_ns
                           : 8.0 * std::max(t2_for_grid, 5.0 / p.gamma);
    if (cfg.grids_n_points > 0) {
        run.grid.n_points = cfg.grids_n_points;
        if (run.grid.n_points < 16) {
            throw config_error("grids.n_points must be >= 16");
        }
    } else {
        // auto: at least 4096 points and fine enough for the correlation
        // grid-step bound 0.05 * min(1/gamma, pi/(2 omega_b))
        double bound = 0.05 / std::max(p.gamma, 1e-30);
        if (p.omega_b > 0) {
            bound = std::min(bound, 0.05 * units::pi / (2.0 * p.omega_b));
        }
        int n = std::max(4096, static_cast<int>(std::ceil(run.grid.tau_max / bound)) + 1);
        n = ((n + 1023) / 1024) * 1024; // round up to a tidy grid size
        run.grid.n_points = n;
    }
    run.overhauser_samples = std::max(3, cfg.model_overhauser_samples);

    run.deltas.reserve(cfg.grids_deltas_over_gamma.size());
    for (double d : cfg.grids_deltas_over_gamma) {
        run.deltas.push_back(d * p.gamma);
    }

    run.v0 = cfg.visibility_v0;
    run.seed = cfg.seed;
    run.units = cfg.output_units;
    run.format = cfg.output_format;
    if (run.units != "gamma" && run.units != "si") {
        throw config_error("output.units must be gamma or si");
    }
    if (run.format != "csv" && run.format != "json") {
        throw config_error("output.format must be csv or json");
    }
    run.trajectories_n = cfg.trajectories_n;
    run.trajectories_segment_ns = cfg.trajectories_segment_ns;
    run.trajectories_dt_ns = cfg.trajectories_dt_ns;
    run.trajectories_detection = cfg.trajectories_detection;
    if (run.trajectories_detection != "hbt" && run.trajectories_detection != "homodyne") {
        throw config_error("trajectories.detection must be hbt or homodyne");
    }
    return run;
}

RunConfig canonicalize(const RunConfig &cfg) {
    const ResolvedRun run = resolve(cfg);
    RunConfig out = cfg;
    out.grids_tau_max_ns = run.grid.tau_max;
    out.grids_n_points = run.grid.n_points;
    return out;
}

HomodyneConfig make_homodyne(const ResolvedRun &run, double phi_lo) {
    TrionParams central = run.params.is_quasistatic()
                              ? with_overhauser_shift(run.params, 0.0)
                              : run.params;
    HomodyneConfig h;
    h.alpha = std::sqrt(run.lo_ratio * steady_v_intensity(central));
    h.phi_lo = phi_lo;
    h.phase_noise_sigma = run.phase_noise_sigma;
    return h;
}

} // namespace spinmod
