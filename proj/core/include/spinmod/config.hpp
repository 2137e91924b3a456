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

#ifndef SPINMOD_CONFIG_HPP
#define SPINMOD_CONFIG_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "spinmod/correlations.hpp"
#include "spinmod/ensemble.hpp"
#include "spinmod/scatter.hpp"
#include "spinmod/trion.hpp"

namespace spinmod {

// Flat key-value run configuration. Inputs use laboratory units (MHz/GHz,
// ps/ns, ueV); conversion to internal rad/ns happens in resolve().
struct RunConfig {
    std::string preset = "custom"; // qd1 | qd2 | custom

    // model.*
    double model_t1_ps = 460.0;
    double model_larmor_mhz = 0.0;        // 2*omega_b / 2pi
    double model_trion_larmor_mhz = 0.0;  // 2*omega_h / 2pi
    double model_delta_mhz = 0.0;
    double model_p_over_psat = 0.0;
    double model_rabi_over_gamma = -1.0;  // < 0: derive from p_over_psat
    double model_opt_deph_over_gamma = 0.0;
    std::string model_spin_dephasing = "markovian"; // markovian | quasistatic
    double model_t2star_ns = 0.0;         // 0 disables spin dephasing
    int model_overhauser_samples = 80;

    // physical.* (reference values; larmor derived from them only when
    // model.larmor_mhz is not set)
    double physical_b_field_mt = 0.0;
    double physical_g_b = 0.0;
    double physical_g_h = 0.0;

    // cavity.* (scatter-analytic reference parameters, echoed with the run)
    double cavity_kappa_ghz = 100.0;
    double cavity_kappa_ext_ghz = 80.0;
    double cavity_g_ghz = 20.0;
    double cavity_gamma_x_ghz = 1.0;
    double cavity_delta_c_ghz = 0.0;

    // jitter.* (spectral jitter over detuning)
    double jitter_fwhm_uev = 5.0;
    int jitter_n_samples = 31;
    bool jitter_enabled = false;

    // detector.*
    double detector_jitter_sigma_ps = 64.0;
    double detector_efficiency = 0.3;
    double detector_bin_width_ps = 256.0;

    // homodyne.*
    double homodyne_lo_ratio = 10.0; // I_LO / I_RSF
    std::vector<double> homodyne_phi_lo = {0.0, 1.5707963267948966};
    bool homodyne_phase_averaged = false;
    double homodyne_phase_noise_sigma_rad = 0.0;

    // grids.*
    double grids_tau_max_ns = 0.0; // 0: auto 8 * max(T2*, 5/gamma)
    int grids_n_points = 0;        // 0: auto, >= 4096 and fine enough for the grid-step bound
    std::vector<double> grids_deltas_over_gamma = {0.0};

    // trajectories.*
    int trajectories_n = 16;
    double trajectories_segment_ns = 200000.0;
    double trajectories_dt_ns = 0.0; // 0: auto
    std::string trajectories_detection = "hbt"; // hbt | homodyne

    double visibility_v0 = 1.0;
    std::uint64_t seed = 12345;
    std::string output_units = "gamma"; // gamma | si
    std::string output_format = "csv";  // csv | json

    // Canonical flat representation; parsing it back reproduces the struct.
    std::map<std::string, std::string> to_key_values() const;
    void apply_key_value(const std::string &key, const std::string &value);
};

// Presets encode the paper-fitted values; see the preset tables in config.cpp.
RunConfig preset_config(const std::string &name);

// Parses "key = value" lines ('#' comments, blank lines allowed) on top of cfg.
void apply_config_text(RunConfig &cfg, const std::string &text);
void apply_config_file(RunConfig &cfg, const std::string &path);

// Returns cfg with auto grid fields (tau_max, n_points) replaced by their
// resolved concrete values, so the metadata echo pins the exact grid.
RunConfig canonicalize(const RunConfig &cfg);

// Physics-ready resolved parameters.
struct ResolvedRun {
    TrionParams params;
    CavityParams cavity;
    JitterModel detuning_jitter; // gaussian_detuning
    DetectorModel detector;
    double lo_ratio = 10.0;
    std::vector<double> phi_lo;
    bool phase_averaged = false;
    double phase_noise_sigma = 0.0;
    TauGrid grid;
    std::vector<double> deltas; // rad/ns
    double v0 = 1.0;
    std::uint64_t seed = 0;
    bool jitter_enabled = false;
    int overhauser_samples = 80;
    std::string units;  // gamma | si
    std::string format; // csv | json
    int trajectories_n = 1;
    double trajectories_segment_ns = 0.0;
    double trajectories_dt_ns = 0.0;
    std::string trajectories_detection;
    std::string warning; // weak-excitation warning, if any
};

ResolvedRun resolve(const RunConfig &cfg);

// LO amplitude realizing lo_ratio against the configured emitter's
// steady-state V intensity (central Overhauser member for quasistatic runs).
HomodyneConfig make_homodyne(const ResolvedRun &run, double phi_lo);

} // namespace spinmod

#endif
