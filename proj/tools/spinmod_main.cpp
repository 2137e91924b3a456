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

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "spinmod/config.hpp"
#include "spinmod/errors.hpp"
#include "spinmod/scenarios.hpp"
#include "spinmod/table.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::string preset;
    std::string out_dir = ".";
    std::string format;
    std::string units;
    std::string seed;
    std::string phi_lo;
    std::string delta_scan;
};

void add_common(CLI::App *cmd, CommonArgs &args) {
    cmd->add_option("--config", args.config_path, "configuration file (key = value lines)");
    cmd->add_option("--preset", args.preset, "parameter preset")
        ->check(CLI::IsMember({"qd1", "qd2", "custom"}));
    cmd->add_option("--out", args.out_dir, "output directory");
    cmd->add_option("--format", args.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--units", args.units, "frequency column units")
        ->check(CLI::IsMember({"si", "gamma"}));
    cmd->add_option("--seed", args.seed, "random seed");
    cmd->add_option("--phi-lo", args.phi_lo,
                    "comma list of LO phases in radians; token 'avg' adds the uniform average");
    cmd->add_option("--delta-scan", args.delta_scan, "comma list of detunings in units of gamma");
}

spinmod::RunConfig build_config(const CommonArgs &args) {
    spinmod::RunConfig cfg = args.preset.empty() ? spinmod::RunConfig{}
                                                 : spinmod::preset_config(args.preset);
    if (!args.config_path.empty()) {
        spinmod::apply_config_file(cfg, args.config_path);
    }
    if (!args.format.empty()) {
        cfg.apply_key_value("output.format", args.format);
    }
    if (!args.units.empty()) {
        cfg.apply_key_value("output.units", args.units);
    }
    if (!args.seed.empty()) {
        cfg.apply_key_value("seed", args.seed);
    }
    if (!args.phi_lo.empty()) {
        std::string numeric;
        std::stringstream ss(args.phi_lo);
        std::string item;
        bool averaged = false;
        while (std::getline(ss, item, ',')) {
            if (item == "avg") {
                averaged = true;
            } else {
                numeric += (numeric.empty() ? "" : ",") + item;
            }
        }
        if (!numeric.empty()) {
            cfg.apply_key_value("homodyne.phi_lo", numeric);
        }
        if (averaged) {
            cfg.apply_key_value("homodyne.phase_averaged", "true");
        }
    }
    if (!args.delta_scan.empty()) {
        cfg.apply_key_value("grids.deltas_over_gamma", args.delta_scan);
    }
    return cfg;
}

int run(const std::string &scenario, const CommonArgs &args) {
    const spinmod::RunConfig cfg = build_config(args);
    const spinmod::ResolvedRun resolved = spinmod::resolve(cfg);
    if (!resolved.warning.empty()) {
        std::cerr << "warning: " << resolved.warning << "\n";
    }

    std::filesystem::create_directories(args.out_dir);
    const spinmod::ResultTable table = spinmod::run_scenario(scenario, cfg, args.out_dir);

    const std::string ext = cfg.output_format == "json" ? ".json" : ".csv";
    const std::string path = args.out_dir + "/" + scenario + ext;
    if (cfg.output_format == "json") {
        spinmod::write_json(table, path);
    } else {
        spinmod::write_csv(table, path);
    }
    std::cout << path << "\n";
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"spinmod: resonant-scattering simulator for a driven quantum-dot spin"};
    app.require_subcommand(1);

    const std::vector<std::string> scenarios = {"mzi", "spectrum", "hbt", "homodyne",
                                                "trajectories"};
    std::map<std::string, CommonArgs> args;
    for (const auto &name : scenarios) {
        CLI::App *cmd = app.add_subcommand(
            name, name == "mzi"         ? "interferometric visibility |g1(tau)|"
                  : name == "spectrum"  ? "resonantly scattered field spectrum"
                  : name == "hbt"       ? "HBT intensity correlations g2(tau)"
                  : name == "homodyne"  ? "quadrature-resolved homodyne correlations"
                                        : "Monte Carlo time-tag streams and histograms");
        add_common(cmd, args[name]);
    }

    CLI11_PARSE(app, argc, argv);

    const std::string chosen = app.get_subcommands().front()->get_name();
    try {
        return run(chosen, args[chosen]);
    } catch (const spinmod::Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
