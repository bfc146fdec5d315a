// Copyright 2026 The qpanoise Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <CLI11.hpp>

#include <ostream>
#include <string>
#include <vector>

#include "qpanoise/experiments.hpp"

namespace qpanoise::experiments {

// Command-line front end. Every flag may also come from a key=value config file given
// with --config; flags on the command line override file values.
inline int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunSpec spec;
    CLI::App app{"Exact density-matrix experiments on noisy quantum privacy amplification", "qpa_cli"};
    app.set_config("--config", "", "Read flags from a key=value file (command-line flags win)");
    app.require_subcommand(1);
    app.fallthrough();

    app.add_option("--f-alpha", spec.f_alpha, "Intrusion parameter in [0, 1]")->capture_default_str();
    app.add_option("--channel", spec.channel,
                   "Noise channel (rot-x, rot-y, rot-z, bit-flip, bit-phase-flip, phase-flip, disp-x, disp-y, "
                   "disp-z+, disp-z-; sweep takes a comma-separated list; none for noiseless)")
        ->capture_default_str();
    app.add_option("--theta", spec.theta, "Noise strength in radians")->capture_default_str();
    app.add_option("--steps", spec.steps, "Number of purification steps")->capture_default_str();
    app.add_option("--location", spec.location, "Noisy wire: alice-control, bob-control, alice-target, bob-target")
        ->capture_default_str();
    app.add_option("--theta-min", spec.theta_min, "Sweep grid start")->capture_default_str();
    app.add_option("--theta-max", spec.theta_max, "Sweep grid end")->capture_default_str();
    app.add_option("--theta-count", spec.theta_count, "Sweep grid size")->capture_default_str();
    app.add_flag("--log-grid", spec.log_grid, "Space the sweep grid logarithmically");
    app.add_option("--target", spec.target, "Target 1-F for table1")->capture_default_str();
    app.add_option("--out", spec.out, "Write output to this file instead of stdout");
    app.add_flag("--corrupt-kraus", spec.corrupt_kraus)->group("");

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"ideal", "Noiseless protocol trace (n, F, 1-F, p_n, P, xi)"},
        {"noisy", "Protocol trace with one noise channel"},
        {"sweep", "1-F after --steps steps over a theta grid"},
        {"table1", "Noise strength reaching --target for all nine channels"},
        {"verify", "Channel representation and circuit self-checks"},
    };
    for (const auto& [name, help] : commands) app.add_subcommand(name, help);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        std::string msg = e.what();
        if (auto nl = msg.find('\n'); nl != std::string::npos) msg.resize(nl);
        err << "error: " << msg << '\n';
        return kUsage;
    }
    spec.command = app.get_subcommands().front()->get_name();
    return run_command(spec, out, err);
}

}  // namespace qpanoise::experiments
