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

#include "qpanoise/experiments.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qpanoise/cli.hpp"

using namespace qpanoise;
using namespace qpanoise::experiments;

namespace {

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "qpa_cli");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("qpanoise_" + name);
}

}  // namespace

TEST(Csv, ideal_trace_columns) {
    RunSpec spec;
    spec.command = "ideal";
    auto rows = parse_csv(csv_ideal(spec));
    ASSERT_EQ(rows.size(), 7u);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"n", "F", "one_minus_F", "p_n", "P", "xi"}));
    EXPECT_EQ(rows[1][0], "0");
    EXPECT_NEAR(std::stod(rows[6][2]) / 8.20e-6, 1.0, 0.01);
    EXPECT_EQ(std::stod(rows[1][5]), 1.0);
}

TEST(Csv, reruns_are_byte_identical) {
    RunSpec spec;
    spec.command = "sweep";
    spec.channel = "bit-flip,disp-x,disp-z-";
    spec.theta_count = 7;
    EXPECT_EQ(csv_sweep(spec), csv_sweep(spec));
    spec.channel = "phase-flip";
    spec.theta = 0.01;
    EXPECT_EQ(csv_noisy(spec), csv_noisy(spec));
}

TEST(Csv, noiseless_noisy_is_ideal) {
    RunSpec spec;
    spec.steps = 8;
    spec.f_alpha = 0.3;
    EXPECT_EQ(csv_noisy(spec), csv_ideal(spec));
}

TEST(Csv, sweep_matches_single_runs) {
    RunSpec spec;
    spec.channel = "bit-flip,phase-flip";
    spec.theta_min = 0.0;
    spec.theta_max = 0.2;
    spec.theta_count = 5;
    auto rows = parse_csv(csv_sweep(spec));
    ASSERT_EQ(rows.size(), 6u);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"theta", "bit-flip", "phase-flip"}));
    EXPECT_EQ(std::stod(rows[1][0]), 0.0);
    EXPECT_EQ(std::stod(rows[5][0]), 0.2);
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const double theta = std::stod(rows[r][0]);
        if (r > 1) {
            EXPECT_GT(theta, std::stod(rows[r - 1][0]));
        }
        const double bf = run_noisy(0.95, NoiseConfig::of(kinds::bit_flip, theta), 5).infidelity(5);
        EXPECT_EQ(std::stod(rows[r][1]), bf);
        // phase noise hurts more than bit noise at the same strength
        if (theta > 0) {
            EXPECT_GT(std::stod(rows[r][2]), std::stod(rows[r][1]));
        }
    }
}

TEST(Csv, log_grid) {
    RunSpec spec;
    spec.channel = "disp-x";
    spec.theta_min = 1e-4;
    spec.theta_max = 1e-1;
    spec.theta_count = 4;
    spec.log_grid = true;
    auto rows = parse_csv(csv_sweep(spec));
    ASSERT_EQ(rows.size(), 5u);
    EXPECT_NEAR(std::stod(rows[2][0]), 1e-3, 1e-15);
    EXPECT_NEAR(std::stod(rows[3][0]), 1e-2, 1e-15);
}

TEST(Csv, sweep_rejects_bad_input) {
    RunSpec spec;
    spec.channel = "bit-flip,warp";
    EXPECT_THROW(csv_sweep(spec), PreconditionError);
    spec.channel = "disp-x";
    spec.theta_max = 2.0;
    EXPECT_THROW(csv_sweep(spec), PreconditionError);
}

TEST(Csv, table1_rows) {
    RunSpec spec;
    auto rows = parse_csv(csv_table1(spec));
    ASSERT_EQ(rows.size(), 10u);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"channel", "theta", "one_minus_F"}));
    for (std::size_t i = 0; i < kinds::all.size(); ++i) {
        EXPECT_EQ(rows[i + 1][0], to_string(kinds::all[i]));
        EXPECT_NEAR(std::stod(rows[i + 1][2]) / 1e-4, 1.0, 1e-3);
    }
}

TEST(Verify, clean_build_passes) {
    auto report = verify();
    EXPECT_TRUE(report.ok()) << report.text();
    EXPECT_GE(report.checks.size(), 15u);
}

TEST(Verify, corrupted_kraus_is_caught) {
    VerifyOptions opt;
    opt.corrupt_kraus = true;
    auto report = verify(opt);
    EXPECT_FALSE(report.ok());
    bool named = false;
    for (const auto& c : report.checks) {
        if (!c.passed && c.name.find("kraus completeness") != std::string::npos) named = true;
    }
    EXPECT_TRUE(named) << report.text();
}

TEST(Cli, exit_codes) {
    EXPECT_EQ(run_cli({"ideal"}).code, kOk);
    EXPECT_EQ(run_cli({"--help"}).code, kOk);
    EXPECT_EQ(run_cli({}).code, kUsage);
    EXPECT_EQ(run_cli({"ideal", "--bogus"}).code, kUsage);
    EXPECT_EQ(run_cli({"ideal", "--f-alpha", "1.5"}).code, kUsage);
    EXPECT_EQ(run_cli({"noisy", "--channel", "warp", "--theta", "0.1"}).code, kUsage);
    EXPECT_EQ(run_cli({"noisy", "--channel", "disp-x", "--theta", "2"}).code, kUsage);
    auto unreachable = run_cli({"table1", "--target", "1e-9"});
    EXPECT_EQ(unreachable.code, kNumerical);
    EXPECT_EQ(unreachable.err.rfind("error: ", 0), 0u);
    EXPECT_EQ(std::count(unreachable.err.begin(), unreachable.err.end(), '\n'), 1);
    EXPECT_EQ(run_cli({"table1", "--target", "0.8"}).code, kNumerical);
}

TEST(Cli, verify_failure_exit_code) {
    auto r = run_cli({"verify", "--corrupt-kraus"});
    EXPECT_EQ(r.code, kVerification);
    EXPECT_NE(r.err.find("kraus completeness"), std::string::npos);
}

TEST(Cli, flags_match_library) {
    auto r = run_cli({"noisy", "--channel", "disp-z+", "--theta", "0.05", "--steps", "4", "--location", "bob-target"});
    ASSERT_EQ(r.code, kOk) << r.err;
    RunSpec spec;
    spec.channel = "disp-z+";
    spec.theta = 0.05;
    spec.steps = 4;
    spec.location = "bob-target";
    EXPECT_EQ(r.out, csv_noisy(spec));
}

TEST(Cli, config_file_with_override) {
    auto cfg = temp_file("run.ini");
    {
        std::ofstream f(cfg);
        f << "f-alpha=0.5\nsteps=3\nchannel=bit-flip\ntheta=0.2\n";
    }
    auto from_file = run_cli({"noisy", "--config", cfg.string()});
    ASSERT_EQ(from_file.code, kOk) << from_file.err;
    RunSpec spec;
    spec.f_alpha = 0.5;
    spec.steps = 3;
    spec.channel = "bit-flip";
    spec.theta = 0.2;
    EXPECT_EQ(from_file.out, csv_noisy(spec));

    auto overridden = run_cli({"noisy", "--config", cfg.string(), "--steps", "6"});
    ASSERT_EQ(overridden.code, kOk) << overridden.err;
    spec.steps = 6;
    EXPECT_EQ(overridden.out, csv_noisy(spec));
    std::filesystem::remove(cfg);
}

TEST(Cli, out_file) {
    auto path = temp_file("ideal.csv");
    auto r = run_cli({"ideal", "--steps", "3", "--out", path.string()});
    ASSERT_EQ(r.code, kOk);
    EXPECT_TRUE(r.out.empty());
    std::ifstream f(path, std::ios::binary);
    std::string contents((std::istreambuf_iterator<char>(f)), {});
    RunSpec spec;
    spec.steps = 3;
    EXPECT_EQ(contents, csv_ideal(spec));
    std::filesystem::remove(path);
}
