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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "qpanoise/channels.hpp"
#include "qpanoise/eavesdrop.hpp"
#include "qpanoise/errors.hpp"
#include "qpanoise/qpa.hpp"

namespace qpanoise::experiments {

enum ExitCode : int { kOk = 0, kUsage = 1, kNumerical = 2, kVerification = 3 };

/// One experiment request, as assembled from flags and/or a config file.
struct RunSpec {
    std::string command;
    double f_alpha = 0.95;
    std::string channel = "none";  // sweep accepts a comma-separated list
    double theta = 0.0;
    int steps = 5;
    std::string location = "alice-control";
    std::string out;  // empty: write to the caller's stream
    double theta_min = 0.0;
    double theta_max = 0.3;
    int theta_count = 31;
    bool log_grid = false;
    double target = 1e-4;
    bool corrupt_kraus = false;  // verify test hook
};

/// Full double precision, locale independent.
inline std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace detail {

inline void check_f(double f) {
    if (!(f >= 0.0 && f <= 1.0)) throw PreconditionError("--f-alpha must be in [0, 1], got " + fmt_double(f));
}

inline ChannelKind channel_or_throw(const std::string& name) {
    auto k = parse_channel_kind(name);
    if (!k) throw PreconditionError("unknown channel '" + name + "'");
    return *k;
}

inline Wire wire_or_throw(const std::string& name) {
    auto w = parse_wire(name);
    if (!w) {
        throw PreconditionError("unknown location '" + name +
                                "' (expected alice-control, bob-control, alice-target or bob-target)");
    }
    return *w;
}

inline std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

inline void write_trace(std::ostream& os, const ProtocolTrace& trace) {
    os << "n,F,one_minus_F,p_n,P,xi\n";
    for (const auto& r : trace.rows) {
        os << r.step << ',' << fmt_double(r.fidelity) << ',' << fmt_double(1.0 - r.fidelity) << ','
           << fmt_double(r.step_probability) << ',' << fmt_double(r.survival) << ',' << fmt_double(r.efficiency)
           << '\n';
    }
}

/// Runs body(i) for i in [0, count) on worker threads. The first failure by index is
/// rethrown after all workers finish.
template <typename Body>
void parallel_for(std::size_t count, Body body) {
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                body(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const std::size_t n_threads =
        std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, std::max<std::size_t>(count, 1));
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

inline std::vector<double> theta_grid(const RunSpec& spec) {
    if (spec.theta_count < 1) throw PreconditionError("--theta-count must be >= 1");
    if (!(spec.theta_min <= spec.theta_max)) throw PreconditionError("--theta-min must not exceed --theta-max");
    if (spec.log_grid && !(spec.theta_min > 0.0)) throw PreconditionError("--log-grid needs --theta-min > 0");
    std::vector<double> grid(static_cast<std::size_t>(spec.theta_count));
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double u = grid.size() == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(grid.size() - 1);
        grid[i] = spec.log_grid ? spec.theta_min * std::pow(spec.theta_max / spec.theta_min, u)
                                : spec.theta_min + u * (spec.theta_max - spec.theta_min);
    }
    grid.back() = spec.theta_max;
    return grid;
}

}  // namespace detail

/// Rows (n, F, 1-F, p_n, P, xi) of the noiseless protocol, n = 0..steps.
inline std::string csv_ideal(const RunSpec& spec) {
    detail::check_f(spec.f_alpha);
    std::ostringstream os;
    detail::write_trace(os, run_ideal(spec.f_alpha, spec.steps));
    return os.str();
}

/// Same columns as csv_ideal for a noisy run. channel "none" is the ideal protocol.
inline std::string csv_noisy(const RunSpec& spec) {
    if (spec.channel == "none") return csv_ideal(spec);
    detail::check_f(spec.f_alpha);
    NoiseConfig noise = NoiseConfig::of(detail::channel_or_throw(spec.channel), spec.theta,
                                        detail::wire_or_throw(spec.location));
    check_theta(*noise.kind, noise.theta);
    std::ostringstream os;
    detail::write_trace(os, run_noisy(spec.f_alpha, noise, spec.steps));
    return os.str();
}

/// 1-F after `steps` steps over a theta grid, one column per channel, rows by theta ascending.
inline std::string csv_sweep(const RunSpec& spec) {
    detail::check_f(spec.f_alpha);
    if (spec.steps < 1) throw PreconditionError("--steps must be >= 1");
    const Wire where = detail::wire_or_throw(spec.location);
    std::vector<ChannelKind> channels;
    for (const auto& name : detail::split_list(spec.channel)) channels.push_back(detail::channel_or_throw(name));
    if (channels.empty()) throw PreconditionError("sweep needs at least one channel");
    const auto grid = detail::theta_grid(spec);
    for (const auto& k : channels) {
        for (double t : grid) check_theta(k, t);
    }

    std::vector<double> cells(grid.size() * channels.size());
    detail::parallel_for(cells.size(), [&](std::size_t idx) {
        const std::size_t row = idx / channels.size();
        const std::size_t col = idx % channels.size();
        cells[idx] = run_noisy(spec.f_alpha, NoiseConfig::of(channels[col], grid[row], where), spec.steps)
                         .infidelity(static_cast<std::size_t>(spec.steps));
    });

    std::ostringstream os;
    os << "theta";
    for (const auto& k : channels) os << ',' << to_string(k);
    os << '\n';
    for (std::size_t row = 0; row < grid.size(); ++row) {
        os << fmt_double(grid[row]);
        for (std::size_t col = 0; col < channels.size(); ++col) os << ',' << fmt_double(cells[row * channels.size() + col]);
        os << '\n';
    }
    return os.str();
}

/// Threshold strength for each of the nine channels.
inline std::string csv_table1(const RunSpec& spec) {
    detail::check_f(spec.f_alpha);
    ThresholdOptions opt;
    opt.location = detail::wire_or_throw(spec.location);
    std::vector<ThresholdResult> results(kinds::all.size(), ThresholdResult{0, 0, 0});
    detail::parallel_for(results.size(), [&](std::size_t i) {
        results[i] = threshold_theta(kinds::all[i], spec.f_alpha, spec.steps, spec.target, opt);
    });
    std::ostringstream os;
    os << "channel,theta,one_minus_F\n";
    for (std::size_t i = 0; i < results.size(); ++i) {
        os << to_string(kinds::all[i]) << ',' << fmt_double(results[i].theta) << ','
           << fmt_double(results[i].infidelity) << '\n';
    }
    return os.str();
}

struct Check {
    std::string name;
    bool passed;
    std::string detail;
};

struct VerifyReport {
    std::vector<Check> checks;

    bool ok() const {
        return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
    }
    std::string text() const {
        std::ostringstream os;
        for (const auto& c : checks) os << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
        os << (ok() ? "all checks passed" : "verification FAILED") << '\n';
        return os.str();
    }
};

struct VerifyOptions {
    int thetas_per_kind = 20;
    int random_states = 50;
    bool corrupt_kraus = false;  // scale F_0 by 1.001 to exercise the failure path
};

/// Every kind (both directions) over a theta grid: Kraus completeness, agreement of the
/// three representations on the probe points, and containment of the image in the ball.
/// Then the noiseless four-qubit map against the Bell-diagonal recurrence on random
/// inputs, and the copying-machine circuit identities.
inline VerifyReport verify(const VerifyOptions& opt = {}) {
    VerifyReport report;
    const auto points = bloch_probe_points();
    std::vector<ChannelKind> all_kinds(kinds::all.begin(), kinds::all.end());
    for (auto f : {ChannelFamily::RotationX, ChannelFamily::RotationY, ChannelFamily::RotationZ,
                   ChannelFamily::DisplaceX, ChannelFamily::DisplaceY, ChannelFamily::DisplaceZ}) {
        all_kinds.push_back({f, -1});
    }

    for (const auto& kind : all_kinds) {
        double completeness = 0.0;
        double agreement = 0.0;
        double outside = 0.0;
        for (int i = 0; i < opt.thetas_per_kind; ++i) {
            const double theta =
                theta_max(kind) * 0.999 * static_cast<double>(i) / static_cast<double>(opt.thetas_per_kind - 1);
            NoiseChannel ch = make_channel(kind, theta);
            if (opt.corrupt_kraus) {
                auto k = ch.kraus();
                k.front() *= 1.001;
                ch = NoiseChannel(ch.kind(), ch.theta(), std::move(k), ch.affine(), ch.dilation());
            }
            auto dev = representation_deviation(ch, points);
            completeness = std::max(completeness, dev.completeness);
            agreement = std::max(agreement, dev.max());
            for (const auto& r : points) outside = std::max(outside, ch.affine()(r.as_vector()).norm() - 1.0);
        }
        const std::string name = to_string(kind);
        report.checks.push_back(
            {"kraus completeness " + name, completeness <= tol::kStructural, "max deviation " + fmt_double(completeness)});
        report.checks.push_back({"representation agreement " + name, agreement <= 1e-10,
                                 "max deviation " + fmt_double(agreement)});
        report.checks.push_back(
            {"unit ball containment " + name, outside <= tol::kPositivity, "max excess " + fmt_double(outside)});
    }

    std::mt19937_64 rng(20051919);
    std::exponential_distribution<double> expo(1.0);
    double oracle = 0.0;
    for (int i = 0; i < opt.random_states; ++i) {
        std::array<double, 4> w{expo(rng), expo(rng), expo(rng), expo(rng)};
        const double sum = w[0] + w[1] + w[2] + w[3];
        BellCoeffs c{w[0] / sum, w[1] / sum, w[2] / sum, w[3] / sum};
        auto ideal = ideal_step(c);
        auto noisy = noisy_step(bell_diagonal_state(c), NoiseConfig::none());
        oracle = std::max({oracle, max_abs_diff(noisy.state.matrix(), bell_diagonal_state(ideal.next).matrix()),
                           std::abs(noisy.probability - ideal.probability)});
    }
    report.checks.push_back(
        {"noiseless map matches Bell recurrence", oracle <= tol::kStructural, "max deviation " + fmt_double(oracle)});

    const double w_dev = max_abs_diff(bh_unitary().matrix(), compose_in_order(bh_cnot_decomposition()).matrix());
    report.checks.push_back({"copying unitary equals 4-CNOT circuit", w_dev <= tol::kStructural,
                             "max deviation " + fmt_double(w_dev)});
    double pair_dev = 0.0;
    for (int i = 0; i <= 100; ++i) {
        const double f = i / 100.0;
        pair_dev = std::max(pair_dev, max_abs_diff(initial_pair(f).rho_ab.matrix(), initial_pair_via_circuit(f).matrix()));
    }
    report.checks.push_back({"attacked pair: formula vs circuit", pair_dev <= tol::kStructural,
                             "max deviation " + fmt_double(pair_dev)});
    return report;
}

/// Dispatches a parsed RunSpec. Library errors become one-line diagnostics on `err`
/// and the matching exit code.
inline int run_command(const RunSpec& spec, std::ostream& out, std::ostream& err) {
    try {
        std::string payload;
        int code = kOk;
        if (spec.command == "ideal") {
            payload = csv_ideal(spec);
        } else if (spec.command == "noisy") {
            payload = csv_noisy(spec);
        } else if (spec.command == "sweep") {
            payload = csv_sweep(spec);
        } else if (spec.command == "table1") {
            payload = csv_table1(spec);
        } else if (spec.command == "verify") {
            VerifyOptions opt;
            opt.corrupt_kraus = spec.corrupt_kraus;
            auto report = verify(opt);
            payload = report.text();
            if (!report.ok()) {
                for (const auto& c : report.checks) {
                    if (!c.passed) {
                        err << "error: verification failed: " << c.name << '\n';
                        break;
                    }
                }
                code = kVerification;
            }
        } else {
            err << "error: unknown command '" << spec.command << "'\n";
            return kUsage;
        }
        if (spec.out.empty()) {
            out << payload;
        } else {
            std::ofstream file(spec.out, std::ios::binary);
            if (!file) {
                err << "error: cannot open output file '" << spec.out << "'\n";
                return kUsage;
            }
            file << payload;
        }
        return code;
    } catch (const PreconditionError& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const NumericalError& e) {
        err << "error: " << e.what() << '\n';
        return kNumerical;
    }
}

}  // namespace qpanoise::experiments
