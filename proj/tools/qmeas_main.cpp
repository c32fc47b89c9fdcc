// Copyright 2026 The qmeas Authors
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

#include <array>
#include <charconv>
#include <iostream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "qmeas/experiments.hpp"

namespace {

std::string show(double value) {
    std::array<char, 64> buf{};
    auto result = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), result.ptr);
}

void print_report(const qmeas::RunReport& report) {
    int passed = 0;
    for (const auto& check : report.checks) {
        std::cout << "check " << check.name << ": expected=" << show(check.expected)
                  << " actual=" << show(check.actual) << " tol=" << show(check.tolerance)
                  << (check.pass ? " PASS" : " FAIL") << '\n';
        passed += check.pass ? 1 : 0;
    }
    std::cout << report.experiment << ": " << passed << "/" << report.checks.size()
              << " checks passed";
    for (const auto& artifact : report.artifacts) {
        std::cout << ", wrote " << artifact;
    }
    std::cout << " (" << show(report.wall_time_seconds) << " s)\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum measurement-dynamics experiments"};
    app.require_subcommand(1);

    CLI::App* list_cmd = app.add_subcommand("list", "list experiments and their parameters");

    CLI::App* run_cmd = app.add_subcommand("run", "run one experiment and write its data file");
    std::string experiment;
    run_cmd->add_option("experiment", experiment, "experiment name (see `list`)")->required();
    std::string out_path;
    run_cmd->add_option("--out", out_path, "output file path")->required();
    std::string format = "csv";
    run_cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));

    // One flag per known parameter; only flags the user actually passes are
    // forwarded, everything else keeps the experiment's defaults.
    const std::vector<std::string> double_params = {
        "omega0",    "lambda",    "epsilon",   "tau",       "theta-deg", "delta",
        "sigma",     "strength",  "t1",        "dt",        "t-total",   "grid-step",
        "tau-max",   "tau-step",  "delta-s",   "strong-tau", "theta-min", "theta-max",
        "theta-step"};
    std::map<std::string, double> double_store;
    std::map<std::string, CLI::Option*> double_opts;
    for (const auto& name : double_params) {
        double_opts[name] =
            run_cmd->add_option("--" + name, double_store[name], "experiment parameter " + name);
    }
    long trials = 0;
    CLI::Option* trials_opt = run_cmd->add_option("--trials", trials, "Monte Carlo trials");
    long seed = 0;
    CLI::Option* seed_opt = run_cmd->add_option("--seed", seed, "random number generator seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (list_cmd->parsed()) {
        std::cout << qmeas::list_experiments();
        return 0;
    }

    qmeas::ExperimentConfig config;
    config.experiment = experiment;
    config.output_path = out_path;
    config.format = format == "json" ? qmeas::OutputFormat::Json : qmeas::OutputFormat::Csv;
    for (const auto& name : double_params) {
        if (double_opts[name]->count() > 0) {
            config.parameters[name] = double_store[name];
        }
    }
    if (trials_opt->count() > 0) {
        config.parameters["trials"] = trials;
    }
    if (seed_opt->count() > 0) {
        config.seed = seed;
    }

    try {
        qmeas::RunReport report = qmeas::run(config);
        print_report(report);
        return report.all_passed() ? 0 : 1;
    } catch (const qmeas::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
