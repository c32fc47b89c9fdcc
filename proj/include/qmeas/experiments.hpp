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

#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qmeas/dynamics.hpp"
#include "qmeas/weak.hpp"

// Named experiment registry behind the command-line tool. Every experiment
// produces a table of series (written as CSV or JSON) plus a list of
// self-checks with pinned tolerances; runs with fixed parameters and seed are
// byte-identical.

namespace qmeas {

inline constexpr const char* kVersion = "0.1.0";

using ParamValue = std::variant<double, long, std::string>;

struct ParamSpec {
    std::string name;
    std::string description;
    ParamValue default_value;
};

struct ExperimentInfo {
    std::string name;
    std::string description;  // what the output shows
    std::vector<ParamSpec> params;
};

const std::vector<ExperimentInfo>& experiment_catalog();

/// One line per experiment: name, summary, parameters with defaults.
std::string list_experiments();

enum class OutputFormat { Csv, Json };

struct ExperimentConfig {
    std::string experiment;
    std::map<std::string, ParamValue> parameters;  // missing keys take defaults
    std::string output_path;
    OutputFormat format = OutputFormat::Csv;
    std::optional<long> seed;
};

struct Check {
    std::string name;
    double expected = 0.0;
    double actual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct RunReport {
    std::string experiment;
    std::vector<Check> checks;
    std::vector<std::string> artifacts;
    double wall_time_seconds = 0.0;

    bool all_passed() const;
};

/// Run one experiment, write its data file, and report the self-checks.
/// Throws UnknownExperiment / InvalidParameter for bad configs and IoFailure
/// when the output cannot be written.
RunReport run(const ExperimentConfig& config);

}  // namespace qmeas
