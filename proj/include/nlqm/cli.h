// Copyright 2026 The nlqm Authors
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

#ifndef NLQM_CLI_H
#define NLQM_CLI_H

#include <cstdint>
#include <optional>
#include <string>

#include "nlqm/json_io.h"
#include "nlqm/plot_data.h"

namespace nlqm::cli {

enum class Command { kGap, kSimulate, kCapacity, kAffinity, kGleason, kCertify };
enum class OutputFormat { kJson, kCsv };
/// What the caller expects; used for CI gating through the exit code.
enum class Expectation { kUnspecified, kSignal, kNoSignal };

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitUnexpectedSignal = 2;

Command parse_command(const std::string &name);
std::string to_string(Command c);

struct RunConfig {
    Command command = Command::kGap;
    std::optional<Scenario> scenario;
    std::optional<FunctionalObservable> observable;

    std::int64_t samples = 100000;
    int chords = 1000;
    int affine_checks = 0;
    int block = 1000;
    int trials = 1000;
    int resamples = 32;
    int subspaces = 4;
    int reconstruction_checks = 64;

    std::uint64_t seed = 0;
    int workers = 1;
    double tolerance = tolerance::kVerdict;
    double z_threshold = kDefaultZThreshold;
    Expectation expect = Expectation::kUnspecified;

    /// Empty writes to stdout.
    std::string out;
    OutputFormat format = OutputFormat::kJson;
    std::optional<PlotKind> plot;
    /// simulate only: per-sample f values as CSV.
    std::string dump_samples;
};

/// Parses and validates a config document. Errors are ConfigError with the
/// path of the offending field.
RunConfig parse_config(const Json &j);

/// Throws ConfigError if counts, tolerances or the presence of a scenario /
/// observable do not fit the command.
void validate(const RunConfig &config);

/// Normal form of a config: every field explicit, complex numbers as pairs.
Json config_to_json(const RunConfig &config);

struct RunResult {
    int exit_code = kExitOk;
    bool signal = false;
    /// The JSON report, or CSV plot data when format is csv.
    std::string output;
};

/// Dispatches the command. Writes `output` to config.out when set (and the
/// sample dump when requested). Byte-identical for a fixed config and any
/// worker count.
RunResult run(const RunConfig &config);

}  // namespace nlqm::cli

#endif  // NLQM_CLI_H
