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

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "nlqm/cli.h"

namespace {

nlqm::Json load_json(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw nlqm::ConfigError("--config", "cannot open '" + path + "'");
    }
    try {
        return nlqm::Json::parse(in);
    } catch (const nlqm::Json::parse_error &e) {
        throw nlqm::ConfigError(path, e.what());
    }
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Signaling simulator and no-signal certifiers for functional observables"};

    std::string command;
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::int64_t> samples;
    std::optional<std::string> out;
    std::optional<std::string> format;
    std::optional<double> tolerance;
    std::optional<int> workers;
    std::optional<std::string> plot;
    std::optional<std::string> dump_samples;
    bool normalize = false;

    app.add_option("command", command, "gap | simulate | capacity | affinity | gleason | certify (default: from config)");
    app.add_option("--config", config_path, "Scenario / observable config (JSON)")->required();
    app.add_option("--seed", seed, "Override the config seed");
    app.add_option("--samples", samples, "Override the Monte-Carlo sample count");
    app.add_option("--out", out, "Write the report here instead of stdout");
    app.add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--tolerance", tolerance, "Verdict / gap tolerance");
    app.add_option("--workers", workers, "Worker threads (results do not depend on it)");
    app.add_option("--plot", plot, "CSV plot data: bloch | convergence | violation-histogram")
        ->check(CLI::IsMember({"bloch", "convergence", "violation-histogram"}));
    app.add_option("--dump-samples", dump_samples, "simulate: write per-sample f values to this CSV");
    app.add_flag("--normalize", normalize, "Print the validated config in normal form and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : nlqm::cli::kExitUsage;
    }

    try {
        nlqm::Json j = load_json(config_path);
        if (!command.empty()) {
            j["command"] = command;
        }
        if (seed) {
            j["seed"] = *seed;
        }
        if (samples) {
            j["samples"] = *samples;
        }
        if (out) {
            j["out"] = *out;
        }
        if (format) {
            j["format"] = *format;
        }
        if (tolerance) {
            j["tolerance"] = *tolerance;
        }
        if (workers) {
            j["workers"] = *workers;
        }
        if (plot) {
            j["plot"] = *plot;
        }
        if (dump_samples) {
            j["dump_samples"] = *dump_samples;
        }
        nlqm::cli::RunConfig config = nlqm::cli::parse_config(j);
        if (normalize) {
            std::cout << nlqm::cli::config_to_json(config).dump(2) << "\n";
            return nlqm::cli::kExitOk;
        }
        nlqm::cli::RunResult result = nlqm::cli::run(config);
        if (config.out.empty()) {
            std::cout << result.output;
        }
        if (result.exit_code == nlqm::cli::kExitUnexpectedSignal) {
            std::cerr << "nlqm: signal detected where none was expected\n";
        }
        return result.exit_code;
    } catch (const nlqm::ConfigError &e) {
        std::cerr << "nlqm: config error: " << e.what() << "\n";
        return nlqm::cli::kExitUsage;
    } catch (const std::exception &e) {
        std::cerr << "nlqm: " << e.what() << "\n";
        return nlqm::cli::kExitUsage;
    }
}
