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

#include "nlqm/cli.h"

#include <cmath>
#include <fstream>
#include <set>

namespace nlqm::cli {

namespace {

const std::set<std::string> kKnownKeys = {
    "command",    "scenario", "observable", "samples",    "chords",   "affine_checks", "block",
    "trials",     "resamples", "subspaces", "reconstruction_checks",  "seed",          "workers",
    "tolerance",  "z_threshold", "expect",  "out",        "format",   "plot",          "dump_samples"};

std::int64_t get_count(const Json &j, const char *key, std::int64_t fallback) {
    if (!j.contains(key)) {
        return fallback;
    }
    const Json &v = j[key];
    if (!v.is_number_integer()) {
        throw ConfigError(key, "expected an integer");
    }
    return v.get<std::int64_t>();
}

int get_int(const Json &j, const char *key, int fallback) {
    std::int64_t v = get_count(j, key, fallback);
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
        throw ConfigError(key, "value out of range");
    }
    return static_cast<int>(v);
}

double get_real(const Json &j, const char *key, double fallback) {
    if (!j.contains(key)) {
        return fallback;
    }
    if (!j[key].is_number()) {
        throw ConfigError(key, "expected a number");
    }
    return j[key].get<double>();
}

std::string get_string(const Json &j, const char *key, const std::string &fallback) {
    if (!j.contains(key)) {
        return fallback;
    }
    if (!j[key].is_string()) {
        throw ConfigError(key, "expected a string");
    }
    return j[key].get<std::string>();
}

std::string expectation_name(Expectation e) {
    switch (e) {
        case Expectation::kSignal:
            return "signal";
        case Expectation::kNoSignal:
            return "no-signal";
        case Expectation::kUnspecified:
            break;
    }
    return "unspecified";
}

const FunctionalObservable &target_observable(const RunConfig &c) {
    return c.observable ? *c.observable : c.scenario->observable();
}

RunOptions run_options(const RunConfig &c) {
    return {c.seed, c.workers};
}

Certificate certify_observable(const RunConfig &c, bool force_gleason) {
    const FunctionalObservable &f = target_observable(c);
    if (f.dim() == 2 && !force_gleason) {
        AffinityOptions opts;
        opts.chords = c.chords;
        opts.affine_checks = c.affine_checks;
        opts.tolerance = c.tolerance;
        opts.run = run_options(c);
        return affinity_scan(f, opts);
    }
    GleasonOptions opts;
    opts.subspaces_per_dim = c.subspaces;
    opts.resamples = c.resamples;
    opts.reconstruction_checks = c.reconstruction_checks;
    opts.tolerance = c.tolerance;
    opts.run = run_options(c);
    return gleason_certify(CountingObservable::wrap(f, 1000, c.seed), opts);
}

PlotKind default_plot(const RunConfig &c) {
    switch (c.command) {
        case Command::kSimulate:
            return PlotKind::kConvergence;
        case Command::kAffinity:
            return PlotKind::kBloch;
        case Command::kGleason:
            return PlotKind::kViolationHistogram;
        case Command::kCertify:
            return target_observable(c).dim() == 2 ? PlotKind::kBloch : PlotKind::kViolationHistogram;
        case Command::kGap:
        case Command::kCapacity:
            break;
    }
    throw PlotKindMismatch("command '" + to_string(c.command) + "' has no plot data; use --format json");
}

void write_file(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    out << text;
}

}  // namespace

Command parse_command(const std::string &name) {
    static const std::pair<const char *, Command> table[] = {
        {"gap", Command::kGap},         {"simulate", Command::kSimulate}, {"capacity", Command::kCapacity},
        {"affinity", Command::kAffinity}, {"gleason", Command::kGleason},   {"certify", Command::kCertify}};
    for (const auto &[n, c] : table) {
        if (name == n) {
            return c;
        }
    }
    throw ConfigError("command", "unknown command '" + name + "'");
}

std::string to_string(Command c) {
    switch (c) {
        case Command::kGap:
            return "gap";
        case Command::kSimulate:
            return "simulate";
        case Command::kCapacity:
            return "capacity";
        case Command::kAffinity:
            return "affinity";
        case Command::kGleason:
            return "gleason";
        case Command::kCertify:
            return "certify";
    }
    return "unknown";
}

RunConfig parse_config(const Json &j) {
    if (!j.is_object()) {
        throw ConfigError("<root>", "expected an object");
    }
    for (const auto &item : j.items()) {
        if (!kKnownKeys.contains(item.key())) {
            throw ConfigError(item.key(), "unknown field");
        }
    }
    RunConfig c;
    c.command = parse_command(get_string(j, "command", "gap"));
    if (j.contains("scenario")) {
        c.scenario = parse_scenario(j["scenario"], "scenario");
    }
    if (j.contains("observable")) {
        c.observable = parse_observable(j["observable"], "observable");
    }
    c.samples = get_count(j, "samples", c.samples);
    c.chords = get_int(j, "chords", c.chords);
    c.affine_checks = get_int(j, "affine_checks", c.affine_checks);
    c.block = get_int(j, "block", c.block);
    c.trials = get_int(j, "trials", c.trials);
    c.resamples = get_int(j, "resamples", c.resamples);
    c.subspaces = get_int(j, "subspaces", c.subspaces);
    c.reconstruction_checks = get_int(j, "reconstruction_checks", c.reconstruction_checks);
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned()) {
            throw ConfigError("seed", "expected a non-negative 64-bit integer");
        }
        c.seed = j["seed"].get<std::uint64_t>();
    }
    c.workers = get_int(j, "workers", c.workers);
    c.tolerance = get_real(j, "tolerance", c.tolerance);
    c.z_threshold = get_real(j, "z_threshold", c.z_threshold);
    std::string expect = get_string(j, "expect", "unspecified");
    if (expect == "signal") {
        c.expect = Expectation::kSignal;
    } else if (expect == "no-signal") {
        c.expect = Expectation::kNoSignal;
    } else if (expect != "unspecified") {
        throw ConfigError("expect", "expected 'signal', 'no-signal' or 'unspecified'");
    }
    c.out = get_string(j, "out", "");
    std::string format = get_string(j, "format", "json");
    if (format == "json") {
        c.format = OutputFormat::kJson;
    } else if (format == "csv") {
        c.format = OutputFormat::kCsv;
    } else {
        throw ConfigError("format", "expected 'json' or 'csv'");
    }
    if (j.contains("plot")) {
        try {
            c.plot = parse_plot_kind(get_string(j, "plot", ""));
        } catch (const PreconditionError &e) {
            throw ConfigError("plot", e.what());
        }
    }
    c.dump_samples = get_string(j, "dump_samples", "");
    validate(c);
    return c;
}

void validate(const RunConfig &c) {
    if (c.samples < 2) {
        throw ConfigError("samples", "must be >= 2");
    }
    const std::pair<const char *, int> counts[] = {{"chords", c.chords},       {"block", c.block},
                                                   {"trials", c.trials},       {"resamples", c.resamples},
                                                   {"workers", c.workers}};
    for (const auto &[name, value] : counts) {
        if (value < 1) {
            throw ConfigError(name, "must be >= 1");
        }
    }
    if (c.resamples < 2) {
        throw ConfigError("resamples", "must be >= 2");
    }
    for (const auto &[name, value] : {std::pair<const char *, int>{"affine_checks", c.affine_checks},
                                      {"subspaces", c.subspaces},
                                      {"reconstruction_checks", c.reconstruction_checks}}) {
        if (value < 0) {
            throw ConfigError(name, "must be >= 0");
        }
    }
    if (!(c.tolerance > 0.0) || !std::isfinite(c.tolerance)) {
        throw ConfigError("tolerance", "must be a positive number");
    }
    if (!(c.z_threshold > 0.0) || !std::isfinite(c.z_threshold)) {
        throw ConfigError("z_threshold", "must be a positive number");
    }
    switch (c.command) {
        case Command::kGap:
        case Command::kSimulate:
        case Command::kCapacity:
            if (!c.scenario) {
                throw ConfigError("scenario", "required by command '" + to_string(c.command) + "'");
            }
            break;
        case Command::kAffinity:
        case Command::kGleason:
        case Command::kCertify: {
            if (!c.observable && !c.scenario) {
                throw ConfigError("observable", "required by command '" + to_string(c.command) + "'");
            }
            int dim = target_observable(c).dim();
            if (c.command == Command::kAffinity && dim != 2) {
                throw ConfigError("observable", "affinity needs a dim-2 observable, got dim " + std::to_string(dim));
            }
            if (c.command == Command::kGleason && dim < 3) {
                throw ConfigError("observable", "gleason needs dim >= 3, got dim " + std::to_string(dim));
            }
            if (c.command == Command::kCertify && dim < 2) {
                throw ConfigError("observable", "certify needs dim >= 2");
            }
            break;
        }
    }
    if (!c.dump_samples.empty() && c.command != Command::kSimulate) {
        throw ConfigError("dump_samples", "only the simulate command produces samples");
    }
}

Json config_to_json(const RunConfig &c) {
    Json j = {{"command", to_string(c.command)},
              {"samples", c.samples},
              {"chords", c.chords},
              {"affine_checks", c.affine_checks},
              {"block", c.block},
              {"trials", c.trials},
              {"resamples", c.resamples},
              {"subspaces", c.subspaces},
              {"reconstruction_checks", c.reconstruction_checks},
              {"seed", c.seed},
              {"workers", c.workers},
              {"tolerance", c.tolerance},
              {"z_threshold", c.z_threshold},
              {"expect", expectation_name(c.expect)},
              {"out", c.out},
              {"format", c.format == OutputFormat::kJson ? "json" : "csv"},
              {"dump_samples", c.dump_samples}};
    if (c.scenario) {
        j["scenario"] = to_json(*c.scenario);
    }
    if (c.observable) {
        j["observable"] = to_json(*c.observable);
    }
    if (c.plot) {
        j["plot"] = to_string(*c.plot);
    }
    return j;
}

RunResult run(const RunConfig &c) {
    validate(c);
    RunResult result;
    Json report;
    std::string csv;
    const bool want_csv = c.format == OutputFormat::kCsv || c.plot.has_value();
    const PlotKind plot = c.plot ? *c.plot : (want_csv ? default_plot(c) : PlotKind::kBloch);

    switch (c.command) {
        case Command::kGap: {
            SignalReport r = exact_gap(*c.scenario);
            result.signal = std::abs(r.gap) > c.tolerance;
            report = to_json(r);
            if (want_csv) {
                csv = emit_plot_data(r, plot);
            }
            break;
        }
        case Command::kSimulate: {
            SignalReport r = monte_carlo_report(*c.scenario, c.samples, run_options(c));
            result.signal = signal_detected(r, c.z_threshold);
            report = to_json(r);
            if (want_csv) {
                csv = emit_plot_data(r, plot);
            }
            if (!c.dump_samples.empty()) {
                write_file(c.dump_samples,
                           samples_csv(sample_values(*c.scenario, Letter::kBasisA, c.samples, run_options(c)),
                                       sample_values(*c.scenario, Letter::kBasisAPrime, c.samples, run_options(c))));
            }
            break;
        }
        case Command::kCapacity: {
            ChannelReport r = channel_capacity(*c.scenario, c.block, c.trials, run_options(c));
            // Error count significantly below chance (one-sided binomial z).
            double z = (0.5 - r.bit_error_rate) / std::sqrt(0.25 / r.trials);
            result.signal = std::abs(r.gap) > c.tolerance && z >= c.z_threshold;
            report = to_json(r);
            if (want_csv) {
                throw PlotKindMismatch("command 'capacity' has no plot data; use --format json");
            }
            break;
        }
        case Command::kAffinity:
        case Command::kGleason:
        case Command::kCertify: {
            Certificate cert = certify_observable(c, c.command == Command::kGleason);
            result.signal = cert.verdict == Verdict::kNonQuadratic;
            report = to_json(cert);
            if (want_csv) {
                csv = emit_plot_data(cert, plot);
            }
            break;
        }
    }

    if (want_csv) {
        result.output = csv;
    } else {
        Json doc = {{"command", to_string(c.command)},
                    {"seed", c.seed},
                    {"tolerance", c.tolerance},
                    {"expect", expectation_name(c.expect)},
                    {"signal_detected", result.signal},
                    {"report", report}};
        result.output = doc.dump(2) + "\n";
    }
    result.exit_code = (c.expect == Expectation::kNoSignal && result.signal) ? kExitUnexpectedSignal : kExitOk;
    if (!c.out.empty()) {
        write_file(c.out, result.output);
    }
    return result;
}

}  // namespace nlqm::cli
