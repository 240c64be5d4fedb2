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

#include "nlqm/plot_data.h"

#include <algorithm>
#include <cstdio>

namespace nlqm {

namespace {

constexpr int kHistogramBins = 20;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void bloch_row(std::string &out, size_t witness, const char *role, const BlochPoint &p, double f, double violation) {
    out += std::to_string(witness) + "," + role + "," + num(p.x) + "," + num(p.y) + "," + num(p.z) + "," + num(f) +
           "," + num(violation) + "\n";
}

}  // namespace

PlotKind parse_plot_kind(const std::string &name) {
    if (name == "bloch") {
        return PlotKind::kBloch;
    }
    if (name == "convergence") {
        return PlotKind::kConvergence;
    }
    if (name == "violation-histogram") {
        return PlotKind::kViolationHistogram;
    }
    throw PreconditionError("unknown plot kind '" + name + "'");
}

std::string to_string(PlotKind kind) {
    switch (kind) {
        case PlotKind::kBloch:
            return "bloch";
        case PlotKind::kConvergence:
            return "convergence";
        case PlotKind::kViolationHistogram:
            return "violation-histogram";
    }
    return "unknown";
}

std::string emit_plot_data(const SignalReport &report, PlotKind kind) {
    if (kind != PlotKind::kConvergence) {
        throw PlotKindMismatch("a signal report only provides convergence plot data, not " + to_string(kind));
    }
    std::string out = "n,mc_gap,stderr\n";
    for (const ConvergencePoint &c : report.convergence) {
        out += std::to_string(c.n) + "," + num(c.mc_gap) + "," + num(c.standard_error) + "\n";
    }
    return out;
}

std::string emit_plot_data(const Certificate &certificate, PlotKind kind) {
    if (kind == PlotKind::kConvergence) {
        throw PlotKindMismatch("a certificate has no convergence series");
    }
    if (kind == PlotKind::kBloch) {
        if (certificate.method != "affinity") {
            throw PlotKindMismatch("bloch plot data needs an affinity certificate, got " + certificate.method);
        }
        std::string out = "witness,role,x,y,z,f,violation\n";
        for (size_t i = 0; i < certificate.witnesses.size(); i++) {
            const auto *w = std::get_if<ChordWitness>(&certificate.witnesses[i]);
            if (w == nullptr) {
                continue;
            }
            bloch_row(out, i, "x1", w->x1, w->f1, w->violation);
            bloch_row(out, i, "x2", w->x2, w->f2, w->violation);
            bloch_row(out, i, "x1p", w->x1p, w->f1p, w->violation);
            bloch_row(out, i, "x2p", w->x2p, w->f2p, w->violation);
            bloch_row(out, i, "x", w->x, w->lhs, w->violation);
        }
        return out;
    }

    std::string out = "bin_lo,bin_hi,count\n";
    if (certificate.witnesses.empty()) {
        return out;
    }
    double worst = 0.0;
    for (const Witness &w : certificate.witnesses) {
        worst = std::max(worst, witness_violation(w));
    }
    std::vector<long> counts(kHistogramBins, 0);
    for (const Witness &w : certificate.witnesses) {
        double v = witness_violation(w);
        int bin = worst > 0.0 ? static_cast<int>(v / worst * kHistogramBins) : 0;
        counts[static_cast<size_t>(std::clamp(bin, 0, kHistogramBins - 1))]++;
    }
    for (int b = 0; b < kHistogramBins; b++) {
        out += num(worst * b / kHistogramBins) + "," + num(worst * (b + 1) / kHistogramBins) + "," +
               std::to_string(counts[static_cast<size_t>(b)]) + "\n";
    }
    return out;
}

std::string samples_csv(const std::vector<double> &letter_a, const std::vector<double> &letter_a_prime) {
    std::string out = "letter,index,f\n";
    for (size_t i = 0; i < letter_a.size(); i++) {
        out += "0," + std::to_string(i) + "," + num(letter_a[i]) + "\n";
    }
    for (size_t i = 0; i < letter_a_prime.size(); i++) {
        out += "1," + std::to_string(i) + "," + num(letter_a_prime[i]) + "\n";
    }
    return out;
}

}  // namespace nlqm
