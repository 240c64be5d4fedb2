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

#ifndef NLQM_PLOT_DATA_H
#define NLQM_PLOT_DATA_H

#include <stdexcept>
#include <string>
#include <vector>

#include "nlqm/nosignal.h"
#include "nlqm/signaling.h"

namespace nlqm {

enum class PlotKind { kBloch, kConvergence, kViolationHistogram };

/// "bloch", "convergence" or "violation-histogram"; throws PreconditionError otherwise.
PlotKind parse_plot_kind(const std::string &name);
std::string to_string(PlotKind kind);

class PlotKindMismatch : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// CSV plot data. Column sets:
///   bloch:               witness,role,x,y,z,f,violation
///                        (roles x1, x2, x1p, x2p; role x carries the lhs mixture value)
///   convergence:         n,mc_gap,stderr
///   violation-histogram: bin_lo,bin_hi,count   (20 equal bins on [0, worst])
/// Rows follow witness / checkpoint order. A report without rows yields the
/// header line only. Throws PlotKindMismatch when the kind does not fit the report.
std::string emit_plot_data(const SignalReport &report, PlotKind kind);
std::string emit_plot_data(const Certificate &certificate, PlotKind kind);

/// letter,index,f rows for per-sample dumps.
std::string samples_csv(const std::vector<double> &letter_a, const std::vector<double> &letter_a_prime);

}  // namespace nlqm

#endif  // NLQM_PLOT_DATA_H
