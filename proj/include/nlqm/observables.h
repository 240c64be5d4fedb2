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

#ifndef NLQM_OBSERVABLES_H
#define NLQM_OBSERVABLES_H

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <variant>

#include "nlqm/states.h"

namespace nlqm {

/// f(psi) = <psi|F|psi>.
struct QuadraticKind {
    ComplexMatrix op;
};

/// f(psi) = <psi|P|psi>^k, the stock non-quadratic family.
struct PowerKind {
    ComplexMatrix op;
    int exponent;
};

/// Opaque evaluator (including linear combinations that are not quadratic).
struct CustomKind {
    std::string label;
};

using ObservableKind = std::variant<QuadraticKind, PowerKind, CustomKind>;

/// A real-valued function on the unit sphere of H_B, representing a
/// statistical average. Immutable and cheap to copy; the evaluator is shared.
class FunctionalObservable {
   public:
    using Evaluator = std::function<double(const ComplexVector &)>;

    FunctionalObservable(int dim, ObservableKind kind, Evaluator eval);

    /// Checked evaluation.
    double operator()(const PureState &psi) const;
    /// Unchecked evaluation on a vector the caller knows to be a unit vector
    /// of the right dimension.
    double evaluate(const ComplexVector &unit) const { return (*eval_)(unit); }

    int dim() const { return dim_; }
    const ObservableKind &kind() const { return kind_; }
    std::string kind_name() const;
    bool is_quadratic() const { return std::holds_alternative<QuadraticKind>(kind_); }
    /// The operator F when the observable is known to be quadratic.
    const ComplexMatrix *quadratic_operator() const;

   private:
    int dim_;
    ObservableKind kind_;
    std::shared_ptr<const Evaluator> eval_;
};

/// Throws PreconditionError unless F is Hermitian within 1e-12.
FunctionalObservable quadratic(ComplexMatrix op);

/// Throws PreconditionError unless P is Hermitian and k >= 2.
FunctionalObservable power(ComplexMatrix op, int exponent);

/// Constant observable f = c (quadratic with F = c I).
FunctionalObservable constant(int dim, double value);

/// Wraps an arbitrary evaluator. Ray invariance is spot-checked on 10 random
/// phases at construction; a failure throws PreconditionError.
FunctionalObservable custom(int dim, FunctionalObservable::Evaluator eval, std::string label = "custom");

/// Pointwise linear combinations. Quadratic inputs stay quadratic.
FunctionalObservable operator+(const FunctionalObservable &f, const FunctionalObservable &g);
FunctionalObservable operator*(double scale, const FunctionalObservable &f);

/// A functional observable known (by sampling) to take values in [0, 1].
class CountingObservable {
   public:
    /// Checks 0 <= f <= 1 on the computational basis and `samples` Haar points.
    static CountingObservable wrap(FunctionalObservable f, int samples = 1000, std::uint64_t seed = 0);

    const FunctionalObservable &observable() const { return f_; }
    double operator()(const PureState &psi) const { return f_(psi); }
    double evaluate(const ComplexVector &unit) const { return f_.evaluate(unit); }
    int dim() const { return f_.dim(); }

   private:
    explicit CountingObservable(FunctionalObservable f) : f_(std::move(f)) {}
    FunctionalObservable f_;
};

/// f[b] = sum_i p_i f(b_i), exact.
double ensemble_average(const FunctionalObservable &f, const Ensemble &ens);

/// Hermitian F read off f by polarization on e_j, (e_j + e_k)/sqrt2 and
/// (e_j + i e_k)/sqrt2. Exact (up to rounding) when f is quadratic.
ComplexMatrix polarization_reconstruct(const FunctionalObservable &f);

/// max over `samples` Haar states of |f(psi) - <psi|F|psi>|.
double quadraticity_residual(const FunctionalObservable &f, const ComplexMatrix &op, int samples,
                             RandomStream &rng);

}  // namespace nlqm

#endif  // NLQM_OBSERVABLES_H
