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

#include "nlqm/observables.h"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace nlqm {

namespace {

void require_square_hermitian(const ComplexMatrix &m, const char *what) {
    if (m.rows() != m.cols() || m.rows() < 1) {
        throw DimensionError(std::string(what) + ": operator must be square and non-empty");
    }
    if (!m.allFinite()) {
        throw PreconditionError(std::string(what) + ": operator has non-finite entries");
    }
    if (!is_hermitian(m, tolerance::kStructural)) {
        throw PreconditionError(std::string(what) + ": operator is not Hermitian");
    }
}

// Exact Hermitian part; removes rounding asymmetry left in user input.
ComplexMatrix hermitian_part(const ComplexMatrix &m) {
    ComplexMatrix h = (m + m.adjoint()) / 2.0;
    for (Eigen::Index i = 0; i < h.rows(); i++) {
        h(i, i) = h(i, i).real();
    }
    return h;
}

double ipow(double base, int exponent) {
    double out = 1.0;
    for (int i = 0; i < exponent; i++) {
        out *= base;
    }
    return out;
}

}  // namespace

FunctionalObservable::FunctionalObservable(int dim, ObservableKind kind, Evaluator eval)
    : dim_(dim), kind_(std::move(kind)), eval_(std::make_shared<const Evaluator>(std::move(eval))) {
    if (dim < 1) {
        throw DimensionError("FunctionalObservable: dimension must be >= 1");
    }
}

double FunctionalObservable::operator()(const PureState &psi) const {
    if (psi.dim() != dim_) {
        throw DimensionError("FunctionalObservable: state of dim " + std::to_string(psi.dim()) +
                             " for observable of dim " + std::to_string(dim_));
    }
    return (*eval_)(psi.vec());
}

std::string FunctionalObservable::kind_name() const {
    struct Visitor {
        std::string operator()(const QuadraticKind &) const { return "quadratic"; }
        std::string operator()(const PowerKind &) const { return "power"; }
        std::string operator()(const CustomKind &k) const { return k.label; }
    };
    return std::visit(Visitor{}, kind_);
}

const ComplexMatrix *FunctionalObservable::quadratic_operator() const {
    if (const auto *q = std::get_if<QuadraticKind>(&kind_)) {
        return &q->op;
    }
    return nullptr;
}

FunctionalObservable quadratic(ComplexMatrix op) {
    require_square_hermitian(op, "quadratic");
    ComplexMatrix h = hermitian_part(op);
    int dim = static_cast<int>(h.rows());
    return FunctionalObservable(dim, QuadraticKind{h}, [h](const ComplexVector &v) { return expectation(h, v); });
}

FunctionalObservable power(ComplexMatrix op, int exponent) {
    require_square_hermitian(op, "power");
    if (exponent < 2) {
        throw PreconditionError("power: exponent must be >= 2");
    }
    ComplexMatrix h = hermitian_part(op);
    int dim = static_cast<int>(h.rows());
    return FunctionalObservable(dim, PowerKind{h, exponent},
                                [h, exponent](const ComplexVector &v) { return ipow(expectation(h, v), exponent); });
}

FunctionalObservable constant(int dim, double value) {
    return quadratic(value * ComplexMatrix::Identity(dim, dim));
}

FunctionalObservable custom(int dim, FunctionalObservable::Evaluator eval, std::string label) {
    FunctionalObservable f(dim, CustomKind{std::move(label)}, std::move(eval));
    RandomStream rng = RandomStream::derive(0, {0x7261u});
    for (int trial = 0; trial < 10; trial++) {
        ComplexVector psi = random_pure(dim, rng);
        double theta = rng.uniform(0.0, 2.0 * std::numbers::pi);
        double a = f.evaluate(psi);
        double b = f.evaluate(std::polar(1.0, theta) * psi);
        if (!std::isfinite(a) || !std::isfinite(b)) {
            throw PreconditionError("custom: evaluator returned a non-finite value");
        }
        if (std::abs(a - b) > tolerance::kStructural * std::max(1.0, std::abs(a))) {
            throw PreconditionError("custom: evaluator is not invariant under a global phase");
        }
    }
    return f;
}

FunctionalObservable operator+(const FunctionalObservable &f, const FunctionalObservable &g) {
    if (f.dim() != g.dim()) {
        throw DimensionError("observable sum: dimension mismatch");
    }
    if (f.is_quadratic() && g.is_quadratic()) {
        return quadratic(*f.quadratic_operator() + *g.quadratic_operator());
    }
    return FunctionalObservable(f.dim(), CustomKind{"combination"},
                                [f, g](const ComplexVector &v) { return f.evaluate(v) + g.evaluate(v); });
}

FunctionalObservable operator*(double scale, const FunctionalObservable &f) {
    if (f.is_quadratic()) {
        return quadratic(scale * *f.quadratic_operator());
    }
    return FunctionalObservable(f.dim(), CustomKind{"combination"},
                                [scale, f](const ComplexVector &v) { return scale * f.evaluate(v); });
}

CountingObservable CountingObservable::wrap(FunctionalObservable f, int samples, std::uint64_t seed) {
    constexpr double kSlack = 1e-12;
    auto check = [&](const ComplexVector &v) {
        double value = f.evaluate(v);
        if (!(value >= -kSlack && value <= 1.0 + kSlack)) {
            throw PreconditionError("CountingObservable: value " + std::to_string(value) + " outside [0, 1]");
        }
    };
    for (int i = 0; i < f.dim(); i++) {
        check(basis_vector(f.dim(), i));
    }
    RandomStream rng = RandomStream::derive(seed, {0x636fu});
    for (int s = 0; s < samples; s++) {
        check(random_pure(f.dim(), rng));
    }
    return CountingObservable(std::move(f));
}

double ensemble_average(const FunctionalObservable &f, const Ensemble &ens) {
    if (f.dim() != ens.dim()) {
        throw DimensionError("ensemble_average: observable and ensemble dimensions differ");
    }
    double total = 0.0;
    for (const EnsembleMember &m : ens.members()) {
        total += m.weight * f.evaluate(m.state.vec());
    }
    return total;
}

ComplexMatrix polarization_reconstruct(const FunctionalObservable &f) {
    const int d = f.dim();
    const double s = 1.0 / std::numbers::sqrt2;
    ComplexMatrix out = ComplexMatrix::Zero(d, d);
    for (int j = 0; j < d; j++) {
        out(j, j) = f.evaluate(basis_vector(d, j));
    }
    for (int j = 0; j < d; j++) {
        for (int k = j + 1; k < d; k++) {
            double mean = (out(j, j).real() + out(k, k).real()) / 2.0;
            ComplexVector plus = ComplexVector::Zero(d);
            plus(j) = s;
            plus(k) = s;
            ComplexVector twisted = ComplexVector::Zero(d);
            twisted(j) = s;
            twisted(k) = Complex(0.0, s);
            // For f = <psi|G|psi>: f(plus) = mean + Re G_jk, f(twisted) = mean - Im G_jk.
            double re = f.evaluate(plus) - mean;
            double im = mean - f.evaluate(twisted);
            out(j, k) = Complex(re, im);
            out(k, j) = Complex(re, -im);
        }
    }
    return out;
}

double quadraticity_residual(const FunctionalObservable &f, const ComplexMatrix &op, int samples,
                             RandomStream &rng) {
    if (op.rows() != f.dim() || op.cols() != f.dim()) {
        throw DimensionError("quadraticity_residual: operator dimension differs from observable");
    }
    if (samples < 1) {
        throw PreconditionError("quadraticity_residual: samples must be >= 1");
    }
    double worst = 0.0;
    for (int s = 0; s < samples; s++) {
        ComplexVector psi = random_pure(f.dim(), rng);
        worst = std::max(worst, std::abs(f.evaluate(psi) - expectation(op, psi)));
    }
    return worst;
}

}  // namespace nlqm
