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

#include "nlqm/states.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace nlqm {

namespace {

constexpr double kZeroBranch = 1e-12;

void require_orthonormal(std::span<const PureState> basis, double tol, const char *what) {
    std::vector<ComplexVector> vs = vectors_of(basis);
    if (orthonormality_error(vs) > tol) {
        throw PreconditionError(std::string(what) + ": basis is not orthonormal");
    }
}

}  // namespace

PureState PureState::from_vector(ComplexVector v, double tol) {
    if (v.size() < 1) {
        throw DimensionError("PureState: empty vector");
    }
    if (!v.allFinite()) {
        throw PreconditionError("PureState: non-finite amplitude");
    }
    if (std::abs(v.norm() - 1.0) > tol) {
        throw PreconditionError("PureState: vector is not normalized (norm " + std::to_string(v.norm()) + ")");
    }
    return PureState(std::move(v));
}

PureState PureState::normalized(const ComplexVector &v) {
    double n = v.norm();
    if (!(n > 1e-300) || !v.allFinite()) {
        throw PreconditionError("PureState: cannot normalize a zero or non-finite vector");
    }
    return PureState(v / n);
}

PureState PureState::basis(int dim, int index) {
    return PureState(basis_vector(dim, index));
}

bool same_ray(const PureState &a, const PureState &b, double tol) {
    if (a.dim() != b.dim()) {
        return false;
    }
    return frobenius_distance(a.projector(), b.projector()) < tol;
}

std::vector<ComplexVector> vectors_of(std::span<const PureState> states) {
    std::vector<ComplexVector> out;
    out.reserve(states.size());
    for (const PureState &s : states) {
        out.push_back(s.vec());
    }
    return out;
}

ComplexMatrix as_columns(std::span<const PureState> states) {
    if (states.empty()) {
        return {};
    }
    ComplexMatrix m(states.front().dim(), static_cast<Eigen::Index>(states.size()));
    for (size_t k = 0; k < states.size(); k++) {
        if (states[k].dim() != m.rows()) {
            throw DimensionError("as_columns: states of unequal dimension");
        }
        m.col(static_cast<Eigen::Index>(k)) = states[k].vec();
    }
    return m;
}

ComplexVector EntangledState::flatten() const {
    ComplexVector psi = ComplexVector::Zero(static_cast<Eigen::Index>(dim_a_) * dim_b_);
    for (size_t i = 0; i < alphas_.size(); i++) {
        psi += alphas_[i] * tensor(alice_[i].vec(), bob_[i].vec());
    }
    return psi;
}

EntangledState build_entangled(std::vector<Complex> alphas, std::vector<PureState> alice_basis,
                               std::vector<PureState> bob_states) {
    if (alphas.empty()) {
        throw PreconditionError("build_entangled: at least one branch is required");
    }
    if (alphas.size() != alice_basis.size() || alphas.size() != bob_states.size()) {
        throw DimensionError("build_entangled: alphas, Alice basis and Bob states differ in length");
    }
    int dim_a = alice_basis.front().dim();
    int dim_b = bob_states.front().dim();
    for (size_t i = 0; i < alphas.size(); i++) {
        if (alice_basis[i].dim() != dim_a || bob_states[i].dim() != dim_b) {
            throw DimensionError("build_entangled: inconsistent state dimensions in branch " + std::to_string(i));
        }
    }
    if (static_cast<int>(alphas.size()) > dim_a) {
        throw DimensionError("build_entangled: more branches than dim H_A");
    }
    double total = 0.0;
    for (Complex a : alphas) {
        total += std::norm(a);
    }
    if (std::abs(total - 1.0) > tolerance::kStructural) {
        throw PreconditionError("build_entangled: sum |alpha_i|^2 = " + std::to_string(total) + ", expected 1");
    }
    require_orthonormal(alice_basis, tolerance::kStructural, "build_entangled");

    EntangledState s;
    s.alphas_ = std::move(alphas);
    s.alice_ = std::move(alice_basis);
    s.bob_ = std::move(bob_states);
    s.dim_a_ = dim_a;
    s.dim_b_ = dim_b;
    if (std::abs(s.flatten().norm() - 1.0) > tolerance::kStructural) {
        throw PreconditionError("build_entangled: flattened state is not normalized");
    }
    return s;
}

double subspace_mismatch(std::span<const PureState> reference, std::span<const PureState> candidate) {
    if (reference.size() != candidate.size()) {
        return std::numeric_limits<double>::infinity();
    }
    double worst = 0.0;
    for (const PureState &c : candidate) {
        if (c.dim() != reference.front().dim()) {
            return std::numeric_limits<double>::infinity();
        }
        ComplexVector residual = c.vec();
        for (const PureState &r : reference) {
            residual -= r.vec().dot(c.vec()) * r.vec();
        }
        worst = std::max(worst, residual.norm());
    }
    return worst;
}

EntangledState rebase_alice(const EntangledState &state, const std::vector<PureState> &new_basis) {
    require_orthonormal(new_basis, tolerance::kStructural, "rebase_alice");
    if (subspace_mismatch(state.alice_basis(), new_basis) > tolerance::kDerived) {
        throw PreconditionError("rebase_alice: new basis does not span the same A-subspace");
    }
    const int n = state.branches();
    EntangledState out;
    out.dim_a_ = state.dim_a();
    out.dim_b_ = state.dim_b();
    out.alice_ = new_basis;
    out.alphas_.reserve(n);
    out.bob_.reserve(n);
    for (int j = 0; j < n; j++) {
        // alpha'_j b'_j = sum_i alpha_i <A'_j|A_i> b_i
        ComplexVector w = ComplexVector::Zero(state.dim_b());
        for (int i = 0; i < n; i++) {
            w += state.alphas()[i] * inner(new_basis[j].vec(), state.alice_basis()[i].vec()) *
                 state.bob_states()[i].vec();
        }
        double a = w.norm();
        if (a < kZeroBranch) {
            out.alphas_.emplace_back(0.0);
            out.bob_.push_back(PureState::basis(state.dim_b(), 0));
        } else {
            out.alphas_.emplace_back(a);
            out.bob_.push_back(PureState::normalized(w));
        }
    }
    return out;
}

Ensemble Ensemble::from_members(std::vector<EnsembleMember> members) {
    if (members.empty()) {
        throw PreconditionError("Ensemble: no members");
    }
    int dim = members.front().state.dim();
    double total = 0.0;
    for (const EnsembleMember &m : members) {
        if (!(m.weight >= 0.0) || !std::isfinite(m.weight)) {
            throw PreconditionError("Ensemble: weights must be finite and non-negative");
        }
        if (m.state.dim() != dim) {
            throw DimensionError("Ensemble: members of unequal dimension");
        }
        total += m.weight;
    }
    if (std::abs(total - 1.0) > tolerance::kStructural) {
        throw PreconditionError("Ensemble: weights sum to " + std::to_string(total) + ", expected 1");
    }
    return Ensemble(std::move(members));
}

Ensemble conditional_ensemble(const EntangledState &state) {
    std::vector<EnsembleMember> members;
    for (int i = 0; i < state.branches(); i++) {
        double a = std::abs(state.alphas()[i]);
        if (a < kZeroBranch) {
            continue;
        }
        members.push_back({a * a, state.bob_states()[i]});
    }
    return Ensemble::from_members(std::move(members));
}

DensityMatrix DensityMatrix::from_matrix(ComplexMatrix m, double tol) {
    if (m.rows() != m.cols() || m.rows() < 1) {
        throw DimensionError("DensityMatrix: matrix must be square and non-empty");
    }
    if (!is_hermitian(m, tol)) {
        throw PreconditionError("DensityMatrix: matrix is not Hermitian");
    }
    if (std::abs(m.trace() - Complex(1.0)) > tol) {
        throw PreconditionError("DensityMatrix: trace is not 1");
    }
    if (min_eigenvalue(m) < -tol) {
        throw PreconditionError("DensityMatrix: matrix is not positive semidefinite");
    }
    return DensityMatrix(std::move(m));
}

DensityMatrix ensemble_density(const Ensemble &ens) {
    ComplexMatrix rho = ComplexMatrix::Zero(ens.dim(), ens.dim());
    for (const EnsembleMember &m : ens.members()) {
        rho += m.weight * m.state.projector();
    }
    return DensityMatrix::from_matrix(std::move(rho));
}

DensityMatrix reduced_density(const EntangledState &state) {
    return DensityMatrix::from_matrix(partial_trace_a(state.flatten(), state.dim_a(), state.dim_b()));
}

DensityComparison density_equal(const DensityMatrix &a, const DensityMatrix &b, double tol) {
    if (a.dim() != b.dim()) {
        throw DimensionError("density_equal: dimension mismatch");
    }
    double d = frobenius_distance(a.matrix(), b.matrix());
    return {d < tol, d};
}

}  // namespace nlqm
