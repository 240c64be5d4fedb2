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

#ifndef NLQM_STATES_H
#define NLQM_STATES_H

#include <span>
#include <vector>

#include "nlqm/hilbert.h"

namespace nlqm {

/// A unit vector. Two PureStates describe the same physical state when their
/// projectors agree; compare with same_ray, never with raw amplitudes.
class PureState {
   public:
    /// Validates |v| = 1 within tol.
    static PureState from_vector(ComplexVector v, double tol = tolerance::kStructural);
    /// Normalizes v; throws PreconditionError on a (numerically) zero vector.
    static PureState normalized(const ComplexVector &v);
    static PureState basis(int dim, int index);

    const ComplexVector &vec() const { return vec_; }
    int dim() const { return static_cast<int>(vec_.size()); }
    ComplexMatrix projector() const { return outer(vec_); }

   private:
    explicit PureState(ComplexVector v) : vec_(std::move(v)) {}
    ComplexVector vec_;
};

bool same_ray(const PureState &a, const PureState &b, double tol = tolerance::kDerived);

std::vector<ComplexVector> vectors_of(std::span<const PureState> states);
/// Columns are the state vectors.
ComplexMatrix as_columns(std::span<const PureState> states);

/// Psi = sum_i alpha_i |A_i> (x) |b_i> with orthonormal A_i and unit (possibly
/// non-orthogonal) b_i. Construct with build_entangled or rebase_alice.
class EntangledState {
   public:
    const std::vector<Complex> &alphas() const { return alphas_; }
    const std::vector<PureState> &alice_basis() const { return alice_; }
    const std::vector<PureState> &bob_states() const { return bob_; }
    int dim_a() const { return dim_a_; }
    int dim_b() const { return dim_b_; }
    int branches() const { return static_cast<int>(alphas_.size()); }

    /// The vector of H_A (x) H_B.
    ComplexVector flatten() const;

   private:
    friend EntangledState build_entangled(std::vector<Complex>, std::vector<PureState>, std::vector<PureState>);
    friend EntangledState rebase_alice(const EntangledState &, const std::vector<PureState> &);
    EntangledState() = default;

    std::vector<Complex> alphas_;
    std::vector<PureState> alice_;
    std::vector<PureState> bob_;
    int dim_a_ = 0;
    int dim_b_ = 0;
};

EntangledState build_entangled(std::vector<Complex> alphas, std::vector<PureState> alice_basis,
                               std::vector<PureState> bob_states);

/// Re-expresses the state in another orthonormal basis of the same A-subspace.
/// New coefficients are real and non-negative; the phase goes into the B
/// state. A branch with coefficient below 1e-12 keeps alpha = 0 and B state e_0.
EntangledState rebase_alice(const EntangledState &state, const std::vector<PureState> &new_basis);

/// Largest residual of projecting each of `candidate` onto span(`reference`),
/// plus the count mismatch check. Returns +inf if the counts differ.
double subspace_mismatch(std::span<const PureState> reference, std::span<const PureState> candidate);

struct EnsembleMember {
    double weight;
    PureState state;
};

/// Probability-weighted pure states: the primary mixed-state object.
class Ensemble {
   public:
    /// Validates weights >= 0, sum 1 within 1e-12 and a common dimension.
    static Ensemble from_members(std::vector<EnsembleMember> members);

    const std::vector<EnsembleMember> &members() const { return members_; }
    int dim() const { return members_.front().state.dim(); }
    size_t size() const { return members_.size(); }

   private:
    explicit Ensemble(std::vector<EnsembleMember> m) : members_(std::move(m)) {}
    std::vector<EnsembleMember> members_;
};

/// What Bob receives when Alice measures in the state's own A basis:
/// {(|alpha_i|^2, b_i)} with zero-probability branches dropped.
Ensemble conditional_ensemble(const EntangledState &state);

class DensityMatrix {
   public:
    /// Validates Hermitian, PSD and unit trace.
    static DensityMatrix from_matrix(ComplexMatrix m, double tol = tolerance::kStructural);

    const ComplexMatrix &matrix() const { return mat_; }
    int dim() const { return static_cast<int>(mat_.rows()); }

   private:
    explicit DensityMatrix(ComplexMatrix m) : mat_(std::move(m)) {}
    ComplexMatrix mat_;
};

DensityMatrix ensemble_density(const Ensemble &ens);

/// Tr_A of the flattened state.
DensityMatrix reduced_density(const EntangledState &state);

struct DensityComparison {
    bool equal;
    double distance;
};

DensityComparison density_equal(const DensityMatrix &a, const DensityMatrix &b,
                                double tol = tolerance::kDerived);

}  // namespace nlqm

#endif  // NLQM_STATES_H
