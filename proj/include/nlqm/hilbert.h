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

#ifndef NLQM_HILBERT_H
#define NLQM_HILBERT_H

#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nlqm/random.h"

namespace nlqm {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

namespace tolerance {
/// Exact algebraic identities (norms, traces, Hermiticity).
inline constexpr double kStructural = 1e-12;
/// Identities reached through iterated or derived computations.
inline constexpr double kDerived = 1e-10;
/// Default threshold for user-facing "is it quadratic" verdicts.
inline constexpr double kVerdict = 1e-8;
}  // namespace tolerance

class DimensionError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when an input violates a documented precondition (normalization,
/// orthonormality, Hermiticity, ...).
class PreconditionError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

class RankDeficiencyError : public PreconditionError {
   public:
    using PreconditionError::PreconditionError;
};

/// <u|v>, conjugate-linear in u.
Complex inner(const ComplexVector &u, const ComplexVector &v);

ComplexVector basis_vector(int dim, int index);

/// Modified Gram-Schmidt with one re-orthogonalization pass. Throws
/// RankDeficiencyError if a vector's residual after projection is below 1e-10.
std::vector<ComplexVector> gram_schmidt(std::span<const ComplexVector> vs);

/// Largest |<v_i|v_j> - delta_ij| over the list.
double orthonormality_error(std::span<const ComplexVector> vs);

/// Haar-distributed unitary: QR of a complex Gaussian matrix with R's
/// diagonal phases moved into Q.
ComplexMatrix haar_unitary(int dim, RandomStream &rng);

/// Haar-uniform unit vector.
ComplexVector random_pure(int dim, RandomStream &rng);

/// (G + G^dagger) / 2 for a complex Gaussian G.
ComplexMatrix random_hermitian(int dim, RandomStream &rng);

/// Index convention: (a (x) b)[i * dim(b) + j] = a[i] b[j].
ComplexVector tensor(const ComplexVector &a, const ComplexVector &b);

/// Reduced density matrix of the B factor: rho_B = Tr_A |psi><psi|.
ComplexMatrix partial_trace_a(const ComplexVector &psi, int dim_a, int dim_b);

/// |v><v|.
ComplexMatrix outer(const ComplexVector &v);

/// Orthogonal projector onto the span of orthonormal columns.
ComplexMatrix column_projector(const ComplexMatrix &orthonormal_columns);

bool is_hermitian(const ComplexMatrix &m, double tol = tolerance::kStructural);
double frobenius_distance(const ComplexMatrix &a, const ComplexMatrix &b);
/// Smallest eigenvalue of a Hermitian matrix.
double min_eigenvalue(const ComplexMatrix &hermitian);
/// Real part of <v|M|v>.
double expectation(const ComplexMatrix &m, const ComplexVector &v);

/// A point of the dim-2 Bloch ball; (I + x X + y Y + z Z) / 2 with z along the
/// computational basis.
struct BlochPoint {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double norm() const;
    Eigen::Vector3d vec() const { return {x, y, z}; }
    static BlochPoint from(const Eigen::Vector3d &v) { return {v.x(), v.y(), v.z()}; }
};

/// Pure dim-2 state to its point on the unit sphere.
BlochPoint bloch_map(const ComplexVector &psi);

/// Density matrix of a ball point. Throws PreconditionError if |p| > 1 + tol.
ComplexMatrix bloch_inverse(const BlochPoint &p, double tol = tolerance::kDerived);

/// Unit vector whose ray sits at a sphere point (phase fixed so the first
/// nonzero amplitude is real and positive). Throws if |p| is not 1 within tol.
ComplexVector bloch_pure_state(const BlochPoint &p, double tol = tolerance::kDerived);

}  // namespace nlqm

#endif  // NLQM_HILBERT_H
