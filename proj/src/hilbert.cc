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

#include "nlqm/hilbert.h"

#include <algorithm>
#include <cmath>
#include <string>

namespace nlqm {

namespace {

void require_dim(int dim, const char *what) {
    if (dim < 1) {
        throw PreconditionError(std::string(what) + ": dimension must be >= 1, got " + std::to_string(dim));
    }
}

}  // namespace

Complex inner(const ComplexVector &u, const ComplexVector &v) {
    if (u.size() != v.size()) {
        throw DimensionError("inner: dimension mismatch " + std::to_string(u.size()) + " vs " +
                             std::to_string(v.size()));
    }
    return u.dot(v);  // Eigen conjugates the left operand.
}

ComplexVector basis_vector(int dim, int index) {
    require_dim(dim, "basis_vector");
    if (index < 0 || index >= dim) {
        throw DimensionError("basis_vector: index " + std::to_string(index) + " out of range for dim " +
                             std::to_string(dim));
    }
    ComplexVector v = ComplexVector::Zero(dim);
    v(index) = 1.0;
    return v;
}

std::vector<ComplexVector> gram_schmidt(std::span<const ComplexVector> vs) {
    std::vector<ComplexVector> out;
    out.reserve(vs.size());
    for (size_t k = 0; k < vs.size(); k++) {
        ComplexVector v = vs[k];
        if (!out.empty() && v.size() != out.front().size()) {
            throw DimensionError("gram_schmidt: vectors of unequal dimension");
        }
        // Two passes: one pass of MGS loses orthogonality at the 1e-12 scale for
        // nearly dependent inputs.
        for (int pass = 0; pass < 2; pass++) {
            for (const ComplexVector &q : out) {
                v -= q.dot(v) * q;
            }
        }
        double residual = v.norm();
        if (residual < 1e-10) {
            throw RankDeficiencyError("gram_schmidt: vector " + std::to_string(k) +
                                      " is linearly dependent on its predecessors");
        }
        out.push_back(v / residual);
    }
    return out;
}

double orthonormality_error(std::span<const ComplexVector> vs) {
    double worst = 0.0;
    for (size_t i = 0; i < vs.size(); i++) {
        for (size_t j = i; j < vs.size(); j++) {
            Complex g = inner(vs[i], vs[j]);
            if (i == j) {
                g -= 1.0;
            }
            worst = std::max(worst, std::abs(g));
        }
    }
    return worst;
}

ComplexMatrix haar_unitary(int dim, RandomStream &rng) {
    require_dim(dim, "haar_unitary");
    ComplexMatrix z(dim, dim);
    for (int c = 0; c < dim; c++) {
        for (int r = 0; r < dim; r++) {
            z(r, c) = rng.complex_normal();
        }
    }
    Eigen::HouseholderQR<ComplexMatrix> qr(z);
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(dim, dim);
    const ComplexMatrix &r = qr.matrixQR();
    for (int c = 0; c < dim; c++) {
        Complex d = r(c, c);
        double a = std::abs(d);
        q.col(c) *= a > 0.0 ? d / a : Complex(1.0);
    }
    return q;
}

ComplexVector random_pure(int dim, RandomStream &rng) {
    require_dim(dim, "random_pure");
    ComplexVector v(dim);
    for (int i = 0; i < dim; i++) {
        v(i) = rng.complex_normal();
    }
    double n = v.norm();
    if (n == 0.0) {
        return basis_vector(dim, 0);
    }
    return v / n;
}

ComplexMatrix random_hermitian(int dim, RandomStream &rng) {
    require_dim(dim, "random_hermitian");
    ComplexMatrix g(dim, dim);
    for (int c = 0; c < dim; c++) {
        for (int r = 0; r < dim; r++) {
            g(r, c) = rng.complex_normal();
        }
    }
    ComplexMatrix h = (g + g.adjoint()) / 2.0;
    for (int i = 0; i < dim; i++) {
        h(i, i) = h(i, i).real();
    }
    return h;
}

ComplexVector tensor(const ComplexVector &a, const ComplexVector &b) {
    ComplexVector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); i++) {
        out.segment(i * b.size(), b.size()) = a(i) * b;
    }
    return out;
}

ComplexMatrix partial_trace_a(const ComplexVector &psi, int dim_a, int dim_b) {
    require_dim(dim_a, "partial_trace_a");
    require_dim(dim_b, "partial_trace_a");
    if (psi.size() != static_cast<Eigen::Index>(dim_a) * dim_b) {
        throw DimensionError("partial_trace_a: vector of size " + std::to_string(psi.size()) +
                             " does not factor as " + std::to_string(dim_a) + "x" + std::to_string(dim_b));
    }
    if (std::abs(psi.norm() - 1.0) > tolerance::kDerived) {
        throw PreconditionError("partial_trace_a: state is not normalized");
    }
    // Row i of the reshaped amplitude matrix holds the B-components paired with
    // A basis vector i, so rho_B = M^T conj(M).
    Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(psi.data(), dim_a,
                                                                                                  dim_b);
    ComplexMatrix rho = m.transpose() * m.conjugate();
    for (int i = 0; i < dim_b; i++) {
        rho(i, i) = rho(i, i).real();
    }
    return rho;
}

ComplexMatrix outer(const ComplexVector &v) {
    return v * v.adjoint();
}

ComplexMatrix column_projector(const ComplexMatrix &orthonormal_columns) {
    return orthonormal_columns * orthonormal_columns.adjoint();
}

bool is_hermitian(const ComplexMatrix &m, double tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

double frobenius_distance(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("frobenius_distance: shape mismatch");
    }
    return (a - b).norm();
}

double min_eigenvalue(const ComplexMatrix &hermitian) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

double expectation(const ComplexMatrix &m, const ComplexVector &v) {
    if (m.cols() != v.size() || m.rows() != v.size()) {
        throw DimensionError("expectation: operator and vector dimensions differ");
    }
    return v.dot(m * v).real();
}

double BlochPoint::norm() const {
    return std::sqrt(x * x + y * y + z * z);
}

BlochPoint bloch_map(const ComplexVector &psi) {
    if (psi.size() != 2) {
        throw DimensionError("bloch_map: expected a dim-2 vector");
    }
    if (std::abs(psi.norm() - 1.0) > tolerance::kDerived) {
        throw PreconditionError("bloch_map: state is not normalized");
    }
    Complex rho01 = psi(0) * std::conj(psi(1));
    return {2.0 * rho01.real(), -2.0 * rho01.imag(), std::norm(psi(0)) - std::norm(psi(1))};
}

ComplexMatrix bloch_inverse(const BlochPoint &p, double tol) {
    if (p.norm() > 1.0 + tol) {
        throw PreconditionError("bloch_inverse: point lies outside the unit ball");
    }
    ComplexMatrix rho(2, 2);
    rho(0, 0) = (1.0 + p.z) / 2.0;
    rho(1, 1) = (1.0 - p.z) / 2.0;
    rho(0, 1) = Complex(p.x, -p.y) / 2.0;
    rho(1, 0) = Complex(p.x, p.y) / 2.0;
    return rho;
}

ComplexVector bloch_pure_state(const BlochPoint &p, double tol) {
    double n = p.norm();
    if (std::abs(n - 1.0) > tol) {
        throw PreconditionError("bloch_pure_state: point is not on the unit sphere");
    }
    double x = p.x / n;
    double y = p.y / n;
    double z = p.z / n;
    ComplexVector v(2);
    if (z >= 0.0) {
        // (1 + z, x + iy) has squared norm 2(1 + z).
        double s = 1.0 / std::sqrt(2.0 * (1.0 + z));
        v(0) = (1.0 + z) * s;
        v(1) = Complex(x, y) * s;
        return v;
    }
    // Southern hemisphere: the equivalent ray (x - iy, 1 - z) avoids cancellation;
    // then rotate the phase so the first nonzero amplitude is real positive.
    double s = 1.0 / std::sqrt(2.0 * (1.0 - z));
    v(0) = Complex(x, -y) * s;
    v(1) = (1.0 - z) * s;
    double a = std::abs(v(0));
    if (a > 0.0) {
        v *= std::conj(v(0)) / a;
    }
    return v;
}

}  // namespace nlqm
