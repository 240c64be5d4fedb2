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

#include "nlqm/nosignal.h"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace nlqm {

namespace {

constexpr double kOnSphere = 1e-10;
constexpr double kIntersection = 1e-9;
constexpr double kPositivity = 1e-10;

Eigen::Vector3d random_direction(RandomStream &rng) {
    Eigen::Vector3d v;
    do {
        v = {rng.normal(), rng.normal(), rng.normal()};
    } while (v.norm() < 1e-12);
    return v.normalized();
}

Eigen::Vector3d random_ball_point(RandomStream &rng) {
    double r = std::cbrt(rng.uniform());
    return r * random_direction(rng);
}

double value_at(const FunctionalObservable &f, const BlochPoint &x) {
    return f.evaluate(bloch_pure_state(x));
}

double mixture_value(const FunctionalObservable &f, double p1, const BlochPoint &x1, double p2, const BlochPoint &x2) {
    return p1 * value_at(f, x1) + p2 * value_at(f, x2);
}

void evaluate_witness(const FunctionalObservable &f, ChordWitness &w) {
    w.f1 = value_at(f, w.x1);
    w.f2 = value_at(f, w.x2);
    w.f1p = value_at(f, w.x1p);
    w.f2p = value_at(f, w.x2p);
    w.lhs = w.p1 * w.f1 + w.p2 * w.f2;
    w.rhs = w.p1p * w.f1p + w.p2p * w.f2p;
    w.violation = std::abs(w.lhs - w.rhs);
}

std::vector<PureState> columns_to_states(const ComplexMatrix &cols) {
    std::vector<PureState> out;
    out.reserve(static_cast<size_t>(cols.cols()));
    for (Eigen::Index c = 0; c < cols.cols(); c++) {
        out.push_back(PureState::normalized(cols.col(c)));
    }
    return out;
}

ComplexMatrix fourier_matrix(int n) {
    ComplexMatrix w(n, n);
    for (int j = 0; j < n; j++) {
        for (int k = 0; k < n; k++) {
            w(j, k) = std::polar(1.0 / std::sqrt(static_cast<double>(n)), 2.0 * std::numbers::pi * j * k / n);
        }
    }
    return w;
}

double measure_columns(const CountingObservable &f, const ComplexMatrix &cols) {
    double mu = 0.0;
    for (Eigen::Index c = 0; c < cols.cols(); c++) {
        mu += f.evaluate(cols.col(c));
    }
    return mu;
}

ComplexMatrix haar_rotated(const ComplexMatrix &cols, RandomStream &rng) {
    return cols * haar_unitary(static_cast<int>(cols.cols()), rng);
}

ComplexMatrix random_subspace(int dim, int k, RandomStream &rng) {
    return haar_unitary(dim, rng).leftCols(k);
}

void require_orthonormal(std::span<const PureState> basis, const char *what) {
    if (basis.empty()) {
        throw PreconditionError(std::string(what) + ": empty basis");
    }
    if (orthonormality_error(vectors_of(basis)) > kOnSphere) {
        throw PreconditionError(std::string(what) + ": basis is not orthonormal");
    }
}

Verdict verdict_for(double worst, double tol) {
    return worst < tol ? Verdict::kQuadraticConsistent : Verdict::kNonQuadratic;
}

}  // namespace

double witness_violation(const Witness &w) {
    return std::visit(
        [](const auto &v) -> double {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, SubspaceMeasureRecord>) {
                return v.basis_spread;
            } else {
                return v.violation;
            }
        },
        w);
}

std::string to_string(Verdict v) {
    return v == Verdict::kQuadraticConsistent ? "quadratic-consistent" : "non-quadratic";
}

std::optional<ChordWitness> chord_intersection(const BlochPoint &x1, const BlochPoint &x2, const BlochPoint &x1p,
                                               const BlochPoint &x2p) {
    for (const BlochPoint *p : {&x1, &x2, &x1p, &x2p}) {
        if (std::abs(p->norm() - 1.0) > kOnSphere) {
            throw PreconditionError("chord_intersection: endpoint is not on the unit sphere");
        }
    }
    const Eigen::Vector3d a0 = x1.vec();
    const Eigen::Vector3d b0 = x1p.vec();
    const Eigen::Vector3d u = x2.vec() - a0;
    const Eigen::Vector3d v = x2p.vec() - b0;
    const Eigen::Vector3d w0 = a0 - b0;
    const double a = u.dot(u);
    const double b = u.dot(v);
    const double c = v.dot(v);
    const double d = u.dot(w0);
    const double e = v.dot(w0);
    const double denom = a * c - b * b;
    if (a < 1e-24 || c < 1e-24 || denom <= 1e-14 * a * c) {
        // Degenerate, parallel or collinear chords.
        return std::nullopt;
    }
    const double s = (b * e - c * d) / denom;
    const double t = (a * e - b * d) / denom;
    if (!(s > 0.0 && s < 1.0 && t > 0.0 && t < 1.0)) {
        return std::nullopt;
    }
    const Eigen::Vector3d p = a0 + s * u;
    const Eigen::Vector3d q = b0 + t * v;
    if ((p - q).norm() >= kIntersection) {
        return std::nullopt;
    }
    ChordWitness w;
    w.x1 = x1;
    w.x2 = x2;
    w.x1p = x1p;
    w.x2p = x2p;
    w.p1 = 1.0 - s;
    w.p2 = s;
    w.p1p = 1.0 - t;
    w.p2p = t;
    w.x = BlochPoint::from((p + q) / 2.0);
    return w;
}

Chord chord_through(const Eigen::Vector3d &y, const Eigen::Vector3d &direction) {
    const Eigen::Vector3d d = direction.normalized();
    // |y + t d| = 1  =>  t^2 + 2 t (y.d) + |y|^2 - 1 = 0
    const double half_b = y.dot(d);
    const double disc = std::max(half_b * half_b - y.squaredNorm() + 1.0, 0.0);
    const double root = std::sqrt(disc);
    const double t_plus = -half_b + root;
    const double t_minus = -half_b - root;
    Chord chord;
    chord.x1 = BlochPoint::from((y + t_plus * d).normalized());
    chord.x2 = BlochPoint::from((y + t_minus * d).normalized());
    const double span = t_plus - t_minus;
    chord.p1 = span > 0.0 ? -t_minus / span : 0.5;
    chord.p2 = span > 0.0 ? t_plus / span : 0.5;
    return chord;
}

Certificate affinity_scan(const FunctionalObservable &f, const AffinityOptions &options) {
    if (f.dim() != 2) {
        throw DimensionError("affinity_scan: the Bloch-ball scan needs a dim-2 observable");
    }
    if (options.chords < 0 || options.affine_checks < 0 || !(options.tolerance > 0.0)) {
        throw PreconditionError("affinity_scan: counts must be >= 0 and tolerance > 0");
    }
    std::vector<Witness> witnesses;

    if (options.axis_probes) {
        const BlochPoint axes[3][2] = {{{1, 0, 0}, {-1, 0, 0}}, {{0, 1, 0}, {0, -1, 0}}, {{0, 0, 1}, {0, 0, -1}}};
        for (int i = 0; i < 3; i++) {
            for (int j = i + 1; j < 3; j++) {
                std::optional<ChordWitness> w = chord_intersection(axes[j][0], axes[j][1], axes[i][0], axes[i][1]);
                evaluate_witness(f, *w);
                witnesses.emplace_back(*w);
            }
        }
    }

    std::vector<ChordWitness> chords(static_cast<size_t>(options.chords));
    parallel_for(chords.size(), options.run.workers, [&](size_t i) {
        RandomStream rng = RandomStream::derive(options.run.seed, {4, static_cast<std::uint64_t>(i)});
        for (;;) {
            Eigen::Vector3d x = random_ball_point(rng);
            Eigen::Vector3d d1 = random_direction(rng);
            Eigen::Vector3d d2 = random_direction(rng);
            if (d1.cross(d2).norm() < 1e-6) {
                continue;
            }
            Chord c1 = chord_through(x, d1);
            Chord c2 = chord_through(x, d2);
            std::optional<ChordWitness> w = chord_intersection(c1.x1, c1.x2, c2.x1, c2.x2);
            if (!w) {
                continue;  // x numerically on the sphere
            }
            evaluate_witness(f, *w);
            chords[i] = *w;
            return;
        }
    });
    for (ChordWitness &w : chords) {
        witnesses.emplace_back(std::move(w));
    }

    std::vector<AffineWitness> affine(static_cast<size_t>(options.affine_checks));
    parallel_for(affine.size(), options.run.workers, [&](size_t i) {
        RandomStream rng = RandomStream::derive(options.run.seed, {5, static_cast<std::uint64_t>(i)});
        Eigen::Vector3d y1 = random_ball_point(rng);
        Eigen::Vector3d y2 = random_ball_point(rng);
        double p = rng.uniform(-0.5, 1.5);
        Eigen::Vector3d x = p * y1 + (1.0 - p) * y2;
        for (int attempt = 0; attempt < 32 && x.norm() > 1.0; attempt++) {
            p = rng.uniform(-0.5, 1.5);
            x = p * y1 + (1.0 - p) * y2;
        }
        if (x.norm() > 1.0) {
            p = rng.uniform();
            x = p * y1 + (1.0 - p) * y2;
        }
        auto phi = [&](const Eigen::Vector3d &y) {
            Chord c = chord_through(y, random_direction(rng));
            return mixture_value(f, c.p1, c.x1, c.p2, c.x2);
        };
        AffineWitness w;
        w.y1 = BlochPoint::from(y1);
        w.y2 = BlochPoint::from(y2);
        w.x = BlochPoint::from(x);
        w.p = p;
        w.phi_y1 = phi(y1);
        w.phi_y2 = phi(y2);
        w.phi_x = phi(x);
        w.violation = std::abs(w.phi_x - (p * w.phi_y1 + (1.0 - p) * w.phi_y2));
        affine[i] = w;
    });
    for (AffineWitness &w : affine) {
        witnesses.emplace_back(std::move(w));
    }

    Certificate cert;
    cert.method = "affinity";
    cert.tolerance = options.tolerance;
    cert.seed = options.run.seed;
    for (const Witness &w : witnesses) {
        cert.worst_violation = std::max(cert.worst_violation, witness_violation(w));
    }
    cert.witnesses = std::move(witnesses);
    cert.verdict = verdict_for(cert.worst_violation, cert.tolerance);
    cert.reconstructed = polarization_reconstruct(f);
    return cert;
}

double ExtremalDecomposition::phi(const BlochPoint &x) const {
    ComplexMatrix rho = bloch_inverse(x);
    return lambda_plus * expectation(rho, b_plus.vec()) + lambda_minus * expectation(rho, b_minus.vec());
}

ExtremalDecomposition extremal_decomposition(const FunctionalObservable &f) {
    const ComplexMatrix *op = f.quadratic_operator();
    if (op == nullptr) {
        throw PreconditionError("extremal_decomposition: observable is not a known quadratic form");
    }
    if (f.dim() != 2) {
        throw DimensionError("extremal_decomposition: needs a dim-2 observable");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(*op);
    // Eigenvalues come sorted ascending.
    return ExtremalDecomposition{es.eigenvalues()(1), es.eigenvalues()(0),
                                 PureState::normalized(es.eigenvectors().col(1)),
                                 PureState::normalized(es.eigenvectors().col(0))};
}

double subspace_measure(const CountingObservable &f, std::span<const PureState> basis) {
    require_orthonormal(basis, "subspace_measure");
    double mu = 0.0;
    for (const PureState &b : basis) {
        mu += f(b);
    }
    return mu;
}

SubspaceMeasureRecord basis_independence(const CountingObservable &f, std::span<const PureState> basis,
                                         int resamples, RandomStream &rng) {
    if (resamples < 2) {
        throw PreconditionError("basis_independence: resamples must be >= 2");
    }
    SubspaceMeasureRecord rec;
    rec.basis.assign(basis.begin(), basis.end());
    rec.mu = subspace_measure(f, basis);
    rec.mu_min = rec.mu;
    rec.mu_max = rec.mu;
    rec.bases_tested = 1;
    const ComplexMatrix cols = as_columns(basis);
    auto include = [&](const ComplexMatrix &rotated) {
        double mu = measure_columns(f, rotated);
        rec.mu_min = std::min(rec.mu_min, mu);
        rec.mu_max = std::max(rec.mu_max, mu);
        rec.bases_tested++;
    };
    include(cols * fourier_matrix(static_cast<int>(cols.cols())));
    for (int r = 0; r < resamples; r++) {
        include(haar_rotated(cols, rng));
    }
    rec.basis_spread = rec.mu_max - rec.mu_min;
    return rec;
}

OrthoadditivityRecord orthoadditivity_check(const CountingObservable &f, std::span<const PureState> y,
                                            std::span<const PureState> z, int resamples, RandomStream &rng) {
    require_orthonormal(y, "orthoadditivity_check");
    require_orthonormal(z, "orthoadditivity_check");
    for (const PureState &a : y) {
        for (const PureState &b : z) {
            if (std::abs(inner(a.vec(), b.vec())) > kOnSphere) {
                throw PreconditionError("orthoadditivity_check: subspaces are not orthogonal");
            }
        }
    }
    std::vector<PureState> joined(y.begin(), y.end());
    joined.insert(joined.end(), z.begin(), z.end());

    OrthoadditivityRecord rec;
    rec.mu_y = subspace_measure(f, y);
    rec.mu_z = subspace_measure(f, z);
    rec.mu_x = subspace_measure(f, joined);
    rec.concatenated_violation = std::abs(rec.mu_y + rec.mu_z - rec.mu_x);

    const ComplexMatrix cy = as_columns(y);
    const ComplexMatrix cz = as_columns(z);
    const ComplexMatrix cx = as_columns(joined);
    for (int r = 0; r < resamples; r++) {
        double my = measure_columns(f, haar_rotated(cy, rng));
        double mz = measure_columns(f, haar_rotated(cz, rng));
        double mx = measure_columns(f, haar_rotated(cx, rng));
        rec.resampled_violation = std::max(rec.resampled_violation, std::abs(my + mz - mx));
    }
    return rec;
}

Certificate gleason_certify(const CountingObservable &f, const GleasonOptions &options) {
    const int d = f.dim();
    if (d < 3) {
        throw DimensionError("gleason_certify: needs dim >= 3; use affinity_scan for dim 2");
    }
    if (options.subspaces_per_dim < 0 || options.resamples < 2 || options.reconstruction_checks < 0 ||
        !(options.tolerance > 0.0)) {
        throw PreconditionError("gleason_certify: invalid options");
    }
    const std::uint64_t seed = options.run.seed;

    // Item (k, s): subspace dimension k; s = 0 is span{e_0..e_k-1}.
    const int per_dim = options.subspaces_per_dim + 1;
    std::vector<SubspaceMeasureRecord> records(static_cast<size_t>(d * per_dim));
    parallel_for(records.size(), options.run.workers, [&](size_t item) {
        int k = 1 + static_cast<int>(item) / per_dim;
        int s = static_cast<int>(item) % per_dim;
        RandomStream rng =
            RandomStream::derive(seed, {6, static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(s)});
        ComplexMatrix cols = s == 0 ? ComplexMatrix(ComplexMatrix::Identity(d, d).leftCols(k))
                                    : random_subspace(d, k, rng);
        std::vector<PureState> basis = columns_to_states(cols);
        records[item] = basis_independence(f, basis, options.resamples, rng);
    });

    Certificate cert;
    cert.method = "gleason";
    cert.tolerance = options.tolerance;
    cert.seed = seed;
    for (SubspaceMeasureRecord &r : records) {
        cert.worst_violation = std::max(cert.worst_violation, r.basis_spread);
        cert.witnesses.emplace_back(std::move(r));
    }

    const ComplexMatrix op = polarization_reconstruct(f.observable());
    cert.reconstructed = op;
    bool consistent = cert.worst_violation < options.tolerance;
    if (consistent) {
        std::vector<ReconstructionWitness> checks(static_cast<size_t>(options.reconstruction_checks));
        parallel_for(checks.size(), options.run.workers, [&](size_t r) {
            RandomStream rng = RandomStream::derive(seed, {7, static_cast<std::uint64_t>(r)});
            int k = 1 + static_cast<int>(r % static_cast<size_t>(d));
            ComplexMatrix cols = random_subspace(d, k, rng);
            ReconstructionWitness w;
            w.basis = columns_to_states(cols);
            w.mu = measure_columns(f, cols);
            w.trace_fp = (op * column_projector(cols)).trace().real();
            w.violation = std::abs(w.mu - w.trace_fp);
            checks[r] = std::move(w);
        });
        for (ReconstructionWitness &w : checks) {
            cert.worst_violation = std::max(cert.worst_violation, w.violation);
            cert.witnesses.emplace_back(std::move(w));
        }
        consistent = cert.worst_violation < options.tolerance;

        PositivityWitness pos;
        pos.min_eigenvalue = min_eigenvalue(op);
        pos.violation = std::max(0.0, -pos.min_eigenvalue);
        cert.worst_violation = std::max(cert.worst_violation, pos.violation);
        cert.witnesses.emplace_back(pos);
        consistent = consistent && pos.min_eigenvalue >= -kPositivity;
    }
    cert.verdict = consistent ? Verdict::kQuadraticConsistent : Verdict::kNonQuadratic;
    return cert;
}

}  // namespace nlqm
