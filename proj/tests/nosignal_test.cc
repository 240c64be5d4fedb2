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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "fixtures.h"
#include "oracles.h"

using namespace nlqm;

namespace {

const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

Eigen::Vector3d random_unit(RandomStream &rng) {
    return Eigen::Vector3d(rng.normal(), rng.normal(), rng.normal()).normalized();
}

std::vector<PureState> columns(const ComplexMatrix &m) {
    std::vector<PureState> out;
    for (Eigen::Index c = 0; c < m.cols(); c++) {
        out.push_back(PureState::normalized(m.col(c)));
    }
    return out;
}

std::vector<PureState> hadamard_d3() {
    ComplexVector a = ComplexVector::Zero(3), b = ComplexVector::Zero(3);
    a << kInvSqrt2, kInvSqrt2, 0.0;
    b << kInvSqrt2, -kInvSqrt2, 0.0;
    return {PureState::from_vector(a), PureState::from_vector(b), PureState::basis(3, 2)};
}

CountingObservable power3() {
    return CountingObservable::wrap(power(fixture::projector0(3), 2));
}

double bloch_dist(const BlochPoint &a, const Eigen::Vector3d &b) {
    return (a.vec() - b).norm();
}

}  // namespace

TEST(ChordIntersection, TwoDiametersMeetAtTheCentre) {
    auto w = chord_intersection({0, 0, 1}, {0, 0, -1}, {1, 0, 0}, {-1, 0, 0});
    ASSERT_TRUE(w.has_value());
    EXPECT_NEAR(w->p1, 0.5, 1e-15);
    EXPECT_NEAR(w->p2, 0.5, 1e-15);
    EXPECT_NEAR(w->p1p, 0.5, 1e-15);
    EXPECT_NEAR(w->p2p, 0.5, 1e-15);
    EXPECT_LT(w->x.norm(), 1e-15);
}

TEST(ChordIntersection, ParallelAndDisjointChordsGiveNothing) {
    const double s = std::sqrt(1.0 - 0.25);
    // Two parallel chords at z = +-0.5.
    EXPECT_FALSE(chord_intersection({s, 0, 0.5}, {-s, 0, 0.5}, {s, 0, -0.5}, {-s, 0, -0.5}).has_value());
    // Skew chords that do not meet.
    EXPECT_FALSE(chord_intersection({s, 0, 0.5}, {-s, 0, 0.5}, {0, s, -0.5}, {0, -s, -0.5}).has_value());
    // Collinear: the same diameter twice.
    EXPECT_FALSE(chord_intersection({0, 0, 1}, {0, 0, -1}, {0, 0, -1}, {0, 0, 1}).has_value());
    // Lines crossing outside the open segments (shared endpoint).
    EXPECT_FALSE(chord_intersection({0, 0, 1}, {0, 0, -1}, {0, 0, 1}, {1, 0, 0}).has_value());
}

TEST(ChordIntersection, RejectsPointsOffTheSphere) {
    EXPECT_THROW(chord_intersection({0, 0, 0.5}, {0, 0, -1}, {1, 0, 0}, {-1, 0, 0}), PreconditionError);
}

TEST(ChordIntersection, RandomIntersectingChordsMatchTheSegmentOracle) {
    RandomStream rng(1);
    for (int trial = 0; trial < 1000; trial++) {
        Eigen::Vector3d x = std::cbrt(rng.uniform()) * random_unit(rng);
        Chord c1 = chord_through(x, random_unit(rng));
        Chord c2 = chord_through(x, random_unit(rng));
        auto w = chord_intersection(c1.x1, c1.x2, c2.x1, c2.x2);
        ASSERT_TRUE(w.has_value());
        EXPECT_NEAR(w->p1 + w->p2, 1.0, 1e-15);
        EXPECT_NEAR(w->p1p + w->p2p, 1.0, 1e-15);
        for (double p : {w->p1, w->p2, w->p1p, w->p2p}) {
            EXPECT_GE(p, 0.0);
            EXPECT_LE(p, 1.0);
        }
        EXPECT_LT(bloch_dist(w->x, w->p1 * c1.x1.vec() + w->p2 * c1.x2.vec()), 1e-10);
        EXPECT_LT(bloch_dist(w->x, w->p1p * c2.x1.vec() + w->p2p * c2.x2.vec()), 1e-10);
        EXPECT_LT(bloch_dist(w->x, x), 1e-10);
        oracle::SegmentSolution ref = oracle::segment_lstsq(c1.x1.vec(), c1.x2.vec(), c2.x1.vec(), c2.x2.vec());
        EXPECT_NEAR(w->p2, ref.s, 1e-8);
        EXPECT_NEAR(w->p2p, ref.t, 1e-8);
    }
}

TEST(ChordThrough, EndpointsOnSphereAndWeightsReproducePoint) {
    RandomStream rng(2);
    for (int trial = 0; trial < 200; trial++) {
        Eigen::Vector3d y = std::cbrt(rng.uniform()) * random_unit(rng);
        Chord c = chord_through(y, random_unit(rng));
        EXPECT_NEAR(c.x1.norm(), 1.0, 1e-14);
        EXPECT_NEAR(c.x2.norm(), 1.0, 1e-14);
        EXPECT_LT((c.p1 * c.x1.vec() + c.p2 * c.x2.vec() - y).norm(), 1e-12);
    }
}

TEST(AffinityScan, QuadraticPasses) {
    RandomStream rng(3);
    ComplexMatrix f = random_hermitian(2, rng);
    AffinityOptions opts;
    opts.chords = 1000;
    opts.affine_checks = 100;
    opts.run = {7, 4};
    Certificate cert = affinity_scan(quadratic(f), opts);
    EXPECT_EQ(cert.verdict, Verdict::kQuadraticConsistent);
    EXPECT_LT(cert.worst_violation, 1e-9);
    EXPECT_EQ(cert.witnesses.size(), 3u + 1000u + 100u);
    ASSERT_TRUE(cert.reconstructed.has_value());
    EXPECT_LT((*cert.reconstructed - f).norm(), 1e-10);
}

TEST(AffinityScan, PowerFailsWithTheHandEvaluatedWitness) {
    Certificate cert = affinity_scan(power(fixture::projector0(2), 2), {});
    EXPECT_EQ(cert.verdict, Verdict::kNonQuadratic);
    EXPECT_GE(cert.worst_violation, 0.25 - 1e-12);
    // The z-diameter against the x-diameter: 0.5 on one side, 0.25 on the other.
    bool found = false;
    for (const Witness &w : cert.witnesses) {
        if (const auto *c = std::get_if<ChordWitness>(&w)) {
            if (std::abs(c->x1.z - 1.0) < 1e-12 && std::abs(c->x1p.x - 1.0) < 1e-12) {
                EXPECT_NEAR(c->lhs, 0.5, 1e-15);
                EXPECT_NEAR(c->rhs, 0.25, 1e-15);
                EXPECT_NEAR(c->violation, 0.25, 1e-15);
                found = true;
            }
        }
    }
    EXPECT_TRUE(found);
}

TEST(AffinityScan, ConstantHasNoViolation) {
    Certificate cert = affinity_scan(constant(2, 0.6), {});
    EXPECT_EQ(cert.verdict, Verdict::kQuadraticConsistent);
    EXPECT_LT(cert.worst_violation, 1e-14);
}

TEST(AffinityScan, DeterministicAcrossWorkers) {
    AffinityOptions a;
    a.chords = 300;
    a.affine_checks = 20;
    a.run = {5, 1};
    AffinityOptions b = a;
    b.run.workers = 6;
    FunctionalObservable f = power(fixture::projector0(2), 3);
    Certificate ca = affinity_scan(f, a);
    Certificate cb = affinity_scan(f, b);
    EXPECT_EQ(ca.worst_violation, cb.worst_violation);
    ASSERT_EQ(ca.witnesses.size(), cb.witnesses.size());
    for (size_t i = 0; i < ca.witnesses.size(); i++) {
        EXPECT_EQ(witness_violation(ca.witnesses[i]), witness_violation(cb.witnesses[i]));
    }
}

TEST(AffinityScan, RejectsOtherDimensions) {
    EXPECT_THROW(affinity_scan(quadratic(ComplexMatrix::Identity(3, 3)), {}), DimensionError);
}

TEST(ExtremalDecomposition, DiagonalAndDegenerate) {
    ComplexMatrix f = ComplexMatrix::Zero(2, 2);
    f(0, 0) = 0.7;
    f(1, 1) = 0.2;
    ExtremalDecomposition e = extremal_decomposition(quadratic(f));
    EXPECT_NEAR(e.lambda_plus, 0.7, 1e-15);
    EXPECT_NEAR(e.lambda_minus, 0.2, 1e-15);
    EXPECT_TRUE(same_ray(e.b_plus, PureState::basis(2, 0)));
    EXPECT_TRUE(same_ray(e.b_minus, PureState::basis(2, 1)));

    ExtremalDecomposition id = extremal_decomposition(quadratic(ComplexMatrix::Identity(2, 2)));
    EXPECT_NEAR(id.lambda_plus, 1.0, 1e-15);
    EXPECT_NEAR(id.lambda_minus, 1.0, 1e-15);
    EXPECT_LT(std::abs(inner(id.b_plus.vec(), id.b_minus.vec())), 1e-14);

    EXPECT_THROW(extremal_decomposition(power(fixture::projector0(2), 2)), PreconditionError);
}

TEST(ExtremalDecomposition, ReproducesTheObservable) {
    RandomStream rng(4);
    for (int trial = 0; trial < 20; trial++) {
        ComplexMatrix h = random_hermitian(2, rng);
        FunctionalObservable f = quadratic(h);
        ExtremalDecomposition e = extremal_decomposition(f);
        auto [hi, lo] = oracle::eig2(h);
        EXPECT_NEAR(e.lambda_plus, hi, 1e-12);
        EXPECT_NEAR(e.lambda_minus, lo, 1e-12);
        EXPECT_GE(e.lambda_plus, e.lambda_minus);
        for (int i = 0; i < 100; i++) {
            ComplexVector psi = random_pure(2, rng);
            EXPECT_NEAR(e.phi(bloch_map(psi)), f.evaluate(psi), 1e-10);
        }
        // Mixed points: phi equals the mixture value along any chord through them.
        for (int i = 0; i < 100; i++) {
            Eigen::Vector3d y = std::cbrt(rng.uniform()) * random_unit(rng);
            Chord c = chord_through(y, random_unit(rng));
            double mix = c.p1 * f.evaluate(bloch_pure_state(c.x1)) + c.p2 * f.evaluate(bloch_pure_state(c.x2));
            EXPECT_NEAR(e.phi(BlochPoint::from(y)), mix, 1e-10);
        }
    }
}

TEST(SubspaceMeasure, Examples) {
    ComplexMatrix f = ComplexMatrix::Zero(3, 3);
    f.diagonal() << 0.2, 0.3, 0.5;
    CountingObservable q = CountingObservable::wrap(quadratic(f));
    RandomStream rng(5);
    EXPECT_NEAR(subspace_measure(q, columns(haar_unitary(3, rng))), 1.0, 1e-12);

    CountingObservable p = power3();
    std::vector<PureState> std_basis = {PureState::basis(3, 0), PureState::basis(3, 1), PureState::basis(3, 2)};
    EXPECT_NEAR(subspace_measure(p, std_basis), 1.0, 1e-15);
    EXPECT_NEAR(subspace_measure(p, hadamard_d3()), 0.5, 1e-15);

    PureState psi = PureState::normalized(random_pure(3, rng));
    EXPECT_EQ(subspace_measure(p, std::vector<PureState>{psi}), p(psi));

    EXPECT_THROW(subspace_measure(p, std::vector<PureState>{PureState::basis(3, 0), PureState::basis(3, 0)}),
                 PreconditionError);
}

TEST(SubspaceMeasure, QuadraticEqualsTraceWithProjector) {
    RandomStream rng(6);
    for (int d = 3; d <= 6; d++) {
        CountingObservable q = CountingObservable::wrap(quadratic(oracle::random_hermitian_spectrum(d, 0, 1, rng)));
        for (int k = 1; k <= d; k++) {
            ComplexMatrix cols = haar_unitary(d, rng).leftCols(k);
            double trace = (*q.observable().quadratic_operator() * cols * cols.adjoint()).trace().real();
            EXPECT_NEAR(subspace_measure(q, columns(cols)), trace, 1e-10);
        }
    }
}

TEST(BasisIndependence, Examples) {
    RandomStream rng(7);
    CountingObservable q = CountingObservable::wrap(quadratic(oracle::random_hermitian_spectrum(3, 0, 1, rng)));
    ComplexMatrix sub = haar_unitary(3, rng).leftCols(2);
    SubspaceMeasureRecord rq = basis_independence(q, columns(sub), 16, rng);
    EXPECT_LT(rq.basis_spread, 1e-10);
    EXPECT_EQ(rq.bases_tested, 18);

    std::vector<PureState> whole = {PureState::basis(3, 0), PureState::basis(3, 1), PureState::basis(3, 2)};
    SubspaceMeasureRecord rp = basis_independence(power3(), whole, 16, rng);
    EXPECT_GE(rp.basis_spread, 0.5);
    EXPECT_GE(rp.mu_min, 0.0);
    EXPECT_LE(rp.mu_max, 3.0);

    SubspaceMeasureRecord r1 =
        basis_independence(power3(), std::vector<PureState>{PureState::normalized(random_pure(3, rng))}, 8, rng);
    EXPECT_LT(r1.basis_spread, 1e-12);

    EXPECT_THROW(basis_independence(power3(), whole, 1, rng), PreconditionError);
}

TEST(Orthoadditivity, Examples) {
    RandomStream rng(8);
    ComplexMatrix u = haar_unitary(3, rng);
    std::vector<PureState> y = columns(u.leftCols(1));
    std::vector<PureState> z = columns(u.rightCols(2));

    OrthoadditivityRecord rp = orthoadditivity_check(power3(), y, z, 0, rng);
    EXPECT_LT(rp.concatenated_violation, 1e-15);
    EXPECT_EQ(rp.resampled_violation, 0.0);

    CountingObservable q = CountingObservable::wrap(quadratic(oracle::random_hermitian_spectrum(3, 0, 1, rng)));
    OrthoadditivityRecord rq = orthoadditivity_check(q, y, z, 32, rng);
    EXPECT_LT(rq.violation(), 1e-10);

    double worst = 0.0;
    for (int i = 0; i < 20; i++) {
        ComplexMatrix v = haar_unitary(3, rng);
        worst = std::max(worst, orthoadditivity_check(power3(), columns(v.leftCols(1)), columns(v.rightCols(2)),
                                                      32, rng)
                                    .violation());
    }
    EXPECT_GT(worst, 0.1);

    EXPECT_THROW(orthoadditivity_check(power3(), y, y, 4, rng), PreconditionError);
}

TEST(GleasonCertify, QuadraticPassesAndRecoversF) {
    ComplexMatrix f = ComplexMatrix::Zero(3, 3);
    f.diagonal() << 0.2, 0.3, 0.5;
    Certificate cert = gleason_certify(CountingObservable::wrap(quadratic(f)), {});
    EXPECT_EQ(cert.verdict, Verdict::kQuadraticConsistent);
    EXPECT_LT(cert.worst_violation, cert.tolerance);
    ASSERT_TRUE(cert.reconstructed.has_value());
    EXPECT_LT((*cert.reconstructed - f).norm(), 1e-10);
    EXPECT_TRUE(std::holds_alternative<PositivityWitness>(cert.witnesses.back()));
}

TEST(GleasonCertify, RandomQuadraticInHigherDimensions) {
    RandomStream rng(9);
    for (int d : {3, 4, 5}) {
        ComplexMatrix f = oracle::random_hermitian_spectrum(d, 0, 1, rng);
        GleasonOptions opts;
        opts.run = {static_cast<std::uint64_t>(d), 3};
        Certificate cert = gleason_certify(CountingObservable::wrap(quadratic(f)), opts);
        EXPECT_EQ(cert.verdict, Verdict::kQuadraticConsistent) << "d=" << d;
        EXPECT_LT(oracle::frobenius(*cert.reconstructed - f), 1e-10);
    }
}

TEST(GleasonCertify, PowerFailsWithBasisSpreadWitness) {
    Certificate cert = gleason_certify(power3(), {});
    EXPECT_EQ(cert.verdict, Verdict::kNonQuadratic);
    double spread = 0.0;
    for (const Witness &w : cert.witnesses) {
        if (const auto *r = std::get_if<SubspaceMeasureRecord>(&w)) {
            spread = std::max(spread, r->basis_spread);
        }
    }
    EXPECT_GE(spread, 0.5);
}

TEST(GleasonCertify, AlwaysFiringCounterIsTheIdentity) {
    Certificate cert = gleason_certify(CountingObservable::wrap(constant(4, 1.0)), {});
    EXPECT_EQ(cert.verdict, Verdict::kQuadraticConsistent);
    EXPECT_LT((*cert.reconstructed - ComplexMatrix::Identity(4, 4)).norm(), 1e-12);
}

TEST(GleasonCertify, DeterministicAcrossWorkersAndRejectsDim2) {
    GleasonOptions a;
    a.run = {17, 1};
    GleasonOptions b = a;
    b.run.workers = 5;
    Certificate ca = gleason_certify(power3(), a);
    Certificate cb = gleason_certify(power3(), b);
    EXPECT_EQ(ca.worst_violation, cb.worst_violation);
    EXPECT_EQ(ca.witnesses.size(), cb.witnesses.size());
    EXPECT_THROW(gleason_certify(CountingObservable::wrap(constant(2, 1.0)), {}), DimensionError);
}

TEST(Certifiers, AgreeWithKindTagsOnTheZoo) {
    RandomStream rng(10);
    struct Entry {
        FunctionalObservable f;
        bool quadratic;
    };
    for (int d : {2, 3, 4}) {
        std::vector<Entry> zoo = {
            {quadratic(oracle::random_hermitian_spectrum(d, 0, 1, rng)), true},
            {constant(d, 0.5), true},
            {power(fixture::projector0(d), 2), false},
            {power(oracle::random_hermitian_spectrum(d, 0, 1, rng), 3), false},
            {0.5 * quadratic(fixture::projector0(d)) + 0.5 * power(fixture::projector0(d), 2), false},
        };
        for (const Entry &e : zoo) {
            Verdict v = d == 2 ? affinity_scan(e.f, {}).verdict
                               : gleason_certify(CountingObservable::wrap(e.f), {}).verdict;
            EXPECT_EQ(v == Verdict::kQuadraticConsistent, e.quadratic) << "d=" << d << " " << e.f.kind_name();
        }
    }
}

TEST(Certifiers, LinkToSignaling) {
    RandomStream rng(11);
    std::vector<FunctionalObservable> zoo = {
        quadratic(oracle::random_hermitian_spectrum(2, 0, 1, rng)),
        power(fixture::projector0(2), 2),
        quadratic(oracle::random_hermitian_spectrum(3, 0, 1, rng)),
        power(fixture::projector0(3), 2),
    };
    for (const FunctionalObservable &f : zoo) {
        Verdict v = f.dim() == 2 ? affinity_scan(f, {}).verdict
                                 : gleason_certify(CountingObservable::wrap(f), {}).verdict;
        GapSearchResult g = max_gap_search(f, 1000, {3, 4});
        if (v == Verdict::kNonQuadratic) {
            EXPECT_GT(g.max_abs_gap, tolerance::kVerdict) << f.kind_name();
        } else {
            EXPECT_LT(g.max_abs_gap, 1e-10) << f.kind_name();
        }
    }
}
