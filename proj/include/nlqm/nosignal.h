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

#ifndef NLQM_NOSIGNAL_H
#define NLQM_NOSIGNAL_H

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "nlqm/observables.h"
#include "nlqm/parallel.h"

namespace nlqm {

/// Two chords of the Bloch ball meeting at x:
///   x = p1 x1 + p2 x2 = p1p x1p + p2p x2p,
/// with lhs/rhs the mixture values of f along each chord.
struct ChordWitness {
    BlochPoint x1, x2, x1p, x2p;
    double p1 = 0.0, p2 = 0.0, p1p = 0.0, p2p = 0.0;
    BlochPoint x;
    /// f at the pure state of each endpoint.
    double f1 = 0.0, f2 = 0.0, f1p = 0.0, f2p = 0.0;
    double lhs = 0.0;
    double rhs = 0.0;
    double violation = 0.0;
};

/// Affine-extension probe: x = p y1 + (1 - p) y2 with p possibly outside
/// [0, 1]; phi values are chord mixture values through each point.
struct AffineWitness {
    BlochPoint y1, y2, x;
    double p = 0.0;
    double phi_y1 = 0.0, phi_y2 = 0.0, phi_x = 0.0;
    double violation = 0.0;
};

/// mu over a subspace X and its spread across re-drawn bases of X.
struct SubspaceMeasureRecord {
    std::vector<PureState> basis;
    double mu = 0.0;
    double mu_min = 0.0;
    double mu_max = 0.0;
    double basis_spread = 0.0;
    int bases_tested = 0;
};

/// mu(X) against Tr(F P_X) for a reconstructed F.
struct ReconstructionWitness {
    std::vector<PureState> basis;
    double mu = 0.0;
    double trace_fp = 0.0;
    double violation = 0.0;
};

struct PositivityWitness {
    double min_eigenvalue = 0.0;
    double violation = 0.0;
};

using Witness = std::variant<ChordWitness, AffineWitness, SubspaceMeasureRecord, ReconstructionWitness,
                             PositivityWitness>;

double witness_violation(const Witness &w);

enum class Verdict { kQuadraticConsistent, kNonQuadratic };

std::string to_string(Verdict v);

struct Certificate {
    std::string method;
    Verdict verdict = Verdict::kQuadraticConsistent;
    double worst_violation = 0.0;
    double tolerance = tolerance::kVerdict;
    std::uint64_t seed = 0;
    std::vector<Witness> witnesses;
    /// Polarization reconstruction of f (always produced; only meaningful
    /// when the verdict is quadratic-consistent).
    std::optional<ComplexMatrix> reconstructed;
};

/// Intersection of the open chords x1x2 and x1p x2p (all four points on the
/// sphere within 1e-10). Returns nullopt for non-intersecting, parallel or
/// collinear chords. Closest approach must be below 1e-9.
std::optional<ChordWitness> chord_intersection(const BlochPoint &x1, const BlochPoint &x2, const BlochPoint &x1p,
                                               const BlochPoint &x2p);

/// Chord through an interior point y along `direction`, y = p1 x1 + p2 x2.
struct Chord {
    BlochPoint x1, x2;
    double p1 = 0.0;
    double p2 = 0.0;
};
Chord chord_through(const Eigen::Vector3d &y, const Eigen::Vector3d &direction);

struct AffinityOptions {
    int chords = 1000;
    double tolerance = tolerance::kVerdict;
    /// Prepend the three pairs of coordinate-axis diameters.
    bool axis_probes = true;
    /// Number of affine-extension probes (weights in [-0.5, 1.5]).
    int affine_checks = 0;
    RunOptions run;
};

/// Mixture-consistency scan over intersecting chord pairs of the Bloch ball.
/// Chord i is drawn from RandomStream::derive(seed, {4, i}): a uniform ball
/// point x and two uniform directions through it.
Certificate affinity_scan(const FunctionalObservable &f, const AffinityOptions &options);

/// Spectral form of a dim-2 quadratic observable.
struct ExtremalDecomposition {
    double lambda_plus = 0.0;
    double lambda_minus = 0.0;
    PureState b_plus;
    PureState b_minus;

    /// lambda+ <b+|rho(x)|b+> + lambda- <b-|rho(x)|b->, affine on the ball.
    double phi(const BlochPoint &x) const;
};

ExtremalDecomposition extremal_decomposition(const FunctionalObservable &f);

/// sum_k f(b_k) over an orthonormal basis (checked within 1e-10).
double subspace_measure(const CountingObservable &f, std::span<const PureState> basis);

/// mu over the given basis of X, its discrete-Fourier rotation, and
/// `resamples` Haar rotations within X.
SubspaceMeasureRecord basis_independence(const CountingObservable &f, std::span<const PureState> basis,
                                         int resamples, RandomStream &rng);

struct OrthoadditivityRecord {
    double mu_y = 0.0;
    double mu_z = 0.0;
    double mu_x = 0.0;
    /// |mu(Y) + mu(Z) - mu(Y (+) Z)| on the concatenated basis.
    double concatenated_violation = 0.0;
    /// Same with independently re-drawn bases of Y, Z and Y (+) Z.
    double resampled_violation = 0.0;

    double violation() const { return std::max(concatenated_violation, resampled_violation); }
};

OrthoadditivityRecord orthoadditivity_check(const CountingObservable &f, std::span<const PureState> y,
                                            std::span<const PureState> z, int resamples, RandomStream &rng);

struct GleasonOptions {
    /// Random subspaces per dimension, in addition to the coordinate one.
    int subspaces_per_dim = 4;
    int resamples = 32;
    int reconstruction_checks = 64;
    double tolerance = tolerance::kVerdict;
    RunOptions run;
};

/// Basis-independence of mu on subspaces of every dimension; if it holds,
/// checks mu(X) = Tr(F P_X) for the polarization F and F >= -1e-10.
/// Requires dim >= 3.
Certificate gleason_certify(const CountingObservable &f, const GleasonOptions &options);

}  // namespace nlqm

#endif  // NLQM_NOSIGNAL_H
