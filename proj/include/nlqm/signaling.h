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

#ifndef NLQM_SIGNALING_H
#define NLQM_SIGNALING_H

#include <cstdint>
#include <vector>

#include "nlqm/observables.h"
#include "nlqm/parallel.h"
#include "nlqm/states.h"

namespace nlqm {

/// Alice's binary alphabet: which of her two measurement bases she uses.
enum class Letter : int { kBasisA = 0, kBasisAPrime = 1 };

/// One EPR source, two Alice bases of the same A-subspace, and Bob's
/// observable on H_B.
class Scenario {
   public:
    /// Validates both bases are orthonormal and span the state's A-subspace
    /// within 1e-10, and that the observable lives on H_B.
    static Scenario make(EntangledState state, std::vector<PureState> basis_a, std::vector<PureState> basis_a_prime,
                         FunctionalObservable observable);

    const EntangledState &state() const { return state_; }
    const std::vector<PureState> &basis(Letter letter) const {
        return letter == Letter::kBasisA ? basis_a_ : basis_a_prime_;
    }
    const std::vector<PureState> &basis_a() const { return basis_a_; }
    const std::vector<PureState> &basis_a_prime() const { return basis_a_prime_; }
    const FunctionalObservable &observable() const { return observable_; }

    /// The ensemble Bob receives while Alice measures in the letter's basis.
    Ensemble ensemble(Letter letter) const;

   private:
    Scenario(EntangledState s, std::vector<PureState> a, std::vector<PureState> ap, FunctionalObservable f)
        : state_(std::move(s)), basis_a_(std::move(a)), basis_a_prime_(std::move(ap)), observable_(std::move(f)) {}

    EntangledState state_;
    std::vector<PureState> basis_a_;
    std::vector<PureState> basis_a_prime_;
    FunctionalObservable observable_;
};

struct ConvergencePoint {
    std::int64_t n;
    double mc_gap;
    double standard_error;
};

struct SignalReport {
    double exact_fb = 0.0;
    double exact_fbprime = 0.0;
    double gap = 0.0;

    bool has_monte_carlo = false;
    double mc_fb = 0.0;
    double mc_fbprime = 0.0;
    double stderr_b = 0.0;
    double stderr_bprime = 0.0;
    /// |mc_fb - mc_fbprime| / pooled stderr; 0 when the means differ by at
    /// most 1e-10, +inf if the pooled stderr is 0 and they differ by more.
    double z = 0.0;
    std::int64_t n_samples = 0;
    std::uint64_t seed = 0;
    /// Running gap at chunk boundaries that are powers of two, plus n.
    std::vector<ConvergencePoint> convergence;

    double mc_gap() const { return mc_fb - mc_fbprime; }
    double pooled_stderr() const;
};

struct ChannelReport {
    int block_length = 0;
    int trials = 0;
    int errors = 0;
    double bit_error_rate = 0.0;
    double estimated_capacity_bits_per_block = 0.0;
    double decision_threshold = 0.0;
    double gap = 0.0;
    std::uint64_t seed = 0;
};

/// Samples are drawn in chunks of this size; chunk c of letter L uses
/// RandomStream::derive(seed, {L, c}).
inline constexpr std::int64_t kSampleChunk = 4096;

/// Default z above which a report declares signaling.
inline constexpr double kDefaultZThreshold = 5.0;

/// Exact f[b] and f[b'] for both letters; no randomness.
SignalReport exact_gap(const Scenario &sc);

/// i.i.d. draws from the letter's ensemble by inverse CDF over the weights
/// (a draw on a cumulative boundary goes to the lower interval).
std::vector<PureState> sample_sequence(const Scenario &sc, Letter letter, std::int64_t n, RandomStream &rng);

/// Per-sample f values that monte_carlo_report averages, in draw order.
std::vector<double> sample_values(const Scenario &sc, Letter letter, std::int64_t n, const RunOptions &options);

/// Exact fields plus sample means, standard errors and the two-sample z.
/// Bit-identical for any worker count. Requires n >= 2.
SignalReport monte_carlo_report(const Scenario &sc, std::int64_t n, const RunOptions &options);

bool signal_detected(const SignalReport &report, double z_threshold = kDefaultZThreshold);

/// H2(p) in bits.
double binary_entropy(double p);

/// Each trial sends a uniformly random letter as a block of `block_length`
/// draws; Bob decodes by thresholding the block mean of f at the midpoint of
/// the exact means. Capacity is the BSC bound 1 - H2(BER), or 0 when the
/// exact gap vanishes. Trial t uses RandomStream::derive(seed, {2, t}).
ChannelReport channel_capacity(const Scenario &sc, int block_length, int trials, const RunOptions &options);

/// Random scenario: Haar A-subspace of dimension `branches` in H_A, random
/// complex alphas, Haar Bob states, and two Haar rotations of the A-basis.
Scenario random_scenario(int dim_a, int branches, const FunctionalObservable &f, RandomStream &rng);

struct GapSearchResult {
    double max_abs_gap = 0.0;
    int best_draw = -1;
    int draws = 0;
};

/// Largest |exact gap| over `draws` random scenarios with d_A in {2..5}.
GapSearchResult max_gap_search(const FunctionalObservable &f, int draws, const RunOptions &options);

}  // namespace nlqm

#endif  // NLQM_SIGNALING_H
