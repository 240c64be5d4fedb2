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

#include "nlqm/signaling.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace nlqm {

namespace {

// Inverse-CDF sampler over one letter's ensemble.
struct LetterSampler {
    std::vector<double> cumulative;
    std::vector<double> values;
    std::vector<PureState> states;

    LetterSampler(const Scenario &sc, Letter letter) {
        Ensemble ens = sc.ensemble(letter);
        double running = 0.0;
        for (const EnsembleMember &m : ens.members()) {
            running += m.weight;
            cumulative.push_back(running);
            values.push_back(sc.observable().evaluate(m.state.vec()));
            states.push_back(m.state);
        }
    }

    size_t draw(RandomStream &rng) const {
        double u = rng.uniform();
        auto it = std::lower_bound(cumulative.begin(), cumulative.end(), u);
        if (it == cumulative.end()) {
            // Rounding can leave the last cumulative weight a hair below 1.
            return cumulative.size() - 1;
        }
        return static_cast<size_t>(it - cumulative.begin());
    }
};

std::int64_t chunk_count(std::int64_t n) {
    return (n + kSampleChunk - 1) / kSampleChunk;
}

std::int64_t chunk_length(std::int64_t n, std::int64_t chunk) {
    return std::min(kSampleChunk, n - chunk * kSampleChunk);
}

bool is_power_of_two(std::int64_t v) {
    return v > 0 && (v & (v - 1)) == 0;
}

double z_statistic(double diff, double pooled) {
    // Differences at round-off level (e.g. a constant f evaluated on different
    // states) are not evidence of anything, whatever the spread.
    if (std::abs(diff) <= tolerance::kDerived) {
        return 0.0;
    }
    if (pooled > 0.0) {
        return std::abs(diff) / pooled;
    }
    return std::numeric_limits<double>::infinity();
}

std::vector<PureState> rotate_basis(std::span<const PureState> basis, const ComplexMatrix &rotation) {
    ComplexMatrix cols = as_columns(basis) * rotation;
    std::vector<ComplexVector> vs;
    for (Eigen::Index c = 0; c < cols.cols(); c++) {
        vs.push_back(cols.col(c));
    }
    // Re-orthonormalize to keep the basis at the 1e-12 level after the product.
    std::vector<ComplexVector> on = gram_schmidt(vs);
    std::vector<PureState> out;
    for (const ComplexVector &v : on) {
        out.push_back(PureState::normalized(v));
    }
    return out;
}

}  // namespace

Scenario Scenario::make(EntangledState state, std::vector<PureState> basis_a, std::vector<PureState> basis_a_prime,
                        FunctionalObservable observable) {
    if (observable.dim() != state.dim_b()) {
        throw DimensionError("Scenario: observable dimension differs from dim H_B");
    }
    for (const auto *basis : {&basis_a, &basis_a_prime}) {
        if (orthonormality_error(vectors_of(*basis)) > tolerance::kDerived) {
            throw PreconditionError("Scenario: Alice basis is not orthonormal");
        }
        if (subspace_mismatch(state.alice_basis(), *basis) > tolerance::kDerived) {
            throw PreconditionError("Scenario: Alice basis does not span the state's A-subspace");
        }
    }
    return Scenario(std::move(state), std::move(basis_a), std::move(basis_a_prime), std::move(observable));
}

Ensemble Scenario::ensemble(Letter letter) const {
    return conditional_ensemble(rebase_alice(state_, basis(letter)));
}

double SignalReport::pooled_stderr() const {
    return std::sqrt(stderr_b * stderr_b + stderr_bprime * stderr_bprime);
}

SignalReport exact_gap(const Scenario &sc) {
    SignalReport r;
    r.exact_fb = ensemble_average(sc.observable(), sc.ensemble(Letter::kBasisA));
    r.exact_fbprime = ensemble_average(sc.observable(), sc.ensemble(Letter::kBasisAPrime));
    r.gap = r.exact_fb - r.exact_fbprime;
    return r;
}

std::vector<PureState> sample_sequence(const Scenario &sc, Letter letter, std::int64_t n, RandomStream &rng) {
    if (n < 1) {
        throw PreconditionError("sample_sequence: n must be >= 1");
    }
    LetterSampler sampler(sc, letter);
    std::vector<PureState> out;
    out.reserve(static_cast<size_t>(n));
    for (std::int64_t i = 0; i < n; i++) {
        out.push_back(sampler.states[sampler.draw(rng)]);
    }
    return out;
}

std::vector<double> sample_values(const Scenario &sc, Letter letter, std::int64_t n, const RunOptions &options) {
    if (n < 1) {
        throw PreconditionError("sample_values: n must be >= 1");
    }
    LetterSampler sampler(sc, letter);
    std::vector<double> out(static_cast<size_t>(n));
    std::int64_t chunks = chunk_count(n);
    parallel_for(static_cast<size_t>(chunks), options.workers, [&](size_t c) {
        auto chunk = static_cast<std::int64_t>(c);
        RandomStream rng =
            RandomStream::derive(options.seed, {static_cast<std::uint64_t>(letter), static_cast<std::uint64_t>(c)});
        std::int64_t len = chunk_length(n, chunk);
        for (std::int64_t i = 0; i < len; i++) {
            out[static_cast<size_t>(chunk * kSampleChunk + i)] = sampler.values[sampler.draw(rng)];
        }
    });
    return out;
}

SignalReport monte_carlo_report(const Scenario &sc, std::int64_t n, const RunOptions &options) {
    if (n < 2) {
        throw PreconditionError("monte_carlo_report: n must be >= 2");
    }
    SignalReport r = exact_gap(sc);
    const LetterSampler samplers[2] = {LetterSampler(sc, Letter::kBasisA), LetterSampler(sc, Letter::kBasisAPrime)};
    const std::int64_t chunks = chunk_count(n);

    std::vector<RunningStats> partial(static_cast<size_t>(2 * chunks));
    parallel_for(partial.size(), options.workers, [&](size_t item) {
        auto letter = static_cast<std::uint64_t>(item / static_cast<size_t>(chunks));
        auto chunk = static_cast<std::int64_t>(item % static_cast<size_t>(chunks));
        RandomStream rng = RandomStream::derive(options.seed, {letter, static_cast<std::uint64_t>(chunk)});
        const LetterSampler &sampler = samplers[letter];
        RunningStats stats;
        std::int64_t len = chunk_length(n, chunk);
        for (std::int64_t i = 0; i < len; i++) {
            stats.add(sampler.values[sampler.draw(rng)]);
        }
        partial[item] = stats;
    });

    RunningStats b;
    RunningStats bprime;
    for (std::int64_t c = 0; c < chunks; c++) {
        b.merge(partial[static_cast<size_t>(c)]);
        bprime.merge(partial[static_cast<size_t>(chunks + c)]);
        if (is_power_of_two(c + 1) || c + 1 == chunks) {
            double pooled = std::hypot(b.standard_error(), bprime.standard_error());
            r.convergence.push_back({b.count, b.mean - bprime.mean, pooled});
        }
    }

    r.has_monte_carlo = true;
    r.mc_fb = b.mean;
    r.mc_fbprime = bprime.mean;
    r.stderr_b = b.standard_error();
    r.stderr_bprime = bprime.standard_error();
    r.z = z_statistic(r.mc_fb - r.mc_fbprime, r.pooled_stderr());
    r.n_samples = n;
    r.seed = options.seed;
    return r;
}

bool signal_detected(const SignalReport &report, double z_threshold) {
    return report.has_monte_carlo && report.z >= z_threshold;
}

double binary_entropy(double p) {
    if (p <= 0.0 || p >= 1.0) {
        return 0.0;
    }
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

ChannelReport channel_capacity(const Scenario &sc, int block_length, int trials, const RunOptions &options) {
    if (block_length < 1 || trials < 1) {
        throw PreconditionError("channel_capacity: block length and trials must be >= 1");
    }
    SignalReport exact = exact_gap(sc);
    const LetterSampler samplers[2] = {LetterSampler(sc, Letter::kBasisA), LetterSampler(sc, Letter::kBasisAPrime)};
    const double threshold = (exact.exact_fb + exact.exact_fbprime) / 2.0;
    const bool letter0_high = exact.exact_fb >= exact.exact_fbprime;

    std::vector<unsigned char> wrong(static_cast<size_t>(trials), 0);
    parallel_for(wrong.size(), options.workers, [&](size_t t) {
        RandomStream rng = RandomStream::derive(options.seed, {2, static_cast<std::uint64_t>(t)});
        int letter = static_cast<int>(rng.next_u64() & 1u);
        const LetterSampler &sampler = samplers[letter];
        double sum = 0.0;
        for (int i = 0; i < block_length; i++) {
            sum += sampler.values[sampler.draw(rng)];
        }
        double mean = sum / block_length;
        bool above = mean > threshold;
        int decoded = (above == letter0_high) ? 0 : 1;
        wrong[t] = decoded != letter ? 1 : 0;
    });

    ChannelReport r;
    r.block_length = block_length;
    r.trials = trials;
    for (unsigned char w : wrong) {
        r.errors += w;
    }
    r.bit_error_rate = static_cast<double>(r.errors) / trials;
    r.decision_threshold = threshold;
    r.gap = exact.gap;
    r.estimated_capacity_bits_per_block =
        std::abs(exact.gap) < tolerance::kDerived ? 0.0 : 1.0 - binary_entropy(r.bit_error_rate);
    r.seed = options.seed;
    return r;
}

Scenario random_scenario(int dim_a, int branches, const FunctionalObservable &f, RandomStream &rng) {
    if (branches < 1 || branches > dim_a) {
        throw PreconditionError("random_scenario: need 1 <= branches <= dim_a");
    }
    ComplexMatrix u = haar_unitary(dim_a, rng);
    std::vector<PureState> alice;
    for (int i = 0; i < branches; i++) {
        alice.push_back(PureState::normalized(u.col(i)));
    }
    ComplexVector raw(branches);
    for (int i = 0; i < branches; i++) {
        raw(i) = rng.complex_normal();
    }
    raw /= raw.norm();
    std::vector<Complex> alphas(raw.data(), raw.data() + branches);
    std::vector<PureState> bob;
    for (int i = 0; i < branches; i++) {
        bob.push_back(PureState::normalized(random_pure(f.dim(), rng)));
    }
    EntangledState state = build_entangled(alphas, alice, std::move(bob));
    std::vector<PureState> basis_a = rotate_basis(alice, haar_unitary(branches, rng));
    std::vector<PureState> basis_a_prime = rotate_basis(alice, haar_unitary(branches, rng));
    return Scenario::make(std::move(state), std::move(basis_a), std::move(basis_a_prime), f);
}

GapSearchResult max_gap_search(const FunctionalObservable &f, int draws, const RunOptions &options) {
    std::vector<double> gaps(static_cast<size_t>(std::max(draws, 0)), 0.0);
    parallel_for(gaps.size(), options.workers, [&](size_t k) {
        RandomStream rng = RandomStream::derive(options.seed, {3, static_cast<std::uint64_t>(k)});
        int dim_a = 2 + static_cast<int>(rng.next_u64() % 4);
        int branches = 2 + static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(dim_a - 1));
        gaps[k] = std::abs(exact_gap(random_scenario(dim_a, branches, f, rng)).gap);
    });
    GapSearchResult out;
    out.draws = draws;
    for (size_t k = 0; k < gaps.size(); k++) {
        if (gaps[k] > out.max_abs_gap) {
            out.max_abs_gap = gaps[k];
            out.best_draw = static_cast<int>(k);
        }
    }
    return out;
}

}  // namespace nlqm
