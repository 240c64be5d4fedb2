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

#include "nlqm/random.h"

#include <cmath>
#include <numbers>
#include <vector>

namespace nlqm {

namespace {

void push_u64(std::vector<std::uint32_t> &words, std::uint64_t v) {
    words.push_back(static_cast<std::uint32_t>(v & 0xffffffffu));
    words.push_back(static_cast<std::uint32_t>(v >> 32));
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed) {
    std::vector<std::uint32_t> words;
    push_u64(words, seed);
    std::seed_seq seq(words.begin(), words.end());
    engine_.seed(seq);
}

RandomStream RandomStream::derive(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
    // Tag word keeps derived streams disjoint from RandomStream(seed).
    std::vector<std::uint32_t> words{0x6e6c716du};
    push_u64(words, seed);
    push_u64(words, path.size());
    for (std::uint64_t p : path) {
        push_u64(words, p);
    }
    std::seed_seq seq(words.begin(), words.end());
    RandomStream out(0);
    out.engine_.seed(seq);
    return out;
}

std::uint64_t RandomStream::next_u64() {
    return engine_();
}

double RandomStream::uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform();
}

double RandomStream::normal() {
    if (has_cached_normal_) {
        has_cached_normal_ = false;
        return cached_normal_;
    }
    double u1 = 1.0 - uniform();  // (0, 1]
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 2.0 * std::numbers::pi * u2;
    cached_normal_ = r * std::sin(theta);
    has_cached_normal_ = true;
    return r * std::cos(theta);
}

std::complex<double> RandomStream::complex_normal() {
    double re = normal();
    double im = normal();
    return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

}  // namespace nlqm
