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

#ifndef NLQM_RANDOM_H
#define NLQM_RANDOM_H

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace nlqm {

/// Seeded pseudo-random stream. Every draw is fully specified (no
/// implementation-defined std distributions), so a seed reproduces the same
/// numbers on every platform. A stream must not be shared between threads.
class RandomStream {
   public:
    explicit RandomStream(std::uint64_t seed);

    /// Independent stream for a (seed, path...) coordinate. Parallel scans use
    /// one derived stream per work item so results do not depend on how items
    /// are distributed over workers.
    static RandomStream derive(std::uint64_t seed, std::initializer_list<std::uint64_t> path);

    std::uint64_t next_u64();
    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    double uniform(double lo, double hi);
    /// Standard normal via Box-Muller.
    double normal();
    /// Circular complex Gaussian with E|z|^2 = 1.
    std::complex<double> complex_normal();

   private:
    std::mt19937_64 engine_;
    double cached_normal_ = 0.0;
    bool has_cached_normal_ = false;
};

}  // namespace nlqm

#endif  // NLQM_RANDOM_H
