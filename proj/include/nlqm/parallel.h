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

#ifndef NLQM_PARALLEL_H
#define NLQM_PARALLEL_H

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace nlqm {

/// Seed and worker count for randomized scans. Results depend on the seed
/// only; every work item draws from RandomStream::derive(seed, {...}).
struct RunOptions {
    std::uint64_t seed = 0;
    int workers = 1;
};

/// Calls fn(i) for i in [0, count) on up to `workers` threads. Items are
/// strided across threads; fn must write only to per-item state.
template <typename Fn>
void parallel_for(std::size_t count, int workers, Fn &&fn) {
    std::size_t threads = std::min<std::size_t>(static_cast<std::size_t>(std::max(workers, 1)), count);
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; i++) {
            fn(i);
        }
        return;
    }
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; t++) {
        pool.emplace_back([&, t] {
            try {
                for (std::size_t i = t; i < count; i += threads) {
                    fn(i);
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        });
    }
    for (std::thread &th : pool) {
        th.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

/// Streaming mean/variance (Welford), mergeable with Chan's pooling rule.
struct RunningStats {
    std::int64_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        count++;
        double delta = x - mean;
        mean += delta / static_cast<double>(count);
        m2 += delta * (x - mean);
    }

    void merge(const RunningStats &other) {
        if (other.count == 0) {
            return;
        }
        if (count == 0) {
            *this = other;
            return;
        }
        double n_a = static_cast<double>(count);
        double n_b = static_cast<double>(other.count);
        double n = n_a + n_b;
        double delta = other.mean - mean;
        mean += delta * n_b / n;
        m2 += other.m2 + delta * delta * n_a * n_b / n;
        count += other.count;
    }

    /// Unbiased sample variance; 0 for fewer than two samples.
    double variance() const { return count > 1 ? std::max(m2, 0.0) / static_cast<double>(count - 1) : 0.0; }
    double standard_error() const {
        return count > 0 ? std::sqrt(variance() / static_cast<double>(count)) : 0.0;
    }
};

}  // namespace nlqm

#endif  // NLQM_PARALLEL_H
