// Copyright 2026 The cvswap Authors
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

#include "cvswap/sampling.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>

namespace cvswap {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t &hi, std::uint32_t &lo) {
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

std::atomic<int> g_threads{0};

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key) {
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            key[0] += kPhiloxW0;
            key[1] += kPhiloxW1;
        }
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kPhiloxM0, ctr[0], hi0, lo0);
        mulhilo(kPhiloxM1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) {
    return splitmix64(root ^ splitmix64(index + 0x632BE59BD9B4E019ull));
}

UniformStream::UniformStream(std::uint64_t seed, std::uint64_t shot, std::uint32_t stream)
    : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
      counter_{static_cast<std::uint32_t>(shot), static_cast<std::uint32_t>(shot >> 32), stream, 0} {}

double UniformStream::next() {
    if (used_ >= 4) {
        buffer_ = philox4x32(counter_, key_);
        ++counter_[3];
        used_ = 0;
    }
    const std::uint64_t a = buffer_[used_] >> 5;
    const std::uint64_t b = buffer_[used_ + 1] >> 6;
    used_ += 2;
    return static_cast<double>((a << 26) | b) * 0x1.0p-53;
}

std::vector<double> probability_vector(const FockState &state) {
    std::vector<double> p(state.size());
    double total = 0.0;
    auto amps = state.amplitudes();
    for (std::size_t k = 0; k < p.size(); ++k) {
        const double v = std::norm(amps[k]);
        p[k] = v < kProbabilityFloor ? 0.0 : v;
        total += p[k];
    }
    if (!(total > 0.0)) {
        throw std::invalid_argument("probability_vector: state has zero norm");
    }
    for (double &v : p) {
        v /= total;
    }
    return p;
}

CumulativeTable::CumulativeTable(std::span<const double> weights) {
    cumulative_.reserve(weights.size());
    double acc = 0.0;
    for (double w : weights) {
        if (w < 0.0) {
            throw std::invalid_argument("CumulativeTable: negative weight");
        }
        acc += w;
        cumulative_.push_back(acc);
    }
    if (!(acc > 0.0)) {
        throw std::invalid_argument("CumulativeTable: weights sum to zero");
    }
}

std::size_t CumulativeTable::sample(double u) const {
    const double target = u * cumulative_.back();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
    if (it == cumulative_.end()) {
        // u * total rounded up to total; fall back to the last non-empty bin.
        --it;
        while (it != cumulative_.begin() && *it == *(it - 1)) {
            --it;
        }
    }
    return static_cast<std::size_t>(it - cumulative_.begin());
}

std::vector<ShotOutcome> sample_patterns(const FockState &state, std::int64_t shots, std::uint64_t seed) {
    if (shots < 1) {
        throw std::invalid_argument("sample_patterns: at least one shot is required");
    }
    const std::vector<double> p = probability_vector(state);
    const CumulativeTable table(p);
    std::vector<ShotOutcome> out(static_cast<std::size_t>(shots));
    parallel_for(out.size(), [&](std::size_t s) {
        UniformStream stream(seed, s);
        out[s] = {state.pattern_at(table.sample(stream.next())), static_cast<std::int64_t>(s)};
    });
    return out;
}

void write_shot_csv(std::span<const ShotOutcome> shots, std::ostream &out) {
    const int modes = shots.empty() ? 0 : shots.front().pattern.modes();
    out << "shot_index";
    for (int k = 0; k < modes; ++k) {
        out << ",n" << k;
    }
    out << '\n';
    for (const ShotOutcome &s : shots) {
        out << s.shot_index;
        for (int n : s.pattern.counts) {
            out << ',' << n;
        }
        out << '\n';
    }
}

Statistics estimator_statistics(std::span<const cdouble> weights) {
    if (weights.empty()) {
        throw std::invalid_argument("estimator_statistics: empty sample");
    }
    const double n = static_cast<double>(weights.size());
    cdouble sum = 0.0;
    for (const cdouble &w : weights) {
        sum += w;
    }
    const cdouble mean = sum / n;
    if (weights.size() < 2) {
        return {mean, std::numeric_limits<double>::quiet_NaN()};
    }
    double var_re = 0.0;
    double var_im = 0.0;
    for (const cdouble &w : weights) {
        const cdouble d = w - mean;
        var_re += d.real() * d.real();
        var_im += d.imag() * d.imag();
    }
    var_re /= n - 1.0;
    var_im /= n - 1.0;
    return {mean, std::sqrt((var_re + var_im) / n)};
}

void set_thread_count(int threads) {
    g_threads.store(std::max(threads, 0));
}

int thread_count() {
    const int t = g_threads.load();
    if (t > 0) {
        return t;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)> &body) {
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(thread_count()), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            body(i);
        }
        return;
    }
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        pool.emplace_back([&, begin, end] {
            try {
                for (std::size_t i = begin; i < end; ++i) {
                    body(i);
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
            }
        });
    }
    for (std::thread &t : pool) {
        t.join();
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

}  // namespace cvswap
