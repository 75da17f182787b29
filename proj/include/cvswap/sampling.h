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

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "cvswap/fock.h"

namespace cvswap {

/// Philox4x32-10 block function.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter, std::array<std::uint32_t, 2> key);

/// splitmix64 finalizer; used to derive independent root seeds.
std::uint64_t splitmix64(std::uint64_t x);
/// Seed for sub-task `index` (a run, a cost term, ...) of a root seed.
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index);

/// Uniform doubles in [0, 1) for one (seed, shot, stream) triple. The counter
/// is (shot lo, shot hi, stream, block), so draws never depend on which thread
/// handles a shot.
class UniformStream {
  public:
    UniformStream(std::uint64_t seed, std::uint64_t shot, std::uint32_t stream = 0);
    double next();

  private:
    std::array<std::uint32_t, 2> key_;
    std::array<std::uint32_t, 4> counter_;
    std::array<std::uint32_t, 4> buffer_{};
    int used_ = 4;
};

/// Born-rule distribution |a_k|^2 / norm_sq. Entries below 1e-300 are set to
/// zero before normalizing. Throws std::invalid_argument on a zero state.
std::vector<double> probability_vector(const FockState &state);

inline constexpr double kProbabilityFloor = 1e-300;

/// Inverse-CDF sampler over non-negative weights (need not be normalized).
class CumulativeTable {
  public:
    explicit CumulativeTable(std::span<const double> weights);
    /// Index whose cumulative interval contains u * total, for u in [0, 1).
    std::size_t sample(double u) const;
    double total() const { return cumulative_.empty() ? 0.0 : cumulative_.back(); }
    std::size_t size() const { return cumulative_.size(); }

  private:
    std::vector<double> cumulative_;
};

struct ShotOutcome {
    PhotonPattern pattern;
    std::int64_t shot_index = 0;
};

/// S independent draws from probability_vector(state).
std::vector<ShotOutcome> sample_patterns(const FockState &state, std::int64_t shots, std::uint64_t seed);

/// Writes "shot_index,n0,n1,..." rows with a header line.
void write_shot_csv(std::span<const ShotOutcome> shots, std::ostream &out);

struct EstimatorResult {
    cdouble mean;
    /// Standard error; NaN when fewer than two shots were taken.
    double std_error = 0.0;
    std::int64_t shots = 0;
    /// Shots that scored zero because a detector threshold was exceeded.
    std::int64_t discarded = 0;
    std::uint64_t seed = 0;
};

struct Statistics {
    cdouble mean;
    double std_error;
};

/// Mean and standard error sqrt(var_re + var_im) / sqrt(S), with the sample
/// variances using the n - 1 denominator.
Statistics estimator_statistics(std::span<const cdouble> weights);

/// Worker count used by parallel_for; defaults to the hardware concurrency.
void set_thread_count(int threads);
int thread_count();

/// Calls body(i) for i in [0, n), split into contiguous chunks over workers.
void parallel_for(std::size_t n, const std::function<void(std::size_t)> &body);

}  // namespace cvswap
