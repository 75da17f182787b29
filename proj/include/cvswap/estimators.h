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

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "cvswap/fock.h"
#include "cvswap/gates.h"
#include "cvswap/sampling.h"
#include "cvswap/shot_model.h"

namespace cvswap {

/// Threshold value meaning "count every shot".
inline constexpr int kNoThreshold = -1;

/// Independently prepared inputs measured together. The block's modes are the
/// inputs' modes in order. `circuit` acts on the block before the swap-basis
/// beamsplitters; each pair (a, b) gets U_BS(pi/4, 0)^dag and contributes
/// (-1)^{n_a} to the shot value.
struct ParityBlock {
    std::vector<MixedEnsemble> inputs;
    Circuit circuit;
    std::vector<ModePair> pairs;
    /// Per-pair M: a shot scores zero when n_a + n_b > 2M. kNoThreshold disables.
    std::vector<int> pair_M;
    /// Scores zero when the photon count summed over all paired modes exceeds
    /// 2 * total_M. kNoThreshold disables.
    int total_M = kNoThreshold;
};

PatternFactor parity_factor(const ParityBlock &block);

/// Estimator over independent blocks; the shot value is the product of the
/// block values.
EstimatorResult parity_overlap_estimate(std::span<const ParityBlock> blocks, std::int64_t shots,
                                        std::uint64_t seed);
double parity_overlap_exact(std::span<const ParityBlock> blocks);

/// Single-state form: measures `pairs` of `joint` with per-pair thresholds.
EstimatorResult parity_overlap_estimate(const FockState &joint, std::span<const ModePair> pairs,
                                        std::span<const int> M_per_pair, std::int64_t shots, std::uint64_t seed);
double parity_overlap_exact(const FockState &joint, std::span<const ModePair> pairs, std::span<const int> M_per_pair);

/// Two single-mode inputs, one pair, threshold 2M (M >= 0).
EstimatorResult cv_swap_estimate(const MixedEnsemble &rho, const MixedEnsemble &sigma, int M, std::int64_t shots,
                                 std::uint64_t seed);
double cv_swap_exact(const MixedEnsemble &rho, const MixedEnsemble &sigma, int M);

/// sum_{n+m<=2M} (-1)^n p(n, m) after the swap-basis beamsplitter on a
/// two-mode joint input.
double swap2m_expectation(const FockState &joint, int M);

/// 1 - q_2M of a two-mode joint input.
double error_bound_global(const FockState &joint, int M);
/// 1 - q^rho_M q^sigma_M.
double error_bound_local(const MixedEnsemble &rho, const MixedEnsemble &sigma, int M);

/// |<S(r)0|S(-r)0>|^2 = 1 / cosh 2r.
double analytic_squeezed_overlap(double r);
/// (1 + tanh^{2(M+1)} r) / cosh 2r for even M, (1 - ...) / cosh 2r for odd M.
double analytic_swap2m_squeezed(double r, int M);

struct SweepRow {
    int M;
    double value;
    double bound;
};
void write_sweep_csv(std::span<const SweepRow> rows, std::ostream &out);

}  // namespace cvswap
