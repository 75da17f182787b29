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

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "cvswap/fock.h"
#include "cvswap/sampling.h"

namespace cvswap {

/// Unit-norm state of qudits with local dimensions `dims` (row-major, last
/// qudit fastest).
class DVState {
  public:
    DVState(std::vector<int> dims, std::vector<cdouble> amplitudes);

    const std::vector<int> &dims() const { return dims_; }
    std::span<const cdouble> amplitudes() const { return amplitudes_; }
    /// The same amplitudes as a Fock-basis tensor with cutoff d - 1 per mode.
    FockState as_fock() const;

  private:
    std::vector<int> dims_;
    std::vector<cdouble> amplitudes_;
};

struct DVComponent {
    double weight;
    DVState state;
};

/// Per-pair Bell labels (i_k, j_k).
struct BellOutcome {
    std::vector<std::pair<int, int>> labels;
};

/// (X(x) (x) Z(z)) sum_i |i>|i> / sqrt(d) with X(x)|i> = |i + x mod d> and
/// Z(z)|i> = e^{2 pi i z i / d}|i>.
DVState qudit_bell_state(int z, int x, int d);

/// Permutation |i>|j> -> |j>|i> on C^d (x) C^d, index i * d + j.
Eigen::MatrixXcd swap_permutation(int d);

/// Columns V|i>|j>: |i>|i>, (|ij> + |ji>)/sqrt2 for i < j, (|ij> - |ji>)/sqrt2 for i > j.
Eigen::MatrixXcd v_unitary(int d);
/// Columns built from qudit Bell states: Phi_{z,0}, Phi_{z,d/2} (even d), and
/// (Phi_{z,x} +- e^{-2 pi i x z / d} Phi_{z,-x}) / sqrt2 for 0 < x < d/2.
Eigen::MatrixXcd w_unitary(int d);

/// SWAP eigenvalue (+1 or -1) of every column of a SWAP-diagonalizing basis.
/// Throws std::invalid_argument if a column is not an eigenvector to `tol`.
std::vector<int> swap_eigenvalues(const Eigen::MatrixXcd &basis, int d, double tol = 1e-12);

enum class SwapBasis { V, W };

/// Destructive SWAP test over K qudit pairs (qudit k of `a` with qudit k of
/// `b`). Shot value is the product of the eigenvalues of the measured basis
/// columns.
EstimatorResult dv_swap_estimate(std::span<const DVComponent> a, std::span<const DVComponent> b, SwapBasis basis,
                                 std::int64_t shots, std::uint64_t seed);
double dv_swap_exact(std::span<const DVComponent> a, std::span<const DVComponent> b, SwapBasis basis);

EstimatorResult dv_swap_estimate(const DVState &a, const DVState &b, SwapBasis basis, std::int64_t shots,
                                 std::uint64_t seed);
double dv_swap_exact(const DVState &a, const DVState &b, SwapBasis basis);

/// Bell labels of shot outcomes: label (column / d, column % d) per pair.
std::vector<BellOutcome> dv_swap_outcomes(const DVState &a, const DVState &b, SwapBasis basis, std::int64_t shots,
                                          std::uint64_t seed);

}  // namespace cvswap
