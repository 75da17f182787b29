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
#include <vector>

#include "cvswap/estimators.h"
#include "cvswap/fock.h"
#include "cvswap/gates.h"
#include "cvswap/sampling.h"

namespace cvswap {

// ---- PERM test -------------------------------------------------------------

/// F(l, j) = e^{2 pi i l j / L} / sqrt(L), the single-particle transfer of the
/// mixer whose Fock states are PERM eigenvectors.
Eigen::MatrixXcd dft_transfer(int L);
/// Rectangular mesh for F^dag followed by reversal of the output modes;
/// applied before counting photons.
Circuit perm_measurement_circuit(int L);
/// Weight prod_m e^{2 pi i (L - 1 - m) n_m / L}, with components below 1e-15
/// set to 0.
cdouble perm_weight(const PhotonPattern &pattern);

/// Estimates tr(rho_0 rho_1 ... rho_{L-1}) from L single-mode inputs sharing
/// one cutoff.
EstimatorResult perm_test(std::span<const MixedEnsemble> states, std::int64_t shots, std::uint64_t seed);
cdouble perm_test_exact(std::span<const MixedEnsemble> states);

// ---- two-copy test ---------------------------------------------------------

/// psi^{(x) n} with modes ordered A1 B1 A2 B2 ... An Bn.
FockState replicate_purification(const FockState &psi_ab, int n);

/// Psi_C (x) PERM_A' Psi_C' over 4n modes. PERM moves the content of A'_{k+1}
/// into A'_k; by default it is a relabeling of modes, with `perm_as_gates` it
/// is applied as a chain of ModeSwap gates.
FockState two_copy_input(const FockState &purification, bool perm_as_gates = false);

/// Estimates (tr rho^n)^2 where rho is the reduced state of the A modes.
EstimatorResult two_copy_test(const FockState &purification, std::int64_t shots, std::uint64_t seed,
                              int M = kNoThreshold, bool perm_as_gates = false);
double two_copy_exact(const FockState &purification, int M = kNoThreshold, bool perm_as_gates = false);

// ---- variational-compiling cost --------------------------------------------

struct CompileThreshold {
    enum class Kind {
        /// Keep shots whose photon count over all four modes of a term is <= 2M.
        Total,
        /// Keep shots with n + m <= 2M on each measured pair.
        PerPair,
    };
    Kind kind = Kind::Total;
    int M = kNoThreshold;
};

struct CompileCostResult {
    double cost = 0.0;
    std::vector<EstimatorResult> terms;
};

/// 1 - (1/K) sum_j estimate of |<psi_j| V^dag U (x) I_R |psi_j>|^2. Training
/// states are two-mode (A, R); U and V may only act on mode 0. Term j uses
/// seed derive_seed(seed, j).
CompileCostResult compile_cost(std::span<const FockState> training, const Circuit &U, const Circuit &V,
                               CompileThreshold threshold, std::int64_t shots_per_term, std::uint64_t seed);
double compile_cost_exact(std::span<const FockState> training, const Circuit &U, const Circuit &V,
                          CompileThreshold threshold);

// ---- hybrid qubit / CV test ------------------------------------------------

/// C with C|i>|j> = (X(i) (x) Z(j)) (|00> + |11>) / sqrt2, column i * 2 + j.
Eigen::MatrixXcd qubit_bell_change();

/// Inputs are two-mode states (qubit as a mode with cutoff 1, then one CV
/// mode). Shot value (-1)^{i j + n_B} Theta[2M - n_B - m_B'].
EstimatorResult hybrid_swap_estimate(const MixedEnsemble &a, const MixedEnsemble &b, int M, std::int64_t shots,
                                     std::uint64_t seed);
double hybrid_swap_exact(const MixedEnsemble &a, const MixedEnsemble &b, int M);

}  // namespace cvswap
