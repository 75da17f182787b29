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
#include <span>

#include "cvswap/gates.h"

namespace cvswap {

/// Single-particle transfer matrix T of a passive circuit, defined by
/// U a_k^dag U^dag = sum_l T(l, k) a_l^dag. Only Beamsplitter, PhaseRotation
/// and ModeSwap gates are accepted.
Eigen::MatrixXcd single_particle_transfer(std::span<const GateSpec> circuit, int modes);

/// Nearest-neighbour rectangular mesh reproducing the unitary `u` as a
/// transfer matrix: beamsplitters on (k, k+1) followed by one layer of phase
/// rotations. Gates that act trivially are omitted. Throws
/// std::invalid_argument when `u` is not unitary to `tol`.
Circuit rectangular_decompose(const Eigen::MatrixXcd &u, double tol = 1e-10);

}  // namespace cvswap
