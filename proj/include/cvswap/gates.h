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

#include <Eigen/SparseCore>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "cvswap/fock.h"

namespace cvswap {

/// exp(alpha a^dag - conj(alpha) a)
struct Displacement {
    cdouble alpha;
    int mode;
};

/// exp((conj(z) a^2 - z a^dag^2) / 2)
struct Squeeze {
    cdouble z;
    int mode;
};

/// exp(theta (e^{i phi} a_i^dag a_j - e^{-i phi} a_j^dag a_i)), theta in [0, pi],
/// phi in [0, 2 pi). Single-particle action:
///   a_i^dag -> cos(theta) a_i^dag - e^{-i phi} sin(theta) a_j^dag
///   a_j^dag -> cos(theta) a_j^dag + e^{ i phi} sin(theta) a_i^dag
struct Beamsplitter {
    double theta;
    double phi;
    int mode_i;
    int mode_j;
};

/// exp(-i phi a^dag a), phi in [0, 2 pi).
struct PhaseRotation {
    double phi;
    int mode;
};

/// exp(r (a_i a_j - a_i^dag a_j^dag)).
struct TwoModeSqueeze {
    double r;
    int mode_i;
    int mode_j;
};

/// Exchanges the contents of two modes.
struct ModeSwap {
    int mode_i;
    int mode_j;
};

using GateSpec = std::variant<Displacement, Squeeze, Beamsplitter, PhaseRotation, TwoModeSqueeze, ModeSwap>;
using Circuit = std::vector<GateSpec>;
using SparseMatrix = Eigen::SparseMatrix<cdouble>;

/// Maps any angle into [0, 2 pi).
double wrap_phase(double phi);

std::vector<int> gate_modes(const GateSpec &gate);
std::string gate_name(const GateSpec &gate);
/// True for gates that commute with the total photon number.
bool is_number_conserving(const GateSpec &gate);
/// Throws std::invalid_argument when parameters or mode indices are invalid
/// for a system of `modes` modes.
void validate_gate(const GateSpec &gate, int modes);

GateSpec inverse(const GateSpec &gate);
Circuit inverse(std::span<const GateSpec> circuit);
/// Shifts every mode index by `offset`.
GateSpec shifted(const GateSpec &gate, int offset);

/// Truncated Fock matrix of the gate on its own mode(s). For two-mode gates the
/// local index is n_i * (N_j + 1) + n_j, with i and j the gate's first and
/// second mode. Matrix elements are the exact elements of the untruncated
/// operator; truncation only drops rows and columns.
SparseMatrix gate_matrix(const GateSpec &gate, const CutoffSpec &cutoff);

/// Applies a matrix acting on the listed modes (one or two), with the same
/// local index convention as gate_matrix.
FockState apply_matrix(const FockState &state, std::span<const int> modes, const SparseMatrix &matrix);

FockState apply_gate(const FockState &state, const GateSpec &gate);
FockState apply_circuit(const FockState &state, std::span<const GateSpec> circuit);

/// A circuit with its gate matrices built once for a fixed cutoff, for
/// repeated application to many states of the same shape.
class CompiledCircuit {
  public:
    CompiledCircuit(std::span<const GateSpec> circuit, const CutoffSpec &cutoff);
    FockState apply(const FockState &state) const;
    const CutoffSpec &cutoff() const { return cutoff_; }

  private:
    struct Step {
        std::vector<int> modes;
        SparseMatrix matrix;
    };
    CutoffSpec cutoff_;
    std::vector<Step> steps_;
};

namespace detail {

/// Associated Laguerre polynomials L_n^{(k)}(x), n = 0..max_degree.
std::vector<double> laguerre_column(int max_degree, int k, double x);

}  // namespace detail

}  // namespace cvswap
