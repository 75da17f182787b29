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

#include <variant>

#include "cvswap/fock.h"

namespace cvswap {

struct VacuumPrep {
    int modes = 1;
};
/// D(alpha)|0>.
struct CoherentPrep {
    cdouble alpha;
};
/// S(z)|0>.
struct SqueezedPrep {
    cdouble z;
};
/// sech(r) sum_n (-tanh r)^n |n, n>.
struct TmssPrep {
    double r;
};

using Preparation = std::variant<VacuumPrep, CoherentPrep, SqueezedPrep, TmssPrep>;

struct PrepareOptions {
    /// When false the truncated amplitudes are returned as-is, so that every
    /// retained amplitude is the exact amplitude of the untruncated state.
    bool renormalize = true;
};

struct PreparedState {
    FockState state;
    /// Probability above the cutoff before renormalization.
    double leak = 0.0;
    /// Set when the leak lies in [1e-6, 1e-3].
    bool warning = false;
};

inline constexpr double kLeakWarning = 1e-6;
inline constexpr double kLeakError = 1e-3;

int preparation_modes(const Preparation &prep);

/// Prepares the state with every mode truncated at `cutoff` photons. Throws
/// NumericalContractError when the leak exceeds 1e-3.
PreparedState prepare(const Preparation &prep, int cutoff, PrepareOptions options = {});

}  // namespace cvswap
