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

#include "cvswap/prepare.h"

#include <algorithm>
#include <string>

#include "cvswap/gates.h"

namespace cvswap {

int preparation_modes(const Preparation &prep) {
    if (const auto *v = std::get_if<VacuumPrep>(&prep)) {
        return v->modes;
    }
    return std::holds_alternative<TmssPrep>(prep) ? 2 : 1;
}

PreparedState prepare(const Preparation &prep, int cutoff, PrepareOptions options) {
    if (cutoff < 0) {
        throw std::invalid_argument("prepare: cutoff must be non-negative");
    }
    const int modes = preparation_modes(prep);
    if (modes < 1) {
        throw std::invalid_argument("prepare: at least one mode is required");
    }
    const CutoffSpec spec = CutoffSpec::uniform(modes, cutoff);
    FockState state = vacuum(spec);
    // The gate matrices hold exact elements, so the truncated column of the
    // vacuum is exact and its norm defect is the leak.
    if (const auto *c = std::get_if<CoherentPrep>(&prep)) {
        state = apply_gate(state, Displacement{c->alpha, 0});
    } else if (const auto *s = std::get_if<SqueezedPrep>(&prep)) {
        state = apply_gate(state, Squeeze{s->z, 0});
    } else if (const auto *t = std::get_if<TmssPrep>(&prep)) {
        state = apply_gate(state, TwoModeSqueeze{t->r, 0, 1});
    }
    const double leak = std::max(0.0, 1.0 - state.norm_sq());
    if (leak > kLeakError) {
        throw NumericalContractError("prepare: probability above the cutoff is " + std::to_string(leak) +
                                     ", raise the cutoff");
    }
    PreparedState out{options.renormalize ? state.normalized() : state, leak, leak >= kLeakWarning};
    return out;
}

}  // namespace cvswap
