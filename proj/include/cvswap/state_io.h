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

#include <string>

#include "cvswap/fock.h"
#include "json.hpp"

namespace cvswap {

/// {"modes": K, "per_mode_max": [...], "amplitudes": [re0, im0, re1, im1, ...]}
/// Doubles are written in shortest round-trip form, so load(save(x)) == x
/// bit for bit.
nlohmann::json state_to_json(const FockState &state);
FockState state_from_json(const nlohmann::json &doc);

void save_state(const FockState &state, const std::string &path);
FockState load_state(const std::string &path);

}  // namespace cvswap
