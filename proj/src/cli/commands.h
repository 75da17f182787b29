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
#include <optional>
#include <string>
#include <vector>

#include "config.h"

namespace cvswap::cli {

struct CommandContext {
    std::optional<std::uint64_t> seed_override;
    std::string shots_csv;
    std::vector<std::string> warnings;
};

/// A command fills the resolved config in place and returns its result
/// document; `csv` renders the same result as a table.
struct Command {
    std::string name;
    json (*run)(json &config, CommandContext &ctx);
    std::string (*csv)(const json &result);
};

const std::vector<Command> &commands();

}  // namespace cvswap::cli
