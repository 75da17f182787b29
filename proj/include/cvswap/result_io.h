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

#include "cvswap/planners.h"
#include "cvswap/sampling.h"
#include "json.hpp"

namespace cvswap {

/// {"mean": {"re", "im"}, "stderr", "shots", "discarded", "seed"}; an
/// undefined standard error is written as null.
nlohmann::json to_json(const EstimatorResult &r);
EstimatorResult estimator_result_from_json(const nlohmann::json &doc);

/// {"M", "bound", "method", "target_eps", "approximate", "increments",
/// "asymptotic_M"}; asymptotic_M is null when absent.
nlohmann::json to_json(const CutoffPlan &plan);

nlohmann::json complex_to_json(cdouble z);

}  // namespace cvswap
