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

#include "cvswap/result_io.h"

#include <cmath>
#include <limits>

namespace cvswap {

namespace {

nlohmann::json number_or_null(double v) {
    return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

}  // namespace

nlohmann::json complex_to_json(cdouble z) {
    return {{"re", z.real()}, {"im", z.imag()}};
}

nlohmann::json to_json(const EstimatorResult &r) {
    return {{"mean", complex_to_json(r.mean)},
            {"stderr", number_or_null(r.std_error)},
            {"shots", r.shots},
            {"discarded", r.discarded},
            {"seed", r.seed}};
}

EstimatorResult estimator_result_from_json(const nlohmann::json &doc) {
    EstimatorResult r;
    r.mean = {doc.at("mean").at("re").get<double>(), doc.at("mean").at("im").get<double>()};
    r.std_error = doc.at("stderr").is_null() ? std::numeric_limits<double>::quiet_NaN()
                                             : doc.at("stderr").get<double>();
    r.shots = doc.at("shots").get<std::int64_t>();
    r.discarded = doc.at("discarded").get<std::int64_t>();
    r.seed = doc.at("seed").get<std::uint64_t>();
    return r;
}

nlohmann::json to_json(const CutoffPlan &plan) {
    return {{"M", plan.M},
            {"bound", plan.bound},
            {"method", plan_method_name(plan.method)},
            {"target_eps", plan.target_eps},
            {"approximate", plan.approximate},
            {"increments", plan.increments},
            {"asymptotic_M", number_or_null(plan.asymptotic_M)}};
}

}  // namespace cvswap
