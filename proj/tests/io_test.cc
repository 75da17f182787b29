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

#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <random>

#include "cvswap/result_io.h"
#include "cvswap/state_io.h"
#include "oracles.h"

namespace cvswap {
namespace {

TEST(StateIo, RoundTripIsExact) {
    std::mt19937_64 rng(61);
    const FockState s = oracle::random_state(CutoffSpec({2, 3}), rng);
    const FockState back = state_from_json(nlohmann::json::parse(state_to_json(s).dump()));
    EXPECT_EQ(back.cutoff(), s.cutoff());
    EXPECT_TRUE(std::equal(s.amplitudes().begin(), s.amplitudes().end(), back.amplitudes().begin()));
}

TEST(StateIo, FileRoundTrip) {
    const FockState s = basis_state({{1}}, CutoffSpec({2}));
    const std::string path = ::testing::TempDir() + "state.json";
    save_state(s, path);
    EXPECT_EQ(load_state(path).amplitude({{1}}), cdouble(1.0));
    std::remove(path.c_str());
}

TEST(StateIo, MalformedDocumentsAreRejected) {
    EXPECT_THROW(state_from_json({{"modes", 1}, {"per_mode_max", {1}}, {"amplitudes", {1.0}}}), std::invalid_argument);
    EXPECT_THROW(state_from_json({{"modes", 2}, {"per_mode_max", {1}}, {"amplitudes", {1.0, 0.0, 0.0, 0.0}}}),
                 std::invalid_argument);
}

TEST(ResultIo, RoundTripKeepsEveryBit) {
    EstimatorResult r;
    r.mean = {0.1 + 0.2, -1.0 / 3.0};
    r.std_error = std::sqrt(2.0) / 1000;
    r.shots = 2000;
    r.discarded = 17;
    r.seed = 18446744073709551557ull;
    const EstimatorResult back = estimator_result_from_json(nlohmann::json::parse(to_json(r).dump()));
    EXPECT_EQ(back.mean, r.mean);
    EXPECT_EQ(back.std_error, r.std_error);
    EXPECT_EQ(back.shots, r.shots);
    EXPECT_EQ(back.discarded, r.discarded);
    EXPECT_EQ(back.seed, r.seed);
}

TEST(ResultIo, UndefinedStandardErrorIsNull) {
    EstimatorResult r;
    r.std_error = std::nan("");
    const nlohmann::json j = to_json(r);
    EXPECT_TRUE(j.at("stderr").is_null());
    EXPECT_TRUE(std::isnan(estimator_result_from_json(j).std_error));
}

TEST(ResultIo, PlanDocument) {
    CutoffPlan p;
    p.M = 27;
    p.bound = 3e-9;
    p.method = PlanMethod::Chernoff;
    p.target_eps = 1e-6;
    const nlohmann::json j = to_json(p);
    EXPECT_EQ(j.at("method"), "chernoff");
    EXPECT_EQ(j.at("M"), 27);
    EXPECT_TRUE(j.at("asymptotic_M").is_null());
}

}  // namespace
}  // namespace cvswap
