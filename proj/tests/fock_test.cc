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

#include "cvswap/fock.h"

#include <gtest/gtest.h>

#include "oracles.h"

namespace cvswap {
namespace {

TEST(Fock, BasisStateIndexIsRowMajor) {
    const CutoffSpec c({2, 3});
    const FockState s = basis_state({{1, 2}}, c);
    EXPECT_EQ(s.index_of({{1, 2}}), 1u * 4 + 2);
    EXPECT_EQ(s.amplitudes()[6], cdouble(1.0));
    EXPECT_EQ(s.pattern_at(6), (PhotonPattern{{1, 2}}));
    EXPECT_EQ(c.dimension(), 12u);
    EXPECT_EQ(c.total_max(), 5);
}

TEST(Fock, BasisStateRejectsPatternAboveCutoff) {
    EXPECT_THROW(basis_state({{3}}, CutoffSpec({2})), std::out_of_range);
}

TEST(Fock, InnerProductIsAntilinearInFirstArgument) {
    std::mt19937_64 rng(1);
    const CutoffSpec c({4});
    const FockState a = oracle::random_state(c, rng);
    const FockState b = oracle::random_state(c, rng);
    const cdouble expected = oracle::vec(a).dot(oracle::vec(b));
    EXPECT_NEAR(std::abs(inner_product(a, b) - expected), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(inner_product(a.scaled({0.0, 1.0}), b) - cdouble(0.0, -1.0) * expected), 0.0, 1e-14);
    EXPECT_NEAR(overlap(a, b), std::norm(expected), 1e-14);
}

TEST(Fock, TensorMatchesKronecker) {
    std::mt19937_64 rng(2);
    const FockState a = oracle::random_state(CutoffSpec({2}), rng);
    const FockState b = oracle::random_state(CutoffSpec({3}), rng);
    const Eigen::VectorXcd ref = Eigen::kroneckerProduct(oracle::vec(a), oracle::vec(b));
    const FockState t = tensor(a, b);
    EXPECT_EQ(t.cutoff(), CutoffSpec({2, 3}));
    EXPECT_LT((oracle::vec(t) - ref).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Fock, EmbedPadsAndShrinksOnlyZeros) {
    const FockState s = basis_state({{1}}, CutoffSpec({1}));
    const FockState padded = embed(s, CutoffSpec({4}));
    EXPECT_EQ(padded.amplitude({{1}}), cdouble(1.0));
    EXPECT_EQ(embed(padded, CutoffSpec({1})).amplitude({{1}}), cdouble(1.0));
    EXPECT_THROW(embed(padded, CutoffSpec({0})), std::invalid_argument);
}

TEST(Fock, PermuteModesTakesModeOrderFromInput) {
    const FockState s = basis_state({{0, 1, 2}}, CutoffSpec({1, 1, 2}));
    const int order[] = {2, 0, 1};
    const FockState p = permute_modes(s, order);
    EXPECT_EQ(p.cutoff(), CutoffSpec({2, 1, 1}));
    EXPECT_EQ(p.amplitude({{2, 0, 1}}), cdouble(1.0));
}

TEST(Fock, TruncationWeightMatchesBruteForce) {
    std::mt19937_64 rng(3);
    const FockState s = oracle::random_state(CutoffSpec({3, 2, 4}), rng);
    const int modes[] = {0, 2};
    for (int t = 0; t <= 7; ++t) {
        double brute = 0.0;
        for (std::size_t k = 0; k < s.size(); ++k) {
            const PhotonPattern p = s.pattern_at(k);
            if (p.counts[0] + p.counts[2] <= t) {
                brute += std::norm(s.amplitudes()[k]);
            }
        }
        EXPECT_NEAR(truncation_weight(s, modes, t), brute, 1e-15) << "threshold " << t;
    }
}

TEST(Fock, DistributionsSumToNorm) {
    std::mt19937_64 rng(4);
    const FockState s = oracle::random_state(CutoffSpec({3, 2}), rng);
    double a = 0.0;
    for (double p : mode_distribution(s, 1)) {
        a += p;
    }
    double b = 0.0;
    for (double p : total_photon_distribution(s)) {
        b += p;
    }
    EXPECT_NEAR(a, 1.0, 1e-14);
    EXPECT_NEAR(b, 1.0, 1e-14);
    EXPECT_NEAR(local_cumulative(s, 1, 2), 1.0, 1e-14);
    EXPECT_NEAR(local_cumulative(s, 0, 0), mode_distribution(s, 0)[0], 1e-15);
}

TEST(Fock, SchmidtEnsembleReproducesReducedState) {
    std::mt19937_64 rng(5);
    const FockState psi = oracle::random_state(CutoffSpec({3, 2}), rng);
    const MixedEnsemble rho = schmidt_ensemble(psi);
    Eigen::MatrixXcd ref = Eigen::MatrixXcd::Zero(4, 4);
    for (int a = 0; a <= 3; ++a) {
        for (int b = 0; b <= 3; ++b) {
            for (int k = 0; k <= 2; ++k) {
                ref(a, b) += psi.amplitude({{a, k}}) * std::conj(psi.amplitude({{b, k}}));
            }
        }
    }
    EXPECT_LE(rho.size(), 3u);
    EXPECT_LT((oracle::density(rho) - ref).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(Fock, EnsembleWeightsMustSumToOne) {
    const FockState v = vacuum(CutoffSpec({1}));
    EXPECT_THROW(MixedEnsemble({{0.5, v}, {0.4, v}}), std::invalid_argument);
    EXPECT_THROW(MixedEnsemble({{0.5, v}, {0.5, vacuum(CutoffSpec({2}))}}), std::invalid_argument);
}

}  // namespace
}  // namespace cvswap
