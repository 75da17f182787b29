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

#include "cvswap/estimators.h"

#include <gtest/gtest.h>

#include <sstream>

#include "cvswap/planners.h"
#include "cvswap/prepare.h"
#include "oracles.h"

namespace cvswap {
namespace {

TEST(CvSwap, ExactMatchesDensityMatrixTrace) {
    std::mt19937_64 rng(31);
    const CutoffSpec c({4});
    for (int trial = 0; trial < 10; ++trial) {
        const MixedEnsemble rho = oracle::random_mixture(2, c, rng);
        const MixedEnsemble sigma = oracle::random_mixture(3, c, rng);
        const double ref = (oracle::density(rho) * oracle::density(sigma)).trace().real();
        EXPECT_NEAR(cv_swap_exact(rho, sigma, 4), ref, 1e-13);
    }
}

TEST(CvSwap, VacuumAgainstVacuumIsExactlyOne) {
    const FockState v = vacuum(CutoffSpec({3}));
    EXPECT_EQ(cv_swap_exact(v, v, 0), 1.0);
    const EstimatorResult r = cv_swap_estimate(v, v, 0, 100, 1);
    EXPECT_EQ(r.mean, cdouble(1.0));
    EXPECT_EQ(r.discarded, 0);
}

TEST(CvSwap, CoherentStatesFollowGaussianOverlap) {
    const cdouble a(0.5, 0.3), b(-0.2, 0.4);
    const FockState x = prepare(CoherentPrep{a}, 25).state;
    const FockState y = prepare(CoherentPrep{b}, 25).state;
    EXPECT_NEAR(cv_swap_exact(x, y, 25), std::exp(-std::norm(a - b)), 1e-12);
}

TEST(CvSwap, ThresholdDropsHighPhotonShots) {
    // SWAP_2M keeps only the n + m <= 2M block; compare with the brute-force
    // projected expectation.
    std::mt19937_64 rng(32);
    const CutoffSpec c({5});
    const FockState a = oracle::random_state(c, rng);
    const FockState b = oracle::random_state(c, rng);
    const FockState joint = tensor(a, b);
    for (int M = 0; M <= 5; ++M) {
        cdouble ref = 0.0;
        for (int n = 0; n <= 5; ++n) {
            for (int m = 0; m <= 5; ++m) {
                if (n + m <= 2 * M) {
                    // <psi| SWAP |psi> restricted: conj(psi(n, m)) psi(m, n).
                    ref += std::conj(joint.amplitude({{n, m}})) * joint.amplitude({{m, n}});
                }
            }
        }
        EXPECT_NEAR(swap2m_expectation(joint, M), ref.real(), 1e-13) << "M = " << M;
        EXPECT_NEAR(cv_swap_exact(a, b, M), ref.real(), 1e-13);
    }
}

TEST(CvSwap, SampledMeanWithinStandardErrors) {
    const FockState a = prepare(SqueezedPrep{{0.5, 0.0}}, 20).state;
    const FockState b = prepare(CoherentPrep{{0.4, 0.0}}, 20).state;
    const double exact = cv_swap_exact(a, b, 20);
    const EstimatorResult r = cv_swap_estimate(a, b, 20, 40000, 77);
    EXPECT_NEAR(r.mean.real(), exact, 5 * r.std_error);
    EXPECT_EQ(r.shots, 40000);
    EXPECT_EQ(r.seed, 77u);
}

TEST(CvSwap, EstimateIsIndependentOfThreads) {
    const FockState a = prepare(SqueezedPrep{{0.5, 0.0}}, 20).state;
    const FockState b = prepare(CoherentPrep{{0.4, 0.0}}, 20).state;
    set_thread_count(1);
    const EstimatorResult x = cv_swap_estimate(a, b, 3, 5000, 8);
    set_thread_count(4);
    const EstimatorResult y = cv_swap_estimate(a, b, 3, 5000, 8);
    set_thread_count(0);
    EXPECT_EQ(x.mean, y.mean);
    EXPECT_EQ(x.std_error, y.std_error);
    EXPECT_EQ(x.discarded, y.discarded);
}

TEST(ParityOverlap, FactorizedBlocksMultiply) {
    const FockState t = prepare(TmssPrep{0.5}, 30).state;
    ParityBlock one;
    one.inputs = {t, vacuum(CutoffSpec({0, 0}))};
    one.pairs = {{0, 2}, {1, 3}};
    one.pair_M = {kNoThreshold, kNoThreshold};
    const std::vector<ParityBlock> two = {one, one};
    const double single = parity_overlap_exact(std::span(&one, 1));
    EXPECT_NEAR(single, 1.0 / std::pow(std::cosh(0.5), 2), 1e-12);
    EXPECT_NEAR(parity_overlap_exact(two), single * single, 1e-15);
}

TEST(ParityOverlap, JointStateOverloadAgreesWithCvSwap) {
    std::mt19937_64 rng(33);
    const FockState a = oracle::random_state(CutoffSpec({3}), rng);
    const FockState b = oracle::random_state(CutoffSpec({3}), rng);
    const ModePair p{0, 1};
    const int M = 2;
    EXPECT_NEAR(parity_overlap_exact(tensor(a, b), std::span(&p, 1), std::span(&M, 1)), cv_swap_exact(a, b, 2),
                1e-14);
}

TEST(ErrorBounds, GlobalBoundedByLocal) {
    std::mt19937_64 rng(34);
    const CutoffSpec c({6});
    for (int trial = 0; trial < 20; ++trial) {
        const FockState a = oracle::random_state(c, rng);
        const FockState b = oracle::random_state(c, rng);
        for (int M = 0; M <= 6; ++M) {
            const double err = std::abs(overlap(a, b) - cv_swap_exact(a, b, M));
            const double global = error_bound_global(tensor(a, b), M);
            EXPECT_LE(err, global + 1e-13);
            EXPECT_LE(global, error_bound_local(a, b, M) + 1e-13);
        }
    }
}

TEST(Analytic, SqueezedClosedFormAlternates) {
    const double r = 1.0;
    const double limit = analytic_squeezed_overlap(r);
    EXPECT_GT(analytic_swap2m_squeezed(r, 4), limit);
    EXPECT_LT(analytic_swap2m_squeezed(r, 5), limit);
    EXPECT_NEAR(analytic_swap2m_squeezed(r, 200), limit, 1e-14);
}

TEST(Sweep, CsvLayout) {
    const SweepRow rows[] = {{1, 0.5, 0.25}};
    std::ostringstream os;
    write_sweep_csv(rows, os);
    EXPECT_EQ(os.str(), "M,value,bound\n1,0.5,0.25\n");
}

// ---- planners ---------------------------------------------------------------

TEST(Planners, SqueezedPlanIsSmallestSufficientM) {
    for (double r : {0.3, 1.0, 2.0}) {
        for (double eps : {1e-2, 1e-6}) {
            const CutoffPlan p = cutoff_for_squeezed(r, eps);
            const double t2 = std::pow(std::tanh(r), 2);
            EXPECT_LE(std::pow(t2, p.M + 1), eps);
            if (p.M > 0) {
                EXPECT_GT(std::pow(t2, p.M), eps);
            }
            EXPECT_EQ(p.method, PlanMethod::SqueezedClosedForm);
            EXPECT_FALSE(std::isnan(p.asymptotic_M));
        }
    }
}

TEST(Planners, ChernoffBoundMatchesFormula) {
    const double E = 7.5;
    const int M = 20;
    EXPECT_NEAR(chernoff_bound(E, M), std::pow(std::exp(1.0) * E / M, 2 * M) * std::exp(-2 * E), 1e-18);
    EXPECT_THROW(chernoff_bound(5.0, 5), std::invalid_argument);
}

TEST(Planners, ChernoffPlanMeetsTarget) {
    const CutoffPlan p = cutoff_for_coherent_chernoff(10.0, 1e-6);
    EXPECT_EQ(p.M, static_cast<int>(std::ceil(13.0 + std::log(1e6))));
    EXPECT_LE(p.bound, 1e-6);
    EXPECT_EQ(p.increments, 0);
}

TEST(Planners, NormalPlanNeedsLargeEnergy) {
    EXPECT_THROW(cutoff_for_coherent_normal(10.0, 1e-3), std::invalid_argument);
    const CutoffPlan p = cutoff_for_coherent_normal(100.0, 1e-3);
    EXPECT_TRUE(p.approximate);
    EXPECT_LE(normal_bound(100.0, p.M), 1e-3);
}

TEST(Planners, NormalPlanStaysBelowLogitEnvelope) {
    // For small eps the normal-quantile threshold sits under
    // E + sqrt(pi E / 8) ln(2 / eps).
    for (double E : {25.0, 50.0, 100.0, 400.0}) {
        for (double eps : {1e-4, 1e-6, 1e-9}) {
            const CutoffPlan p = cutoff_for_coherent_normal(E, eps);
            EXPECT_LE(p.M, E + std::sqrt(std::acos(-1.0) * E / 8) * std::log(2 / eps) + 1) << E << " " << eps;
        }
    }
}

TEST(Planners, WeakTailBoundIsLooserThanChernoff) {
    // 1 - q_2M <= 1 - e^{-E/M} holds but only gives M = O(E / eps); the
    // Chernoff bound wins once M is a few times E.
    const PrepareOptions raw{false};
    for (double E : {1.0, 4.0, 9.0}) {
        const PreparedState coh = prepare(CoherentPrep{cdouble(std::sqrt(E))}, 70, raw);
        const FockState joint = tensor(coh.state, coh.state);
        for (int M = static_cast<int>(E) + 1; M <= 30; ++M) {
            const double tail = error_bound_global(joint, M);
            const double weak = 1.0 - std::exp(-E / M);
            EXPECT_LE(tail, weak) << "E = " << E << ", M = " << M;
            // 1 - q_2M is computed as a difference, so allow its rounding floor.
            EXPECT_LE(tail, chernoff_bound(E, M) * (1 + 1e-9) + 1e-14);
            if (M >= 3 * E + 5) {
                EXPECT_LT(chernoff_bound(E, M), weak);
            }
        }
    }
}

TEST(Planners, NormalQuantileInvertsCdf) {
    for (double p : {1e-10, 0.01, 0.3, 0.5, 0.9, 1 - 1e-9}) {
        EXPECT_NEAR(normal_cdf(normal_quantile(p)), p, 1e-12 * std::max(1.0, p / (1 - p)));
    }
    EXPECT_NEAR(normal_quantile(0.975), 1.959963984540054, 1e-12);
}

TEST(Planners, ExactTailCertifiesOnlyWithinCutoff) {
    const PrepareOptions raw{false};
    const FockState joint = tensor(prepare(SqueezedPrep{{1.0, 0.0}}, 60, raw).state,
                                   prepare(SqueezedPrep{{-1.0, 0.0}}, 60, raw).state);
    const CutoffPlan p = cutoff_exact_tail(joint, 1e-4);
    EXPECT_EQ(p.M, cutoff_for_squeezed(1.0, 1e-4).M);
    EXPECT_THROW(cutoff_exact_tail(joint, 1e-30), NumericalContractError);
}

}  // namespace
}  // namespace cvswap
