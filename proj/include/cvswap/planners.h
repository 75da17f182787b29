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

#include <limits>
#include <string>

#include "cvswap/fock.h"

namespace cvswap {

enum class PlanMethod { ExactTail, SqueezedClosedForm, Chernoff, NormalQuantile };

std::string plan_method_name(PlanMethod method);

/// Detector threshold M (a shot is kept when n + m <= 2M) with its bound on
/// the cutoff-induced error.
struct CutoffPlan {
    int M = 0;
    double bound = 0.0;
    PlanMethod method = PlanMethod::ExactTail;
    double target_eps = 0.0;
    /// True when `bound` rests on an approximation rather than a proof.
    bool approximate = false;
    /// Upward steps taken from the closed-form starting point.
    int increments = 0;
    /// Large-r sufficient value e^{2r}/4 ln(1/eps) - 1 (squeezed plans only;
    /// NaN otherwise).
    double asymptotic_M = std::numeric_limits<double>::quiet_NaN();
};

/// Smallest M with tanh^{2(M+1)} r <= eps.
CutoffPlan cutoff_for_squeezed(double r, double eps);

/// Starts at ceil(1.3 E + ln(1/eps)) and steps up until the Chernoff tail
/// bound for Poisson(2E) is <= eps.
CutoffPlan cutoff_for_coherent_chernoff(double E, double eps);

/// ceil(E + sqrt(E) Phi^-1(sqrt(1 - eps))), clamped at 0. Uses the normal
/// approximation to Poisson(E); refuses E < 25.
CutoffPlan cutoff_for_coherent_normal(double E, double eps);

/// Smallest M with 1 - q_2M <= eps for a two-mode joint input. Throws
/// NumericalContractError if the state's cutoff cannot certify eps.
CutoffPlan cutoff_exact_tail(const FockState &joint, double eps);

/// (e E / M)^{2M} e^{-2E}, valid for M > E.
double chernoff_bound(double E, int M);
/// 1 - Phi((M - E) / sqrt E)^2.
double normal_bound(double E, int M);

double normal_cdf(double x);
/// Probit function Phi^-1(p), p in (0, 1).
double normal_quantile(double p);

inline constexpr double kNormalRegimeMinE = 25.0;

}  // namespace cvswap
