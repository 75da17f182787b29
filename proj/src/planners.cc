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

#include "cvswap/planners.h"

#include <boost/math/special_functions/erf.hpp>
#include <cmath>
#include <limits>
#include <numbers>

namespace cvswap {

namespace {

void check_eps(double eps) {
    if (!(eps > 0.0 && eps < 1.0)) {
        throw std::invalid_argument("eps must lie in (0, 1)");
    }
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

std::string plan_method_name(PlanMethod method) {
    switch (method) {
    case PlanMethod::ExactTail:
        return "exact_tail";
    case PlanMethod::SqueezedClosedForm:
        return "squeezed_closed_form";
    case PlanMethod::Chernoff:
        return "chernoff";
    case PlanMethod::NormalQuantile:
        return "normal_quantile";
    }
    return "unknown";
}

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw std::invalid_argument("normal_quantile: p must lie in (0, 1)");
    }
    return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p);
}

double chernoff_bound(double E, int M) {
    if (!(M > E)) {
        throw std::invalid_argument("chernoff_bound: requires M > E");
    }
    return std::exp(2.0 * M * (1.0 + std::log(E) - std::log(static_cast<double>(M))) - 2.0 * E);
}

double normal_bound(double E, int M) {
    const double phi = normal_cdf((M - E) / std::sqrt(E));
    return 1.0 - phi * phi;
}

CutoffPlan cutoff_for_squeezed(double r, double eps) {
    check_eps(eps);
    if (!(r > 0.0) || !std::isfinite(r)) {
        throw std::invalid_argument("cutoff_for_squeezed: r must be positive");
    }
    const double log_t2 = 2.0 * std::log(std::tanh(r));
    auto bound = [&](int M) { return std::exp((M + 1) * log_t2); };
    int M = std::max(0, static_cast<int>(std::ceil(std::log(eps) / log_t2)) - 1);
    while (M > 0 && bound(M - 1) <= eps) {
        --M;
    }
    int steps = 0;
    while (bound(M) > eps) {
        ++M;
        ++steps;
    }
    CutoffPlan plan;
    plan.M = M;
    plan.bound = bound(M);
    plan.method = PlanMethod::SqueezedClosedForm;
    plan.target_eps = eps;
    plan.increments = steps;
    plan.asymptotic_M = std::exp(2.0 * r) / 4.0 * std::log(1.0 / eps) - 1.0;
    return plan;
}

CutoffPlan cutoff_for_coherent_chernoff(double E, double eps) {
    check_eps(eps);
    if (!(E > 0.0) || !std::isfinite(E)) {
        throw std::invalid_argument("cutoff_for_coherent_chernoff: E must be positive");
    }
    int M = static_cast<int>(std::ceil(1.3 * E + std::log(1.0 / eps)));
    int steps = 0;
    while (chernoff_bound(E, M) > eps) {
        ++M;
        ++steps;
    }
    CutoffPlan plan;
    plan.M = M;
    plan.bound = chernoff_bound(E, M);
    plan.method = PlanMethod::Chernoff;
    plan.target_eps = eps;
    plan.increments = steps;
    plan.asymptotic_M = kNaN;
    return plan;
}

CutoffPlan cutoff_for_coherent_normal(double E, double eps) {
    check_eps(eps);
    if (!(E >= kNormalRegimeMinE) || !std::isfinite(E)) {
        throw std::invalid_argument(
            "cutoff_for_coherent_normal: the normal approximation needs E >= 25; use the chernoff method");
    }
    const double raw = E + std::sqrt(E) * normal_quantile(std::sqrt(1.0 - eps));
    int M = std::max(0, static_cast<int>(std::ceil(raw)));
    int steps = 0;
    while (normal_bound(E, M) > eps) {
        ++M;
        ++steps;
    }
    CutoffPlan plan;
    plan.M = M;
    plan.bound = normal_bound(E, M);
    plan.method = PlanMethod::NormalQuantile;
    plan.target_eps = eps;
    plan.approximate = true;
    plan.increments = steps;
    plan.asymptotic_M = kNaN;
    return plan;
}

CutoffPlan cutoff_exact_tail(const FockState &joint, double eps) {
    check_eps(eps);
    if (joint.modes() != 2) {
        throw std::invalid_argument("cutoff_exact_tail: two-mode joint state required");
    }
    const int modes[] = {0, 1};
    const int top = joint.cutoff().total_max();
    for (int M = 0; 2 * M <= top + 1; ++M) {
        const double bound = std::max(0.0, 1.0 - truncation_weight(joint, modes, 2 * M));
        if (bound <= eps) {
            CutoffPlan plan;
            plan.M = M;
            plan.bound = bound;
            plan.method = PlanMethod::ExactTail;
            plan.target_eps = eps;
            plan.increments = M;
            plan.asymptotic_M = kNaN;
            return plan;
        }
    }
    throw NumericalContractError("cutoff_exact_tail: the state's Fock cutoff is too small to certify eps");
}

}  // namespace cvswap
