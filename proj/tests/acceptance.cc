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

// Acceptance checks. Prints one PASS or FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cvswap/cli.h"
#include "cvswap/dv.h"
#include "cvswap/estimators.h"
#include "cvswap/planners.h"
#include "cvswap/prepare.h"
#include "cvswap/protocols.h"
#include "json.hpp"
#include "oracles.h"

namespace cvswap {
namespace {

using nlohmann::json;

struct Check {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string &what) {
        if (!ok) {
            if (pass) {
                detail << "; failed: ";
            } else {
                detail << ", ";
            }
            detail << what;
            pass = false;
        }
    }
};

std::string config_path(const std::string &name) {
    return std::string(CVSWAP_CONFIG_DIR) + "/" + name;
}

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun cli(const std::vector<std::string> &args) {
    std::vector<std::string> full = {"cvswap"};
    full.insert(full.end(), args.begin(), args.end());
    std::ostringstream out, err;
    const int code = run_cli(full, out, err);
    return {code, out.str(), err.str()};
}

// ---- 1 -------------------------------------------------------------------------

void tmss_demo(Check &c) {
    const auto t0 = std::chrono::steady_clock::now();
    const CliRun r = cli({"overlap", "--config", config_path("tmss_demo.json")});
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.require(r.code == 0, "exit code " + std::to_string(r.code) + " " + r.err);
    if (r.code != 0) {
        return;
    }
    const json doc = json::parse(r.out);
    const double mean = doc.at("result").at("grand_mean").at("re");
    const json &cfg = doc.at("config");
    c.detail << "r=1, " << cfg.at("shots") << " shots x " << cfg.at("runs") << " runs: grand mean " << mean
             << ", std of means " << doc.at("result").at("std_of_means") << ", exact "
             << doc.at("result").at("exact").at("re") << ", " << seconds << " s";
    c.require(cfg.at("shots") == 2000 && cfg.at("runs") == 10, "config must be 2000 shots x 10 runs");
    c.require(std::abs(mean - 0.420) <= 0.02, "grand mean outside 0.420 +- 0.02");
    c.require(seconds < 10.0, "runtime >= 10 s");
}

// ---- 2 -------------------------------------------------------------------------

void eight_mode_demo(Check &c) {
    const CliRun r = cli({"overlap", "--config", config_path("eight_mode_demo.json")});
    c.require(r.code == 0, "exit code " + std::to_string(r.code) + " " + r.err);
    if (r.code != 0) {
        return;
    }
    const json doc = json::parse(r.out);
    const double mean = doc.at("result").at("grand_mean").at("re");
    const json &cfg = doc.at("config");
    c.detail << "8 modes, " << cfg.at("shots") << " shots x " << cfg.at("runs") << " runs: grand mean " << mean
             << ", std of means " << doc.at("result").at("std_of_means") << ", exact "
             << doc.at("result").at("exact").at("re");
    c.require(cfg.at("shots") == 500 && cfg.at("runs") == 10, "config must be 500 shots x 10 runs");
    c.require(std::abs(mean - 0.1764) <= 0.05, "grand mean outside 0.1764 +- 0.05");
}

// ---- 3 and 4 ---------------------------------------------------------------------

FockState squeezed_pair(double r, int cutoff) {
    const PrepareOptions raw{false};
    return tensor(prepare(SqueezedPrep{cdouble(r)}, cutoff, raw).state,
                  prepare(SqueezedPrep{cdouble(-r)}, cutoff, raw).state);
}

constexpr int kFig2Cutoff = 40;

void fig2_reproduction(Check &c) {
    double worst_ratio = 0.0;
    for (double r : {0.8, 1.0, 1.2}) {
        const FockState joint = squeezed_pair(r, kFig2Cutoff);
        const double tol = 10 * std::pow(std::tanh(r), 2 * (kFig2Cutoff + 1));
        const double limit = 1.0 / std::cosh(2 * r);
        double previous_gap = INFINITY;
        for (int M = 4; M <= 20; ++M) {
            const double sim = swap2m_expectation(joint, M);
            const double diff = std::abs(sim - analytic_swap2m_squeezed(r, M));
            worst_ratio = std::max(worst_ratio, diff / tol);
            const std::string at = " at r=" + std::to_string(r) + ", M=" + std::to_string(M);
            c.require(diff <= tol, "closed form mismatch" + at);
            const double gap = sim - limit;
            c.require(std::abs(gap) < previous_gap, "convergence not monotone" + at);
            c.require(M % 2 == 0 ? gap > 0 : gap < 0, "sign does not alternate with M parity" + at);
            previous_gap = std::abs(gap);
        }
    }
    c.detail << "N=" << kFig2Cutoff << ", r in {0.8, 1.0, 1.2}, M=4..20: max |diff| / (10 tanh^{2(N+1)} r) = "
             << worst_ratio;
}

void bound_identity(Check &c) {
    double worst = 0.0;
    for (double r : {0.8, 1.0, 1.2}) {
        const FockState joint = squeezed_pair(r, kFig2Cutoff);
        for (int M = 4; M <= 20; ++M) {
            worst = std::max(worst, std::abs(error_bound_global(joint, M) - std::pow(std::tanh(r), 2 * (M + 1))));
        }
    }
    c.detail << "max |1 - q_2M - tanh^{2(M+1)} r| = " << worst;
    c.require(worst <= 1e-10, "difference above 1e-10");
}

// ---- 5 -------------------------------------------------------------------------

void chernoff_grid(Check &c) {
    int cases = 0;
    int failures = 0;
    for (int E = 1; E <= 100; ++E) {
        for (int k = 1; k <= 6; ++k) {
            const double eps = std::pow(10.0, -k);
            const int start = static_cast<int>(std::ceil(1.3 * E + std::log(1.0 / eps)));
            const CutoffPlan p = cutoff_for_coherent_chernoff(E, eps);
            // Independent evaluation of (eE/M)^{2M} e^{-2E} in log form.
            const double log_bound = 2.0 * start * (1.0 + std::log(static_cast<double>(E) / start)) - 2.0 * E;
            ++cases;
            if (p.increments != 0 || p.M != start || log_bound > std::log(eps) || p.bound > eps) {
                ++failures;
                c.require(false, "E=" + std::to_string(E) + ", eps=1e-" + std::to_string(k));
            }
        }
    }
    c.detail << cases << " (E, eps) cases, " << failures << " needing increments or above eps";
}

// ---- 6 -------------------------------------------------------------------------

void oracle_equivalence(Check &c) {
    std::mt19937_64 rng(20260601);
    std::uniform_int_distribution<int> pick_cutoff(1, 10);
    double worst = 0.0;
    int sandwich_violations = 0;
    const int pairs = 120;
    for (int trial = 0; trial < pairs; ++trial) {
        const int N = pick_cutoff(rng);
        const CutoffSpec cut({N});
        const FockState a = oracle::random_state(cut, rng);
        const FockState b = oracle::random_state(cut, rng);
        const double direct = std::norm(oracle::vec(a).dot(oracle::vec(b)));
        const FockState joint = tensor(a, b);
        worst = std::max(worst, std::abs(direct - swap2m_expectation(joint, N)));
        for (int M = 0; M <= N; ++M) {
            const double err = std::abs(direct - swap2m_expectation(joint, M));
            const double global = error_bound_global(joint, M);
            const double local = error_bound_local(a, b, M);
            if (err > global + 1e-12 || global > local + 1e-12) {
                ++sandwich_violations;
            }
        }
    }
    c.detail << pairs << " pairs, cutoff 1..10: max |overlap - swap2m| = " << worst << ", sandwich violations "
             << sandwich_violations;
    c.require(worst <= 1e-10, "overlap mismatch above 1e-10");
    c.require(sandwich_violations == 0, "bound sandwich violated");
}

// ---- 7 -------------------------------------------------------------------------

void perm_checks(Check &c) {
    std::mt19937_64 rng(20260607);
    const CutoffSpec cut({5});
    const std::int64_t shots = 100000;
    double worst_exact = 0.0;
    double worst_z = 0.0;
    for (int L = 2; L <= 4; ++L) {
        const MixedEnsemble rho = oracle::random_mixture(3, cut, rng);
        const std::vector<MixedEnsemble> copies(L, rho);
        const cdouble ref = oracle::trace_of_product(copies);
        const cdouble exact = perm_test_exact(copies);
        worst_exact = std::max(worst_exact, std::abs(exact - ref));

        // Distinct inputs: tr(rho_0 rho_1 ... rho_{L-1}).
        std::vector<MixedEnsemble> distinct;
        for (int k = 0; k < L; ++k) {
            distinct.push_back(oracle::random_mixture(3, cut, rng));
        }
        worst_exact = std::max(worst_exact, std::abs(perm_test_exact(distinct) - oracle::trace_of_product(distinct)));

        const EstimatorResult est = perm_test(copies, shots, 1000 + L);
        const double z = std::abs(est.mean - exact) / est.std_error;
        worst_z = std::max(worst_z, z);
        c.require(z <= 5.0, "L=" + std::to_string(L) + " sampled mean beyond 5 stderr");
    }
    c.require(worst_exact <= 1e-10, "exact expectation differs from density-matrix trace");

    const MixedEnsemble a = oracle::random_mixture(3, cut, rng);
    const MixedEnsemble b = oracle::random_mixture(3, cut, rng);
    const std::vector<MixedEnsemble> two = {a, b};
    const EstimatorResult p = perm_test(two, shots, 77);
    const EstimatorResult s = cv_swap_estimate(a, b, 5, shots, 77);
    const bool bitwise = p.mean == s.mean && p.std_error == s.std_error && p.discarded == s.discarded &&
                         perm_test_exact(two).real() == cv_swap_exact(a, b, 5) && perm_test_exact(two).imag() == 0.0;
    c.require(bitwise, "L=2 differs from the CV SWAP path");
    c.detail << "rank-3 mixtures, cutoff 5, S=1e5: max |exact - tr| = " << worst_exact
             << ", max |mean - exact| / stderr = " << worst_z << ", L=2 bitwise equal to SWAP path: "
             << (bitwise ? "yes" : "no");
}

// ---- 8 -------------------------------------------------------------------------

void two_copy_cross_check(Check &c) {
    std::mt19937_64 rng(20260608);
    double worst = 0.0;
    for (const auto &[n, cutoff] : {std::pair{2, 2}, std::pair{3, 1}}) {
        const FockState psi = oracle::random_state(CutoffSpec({cutoff, cutoff}), rng);
        const MixedEnsemble rho = schmidt_ensemble(psi, 0.0);
        const std::vector<MixedEnsemble> copies(n, rho);
        const double lhs = two_copy_exact(replicate_purification(psi, n));
        const double rhs = std::norm(perm_test_exact(copies));
        worst = std::max(worst, std::abs(lhs - rhs));
        c.detail << "n=" << n << ": " << lhs << " vs " << rhs << "; ";
    }
    c.detail << "max diff " << worst;
    c.require(worst <= 1e-10, "two-copy differs from squared PERM trace");
}

// ---- 9 -------------------------------------------------------------------------

void qudit_basis(Check &c) {
    double worst_unitarity = 0.0;
    for (int d = 2; d <= 7; ++d) {
        const Eigen::MatrixXcd W = w_unitary(d);
        const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d * d, d * d);
        worst_unitarity = std::max(worst_unitarity, (W.adjoint() * W - id).cwiseAbs().maxCoeff());
        std::vector<int> ev;
        try {
            ev = swap_eigenvalues(W, d, 1e-12);
        } catch (const std::exception &e) {
            c.require(false, "d=" + std::to_string(d) + ": " + e.what());
            continue;
        }
        const auto plus = std::count(ev.begin(), ev.end(), 1);
        const auto minus = std::count(ev.begin(), ev.end(), -1);
        c.require(plus == d * (d + 1) / 2 && minus == d * (d - 1) / 2,
                  "d=" + std::to_string(d) + " multiplicities " + std::to_string(plus) + "/" + std::to_string(minus));
    }
    c.detail << "d=2..7: max |W^dag W - I| = " << worst_unitarity;
    c.require(worst_unitarity <= 1e-12, "W columns not orthonormal to 1e-12");
}

// ---- 10 ------------------------------------------------------------------------

void hybrid_checks(Check &c) {
    std::mt19937_64 rng(20260610);
    std::uniform_int_distribution<int> pick_cutoff(1, 8);
    double worst = 0.0;
    const int pairs = 60;
    for (int trial = 0; trial < pairs; ++trial) {
        const CutoffSpec cut({1, pick_cutoff(rng)});
        const FockState a = oracle::random_state(cut, rng);
        const FockState b = oracle::random_state(cut, rng);
        const double direct = std::norm(oracle::vec(a).dot(oracle::vec(b)));
        worst = std::max(worst, std::abs(hybrid_swap_exact(a, b, kNoThreshold) - direct));
    }
    c.detail << pairs << " qubit x CV pairs: max |exact - overlap| = " << worst;
    c.require(worst <= 1e-10, "hybrid mismatch above 1e-10");
}

// ---- 11 ------------------------------------------------------------------------

void reproducibility(Check &c) {
    const std::vector<std::pair<std::string, std::string>> runs = {
        {"overlap", "tmss_demo.json"},   {"overlap", "eight_mode_demo.json"}, {"overlap", "vacuum.json"},
        {"cutoff-plan", "cutoff_plan.json"}, {"fig2", "fig2.json"},       {"perm", "perm.json"},
        {"two-copy", "two_copy.json"},   {"compile-cost", "compile_cost.json"}, {"hybrid", "hybrid.json"},
        {"qudit-basis", "qudit_basis.json"}};
    int compared = 0;
    for (const auto &[command, file] : runs) {
        for (const std::string format : {"json", "csv"}) {
            const std::vector<std::string> base = {command, "--config", config_path(file), "--format", format};
            std::vector<std::string> one = base, four = base;
            one.insert(one.end(), {"--threads", "1"});
            four.insert(four.end(), {"--threads", "4"});
            const CliRun a = cli(one);
            const CliRun b = cli(four);
            const CliRun again = cli(four);
            c.require(a.code == 0, command + " " + file + " exit " + std::to_string(a.code) + " " + a.err);
            c.require(a.out == b.out && b.out == again.out, command + " " + file + " (" + format + ") differs");
            ++compared;
        }
    }
    c.detail << compared << " command/format combinations, each run with 1, 4 and 4 threads";
}

}  // namespace
}  // namespace cvswap

int main() {
    using namespace cvswap;
    const std::vector<std::pair<std::string, std::function<void(Check &)>>> criteria = {
        {"TMSS vacuum-probability reproduction", tmss_demo},
        {"eight-mode parallel fidelity", eight_mode_demo},
        {"squeezed SWAP_2M closed form and convergence", fig2_reproduction},
        {"global error bound equals tanh^{2(M+1)} r", bound_identity},
        {"Chernoff planner needs no increments", chernoff_grid},
        {"overlap oracle equivalence and bound sandwich", oracle_equivalence},
        {"PERM test exact, sampled and L=2 reduction", perm_checks},
        {"two-copy equals squared PERM trace", two_copy_cross_check},
        {"qudit W basis", qudit_basis},
        {"hybrid qubit/CV test", hybrid_checks},
        {"CLI output reproducibility", reproducibility},
    };
    int failed = 0;
    int index = 1;
    for (const auto &[name, run] : criteria) {
        Check c;
        try {
            run(c);
        } catch (const std::exception &e) {
            c.require(false, std::string("exception: ") + e.what());
        }
        std::cout << (c.pass ? "PASS" : "FAIL") << " [" << index << "] " << name << ": " << c.detail.str() << std::endl;
        failed += c.pass ? 0 : 1;
        ++index;
    }
    return failed == 0 ? 0 : 1;
}
