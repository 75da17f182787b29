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

#include "commands.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "cvswap/dv.h"
#include "cvswap/estimators.h"
#include "cvswap/planners.h"
#include "cvswap/prepare.h"
#include "cvswap/protocols.h"
#include "cvswap/result_io.h"

namespace cvswap::cli {

namespace {

std::int64_t int_or(json &obj, const std::string &key, std::int64_t fallback) {
    if (!obj.contains(key) || obj[key].is_null()) {
        obj[key] = fallback;
        return fallback;
    }
    if (!obj[key].is_number_integer()) {
        throw ConfigError("field '" + key + "' must be an integer");
    }
    return obj[key].get<std::int64_t>();
}

/// M as used by the estimators: null or absent means no threshold.
int threshold_or_none(json &obj, const std::string &key) {
    if (!obj.contains(key) || obj[key].is_null()) {
        obj[key] = nullptr;
        return kNoThreshold;
    }
    const std::int64_t M = int_or(obj, key, 0);
    if (M < 0) {
        throw ConfigError("threshold '" + key + "' must be non-negative");
    }
    return static_cast<int>(M);
}

std::uint64_t resolve_seed(json &cfg, const CommandContext &ctx) {
    if (ctx.seed_override) {
        cfg["seed"] = *ctx.seed_override;
    }
    if (!cfg.contains("seed") || cfg["seed"].is_null()) {
        cfg["seed"] = std::uint64_t{0};
    }
    if (!cfg["seed"].is_number_unsigned() && !(cfg["seed"].is_number_integer() && cfg["seed"].get<std::int64_t>() >= 0)) {
        throw ConfigError("field 'seed' must be a non-negative integer");
    }
    return cfg["seed"].get<std::uint64_t>();
}

PrepContext prep_context(json &cfg, CommandContext &ctx, int default_cutoff) {
    PrepContext p;
    p.cutoff = static_cast<int>(int_or(cfg, "cutoff", default_cutoff));
    p.renormalize = get_or<bool>(cfg, "renormalize", true);
    p.warnings = &ctx.warnings;
    if (p.cutoff < 0) {
        throw ConfigError("cutoff must be non-negative");
    }
    return p;
}

const json &list_field(const json &cfg, const std::string &key) {
    if (!cfg.contains(key) || !cfg.at(key).is_array() || cfg.at(key).empty()) {
        throw ConfigError("field '" + key + "' must be a non-empty list");
    }
    return cfg.at(key);
}

struct SeriesSpec {
    std::int64_t shots;
    std::int64_t runs;
    std::uint64_t seed;
};

SeriesSpec series_spec(json &cfg, const CommandContext &ctx, std::int64_t default_shots) {
    SeriesSpec s{int_or(cfg, "shots", default_shots), int_or(cfg, "runs", 1), resolve_seed(cfg, ctx)};
    if (s.shots < 1) {
        throw ConfigError("shots must be at least 1");
    }
    if (s.runs < 1) {
        throw ConfigError("runs must be at least 1");
    }
    return s;
}

/// Repeats an estimate `runs` times with seeds derive_seed(seed, run).
template <class Estimate>
json run_series(const SeriesSpec &spec, Estimate &&estimate, cdouble exact) {
    json runs = json::array();
    std::vector<cdouble> means;
    for (std::int64_t r = 0; r < spec.runs; ++r) {
        const EstimatorResult res = estimate(spec.shots, derive_seed(spec.seed, static_cast<std::uint64_t>(r)));
        means.push_back(res.mean);
        runs.push_back(to_json(res));
    }
    const cdouble grand = std::accumulate(means.begin(), means.end(), cdouble(0.0)) / static_cast<double>(means.size());
    json out;
    out["runs"] = std::move(runs);
    out["grand_mean"] = complex_to_json(grand);
    if (means.size() > 1) {
        double ss = 0.0;
        for (cdouble m : means) {
            ss += std::norm(m - grand);
        }
        out["std_of_means"] = std::sqrt(ss / static_cast<double>(means.size() - 1));
    } else {
        out["std_of_means"] = nullptr;
    }
    out["exact"] = complex_to_json(exact);
    return out;
}

void put_number(std::ostream &os, const json &v) {
    // Empty for null; otherwise the shortest text that reads back exactly.
    if (!v.is_null()) {
        os << v.dump();
    }
}

std::string series_csv(const json &result) {
    std::ostringstream os;
    os << "run,seed,mean_re,mean_im,stderr,shots,discarded\n";
    std::size_t r = 0;
    for (const json &run : result.at("runs")) {
        os << r++ << ',' << run.at("seed").get<std::uint64_t>() << ',';
        put_number(os, run.at("mean").at("re"));
        os << ',';
        put_number(os, run.at("mean").at("im"));
        os << ',';
        put_number(os, run.at("stderr"));
        os << ',' << run.at("shots").get<std::int64_t>() << ',' << run.at("discarded").get<std::int64_t>() << '\n';
    }
    return os.str();
}

GateSpec remap(const GateSpec &gate, const std::vector<int> &to_local) {
    return std::visit(
        [&](auto g) -> GateSpec {
            if constexpr (requires { g.mode; }) {
                g.mode = to_local[g.mode];
            } else {
                g.mode_i = to_local[g.mode_i];
                g.mode_j = to_local[g.mode_j];
            }
            return g;
        },
        gate);
}

int find_root(std::vector<int> &parent, int x) {
    while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    return x;
}

void unite(std::vector<int> &parent, int a, int b) {
    parent[find_root(parent, a)] = find_root(parent, b);
}

json as_list(json &cfg, const std::string &key) {
    if (cfg.contains(key) && cfg[key].is_object()) {
        return json::array({cfg[key]});
    }
    return list_field(cfg, key);
}

// ---- overlap ----------------------------------------------------------------

struct OverlapPlan {
    std::vector<ParityBlock> blocks;
    /// Joint mode of every measured mode, in the order the blocks report them.
    std::vector<int> measured_modes;
};

OverlapPlan plan_overlap(json &cfg, CommandContext &ctx) {
    const PrepContext pc = prep_context(cfg, ctx, 10);
    struct Input {
        MixedEnsemble state;
        int offset;
    };
    std::vector<Input> inputs;
    // Multimode vacuum is a product, so each mode enters as its own input and
    // can land in a separate block.
    auto add = [&](const json &p, int offset) {
        const MixedEnsemble e = build_prep(p, pc);
        if (p.value("kind", "") == "vacuum") {
            for (int m = 0; m < e.modes(); ++m) {
                inputs.push_back({vacuum(CutoffSpec({e.cutoff().per_mode_max[m]})), offset + m});
            }
        } else {
            inputs.push_back({e, offset});
        }
        return e.modes();
    };
    int K = 0;
    for (const json &p : as_list(cfg, "left")) {
        K += add(p, K);
    }
    int right_modes = 0;
    for (const json &p : as_list(cfg, "right")) {
        right_modes += add(p, K + right_modes);
    }
    if (right_modes != K) {
        throw ConfigError("left and right must have the same number of modes (" + std::to_string(K) + " vs " +
                          std::to_string(right_modes) + ")");
    }

    Circuit gates;
    for (const GateSpec &g : parse_circuit(cfg.contains("left_circuit") ? cfg["left_circuit"] : json())) {
        validate_gate(g, K);
        gates.push_back(g);
    }
    for (const GateSpec &g : parse_circuit(cfg.contains("right_circuit") ? cfg["right_circuit"] : json())) {
        validate_gate(g, K);
        gates.push_back(shifted(g, K));
    }

    std::vector<int> pair_M(K, kNoThreshold);
    if (!cfg.contains("M") || cfg["M"].is_null()) {
        cfg["M"] = nullptr;
    } else if (cfg["M"].is_array()) {
        if (cfg["M"].size() != static_cast<std::size_t>(K)) {
            throw ConfigError("'M' needs one entry per mode pair");
        }
        for (int k = 0; k < K; ++k) {
            json entry = {{"M", cfg["M"][k]}};
            pair_M[k] = threshold_or_none(entry, "M");
        }
    } else {
        std::fill(pair_M.begin(), pair_M.end(), threshold_or_none(cfg, "M"));
    }

    std::vector<int> parent(2 * K);
    std::iota(parent.begin(), parent.end(), 0);
    for (const Input &in : inputs) {
        for (int m = 1; m < in.state.modes(); ++m) {
            unite(parent, in.offset, in.offset + m);
        }
    }
    for (const GateSpec &g : gates) {
        const auto modes = gate_modes(g);
        if (modes.size() == 2) {
            unite(parent, modes[0], modes[1]);
        }
    }
    for (int k = 0; k < K; ++k) {
        unite(parent, k, K + k);
    }

    OverlapPlan plan;
    std::vector<int> block_of_root(2 * K, -1);
    std::vector<int> to_local(2 * K, -1);
    std::vector<int> next_local;
    for (const Input &in : inputs) {
        const int root = find_root(parent, in.offset);
        if (block_of_root[root] < 0) {
            block_of_root[root] = static_cast<int>(plan.blocks.size());
            plan.blocks.emplace_back();
            next_local.push_back(0);
        }
        const int b = block_of_root[root];
        plan.blocks[b].inputs.push_back(in.state);
        for (int m = 0; m < in.state.modes(); ++m) {
            to_local[in.offset + m] = next_local[b]++;
        }
    }
    std::vector<std::vector<int>> globals(plan.blocks.size());
    for (int g = 0; g < 2 * K; ++g) {
        const int b = block_of_root[find_root(parent, g)];
        globals[b].resize(next_local[b]);
        globals[b][to_local[g]] = g;
    }
    for (const GateSpec &g : gates) {
        const int b = block_of_root[find_root(parent, gate_modes(g)[0])];
        plan.blocks[b].circuit.push_back(remap(g, to_local));
    }
    for (int k = 0; k < K; ++k) {
        ParityBlock &blk = plan.blocks[block_of_root[find_root(parent, k)]];
        blk.pairs.push_back({to_local[k], to_local[K + k]});
        blk.pair_M.push_back(pair_M[k]);
    }
    for (const auto &g : globals) {
        plan.measured_modes.insert(plan.measured_modes.end(), g.begin(), g.end());
    }
    return plan;
}

void dump_overlap_shots(const OverlapPlan &plan, const SeriesSpec &spec, const std::string &path) {
    std::vector<PatternFactor> factors;
    for (const ParityBlock &b : plan.blocks) {
        factors.push_back(parity_factor(b));
    }
    const ShotModel model(std::move(factors));
    std::vector<ShotOutcome> shots = model.dump(spec.shots, derive_seed(spec.seed, 0));
    for (ShotOutcome &s : shots) {
        std::vector<int> joint(s.pattern.counts.size());
        for (std::size_t k = 0; k < joint.size(); ++k) {
            joint[plan.measured_modes[k]] = s.pattern.counts[k];
        }
        s.pattern.counts = std::move(joint);
    }
    std::ofstream out(path);
    if (!out) {
        throw ConfigError("cannot write '" + path + "'");
    }
    write_shot_csv(shots, out);
}

json cmd_overlap(json &cfg, CommandContext &ctx) {
    const OverlapPlan plan = plan_overlap(cfg, ctx);
    const SeriesSpec spec = series_spec(cfg, ctx, 1000);
    json out = run_series(
        spec,
        [&](std::int64_t shots, std::uint64_t seed) { return parity_overlap_estimate(plan.blocks, shots, seed); },
        parity_overlap_exact(plan.blocks));
    out["blocks"] = plan.blocks.size();
    if (!ctx.shots_csv.empty()) {
        dump_overlap_shots(plan, spec, ctx.shots_csv);
    }
    return out;
}

// ---- cutoff-plan --------------------------------------------------------------

json cmd_cutoff_plan(json &cfg, CommandContext &) {
    const std::string family = get_or<std::string>(cfg, "family", "squeezed");
    const double eps = require<double>(cfg, "eps");
    if (!(eps > 0.0 && eps < 1.0)) {
        throw ConfigError("eps must lie in (0, 1)");
    }
    if (family == "squeezed") {
        const double r = require<double>(cfg, "r");
        const std::string method = get_or<std::string>(cfg, "method", "closed_form");
        if (method == "closed_form") {
            return to_json(cutoff_for_squeezed(r, eps));
        }
        if (method == "exact_tail") {
            const int cutoff = static_cast<int>(int_or(cfg, "cutoff", 60));
            const PrepareOptions raw{false};
            const FockState joint = tensor(prepare(SqueezedPrep{cdouble(r)}, cutoff, raw).state,
                                           prepare(SqueezedPrep{cdouble(-r)}, cutoff, raw).state);
            return to_json(cutoff_exact_tail(joint, eps));
        }
        throw ConfigError("squeezed plans use method closed_form or exact_tail");
    }
    if (family == "coherent") {
        const double E = require<double>(cfg, "E");
        if (!(E >= 0.0)) {
            throw ConfigError("E must be non-negative");
        }
        const std::string method = get_or<std::string>(cfg, "method", "chernoff");
        if (method == "chernoff") {
            return to_json(cutoff_for_coherent_chernoff(E, eps));
        }
        if (method == "normal") {
            return to_json(cutoff_for_coherent_normal(E, eps));
        }
        if (method == "exact_tail") {
            const int cutoff = static_cast<int>(int_or(cfg, "cutoff", 60));
            const PreparedState coh = prepare(CoherentPrep{cdouble(std::sqrt(E))}, cutoff, PrepareOptions{false});
            return to_json(cutoff_exact_tail(tensor(coh.state, coh.state), eps));
        }
        throw ConfigError("coherent plans use method chernoff, normal or exact_tail");
    }
    throw ConfigError("family must be squeezed or coherent");
}

std::string cutoff_plan_csv(const json &r) {
    std::ostringstream os;
    os << "M,bound,method,target_eps,approximate,increments\n";
    os << r.at("M").get<int>() << ',';
    put_number(os, r.at("bound"));
    os << ',' << r.at("method").get<std::string>() << ',';
    put_number(os, r.at("target_eps"));
    os << ',' << (r.at("approximate").get<bool>() ? "true" : "false") << ',' << r.at("increments").get<int>() << '\n';
    return os.str();
}

// ---- fig2 -------------------------------------------------------------------

json cmd_fig2(json &cfg, CommandContext &ctx) {
    const auto rs = get_or<std::vector<double>>(cfg, "r", {0.8, 1.0, 1.2});
    const int M_min = static_cast<int>(int_or(cfg, "M_min", 4));
    const int M_max = static_cast<int>(int_or(cfg, "M_max", 20));
    const int cutoff = static_cast<int>(int_or(cfg, "cutoff", 40));
    if (M_min < 0 || M_max < M_min) {
        throw ConfigError("need 0 <= M_min <= M_max");
    }
    json rows = json::array();
    json limits = json::array();
    for (double r : rs) {
        const PrepareOptions raw{false};
        const PreparedState a = prepare(SqueezedPrep{cdouble(r)}, cutoff, raw);
        const PreparedState b = prepare(SqueezedPrep{cdouble(-r)}, cutoff, raw);
        if (a.warning) {
            std::ostringstream msg;
            msg << "r = " << r << ": cutoff truncates probability " << a.leak << " per mode";
            ctx.warnings.push_back(msg.str());
        }
        const FockState joint = tensor(a.state, b.state);
        for (int M = M_min; M <= M_max; ++M) {
            const double closed = analytic_swap2m_squeezed(r, M);
            const double simulated = swap2m_expectation(joint, M);
            rows.push_back({{"r", r},
                            {"M", M},
                            {"closed_form", closed},
                            {"simulated", simulated},
                            {"abs_diff", std::abs(closed - simulated)},
                            {"bound", error_bound_global(joint, M)}});
        }
        limits.push_back({{"r", r}, {"limit", analytic_squeezed_overlap(r)}});
    }
    return {{"rows", rows}, {"limits", limits}};
}

std::string fig2_csv(const json &result) {
    std::ostringstream os;
    os << "r,M,closed_form,simulated,abs_diff,bound\n";
    for (const json &row : result.at("rows")) {
        put_number(os, row.at("r"));
        os << ',' << row.at("M").get<int>();
        for (const char *key : {"closed_form", "simulated", "abs_diff", "bound"}) {
            os << ',';
            put_number(os, row.at(key));
        }
        os << '\n';
    }
    return os.str();
}

// ---- perm -------------------------------------------------------------------

json cmd_perm(json &cfg, CommandContext &ctx) {
    const PrepContext pc = prep_context(cfg, ctx, 5);
    std::vector<MixedEnsemble> states;
    for (const json &p : list_field(cfg, "states")) {
        states.push_back(build_prep(p, pc));
        if (states.back().modes() != 1) {
            throw ConfigError("perm states must be single-mode");
        }
        if (!(states.back().cutoff() == states.front().cutoff())) {
            throw ConfigError("perm states must share one cutoff");
        }
    }
    if (states.size() < 2) {
        throw ConfigError("perm needs at least two states");
    }
    const SeriesSpec spec = series_spec(cfg, ctx, 1000);
    json out = run_series(
        spec, [&](std::int64_t shots, std::uint64_t seed) { return perm_test(states, shots, seed); },
        perm_test_exact(states));
    out["L"] = states.size();
    return out;
}

// ---- two-copy ---------------------------------------------------------------

json cmd_two_copy(json &cfg, CommandContext &ctx) {
    const PrepContext pc = prep_context(cfg, ctx, 3);
    const FockState psi = build_pure(cfg.at("purification"), pc);
    if (psi.modes() != 2) {
        throw ConfigError("the purification must be a two-mode state");
    }
    const int n = static_cast<int>(int_or(cfg, "n", 2));
    if (n < 2) {
        throw ConfigError("n must be at least 2");
    }
    const int M = threshold_or_none(cfg, "M");
    const FockState pur = replicate_purification(psi, n);
    const SeriesSpec spec = series_spec(cfg, ctx, 1000);
    json out = run_series(
        spec, [&](std::int64_t shots, std::uint64_t seed) { return two_copy_test(pur, shots, seed, M); },
        two_copy_exact(pur, M));
    return out;
}

// ---- compile-cost -------------------------------------------------------------

json cmd_compile_cost(json &cfg, CommandContext &ctx) {
    const PrepContext pc = prep_context(cfg, ctx, 6);
    std::vector<FockState> training;
    for (const json &p : list_field(cfg, "training")) {
        training.push_back(build_pure(p, pc));
    }
    const Circuit U = parse_circuit(cfg.contains("U") ? cfg["U"] : json());
    const Circuit V = parse_circuit(cfg.contains("V") ? cfg["V"] : json());
    if (!cfg.contains("threshold") || cfg["threshold"].is_null()) {
        cfg["threshold"] = json::object();
    }
    json &th = cfg["threshold"];
    CompileThreshold threshold;
    const std::string kind = get_or<std::string>(th, "kind", "total");
    if (kind == "total") {
        threshold.kind = CompileThreshold::Kind::Total;
    } else if (kind == "per_pair") {
        threshold.kind = CompileThreshold::Kind::PerPair;
    } else {
        throw ConfigError("threshold kind must be total or per_pair");
    }
    threshold.M = threshold_or_none(th, "M");
    const std::int64_t shots = int_or(cfg, "shots", 1000);
    if (shots < 1) {
        throw ConfigError("shots must be at least 1");
    }
    const std::uint64_t seed = resolve_seed(cfg, ctx);
    const CompileCostResult res = compile_cost(training, U, V, threshold, shots, seed);
    json terms = json::array();
    for (const EstimatorResult &t : res.terms) {
        terms.push_back(to_json(t));
    }
    return {{"cost", res.cost}, {"exact_cost", compile_cost_exact(training, U, V, threshold)}, {"runs", terms}};
}

// ---- hybrid -----------------------------------------------------------------

json cmd_hybrid(json &cfg, CommandContext &ctx) {
    const PrepContext pc = prep_context(cfg, ctx, 10);
    const MixedEnsemble a = build_prep(cfg.at("a"), pc);
    const MixedEnsemble b = build_prep(cfg.at("b"), pc);
    const int M = threshold_or_none(cfg, "M");
    const SeriesSpec spec = series_spec(cfg, ctx, 1000);
    return run_series(
        spec, [&](std::int64_t shots, std::uint64_t seed) { return hybrid_swap_estimate(a, b, M, shots, seed); },
        hybrid_swap_exact(a, b, M));
}

// ---- qudit-basis --------------------------------------------------------------

json cmd_qudit_basis(json &cfg, CommandContext &) {
    const int d = static_cast<int>(int_or(cfg, "d", 3));
    if (d < 2) {
        throw ConfigError("d must be at least 2");
    }
    const std::string which = get_or<std::string>(cfg, "basis", "W");
    Eigen::MatrixXcd B;
    if (which == "W") {
        B = w_unitary(d);
    } else if (which == "V") {
        B = v_unitary(d);
    } else {
        throw ConfigError("basis must be V or W");
    }
    const std::vector<int> eig = swap_eigenvalues(B, d);
    const int plus = static_cast<int>(std::count(eig.begin(), eig.end(), 1));
    json matrix = json::array();
    for (Eigen::Index i = 0; i < B.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < B.cols(); ++j) {
            row.push_back({B(i, j).real(), B(i, j).imag()});
        }
        matrix.push_back(std::move(row));
    }
    const double unitarity =
        (B.adjoint() * B - Eigen::MatrixXcd::Identity(B.cols(), B.cols())).cwiseAbs().maxCoeff();
    return {{"matrix", matrix},
            {"eigenvalues", eig},
            {"multiplicities", {{"plus", plus}, {"minus", static_cast<int>(eig.size()) - plus}}},
            {"expected", {{"plus", d * (d + 1) / 2}, {"minus", d * (d - 1) / 2}}},
            {"unitarity_error", unitarity}};
}

std::string qudit_basis_csv(const json &result) {
    std::ostringstream os;
    os << "column,eigenvalue\n";
    std::size_t c = 0;
    for (const json &e : result.at("eigenvalues")) {
        os << c++ << ',' << e.get<int>() << '\n';
    }
    return os.str();
}

}  // namespace

const std::vector<Command> &commands() {
    static const std::vector<Command> table = {
        {"overlap", cmd_overlap, series_csv},
        {"cutoff-plan", cmd_cutoff_plan, cutoff_plan_csv},
        {"fig2", cmd_fig2, fig2_csv},
        {"perm", cmd_perm, series_csv},
        {"two-copy", cmd_two_copy, series_csv},
        {"compile-cost", cmd_compile_cost, series_csv},
        {"hybrid", cmd_hybrid, series_csv},
        {"qudit-basis", cmd_qudit_basis, qudit_basis_csv},
    };
    return table;
}

}  // namespace cvswap::cli
