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

#include "config.h"

#include <cmath>
#include <sstream>

#include "cvswap/prepare.h"

namespace cvswap::cli {

namespace {

int gate_mode(const json &spec, std::size_t expected, std::vector<int> &out) {
    out = require<std::vector<int>>(spec, "modes");
    if (out.size() != expected) {
        throw ConfigError("gate '" + require<std::string>(spec, "gate") + "' needs " + std::to_string(expected) +
                          " mode(s)");
    }
    return out[0];
}

double number(const json &spec, const std::string &key, double fallback) {
    if (!spec.contains(key)) {
        return fallback;
    }
    if (!spec.at(key).is_number()) {
        throw ConfigError("field '" + key + "' must be a number");
    }
    return spec.at(key).get<double>();
}

MixedEnsemble from_pure(const FockState &s) {
    return MixedEnsemble(s);
}

void note_leak(const PrepContext &ctx, const std::string &kind, const PreparedState &p) {
    if (p.warning && ctx.warnings != nullptr) {
        std::ostringstream msg;
        msg << kind << ": probability " << p.leak << " above the cutoff was truncated";
        ctx.warnings->push_back(msg.str());
    }
}

}  // namespace

cdouble parse_complex(const json &v) {
    if (v.is_number()) {
        return {v.get<double>(), 0.0};
    }
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
        return {v[0].get<double>(), v[1].get<double>()};
    }
    if (v.is_object() && v.contains("re")) {
        return {v.at("re").get<double>(), v.contains("im") ? v.at("im").get<double>() : 0.0};
    }
    throw ConfigError("expected a complex number: a number, [re, im] or {\"re\", \"im\"}");
}

GateSpec parse_gate(const json &spec) {
    const std::string kind = require<std::string>(spec, "gate");
    std::vector<int> modes;
    if (kind == "displacement") {
        gate_mode(spec, 1, modes);
        if (!spec.contains("alpha")) {
            throw ConfigError("displacement needs 'alpha'");
        }
        return Displacement{parse_complex(spec.at("alpha")), modes[0]};
    }
    if (kind == "squeeze") {
        gate_mode(spec, 1, modes);
        return Squeeze{std::polar(require<double>(spec, "r"), number(spec, "phi", 0.0)), modes[0]};
    }
    if (kind == "phase") {
        gate_mode(spec, 1, modes);
        return PhaseRotation{require<double>(spec, "phi"), modes[0]};
    }
    if (kind == "beamsplitter") {
        gate_mode(spec, 2, modes);
        return Beamsplitter{require<double>(spec, "theta"), number(spec, "phi", 0.0), modes[0], modes[1]};
    }
    if (kind == "two_mode_squeeze") {
        gate_mode(spec, 2, modes);
        return TwoModeSqueeze{require<double>(spec, "r"), modes[0], modes[1]};
    }
    if (kind == "swap") {
        gate_mode(spec, 2, modes);
        return ModeSwap{modes[0], modes[1]};
    }
    throw ConfigError("unknown gate '" + kind + "'");
}

Circuit parse_circuit(const json &list) {
    if (list.is_null()) {
        return {};
    }
    if (!list.is_array()) {
        throw ConfigError("a circuit must be a list of gates");
    }
    Circuit c;
    for (const json &g : list) {
        c.push_back(parse_gate(g));
    }
    return c;
}

MixedEnsemble build_prep(const json &spec, const PrepContext &outer) {
    if (!spec.is_object()) {
        throw ConfigError("a preparation must be an object with a 'kind'");
    }
    PrepContext ctx = outer;
    if (spec.contains("cutoff")) {
        ctx.cutoff = require<int>(spec, "cutoff");
    }
    if (ctx.cutoff < 0) {
        throw ConfigError("cutoff must be non-negative");
    }
    const std::string kind = require<std::string>(spec, "kind");
    const PrepareOptions opts{ctx.renormalize};
    if (kind == "vacuum") {
        const int modes = spec.contains("modes") ? require<int>(spec, "modes") : 1;
        if (modes < 1) {
            throw ConfigError("vacuum needs at least one mode");
        }
        return from_pure(vacuum(CutoffSpec::uniform(modes, ctx.cutoff)));
    }
    if (kind == "coherent") {
        if (!spec.contains("alpha")) {
            throw ConfigError("coherent needs 'alpha'");
        }
        const PreparedState p = prepare(CoherentPrep{parse_complex(spec.at("alpha"))}, ctx.cutoff, opts);
        note_leak(ctx, kind, p);
        return from_pure(p.state);
    }
    if (kind == "squeezed") {
        const cdouble z = std::polar(require<double>(spec, "r"), number(spec, "phi", 0.0));
        const PreparedState p = prepare(SqueezedPrep{z}, ctx.cutoff, opts);
        note_leak(ctx, kind, p);
        return from_pure(p.state);
    }
    if (kind == "tmss") {
        const PreparedState p = prepare(TmssPrep{require<double>(spec, "r")}, ctx.cutoff, opts);
        note_leak(ctx, kind, p);
        return from_pure(p.state);
    }
    if (kind == "fock") {
        const auto pattern = require<std::vector<int>>(spec, "pattern");
        if (pattern.empty()) {
            throw ConfigError("fock needs a non-empty 'pattern'");
        }
        for (int n : pattern) {
            if (n < 0 || n > ctx.cutoff) {
                throw ConfigError("fock pattern entry outside [0, cutoff]");
            }
        }
        return from_pure(basis_state({pattern}, CutoffSpec::uniform(static_cast<int>(pattern.size()), ctx.cutoff)));
    }
    if (kind == "product") {
        const json &factors = spec.at("factors");
        if (!factors.is_array() || factors.empty()) {
            throw ConfigError("product needs a non-empty 'factors' list");
        }
        const MixedEnsemble first = build_prep(factors[0], ctx);
        std::vector<EnsembleComponent> acc(first.components().begin(), first.components().end());
        for (std::size_t f = 1; f < factors.size(); ++f) {
            const MixedEnsemble next = build_prep(factors[f], ctx);
            std::vector<EnsembleComponent> merged;
            for (const EnsembleComponent &a : acc) {
                for (const EnsembleComponent &b : next.components()) {
                    merged.push_back({a.weight * b.weight, tensor(a.state, b.state)});
                }
            }
            acc = std::move(merged);
        }
        return MixedEnsemble(std::move(acc));
    }
    if (kind == "mixture") {
        const json &list = spec.at("components");
        if (!list.is_array() || list.empty()) {
            throw ConfigError("mixture needs a non-empty 'components' list");
        }
        std::vector<EnsembleComponent> comps;
        for (const json &c : list) {
            comps.push_back({require<double>(c, "weight"), build_pure(c.at("state"), ctx)});
        }
        return MixedEnsemble(std::move(comps));
    }
    if (kind == "hybrid") {
        const json &terms = spec.at("terms");
        if (!terms.is_array() || terms.empty()) {
            throw ConfigError("hybrid needs a non-empty 'terms' list");
        }
        const CutoffSpec shape({1, ctx.cutoff});
        std::vector<cdouble> amps(shape.dimension(), 0.0);
        for (const json &t : terms) {
            const int q = require<int>(t, "qubit");
            if (q != 0 && q != 1) {
                throw ConfigError("hybrid qubit label must be 0 or 1");
            }
            const cdouble c = t.contains("amp") ? parse_complex(t.at("amp")) : cdouble(1.0);
            const FockState mode = build_pure(t.at("mode"), ctx);
            if (mode.modes() != 1) {
                throw ConfigError("hybrid terms need a single-mode CV state");
            }
            const FockState fitted = embed(mode, CutoffSpec({ctx.cutoff}));
            for (int n = 0; n <= ctx.cutoff; ++n) {
                amps[static_cast<std::size_t>(q) * (ctx.cutoff + 1) + n] += c * fitted.amplitudes()[n];
            }
        }
        const FockState s(shape, std::move(amps));
        if (!(s.norm_sq() > 0.0)) {
            throw ConfigError("hybrid state has zero norm");
        }
        return from_pure(s.normalized());
    }
    throw ConfigError("unknown preparation kind '" + kind + "'");
}

FockState build_pure(const json &spec, const PrepContext &ctx) {
    const MixedEnsemble e = build_prep(spec, ctx);
    if (e.size() != 1) {
        throw ConfigError("a pure state is required here, got a mixture");
    }
    return e.components()[0].state;
}

}  // namespace cvswap::cli
