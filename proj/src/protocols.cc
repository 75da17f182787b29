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

#include "cvswap/protocols.h"

#include <cmath>
#include <numbers>

#include "cvswap/decompose.h"
#include "cvswap/dv.h"
#include "cvswap/shot_model.h"

namespace cvswap {

namespace {

constexpr double kRoundOff = 1e-15;

cdouble root_of_unity(int k, int L) {
    cdouble w = std::polar(1.0, 2.0 * std::numbers::pi * k / L);
    if (std::abs(w.real()) < kRoundOff) {
        w.real(0.0);
    }
    if (std::abs(w.imag()) < kRoundOff) {
        w.imag(0.0);
    }
    return w;
}

PatternFactor perm_factor(std::span<const MixedEnsemble> states) {
    const int L = static_cast<int>(states.size());
    if (L < 2) {
        throw std::invalid_argument("perm_test: at least two inputs are required");
    }
    std::vector<std::vector<double>> weights;
    for (const MixedEnsemble &s : states) {
        if (s.modes() != 1) {
            throw std::invalid_argument("perm_test: inputs must be single-mode");
        }
        if (s.cutoff() != states.front().cutoff()) {
            throw std::invalid_argument("perm_test: inputs must share one cutoff");
        }
        weights.push_back(s.weights());
    }
    const Circuit circuit = perm_measurement_circuit(L);
    std::vector<ModePair> links;
    for (const GateSpec &g : circuit) {
        const std::vector<int> m = gate_modes(g);
        if (m.size() == 2) {
            links.emplace_back(m[0], m[1]);
        }
    }
    auto build = [&](std::span<const std::size_t> pick) {
        std::vector<FockState> parts;
        for (int l = 0; l < L; ++l) {
            parts.push_back(states[l].components()[pick[l]].state);
        }
        FockState state = shrink_to_support(tensor(parts));
        state = embed(state, passive_padding(state.cutoff(), links));
        state = apply_circuit(state, circuit);
        return OutcomeTable(state, [](const PhotonPattern &p) { return ShotValue{perm_weight(p), false}; });
    };
    return PatternFactor(std::move(weights), build);
}

void check_mode0_only(const Circuit &c) {
    for (const GateSpec &g : c) {
        for (int m : gate_modes(g)) {
            if (m != 0) {
                throw std::invalid_argument("compile_cost: circuits may only act on mode A (index 0)");
            }
        }
    }
}

ParityBlock compile_block(const FockState &psi, const Circuit &U, const Circuit &V, CompileThreshold threshold) {
    if (psi.modes() != 2) {
        throw std::invalid_argument("compile_cost: training states must have two modes (A, R)");
    }
    if (threshold.M < kNoThreshold) {
        throw std::invalid_argument("compile_cost: threshold M must be non-negative");
    }
    ParityBlock b;
    b.inputs = {apply_circuit(psi, U), apply_circuit(psi, V)};
    b.pairs = {{0, 2}, {1, 3}};
    if (threshold.kind == CompileThreshold::Kind::PerPair) {
        b.pair_M = {threshold.M, threshold.M};
    } else {
        b.pair_M = {kNoThreshold, kNoThreshold};
        b.total_M = threshold.M;
    }
    return b;
}

ParityBlock two_copy_block(const FockState &purification, int M, bool perm_as_gates) {
    FockState joint = two_copy_input(purification, perm_as_gates);
    const int half = joint.modes() / 2;
    ParityBlock b;
    b.inputs.emplace_back(std::move(joint));
    for (int k = 0; k < half; ++k) {
        b.pairs.emplace_back(k, half + k);
        b.pair_M.push_back(M);
    }
    return b;
}

PatternFactor hybrid_factor(const MixedEnsemble &a, const MixedEnsemble &b, int M) {
    for (const MixedEnsemble *e : {&a, &b}) {
        if (e->modes() != 2 || e->cutoff().per_mode_max[0] != 1) {
            throw std::invalid_argument("hybrid test: inputs must be one qubit (cutoff 1) and one CV mode");
        }
    }
    if (a.cutoff() != b.cutoff()) {
        throw std::invalid_argument("hybrid test: inputs must share one cutoff");
    }
    if (M < kNoThreshold) {
        throw std::invalid_argument("hybrid test: threshold M must be non-negative");
    }
    const SparseMatrix bell = qubit_bell_change().adjoint().sparseView();
    auto build = [&, bell](std::span<const std::size_t> pick) {
        // Modes: A (qubit), B, A' (qubit), B'.
        FockState state = tensor(a.components()[pick[0]].state, b.components()[pick[1]].state);
        const ModePair cv{1, 3};
        state = embed(state, passive_padding(state.cutoff(), std::span(&cv, 1)));
        const int qubits[] = {0, 2};
        state = apply_matrix(state, qubits, bell);
        state = apply_gate(state, Beamsplitter{std::numbers::pi / 4.0, std::numbers::pi, 1, 3});
        return OutcomeTable(state, [M](const PhotonPattern &p) {
            const int n = p.counts[1];
            const int m = p.counts[3];
            if (M != kNoThreshold && n + m > 2 * M) {
                return ShotValue{0.0, true};
            }
            const int parity = p.counts[0] * p.counts[2] + n;
            return ShotValue{parity % 2 == 0 ? 1.0 : -1.0, false};
        });
    };
    return PatternFactor({a.weights(), b.weights()}, build);
}

}  // namespace

Eigen::MatrixXcd dft_transfer(int L) {
    if (L < 1) {
        throw std::invalid_argument("dft_transfer: L must be positive");
    }
    Eigen::MatrixXcd f(L, L);
    const double norm = 1.0 / std::sqrt(static_cast<double>(L));
    for (int l = 0; l < L; ++l) {
        for (int j = 0; j < L; ++j) {
            f(l, j) = norm * root_of_unity((l * j) % L, L);
        }
    }
    return f;
}

Circuit perm_measurement_circuit(int L) {
    // F^dag with its output modes in reverse order, so output mode m carries
    // eigenvalue label L - 1 - m. At L = 2 this is the SWAP-basis beamsplitter.
    const Eigen::MatrixXcd measure = dft_transfer(L).adjoint().colwise().reverse();
    return rectangular_decompose(measure);
}

cdouble perm_weight(const PhotonPattern &pattern) {
    const int L = pattern.modes();
    long long phase = 0;
    for (int m = 0; m < L; ++m) {
        phase += static_cast<long long>(L - 1 - m) * pattern.counts[m];
    }
    return root_of_unity(static_cast<int>(phase % L), L);
}

EstimatorResult perm_test(std::span<const MixedEnsemble> states, std::int64_t shots, std::uint64_t seed) {
    std::vector<PatternFactor> f;
    f.push_back(perm_factor(states));
    return ShotModel(std::move(f)).run(shots, seed);
}

cdouble perm_test_exact(std::span<const MixedEnsemble> states) {
    return perm_factor(states).exact();
}

FockState replicate_purification(const FockState &psi_ab, int n) {
    if (psi_ab.modes() != 2) {
        throw std::invalid_argument("replicate_purification: a two-mode purification is required");
    }
    if (n < 1) {
        throw std::invalid_argument("replicate_purification: n must be positive");
    }
    std::vector<FockState> copies(static_cast<std::size_t>(n), psi_ab);
    return tensor(copies);
}

FockState two_copy_input(const FockState &purification, bool perm_as_gates) {
    const int modes = purification.modes();
    if (modes % 2 != 0) {
        throw std::invalid_argument("two-copy test: purification must have modes A1 B1 ... An Bn");
    }
    const int n = modes / 2;
    if (n < 2) {
        throw std::invalid_argument("two-copy test: n must be at least 2");
    }
    if (!purification.is_normalized()) {
        throw std::invalid_argument("two-copy test: purification must be normalized");
    }
    FockState copy = purification;
    if (perm_as_gates) {
        Circuit chain;
        for (int k = 0; k + 1 < n; ++k) {
            chain.push_back(ModeSwap{2 * k, 2 * (k + 1)});
        }
        copy = apply_circuit(copy, chain);
    } else {
        std::vector<int> order(modes);
        for (int k = 0; k < n; ++k) {
            order[2 * k] = 2 * ((k + 1) % n);
            order[2 * k + 1] = 2 * k + 1;
        }
        copy = permute_modes(copy, order);
    }
    return tensor(purification, copy);
}

EstimatorResult two_copy_test(const FockState &purification, std::int64_t shots, std::uint64_t seed, int M,
                              bool perm_as_gates) {
    const ParityBlock b = two_copy_block(purification, M, perm_as_gates);
    return parity_overlap_estimate(std::span(&b, 1), shots, seed);
}

double two_copy_exact(const FockState &purification, int M, bool perm_as_gates) {
    const ParityBlock b = two_copy_block(purification, M, perm_as_gates);
    return parity_overlap_exact(std::span(&b, 1));
}

CompileCostResult compile_cost(std::span<const FockState> training, const Circuit &U, const Circuit &V,
                               CompileThreshold threshold, std::int64_t shots_per_term, std::uint64_t seed) {
    if (training.empty()) {
        throw std::invalid_argument("compile_cost: empty training set");
    }
    check_mode0_only(U);
    check_mode0_only(V);
    CompileCostResult out;
    double sum = 0.0;
    for (std::size_t j = 0; j < training.size(); ++j) {
        const ParityBlock b = compile_block(training[j], U, V, threshold);
        out.terms.push_back(parity_overlap_estimate(std::span(&b, 1), shots_per_term, derive_seed(seed, j)));
        sum += out.terms.back().mean.real();
    }
    out.cost = 1.0 - sum / static_cast<double>(training.size());
    return out;
}

double compile_cost_exact(std::span<const FockState> training, const Circuit &U, const Circuit &V,
                          CompileThreshold threshold) {
    if (training.empty()) {
        throw std::invalid_argument("compile_cost: empty training set");
    }
    check_mode0_only(U);
    check_mode0_only(V);
    double sum = 0.0;
    for (const FockState &psi : training) {
        const ParityBlock b = compile_block(psi, U, V, threshold);
        sum += parity_overlap_exact(std::span(&b, 1));
    }
    return 1.0 - sum / static_cast<double>(training.size());
}

Eigen::MatrixXcd qubit_bell_change() {
    Eigen::MatrixXcd c(4, 4);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            const DVState phi = qudit_bell_state(j, i, 2);
            for (int r = 0; r < 4; ++r) {
                c(r, i * 2 + j) = phi.amplitudes()[r];
            }
        }
    }
    return c;
}

EstimatorResult hybrid_swap_estimate(const MixedEnsemble &a, const MixedEnsemble &b, int M, std::int64_t shots,
                                     std::uint64_t seed) {
    std::vector<PatternFactor> f;
    f.push_back(hybrid_factor(a, b, M));
    return ShotModel(std::move(f)).run(shots, seed);
}

double hybrid_swap_exact(const MixedEnsemble &a, const MixedEnsemble &b, int M) {
    return hybrid_factor(a, b, M).exact().real();
}

}  // namespace cvswap
