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

#include <cmath>
#include <numbers>
#include <ostream>

namespace cvswap {

namespace {

const GateSpec kSwapBasis = Beamsplitter{std::numbers::pi / 4.0, std::numbers::pi, 0, 1};

void validate_block(const ParityBlock &b, int modes) {
    if (b.inputs.empty()) {
        throw std::invalid_argument("parity block without inputs");
    }
    if (b.pair_M.size() != b.pairs.size()) {
        throw std::invalid_argument("one threshold per measured pair is required");
    }
    std::vector<char> used(modes, 0);
    for (const auto &[a, c] : b.pairs) {
        if (a < 0 || c < 0 || a >= modes || c >= modes || a == c) {
            throw std::invalid_argument("measured pair refers to an invalid mode");
        }
        if (used[a] || used[c]) {
            throw std::invalid_argument("measured pairs overlap");
        }
        used[a] = used[c] = 1;
    }
    for (int m : b.pair_M) {
        if (m < kNoThreshold) {
            throw std::invalid_argument("threshold M must be non-negative");
        }
    }
    for (const GateSpec &g : b.circuit) {
        validate_gate(g, modes);
    }
}

}  // namespace

PatternFactor parity_factor(const ParityBlock &block) {
    int modes = 0;
    std::vector<std::vector<double>> weights;
    for (const MixedEnsemble &e : block.inputs) {
        modes += e.modes();
        weights.push_back(e.weights());
    }
    validate_block(block, modes);
    bool passive = true;
    std::vector<ModePair> links;
    for (const GateSpec &g : block.circuit) {
        passive = passive && is_number_conserving(g);
        const std::vector<int> gm = gate_modes(g);
        if (gm.size() == 2) {
            links.emplace_back(gm[0], gm[1]);
        }
    }
    links.insert(links.end(), block.pairs.begin(), block.pairs.end());

    auto build = [&block, passive, links](std::span<const std::size_t> pick) {
        std::vector<FockState> parts;
        for (std::size_t i = 0; i < pick.size(); ++i) {
            parts.push_back(block.inputs[i].components()[pick[i]].state);
        }
        FockState state = tensor(parts);
        if (passive) {
            state = shrink_to_support(state);
        }
        state = embed(state, passive_padding(state.cutoff(), links));
        state = apply_circuit(state, block.circuit);
        for (const auto &[a, b] : block.pairs) {
            Beamsplitter bs = std::get<Beamsplitter>(kSwapBasis);
            bs.mode_i = a;
            bs.mode_j = b;
            state = apply_gate(state, bs);
        }
        return OutcomeTable(state, [&block](const PhotonPattern &p) {
            int parity = 0;
            int total = 0;
            bool discarded = false;
            for (std::size_t k = 0; k < block.pairs.size(); ++k) {
                const int n = p.counts[block.pairs[k].first];
                const int m = p.counts[block.pairs[k].second];
                parity += n;
                total += n + m;
                if (block.pair_M[k] != kNoThreshold && n + m > 2 * block.pair_M[k]) {
                    discarded = true;
                }
            }
            if (block.total_M != kNoThreshold && total > 2 * block.total_M) {
                discarded = true;
            }
            return ShotValue{discarded ? 0.0 : (parity % 2 == 0 ? 1.0 : -1.0), discarded};
        });
    };
    return PatternFactor(std::move(weights), build);
}

EstimatorResult parity_overlap_estimate(std::span<const ParityBlock> blocks, std::int64_t shots,
                                        std::uint64_t seed) {
    if (shots < 1) {
        throw std::invalid_argument("at least one shot is required");
    }
    std::vector<PatternFactor> factors;
    for (const ParityBlock &b : blocks) {
        factors.push_back(parity_factor(b));
    }
    return ShotModel(std::move(factors)).run(shots, seed);
}

double parity_overlap_exact(std::span<const ParityBlock> blocks) {
    double acc = 1.0;
    for (const ParityBlock &b : blocks) {
        acc *= parity_factor(b).exact().real();
    }
    return acc;
}

namespace {

ParityBlock single_block(const FockState &joint, std::span<const ModePair> pairs, std::span<const int> M_per_pair) {
    ParityBlock b;
    b.inputs.emplace_back(joint);
    b.pairs.assign(pairs.begin(), pairs.end());
    b.pair_M.assign(M_per_pair.begin(), M_per_pair.end());
    return b;
}

ParityBlock swap_block(const MixedEnsemble &rho, const MixedEnsemble &sigma, int M) {
    if (rho.modes() != 1 || sigma.modes() != 1) {
        throw std::invalid_argument("the CV SWAP test takes single-mode inputs");
    }
    if (M < 0) {
        throw std::invalid_argument("threshold M must be non-negative");
    }
    ParityBlock b;
    b.inputs = {rho, sigma};
    b.pairs = {{0, 1}};
    b.pair_M = {M};
    return b;
}

}  // namespace

EstimatorResult parity_overlap_estimate(const FockState &joint, std::span<const ModePair> pairs,
                                        std::span<const int> M_per_pair, std::int64_t shots, std::uint64_t seed) {
    const ParityBlock b = single_block(joint, pairs, M_per_pair);
    return parity_overlap_estimate(std::span(&b, 1), shots, seed);
}

double parity_overlap_exact(const FockState &joint, std::span<const ModePair> pairs, std::span<const int> M_per_pair) {
    const ParityBlock b = single_block(joint, pairs, M_per_pair);
    return parity_overlap_exact(std::span(&b, 1));
}

EstimatorResult cv_swap_estimate(const MixedEnsemble &rho, const MixedEnsemble &sigma, int M, std::int64_t shots,
                                 std::uint64_t seed) {
    const ParityBlock b = swap_block(rho, sigma, M);
    return parity_overlap_estimate(std::span(&b, 1), shots, seed);
}

double cv_swap_exact(const MixedEnsemble &rho, const MixedEnsemble &sigma, int M) {
    const ParityBlock b = swap_block(rho, sigma, M);
    return parity_overlap_exact(std::span(&b, 1));
}

double swap2m_expectation(const FockState &joint, int M) {
    if (joint.modes() != 2) {
        throw std::invalid_argument("swap2m_expectation: two-mode joint state required");
    }
    if (M < 0) {
        throw std::invalid_argument("threshold M must be non-negative");
    }
    const ModePair pair{0, 1};
    const int m = M;
    return parity_overlap_exact(joint, std::span(&pair, 1), std::span(&m, 1));
}

double error_bound_global(const FockState &joint, int M) {
    if (joint.modes() != 2) {
        throw std::invalid_argument("error_bound_global: two-mode joint state required");
    }
    const int modes[] = {0, 1};
    return std::max(0.0, 1.0 - truncation_weight(joint, modes, 2 * M));
}

double error_bound_local(const MixedEnsemble &rho, const MixedEnsemble &sigma, int M) {
    return std::max(0.0, 1.0 - local_cumulative(rho, 0, M) * local_cumulative(sigma, 0, M));
}

double analytic_squeezed_overlap(double r) {
    return 1.0 / std::cosh(2.0 * r);
}

double analytic_swap2m_squeezed(double r, int M) {
    const double tail = std::pow(std::tanh(r), 2.0 * (M + 1));
    return (M % 2 == 0 ? 1.0 + tail : 1.0 - tail) / std::cosh(2.0 * r);
}

void write_sweep_csv(std::span<const SweepRow> rows, std::ostream &out) {
    out << "M,value,bound\n";
    const auto precision = out.precision(17);
    for (const SweepRow &r : rows) {
        out << r.M << ',' << r.value << ',' << r.bound << '\n';
    }
    out.precision(precision);
}

}  // namespace cvswap
