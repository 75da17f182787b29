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

#include "cvswap/shot_model.h"

#include <algorithm>
#include <numeric>
#include <optional>

namespace cvswap {

OutcomeTable::OutcomeTable(const FockState &measured, const PatternWeight &weight)
    : shape_(measured.cutoff()), cumulative_([&] {
          auto amps = measured.amplitudes();
          for (std::size_t k = 0; k < amps.size(); ++k) {
              const double p = std::norm(amps[k]);
              if (p >= kProbabilityFloor) {
                  index_.push_back(k);
                  prob_.push_back(p);
              }
          }
          if (prob_.empty()) {
              throw std::invalid_argument("OutcomeTable: measured state has zero norm");
          }
          return CumulativeTable(prob_);
      }()) {
    value_.reserve(index_.size());
    for (std::size_t k : index_) {
        value_.push_back(weight(measured.pattern_at(k)));
    }
}

cdouble OutcomeTable::exact() const {
    cdouble acc = 0.0;
    for (std::size_t e = 0; e < prob_.size(); ++e) {
        if (!value_[e].discarded) {
            acc += prob_[e] * value_[e].value;
        }
    }
    return acc;
}

PhotonPattern OutcomeTable::pattern(std::size_t entry) const {
    PhotonPattern p;
    p.counts.resize(shape_.modes());
    std::size_t rest = index_[entry];
    for (int m = shape_.modes() - 1; m >= 0; --m) {
        const auto d = static_cast<std::size_t>(shape_.local_dim(m));
        p.counts[m] = static_cast<int>(rest % d);
        rest /= d;
    }
    return p;
}

PatternFactor::PatternFactor(std::vector<std::vector<double>> input_weights, const Builder &build)
    : weights_(std::move(input_weights)) {
    std::size_t combos = 1;
    for (const auto &w : weights_) {
        if (w.empty()) {
            throw std::invalid_argument("PatternFactor: input without components");
        }
        pickers_.emplace_back(w);
        combos *= w.size();
    }
    std::vector<std::vector<std::size_t>> choice(combos, std::vector<std::size_t>(weights_.size()));
    table_weight_.assign(combos, 1.0);
    for (std::size_t c = 0; c < combos; ++c) {
        std::size_t rest = c;
        for (std::size_t i = weights_.size(); i-- > 0;) {
            choice[c][i] = rest % weights_[i].size();
            rest /= weights_[i].size();
            table_weight_[c] *= weights_[i][choice[c][i]];
        }
    }
    std::vector<std::optional<OutcomeTable>> built(combos);
    parallel_for(combos, [&](std::size_t c) { built[c].emplace(build(choice[c])); });
    tables_.reserve(combos);
    for (auto &t : built) {
        tables_.push_back(std::move(*t));
    }
}

cdouble PatternFactor::exact() const {
    cdouble acc = 0.0;
    for (std::size_t c = 0; c < tables_.size(); ++c) {
        acc += table_weight_[c] * tables_[c].exact();
    }
    return acc;
}

PatternFactor::Draw PatternFactor::draw(UniformStream &stream) const {
    std::size_t table = 0;
    for (std::size_t i = 0; i < pickers_.size(); ++i) {
        // Single-component inputs consume no randomness.
        const std::size_t pick = weights_[i].size() == 1 ? 0 : pickers_[i].sample(stream.next());
        table = table * weights_[i].size() + pick;
    }
    const std::size_t entry = tables_[table].draw(stream.next());
    return {tables_[table].value(entry), table, entry};
}

ShotModel::ShotModel(std::vector<PatternFactor> factors) : factors_(std::move(factors)) {
    if (factors_.empty()) {
        throw std::invalid_argument("ShotModel: no factors");
    }
}

cdouble ShotModel::exact() const {
    cdouble acc = 1.0;
    for (const PatternFactor &f : factors_) {
        acc *= f.exact();
    }
    return acc;
}

EstimatorResult ShotModel::run(std::int64_t shots, std::uint64_t seed) const {
    if (shots < 1) {
        throw std::invalid_argument("at least one shot is required");
    }
    std::vector<cdouble> values(static_cast<std::size_t>(shots));
    std::vector<char> discarded(values.size(), 0);
    parallel_for(values.size(), [&](std::size_t s) {
        UniformStream stream(seed, s);
        cdouble v = 1.0;
        for (const PatternFactor &f : factors_) {
            const PatternFactor::Draw d = f.draw(stream);
            if (d.value.discarded) {
                discarded[s] = 1;
            }
            v *= d.value.value;
        }
        values[s] = discarded[s] ? cdouble(0.0) : v;
    });
    const Statistics stats = estimator_statistics(values);
    EstimatorResult out;
    out.mean = stats.mean;
    out.std_error = stats.std_error;
    out.shots = shots;
    out.discarded = std::accumulate(discarded.begin(), discarded.end(), std::int64_t{0});
    out.seed = seed;
    return out;
}

std::vector<ShotOutcome> ShotModel::dump(std::int64_t shots, std::uint64_t seed) const {
    if (shots < 1) {
        throw std::invalid_argument("at least one shot is required");
    }
    std::vector<ShotOutcome> out(static_cast<std::size_t>(shots));
    parallel_for(out.size(), [&](std::size_t s) {
        UniformStream stream(seed, s);
        ShotOutcome o;
        o.shot_index = static_cast<std::int64_t>(s);
        for (const PatternFactor &f : factors_) {
            const PhotonPattern p = f.pattern(f.draw(stream));
            o.pattern.counts.insert(o.pattern.counts.end(), p.counts.begin(), p.counts.end());
        }
        out[s] = std::move(o);
    });
    return out;
}

FockState shrink_to_support(const FockState &state) {
    std::vector<int> top(state.modes(), 0);
    auto amps = state.amplitudes();
    for (std::size_t k = 0; k < amps.size(); ++k) {
        if (amps[k] == cdouble(0.0)) {
            continue;
        }
        const PhotonPattern p = state.pattern_at(k);
        for (int m = 0; m < state.modes(); ++m) {
            top[m] = std::max(top[m], p.counts[m]);
        }
    }
    const CutoffSpec target(top);
    if (target == state.cutoff()) {
        return state;
    }
    return embed(state, target);
}

CutoffSpec passive_padding(const CutoffSpec &cutoff, std::span<const ModePair> links) {
    const int modes = cutoff.modes();
    std::vector<int> parent(modes);
    std::iota(parent.begin(), parent.end(), 0);
    std::vector<int> group_total = cutoff.per_mode_max;
    auto find = [&](int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (const auto &[i, j] : links) {
        if (i < 0 || j < 0 || i >= modes || j >= modes) {
            throw std::invalid_argument("passive_padding: mode index out of range");
        }
        const int a = find(i);
        const int b = find(j);
        if (a != b) {
            parent[b] = a;
            group_total[a] += group_total[b];
        }
    }
    std::vector<int> out(modes);
    for (int m = 0; m < modes; ++m) {
        out[m] = group_total[find(m)];
    }
    return CutoffSpec(out);
}

}  // namespace cvswap
