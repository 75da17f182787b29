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

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "cvswap/fock.h"
#include "cvswap/sampling.h"

namespace cvswap {

using ModePair = std::pair<int, int>;

/// Value a measurement pattern contributes to an estimator.
struct ShotValue {
    cdouble value;
    bool discarded = false;
};

using PatternWeight = std::function<ShotValue(const PhotonPattern &)>;

/// Sparse outcome distribution of one measured state with the estimator value
/// of each outcome. Probabilities are the raw |amplitude|^2 (not divided by
/// the norm); sampling normalizes, exact() does not.
class OutcomeTable {
  public:
    OutcomeTable(const FockState &measured, const PatternWeight &weight);

    /// sum_k |a_k|^2 value_k.
    cdouble exact() const;
    /// Position of the drawn entry for a uniform u in [0, 1).
    std::size_t draw(double u) const { return cumulative_.sample(u); }
    std::size_t entries() const { return index_.size(); }
    const ShotValue &value(std::size_t entry) const { return value_[entry]; }
    PhotonPattern pattern(std::size_t entry) const;
    double norm_sq() const { return cumulative_.total(); }

  private:
    CutoffSpec shape_;
    std::vector<std::size_t> index_;
    std::vector<double> prob_;
    std::vector<ShotValue> value_;
    CumulativeTable cumulative_;
};

/// Measurement statistics of independently prepared inputs, each a mixture.
/// One outcome table is built per combination of input components; a shot
/// draws one component per input, then one outcome.
class PatternFactor {
  public:
    using Builder = std::function<OutcomeTable(std::span<const std::size_t> components)>;

    PatternFactor(std::vector<std::vector<double>> input_weights, const Builder &build);

    cdouble exact() const;

    struct Draw {
        ShotValue value;
        std::size_t table = 0;
        std::size_t entry = 0;
    };
    Draw draw(UniformStream &stream) const;
    PhotonPattern pattern(const Draw &d) const { return tables_[d.table].pattern(d.entry); }

  private:
    std::vector<std::vector<double>> weights_;
    std::vector<CumulativeTable> pickers_;
    std::vector<OutcomeTable> tables_;
    std::vector<double> table_weight_;
};

/// Product of independent factors; the shot value is the product of the
/// factor values and a shot is discarded if any factor discards it.
class ShotModel {
  public:
    explicit ShotModel(std::vector<PatternFactor> factors);

    cdouble exact() const;
    /// Shot s uses UniformStream(seed, s), so results do not depend on the
    /// thread count.
    EstimatorResult run(std::int64_t shots, std::uint64_t seed) const;
    /// Raw patterns of the same shots `run` would take, factors concatenated.
    std::vector<ShotOutcome> dump(std::int64_t shots, std::uint64_t seed) const;

  private:
    std::vector<PatternFactor> factors_;
};

/// Shrinks every mode to the largest photon number carrying amplitude.
FockState shrink_to_support(const FockState &state);

/// Pads mode cutoffs so that passive two-mode gates on `links`, applied in
/// order, are exact: linked modes get the total cutoff of their group.
CutoffSpec passive_padding(const CutoffSpec &cutoff, std::span<const ModePair> links);

}  // namespace cvswap
