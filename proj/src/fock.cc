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

#include "cvswap/fock.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>

namespace cvswap {

CutoffSpec::CutoffSpec(std::vector<int> max_per_mode) : per_mode_max(std::move(max_per_mode)) {
    for (int n : per_mode_max) {
        if (n < 0) {
            throw std::invalid_argument("CutoffSpec: negative per-mode cutoff");
        }
    }
}

CutoffSpec CutoffSpec::uniform(int modes, int max_photons) {
    if (modes < 0) {
        throw std::invalid_argument("CutoffSpec: negative mode count");
    }
    return CutoffSpec(std::vector<int>(modes, max_photons));
}

std::size_t CutoffSpec::dimension() const {
    std::size_t dim = 1;
    for (int n : per_mode_max) {
        dim *= static_cast<std::size_t>(n + 1);
    }
    return dim;
}

int CutoffSpec::total_max() const {
    return std::accumulate(per_mode_max.begin(), per_mode_max.end(), 0);
}

int PhotonPattern::total() const {
    return std::accumulate(counts.begin(), counts.end(), 0);
}

FockState::FockState(CutoffSpec cutoff, std::vector<cdouble> amplitudes)
    : cutoff_(std::move(cutoff)), amplitudes_(std::move(amplitudes)), norm_sq_(0.0) {
    if (cutoff_.modes() == 0) {
        throw std::invalid_argument("FockState: at least one mode is required");
    }
    if (amplitudes_.size() != cutoff_.dimension()) {
        throw std::invalid_argument("FockState: amplitude count does not match cutoff dimensions");
    }
    for (const cdouble &a : amplitudes_) {
        norm_sq_ += std::norm(a);
    }
}

bool FockState::is_normalized(double tol) const {
    return std::abs(norm_sq_ - 1.0) <= tol;
}

std::vector<std::size_t> FockState::strides() const {
    std::vector<std::size_t> s(modes());
    std::size_t stride = 1;
    for (int k = modes() - 1; k >= 0; --k) {
        s[k] = stride;
        stride *= static_cast<std::size_t>(cutoff_.local_dim(k));
    }
    return s;
}

std::size_t FockState::index_of(const PhotonPattern &pattern) const {
    if (pattern.modes() != modes()) {
        throw std::invalid_argument("FockState: pattern has the wrong number of modes");
    }
    std::size_t index = 0;
    for (int k = 0; k < modes(); ++k) {
        int n = pattern.counts[k];
        if (n < 0 || n > cutoff_.per_mode_max[k]) {
            throw std::out_of_range("FockState: photon count outside the cutoff");
        }
        index = index * static_cast<std::size_t>(cutoff_.local_dim(k)) + static_cast<std::size_t>(n);
    }
    return index;
}

PhotonPattern FockState::pattern_at(std::size_t index) const {
    PhotonPattern p{std::vector<int>(modes())};
    for (int k = modes() - 1; k >= 0; --k) {
        auto d = static_cast<std::size_t>(cutoff_.local_dim(k));
        p.counts[k] = static_cast<int>(index % d);
        index /= d;
    }
    return p;
}

cdouble FockState::amplitude(const PhotonPattern &pattern) const {
    return amplitudes_[index_of(pattern)];
}

FockState FockState::normalized() const {
    if (norm_sq_ <= 0.0) {
        throw std::invalid_argument("FockState: cannot normalize a zero vector");
    }
    return scaled(1.0 / std::sqrt(norm_sq_));
}

FockState FockState::scaled(cdouble factor) const {
    std::vector<cdouble> out(amplitudes_);
    for (cdouble &a : out) {
        a *= factor;
    }
    return FockState(cutoff_, std::move(out));
}

MixedEnsemble::MixedEnsemble(std::vector<EnsembleComponent> components)
    : components_(std::move(components)) {
    if (components_.empty()) {
        throw std::invalid_argument("MixedEnsemble: no components");
    }
    double total = 0.0;
    for (const auto &c : components_) {
        if (!(c.weight > 0.0 && c.weight <= 1.0)) {
            throw std::invalid_argument("MixedEnsemble: weights must lie in (0, 1]");
        }
        if (c.state.cutoff() != components_.front().state.cutoff()) {
            throw std::invalid_argument("MixedEnsemble: components must share modes and cutoff");
        }
        total += c.weight;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw std::invalid_argument("MixedEnsemble: weights must sum to 1");
    }
}

MixedEnsemble::MixedEnsemble(const FockState &pure) : components_{{1.0, pure}} {}

std::vector<double> MixedEnsemble::weights() const {
    std::vector<double> w;
    w.reserve(components_.size());
    for (const auto &c : components_) {
        w.push_back(c.weight);
    }
    return w;
}

FockState basis_state(const PhotonPattern &pattern, const CutoffSpec &cutoff) {
    if (pattern.modes() != cutoff.modes()) {
        throw std::invalid_argument("basis_state: pattern and cutoff disagree on mode count");
    }
    for (int k = 0; k < cutoff.modes(); ++k) {
        if (pattern.counts[k] < 0 || pattern.counts[k] > cutoff.per_mode_max[k]) {
            throw std::out_of_range("basis_state: pattern exceeds cutoff");
        }
    }
    std::vector<cdouble> amps(cutoff.dimension(), 0.0);
    FockState probe(cutoff, amps);
    amps[probe.index_of(pattern)] = 1.0;
    return FockState(cutoff, std::move(amps));
}

FockState vacuum(const CutoffSpec &cutoff) {
    return basis_state(PhotonPattern{std::vector<int>(cutoff.modes(), 0)}, cutoff);
}

cdouble inner_product(const FockState &a, const FockState &b) {
    if (a.cutoff() != b.cutoff()) {
        throw std::invalid_argument("inner_product: states have different shapes");
    }
    auto x = a.amplitudes();
    auto y = b.amplitudes();
    cdouble acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        acc += std::conj(x[i]) * y[i];
    }
    return acc;
}

double overlap(const FockState &a, const FockState &b) {
    return std::norm(inner_product(a, b));
}

FockState tensor(const FockState &a, const FockState &b) {
    std::vector<int> cut = a.cutoff().per_mode_max;
    cut.insert(cut.end(), b.cutoff().per_mode_max.begin(), b.cutoff().per_mode_max.end());
    auto x = a.amplitudes();
    auto y = b.amplitudes();
    std::vector<cdouble> amps;
    amps.reserve(x.size() * y.size());
    for (const cdouble &u : x) {
        for (const cdouble &v : y) {
            amps.push_back(u * v);
        }
    }
    return FockState(CutoffSpec(std::move(cut)), std::move(amps));
}

FockState tensor(std::span<const FockState> factors) {
    if (factors.empty()) {
        throw std::invalid_argument("tensor: no factors");
    }
    FockState out = factors.front();
    for (std::size_t i = 1; i < factors.size(); ++i) {
        out = tensor(out, factors[i]);
    }
    return out;
}

FockState embed(const FockState &state, const CutoffSpec &cutoff) {
    if (cutoff.modes() != state.modes()) {
        throw std::invalid_argument("embed: mode count mismatch");
    }
    if (cutoff == state.cutoff()) {
        return state;
    }
    std::vector<cdouble> amps(cutoff.dimension(), 0.0);
    FockState target(cutoff, amps);
    auto src = state.amplitudes();
    for (std::size_t i = 0; i < src.size(); ++i) {
        if (src[i] == cdouble(0.0)) {
            continue;
        }
        PhotonPattern p = state.pattern_at(i);
        for (int k = 0; k < cutoff.modes(); ++k) {
            if (p.counts[k] > cutoff.per_mode_max[k]) {
                throw std::invalid_argument("embed: non-zero amplitude outside the target cutoff");
            }
        }
        amps[target.index_of(p)] = src[i];
    }
    return FockState(cutoff, std::move(amps));
}

FockState permute_modes(const FockState &state, std::span<const int> order) {
    const int m = state.modes();
    if (static_cast<int>(order.size()) != m) {
        throw std::invalid_argument("permute_modes: order has the wrong length");
    }
    std::vector<int> seen(m, 0);
    std::vector<int> cut(m);
    for (int k = 0; k < m; ++k) {
        if (order[k] < 0 || order[k] >= m || seen[order[k]]++) {
            throw std::invalid_argument("permute_modes: order is not a permutation");
        }
        cut[k] = state.cutoff().per_mode_max[order[k]];
    }
    CutoffSpec out_cut(cut);
    std::vector<cdouble> amps(state.size());
    FockState shape(out_cut, amps);
    auto src = state.amplitudes();
    auto out_strides = shape.strides();
    for (std::size_t i = 0; i < src.size(); ++i) {
        PhotonPattern p = state.pattern_at(i);
        std::size_t j = 0;
        for (int k = 0; k < m; ++k) {
            j += out_strides[k] * static_cast<std::size_t>(p.counts[order[k]]);
        }
        amps[j] = src[i];
    }
    return FockState(std::move(out_cut), std::move(amps));
}

double truncation_weight(const FockState &state, std::span<const int> modes, int threshold) {
    if (threshold < 0) {
        throw std::invalid_argument("truncation_weight: negative threshold");
    }
    for (int k : modes) {
        if (k < 0 || k >= state.modes()) {
            throw std::out_of_range("truncation_weight: mode index out of range");
        }
    }
    auto amps = state.amplitudes();
    auto strides = state.strides();
    double acc = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        int total = 0;
        for (int k : modes) {
            total += static_cast<int>((i / strides[k]) % static_cast<std::size_t>(state.cutoff().local_dim(k)));
        }
        if (total <= threshold) {
            acc += std::norm(amps[i]);
        }
    }
    return acc;
}

std::vector<double> mode_distribution(const FockState &state, int mode) {
    if (mode < 0 || mode >= state.modes()) {
        throw std::out_of_range("mode_distribution: mode index out of range");
    }
    const auto d = static_cast<std::size_t>(state.cutoff().local_dim(mode));
    const std::size_t stride = state.strides()[mode];
    std::vector<double> p(d, 0.0);
    auto amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        p[(i / stride) % d] += std::norm(amps[i]);
    }
    return p;
}

std::vector<double> total_photon_distribution(const FockState &state) {
    std::vector<double> p(static_cast<std::size_t>(state.cutoff().total_max()) + 1, 0.0);
    auto amps = state.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        p[static_cast<std::size_t>(state.pattern_at(i).total())] += std::norm(amps[i]);
    }
    return p;
}

double local_cumulative(const FockState &state, int mode, int max_photons) {
    if (max_photons < 0) {
        return 0.0;
    }
    auto p = mode_distribution(state, mode);
    double acc = 0.0;
    for (std::size_t n = 0; n < p.size() && static_cast<int>(n) <= max_photons; ++n) {
        acc += p[n];
    }
    return acc;
}

double local_cumulative(const MixedEnsemble &ensemble, int mode, int max_photons) {
    double acc = 0.0;
    for (const auto &c : ensemble.components()) {
        acc += c.weight * local_cumulative(c.state, mode, max_photons);
    }
    return acc;
}

MixedEnsemble schmidt_ensemble(const FockState &bipartite, double min_weight) {
    if (bipartite.modes() != 2) {
        throw std::invalid_argument("schmidt_ensemble: expected a two-mode state");
    }
    const int da = bipartite.cutoff().local_dim(0);
    const int db = bipartite.cutoff().local_dim(1);
    Eigen::MatrixXcd psi(da, db);
    auto amps = bipartite.amplitudes();
    for (int a = 0; a < da; ++a) {
        for (int b = 0; b < db; ++b) {
            psi(a, b) = amps[static_cast<std::size_t>(a * db + b)];
        }
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(psi, Eigen::ComputeThinU);
    const auto &s = svd.singularValues();
    const double norm = bipartite.norm_sq();
    std::vector<EnsembleComponent> comps;
    double kept = 0.0;
    for (int k = 0; k < s.size(); ++k) {
        double w = s(k) * s(k) / norm;
        if (w < min_weight) {
            continue;
        }
        std::vector<cdouble> v(da);
        for (int a = 0; a < da; ++a) {
            v[a] = svd.matrixU()(a, k);
        }
        comps.push_back({w, FockState(CutoffSpec({da - 1}), std::move(v))});
        kept += w;
    }
    for (auto &c : comps) {
        c.weight /= kept;
    }
    return MixedEnsemble(std::move(comps));
}

}  // namespace cvswap
