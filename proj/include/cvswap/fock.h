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

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace cvswap {

using cdouble = std::complex<double>;

/// Raised when a computation cannot meet a numerical contract (for example a
/// state preparation that leaks too much probability above the Fock cutoff).
class NumericalContractError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Maximum photon number per mode. Mode k has local dimension per_mode_max[k] + 1.
struct CutoffSpec {
    std::vector<int> per_mode_max;

    CutoffSpec() = default;
    explicit CutoffSpec(std::vector<int> max_per_mode);
    static CutoffSpec uniform(int modes, int max_photons);

    int modes() const { return static_cast<int>(per_mode_max.size()); }
    int local_dim(int mode) const { return per_mode_max.at(mode) + 1; }
    std::size_t dimension() const;
    int total_max() const;

    bool operator==(const CutoffSpec &other) const = default;
};

/// One photon count per mode.
struct PhotonPattern {
    std::vector<int> counts;

    int modes() const { return static_cast<int>(counts.size()); }
    int total() const;
    bool operator==(const PhotonPattern &other) const = default;
};

/// Dense amplitude tensor over a truncated multimode Fock basis, row-major in
/// the photon pattern (the last mode varies fastest). Immutable once built.
class FockState {
  public:
    FockState(CutoffSpec cutoff, std::vector<cdouble> amplitudes);

    int modes() const { return cutoff_.modes(); }
    const CutoffSpec &cutoff() const { return cutoff_; }
    std::span<const cdouble> amplitudes() const { return amplitudes_; }
    std::size_t size() const { return amplitudes_.size(); }
    double norm_sq() const { return norm_sq_; }
    bool is_normalized(double tol = 1e-9) const;

    cdouble amplitude(const PhotonPattern &pattern) const;
    std::size_t index_of(const PhotonPattern &pattern) const;
    PhotonPattern pattern_at(std::size_t index) const;
    /// Row-major strides, one per mode.
    std::vector<std::size_t> strides() const;

    FockState normalized() const;
    FockState scaled(cdouble factor) const;

  private:
    CutoffSpec cutoff_;
    std::vector<cdouble> amplitudes_;
    double norm_sq_;
};

/// Convex mixture of pure states sharing mode count and cutoff.
struct EnsembleComponent {
    double weight;
    FockState state;
};

class MixedEnsemble {
  public:
    explicit MixedEnsemble(std::vector<EnsembleComponent> components);
    /// A pure state viewed as a one-component ensemble.
    MixedEnsemble(const FockState &pure);  // NOLINT(google-explicit-constructor)

    std::span<const EnsembleComponent> components() const { return components_; }
    std::size_t size() const { return components_.size(); }
    int modes() const { return components_.front().state.modes(); }
    const CutoffSpec &cutoff() const { return components_.front().state.cutoff(); }
    std::vector<double> weights() const;

  private:
    std::vector<EnsembleComponent> components_;
};

FockState basis_state(const PhotonPattern &pattern, const CutoffSpec &cutoff);
FockState vacuum(const CutoffSpec &cutoff);

/// <a|b>, antilinear in `a`.
cdouble inner_product(const FockState &a, const FockState &b);
/// |<a|b>|^2.
double overlap(const FockState &a, const FockState &b);

FockState tensor(const FockState &a, const FockState &b);
FockState tensor(std::span<const FockState> factors);

/// Zero-pads (or, if every dropped amplitude is zero, shrinks) to a new cutoff.
/// Shrinking past non-zero amplitudes throws std::invalid_argument.
FockState embed(const FockState &state, const CutoffSpec &cutoff);

/// Reorders modes: mode k of the result is mode `order[k]` of the input.
FockState permute_modes(const FockState &state, std::span<const int> order);

/// Sum of |amplitude|^2 over patterns whose photon count summed over `modes` is
/// at most `threshold`. For a normalized state this is the probability of the
/// event; for the truncation of a normalized state it is the exact weight.
double truncation_weight(const FockState &state, std::span<const int> modes, int threshold);

/// Marginal photon-count CDF of one mode at `max_photons`.
double local_cumulative(const FockState &state, int mode, int max_photons);
double local_cumulative(const MixedEnsemble &ensemble, int mode, int max_photons);

/// Photon-number distribution of one mode (length per_mode_max + 1).
std::vector<double> mode_distribution(const FockState &state, int mode);
/// Distribution of the total photon number (length total_max + 1).
std::vector<double> total_photon_distribution(const FockState &state);

/// Reduced state of mode 0 of a two-mode pure state, as an ensemble of its
/// Schmidt vectors. Components with weight below `min_weight` are dropped.
MixedEnsemble schmidt_ensemble(const FockState &bipartite, double min_weight = 1e-14);

}  // namespace cvswap
