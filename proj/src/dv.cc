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

#include "cvswap/dv.h"

#include <cmath>
#include <numbers>
#include <numeric>

#include "cvswap/gates.h"
#include "cvswap/shot_model.h"

namespace cvswap {

namespace {

void check_dimension(int d) {
    if (d < 2) {
        throw std::invalid_argument("qudit dimension must be at least 2");
    }
}

Eigen::VectorXcd bell_vector(int z, int x, int d) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(d * d);
    const double norm = 1.0 / std::sqrt(static_cast<double>(d));
    for (int i = 0; i < d; ++i) {
        const int a = (i + x) % d;
        v(a * d + i) = std::polar(norm, 2.0 * std::numbers::pi * ((z * i) % d) / d);
    }
    return v;
}

PatternFactor dv_factor(std::span<const DVComponent> a, std::span<const DVComponent> b, SwapBasis basis) {
    if (a.empty() || b.empty()) {
        throw std::invalid_argument("dv_swap: empty ensemble");
    }
    const std::vector<int> dims = a.front().state.dims();
    for (auto span : {a, b}) {
        double total = 0.0;
        for (const DVComponent &c : span) {
            if (c.state.dims() != dims) {
                throw std::invalid_argument("dv_swap: qudit dimensions differ");
            }
            if (!(c.weight > 0.0 && c.weight <= 1.0)) {
                throw std::invalid_argument("dv_swap: weights must lie in (0, 1]");
            }
            total += c.weight;
        }
        if (std::abs(total - 1.0) > 1e-12) {
            throw std::invalid_argument("dv_swap: weights must sum to 1");
        }
    }
    const int pairs = static_cast<int>(dims.size());
    std::vector<Eigen::MatrixXcd> adjoint(pairs);
    std::vector<std::vector<int>> eigen(pairs);
    for (int k = 0; k < pairs; ++k) {
        check_dimension(dims[k]);
        const Eigen::MatrixXcd m = basis == SwapBasis::V ? v_unitary(dims[k]) : w_unitary(dims[k]);
        eigen[k] = swap_eigenvalues(m, dims[k], 1e-10);
        adjoint[k] = m.adjoint();
    }
    std::vector<std::vector<double>> weights(2);
    for (const DVComponent &c : a) {
        weights[0].push_back(c.weight);
    }
    for (const DVComponent &c : b) {
        weights[1].push_back(c.weight);
    }
    auto build = [=](std::span<const std::size_t> pick) {
        FockState joint = tensor(a[pick[0]].state.as_fock(), b[pick[1]].state.as_fock());
        // Interleave to a1 b1 a2 b2 ...
        std::vector<int> order;
        for (int k = 0; k < pairs; ++k) {
            order.push_back(k);
            order.push_back(pairs + k);
        }
        joint = permute_modes(joint, order);
        for (int k = 0; k < pairs; ++k) {
            const int modes[] = {2 * k, 2 * k + 1};
            joint = apply_matrix(joint, modes, adjoint[k].sparseView());
        }
        return OutcomeTable(joint, [&](const PhotonPattern &p) {
            int sign = 1;
            for (int k = 0; k < pairs; ++k) {
                sign *= eigen[k][p.counts[2 * k] * dims[k] + p.counts[2 * k + 1]];
            }
            return ShotValue{static_cast<double>(sign), false};
        });
    };
    return PatternFactor(std::move(weights), build);
}

}  // namespace

DVState::DVState(std::vector<int> dims, std::vector<cdouble> amplitudes)
    : dims_(std::move(dims)), amplitudes_(std::move(amplitudes)) {
    if (dims_.empty()) {
        throw std::invalid_argument("DVState: at least one qudit is required");
    }
    std::size_t size = 1;
    for (int d : dims_) {
        check_dimension(d);
        size *= static_cast<std::size_t>(d);
    }
    if (amplitudes_.size() != size) {
        throw std::invalid_argument("DVState: amplitude count does not match dimensions");
    }
    double n = 0.0;
    for (const cdouble &v : amplitudes_) {
        n += std::norm(v);
    }
    if (std::abs(n - 1.0) > 1e-9) {
        throw std::invalid_argument("DVState: state is not normalized");
    }
}

FockState DVState::as_fock() const {
    std::vector<int> cut;
    for (int d : dims_) {
        cut.push_back(d - 1);
    }
    return FockState(CutoffSpec(cut), amplitudes_);
}

DVState qudit_bell_state(int z, int x, int d) {
    check_dimension(d);
    if (z < 0 || z >= d || x < 0 || x >= d) {
        throw std::out_of_range("qudit_bell_state: labels must lie in Z_d");
    }
    const Eigen::VectorXcd v = bell_vector(z, x, d);
    return DVState({d, d}, std::vector<cdouble>(v.data(), v.data() + v.size()));
}

Eigen::MatrixXcd swap_permutation(int d) {
    check_dimension(d);
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(d * d, d * d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            p(j * d + i, i * d + j) = 1.0;
        }
    }
    return p;
}

Eigen::MatrixXcd v_unitary(int d) {
    check_dimension(d);
    Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(d * d, d * d);
    const double h = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            const int col = i * d + j;
            if (i == j) {
                v(col, col) = 1.0;
            } else {
                v(i * d + j, col) = h;
                v(j * d + i, col) = i < j ? h : -h;
            }
        }
    }
    return v;
}

Eigen::MatrixXcd w_unitary(int d) {
    check_dimension(d);
    Eigen::MatrixXcd w(d * d, d * d);
    int col = 0;
    const double h = 1.0 / std::sqrt(2.0);
    auto omega = [&](int z, int x, double sign) {
        const cdouble phase = std::polar(1.0, -2.0 * std::numbers::pi * ((x * z) % d) / d);
        return (h * (bell_vector(z, x, d) + sign * phase * bell_vector(z, (d - x) % d, d))).eval();
    };
    const int half = d / 2;
    const int last_x = d % 2 == 0 ? half - 1 : (d - 1) / 2;
    for (int z = 0; z < d; ++z) {
        w.col(col++) = bell_vector(z, 0, d);
    }
    if (d % 2 == 0) {
        for (int z = 0; z <= (d - 2) / 2; ++z) {
            w.col(col++) = bell_vector(2 * z, half, d);
        }
    }
    for (int z = 0; z < d; ++z) {
        for (int x = 1; x <= last_x; ++x) {
            w.col(col++) = omega(z, x, +1.0);
        }
    }
    for (int z = 0; z < d; ++z) {
        for (int x = 1; x <= last_x; ++x) {
            w.col(col++) = omega(z, x, -1.0);
        }
    }
    if (d % 2 == 0) {
        for (int z = 0; z < half; ++z) {
            w.col(col++) = bell_vector(2 * z + 1, half, d);
        }
    }
    return w;
}

std::vector<int> swap_eigenvalues(const Eigen::MatrixXcd &basis, int d, double tol) {
    const Eigen::MatrixXcd p = swap_permutation(d);
    if (basis.rows() != d * d || basis.cols() != d * d) {
        throw std::invalid_argument("swap_eigenvalues: basis has the wrong shape");
    }
    std::vector<int> out;
    for (int c = 0; c < basis.cols(); ++c) {
        const Eigen::VectorXcd v = basis.col(c);
        const Eigen::VectorXcd pv = p * v;
        if ((pv - v).cwiseAbs().maxCoeff() <= tol) {
            out.push_back(1);
        } else if ((pv + v).cwiseAbs().maxCoeff() <= tol) {
            out.push_back(-1);
        } else {
            throw std::invalid_argument("swap_eigenvalues: column is not a SWAP eigenvector");
        }
    }
    return out;
}

EstimatorResult dv_swap_estimate(std::span<const DVComponent> a, std::span<const DVComponent> b, SwapBasis basis,
                                 std::int64_t shots, std::uint64_t seed) {
    std::vector<PatternFactor> f;
    f.push_back(dv_factor(a, b, basis));
    return ShotModel(std::move(f)).run(shots, seed);
}

double dv_swap_exact(std::span<const DVComponent> a, std::span<const DVComponent> b, SwapBasis basis) {
    return dv_factor(a, b, basis).exact().real();
}

EstimatorResult dv_swap_estimate(const DVState &a, const DVState &b, SwapBasis basis, std::int64_t shots,
                                 std::uint64_t seed) {
    const DVComponent ca{1.0, a};
    const DVComponent cb{1.0, b};
    return dv_swap_estimate(std::span(&ca, 1), std::span(&cb, 1), basis, shots, seed);
}

double dv_swap_exact(const DVState &a, const DVState &b, SwapBasis basis) {
    const DVComponent ca{1.0, a};
    const DVComponent cb{1.0, b};
    return dv_swap_exact(std::span(&ca, 1), std::span(&cb, 1), basis);
}

std::vector<BellOutcome> dv_swap_outcomes(const DVState &a, const DVState &b, SwapBasis basis, std::int64_t shots,
                                          std::uint64_t seed) {
    const DVComponent ca{1.0, a};
    const DVComponent cb{1.0, b};
    std::vector<PatternFactor> f;
    f.push_back(dv_factor(std::span(&ca, 1), std::span(&cb, 1), basis));
    const std::vector<ShotOutcome> raw = ShotModel(std::move(f)).dump(shots, seed);
    std::vector<BellOutcome> out;
    out.reserve(raw.size());
    for (const ShotOutcome &s : raw) {
        BellOutcome o;
        for (std::size_t k = 0; 2 * k + 1 < s.pattern.counts.size(); ++k) {
            o.labels.emplace_back(s.pattern.counts[2 * k], s.pattern.counts[2 * k + 1]);
        }
        out.push_back(std::move(o));
    }
    return out;
}

}  // namespace cvswap
