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

#include "cvswap/decompose.h"

#include <cmath>

namespace cvswap {

namespace {

// Transfer block of Beamsplitter(theta, phi) on rows/cols (i, j).
Eigen::Matrix2cd beamsplitter_block(double theta, double phi) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    Eigen::Matrix2cd b;
    b << c, std::polar(s, phi), -std::polar(s, -phi), c;
    return b;
}

constexpr double kTrivial = 1e-15;

}  // namespace

Eigen::MatrixXcd single_particle_transfer(std::span<const GateSpec> circuit, int modes) {
    Eigen::MatrixXcd t = Eigen::MatrixXcd::Identity(modes, modes);
    for (const GateSpec &g : circuit) {
        validate_gate(g, modes);
        Eigen::MatrixXcd step = Eigen::MatrixXcd::Identity(modes, modes);
        if (const auto *bs = std::get_if<Beamsplitter>(&g)) {
            const Eigen::Matrix2cd b = beamsplitter_block(bs->theta, bs->phi);
            step(bs->mode_i, bs->mode_i) = b(0, 0);
            step(bs->mode_i, bs->mode_j) = b(0, 1);
            step(bs->mode_j, bs->mode_i) = b(1, 0);
            step(bs->mode_j, bs->mode_j) = b(1, 1);
        } else if (const auto *ph = std::get_if<PhaseRotation>(&g)) {
            step(ph->mode, ph->mode) = std::polar(1.0, -ph->phi);
        } else if (const auto *sw = std::get_if<ModeSwap>(&g)) {
            step(sw->mode_i, sw->mode_i) = 0.0;
            step(sw->mode_j, sw->mode_j) = 0.0;
            step(sw->mode_i, sw->mode_j) = 1.0;
            step(sw->mode_j, sw->mode_i) = 1.0;
        } else {
            throw std::invalid_argument("single_particle_transfer: " + gate_name(g) + " is not a passive gate");
        }
        t = step * t;
    }
    return t;
}

Circuit rectangular_decompose(const Eigen::MatrixXcd &u, double tol) {
    const int n = static_cast<int>(u.rows());
    if (n < 1 || u.cols() != n) {
        throw std::invalid_argument("rectangular_decompose: square matrix required");
    }
    if ((u.adjoint() * u - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() > tol) {
        throw std::invalid_argument("rectangular_decompose: matrix is not unitary");
    }
    Eigen::MatrixXcd v = u;
    std::vector<Beamsplitter> right;  // v <- v * block, nulls one entry of a row
    std::vector<Beamsplitter> left;   // v <- block * v, nulls one entry of a column

    for (int k = 0, i = n - 2; i >= 0; ++k, --i) {
        if (k % 2 == 0) {
            for (int j = n - 2 - i; j >= 0; --j) {
                const int row = i + j + 1;
                const cdouble a = v(row, j);
                const cdouble b = v(row, j + 1);
                const double theta = std::atan2(std::abs(a), std::abs(b));
                const double phi = wrap_phase(std::arg(b) - std::arg(a));
                const Eigen::Matrix2cd blk = beamsplitter_block(theta, phi);
                v(Eigen::all, {j, j + 1}) = (v(Eigen::all, {j, j + 1}) * blk).eval();
                v(row, j) = 0.0;
                right.push_back({theta, phi, j, j + 1});
            }
        } else {
            for (int j = 0; j <= n - 2 - i; ++j) {
                const int row = i + j + 1;
                const cdouble a = v(row - 1, j);
                const cdouble b = v(row, j);
                const double theta = std::atan2(std::abs(b), std::abs(a));
                const double phi = wrap_phase(std::arg(a) - std::arg(b));
                const Eigen::Matrix2cd blk = beamsplitter_block(theta, phi);
                v({row - 1, row}, Eigen::all) = (blk * v({row - 1, row}, Eigen::all)).eval();
                v(row, j) = 0.0;
                left.push_back({theta, phi, row - 1, row});
            }
        }
    }

    // v = L_b ... L_1 u R_1 ... R_a is diagonal, so
    // u = L_1^-1 ... L_b^-1 v R_a^-1 ... R_1^-1, and the gate order (first
    // applied first) is R_1^-1, ..., R_a^-1, v, L_b^-1, ..., L_1^-1.
    Circuit out;
    auto push_bs = [&](const Beamsplitter &bs) {
        if (bs.theta > kTrivial) {
            out.push_back(std::get<Beamsplitter>(inverse(GateSpec{bs})));
        }
    };
    for (const Beamsplitter &bs : right) {
        push_bs(bs);
    }
    for (int m = 0; m < n; ++m) {
        const double phi = wrap_phase(-std::arg(v(m, m)));
        if (std::abs(phi) > kTrivial && std::abs(phi - 2.0 * 3.14159265358979323846) > kTrivial) {
            out.push_back(PhaseRotation{phi, m});
        }
    }
    for (auto it = left.rbegin(); it != left.rend(); ++it) {
        push_bs(*it);
    }
    return out;
}

}  // namespace cvswap
