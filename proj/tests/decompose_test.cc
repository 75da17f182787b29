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

#include <gtest/gtest.h>

#include <random>

#include "oracles.h"

namespace cvswap {
namespace {

Eigen::MatrixXcd haar_unitary(int n, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    Eigen::MatrixXcd z(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            z(i, j) = {g(rng), g(rng)};
        }
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
    Eigen::MatrixXcd q = qr.householderQ();
    const Eigen::MatrixXcd r = qr.matrixQR();
    for (int i = 0; i < n; ++i) {
        q.col(i) *= r(i, i) / std::abs(r(i, i));
    }
    return q;
}

TEST(Decompose, ReconstructsRandomUnitaries) {
    std::mt19937_64 rng(11);
    for (int n = 2; n <= 7; ++n) {
        for (int trial = 0; trial < 5; ++trial) {
            const Eigen::MatrixXcd u = haar_unitary(n, rng);
            const Circuit c = rectangular_decompose(u);
            EXPECT_LT((single_particle_transfer(c, n) - u).cwiseAbs().maxCoeff(), 1e-12) << "n = " << n;
            for (const GateSpec &g : c) {
                if (const auto *bs = std::get_if<Beamsplitter>(&g)) {
                    EXPECT_EQ(std::abs(bs->mode_i - bs->mode_j), 1);
                }
            }
        }
    }
}

TEST(Decompose, MeshDepthIsAtMostN) {
    std::mt19937_64 rng(12);
    const int n = 6;
    const Circuit c = rectangular_decompose(haar_unitary(n, rng));
    int beamsplitters = 0;
    for (const GateSpec &g : c) {
        beamsplitters += std::holds_alternative<Beamsplitter>(g) ? 1 : 0;
    }
    EXPECT_LE(beamsplitters, n * (n - 1) / 2);
}

TEST(Decompose, IdentityNeedsNoGates) {
    EXPECT_TRUE(rectangular_decompose(Eigen::MatrixXcd::Identity(4, 4)).empty());
}

TEST(Decompose, RejectsNonUnitary) {
    EXPECT_THROW(rectangular_decompose(Eigen::MatrixXcd::Ones(2, 2)), std::invalid_argument);
}

TEST(Decompose, MultiPhotonActionFollowsTransfer) {
    // A single photon in mode k ends in sum_l T(l, k) |1_l>.
    std::mt19937_64 rng(13);
    const Eigen::MatrixXcd u = haar_unitary(3, rng);
    const Circuit c = rectangular_decompose(u);
    const CutoffSpec cut = CutoffSpec::uniform(3, 1);
    for (int k = 0; k < 3; ++k) {
        PhotonPattern p{{0, 0, 0}};
        p.counts[k] = 1;
        const FockState out = apply_circuit(basis_state(p, cut), c);
        for (int l = 0; l < 3; ++l) {
            PhotonPattern q{{0, 0, 0}};
            q.counts[l] = 1;
            EXPECT_NEAR(std::abs(out.amplitude(q) - u(l, k)), 0.0, 1e-13);
        }
    }
}

TEST(Decompose, TransferRejectsActiveGates) {
    const Circuit c = {Squeeze{{0.1, 0.0}, 0}};
    EXPECT_THROW(single_particle_transfer(c, 1), std::invalid_argument);
}

}  // namespace
}  // namespace cvswap
