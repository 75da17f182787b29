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

#include "cvswap/gates.h"

#include <cmath>
#include <numbers>

namespace cvswap {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

using Triplets = std::vector<Eigen::Triplet<cdouble>>;

SparseMatrix from_triplets(int rows, int cols, const Triplets &t) {
    SparseMatrix m(rows, cols);
    m.setFromTriplets(t.begin(), t.end());
    m.makeCompressed();
    return m;
}

SparseMatrix displacement_matrix(cdouble alpha, int cutoff) {
    const int d = cutoff + 1;
    Triplets t;
    const double mod = std::abs(alpha);
    if (mod == 0.0) {
        for (int n = 0; n < d; ++n) {
            t.emplace_back(n, n, 1.0);
        }
        return from_triplets(d, d, t);
    }
    const double x = mod * mod;
    const double log_mod = std::log(mod);
    const double arg = std::arg(alpha);
    // <m|D|n> = sqrt(n!/m!) alpha^{m-n} e^{-x/2} L_n^{(m-n)}(x)        for m >= n
    //         = sqrt(m!/n!) (-conj alpha)^{n-m} e^{-x/2} L_m^{(n-m)}(x) for m <  n
    for (int k = 0; k < d; ++k) {
        std::vector<double> lag = detail::laguerre_column(cutoff - k, k, x);
        for (int low = 0; low + k < d; ++low) {
            const int high = low + k;
            const double log_mag = -0.5 * x + 0.5 * (std::lgamma(low + 1.0) - std::lgamma(high + 1.0)) + k * log_mod;
            const double mag = std::exp(log_mag) * lag[low];
            if (mag == 0.0) {
                continue;
            }
            t.emplace_back(high, low, std::polar(mag, k * arg));
            if (k > 0) {
                t.emplace_back(low, high, std::polar(mag, k * (std::numbers::pi - arg)));
            }
        }
    }
    return from_triplets(d, d, t);
}

SparseMatrix squeeze_matrix(cdouble z, int cutoff) {
    const int d = cutoff + 1;
    const double r = std::abs(z);
    if (r == 0.0) {
        Triplets t;
        for (int n = 0; n < d; ++n) {
            t.emplace_back(n, n, 1.0);
        }
        return from_triplets(d, d, t);
    }
    const cdouble phase = z / r;
    const double tanh_r = std::tanh(r);
    const double sech_r = 1.0 / std::cosh(r);
    // Generating-function recursion: only lower indices are referenced, so the
    // truncated block is exact.
    const cdouble r00 = -phase * tanh_r;
    const cdouble r11 = std::conj(phase) * tanh_r;
    std::vector<double> sq(d);
    for (int i = 0; i < d; ++i) {
        sq[i] = std::sqrt(static_cast<double>(i));
    }
    std::vector<cdouble> s(static_cast<std::size_t>(d) * d, 0.0);
    auto at = [&](int m, int n) -> cdouble & { return s[static_cast<std::size_t>(m) * d + n]; };
    at(0, 0) = std::sqrt(sech_r);
    for (int m = 2; m < d; m += 2) {
        at(m, 0) = sq[m - 1] / sq[m] * r00 * at(m - 2, 0);
    }
    for (int m = 0; m < d; ++m) {
        for (int n = 1; n < d; ++n) {
            if ((m + n) % 2 != 0) {
                continue;
            }
            cdouble v = 0.0;
            if (n >= 2) {
                v += sq[n - 1] / sq[n] * r11 * at(m, n - 2);
            }
            if (m >= 1) {
                v += sq[m] / sq[n] * sech_r * at(m - 1, n - 1);
            }
            at(m, n) = v;
        }
    }
    Triplets t;
    for (int m = 0; m < d; ++m) {
        for (int n = 0; n < d; ++n) {
            if (at(m, n) != cdouble(0.0)) {
                t.emplace_back(m, n, at(m, n));
            }
        }
    }
    return from_triplets(d, d, t);
}

SparseMatrix phase_matrix(double phi, int cutoff) {
    const int d = cutoff + 1;
    Triplets t;
    for (int n = 0; n < d; ++n) {
        t.emplace_back(n, n, std::polar(1.0, -phi * n));
    }
    return from_triplets(d, d, t);
}

// Columns U|n1,n2> are built by applying the transformed creation operators
// one photon at a time; each column lives in the total-photon block n1+n2.
SparseMatrix beamsplitter_matrix(double theta, double phi, int cut_i, int cut_j) {
    const int di = cut_i + 1;
    const int dj = cut_j + 1;
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const cdouble e = std::polar(1.0, phi);
    // a_i^dag -> c a_i^dag + coef_i_j a_j^dag ; a_j^dag -> coef_j_i a_i^dag + c a_j^dag
    const cdouble coef_i_j = -std::conj(e) * s;
    const cdouble coef_j_i = e * s;

    Triplets t;
    // Column for (n1, n2) indexed by p = photons in mode i, q = n1 + n2 - p.
    auto raise = [](const std::vector<cdouble> &col, cdouble to_i, cdouble to_j, int count) {
        std::vector<cdouble> out(col.size() + 1, 0.0);
        const int total = static_cast<int>(col.size()) - 1;
        const double norm = 1.0 / std::sqrt(static_cast<double>(count));
        for (int p = 0; p <= total; ++p) {
            const cdouble v = col[p];
            if (v == cdouble(0.0)) {
                continue;
            }
            const int q = total - p;
            out[p + 1] += to_i * std::sqrt(p + 1.0) * norm * v;
            out[p] += to_j * std::sqrt(q + 1.0) * norm * v;
        }
        return out;
    };
    auto emit = [&](const std::vector<cdouble> &col, int n1, int n2) {
        const int total = n1 + n2;
        for (int p = 0; p <= total; ++p) {
            const int q = total - p;
            if (p > cut_i || q > cut_j || col[p] == cdouble(0.0)) {
                continue;
            }
            t.emplace_back(p * dj + q, n1 * dj + n2, col[p]);
        }
    };
    std::vector<cdouble> base{1.0};
    for (int n2 = 0; n2 < dj; ++n2) {
        if (n2 > 0) {
            base = raise(base, coef_j_i, c, n2);
        }
        std::vector<cdouble> col = base;
        emit(col, 0, n2);
        for (int n1 = 1; n1 < di; ++n1) {
            col = raise(col, c, coef_i_j, n1);
            emit(col, n1, n2);
        }
    }
    return from_triplets(di * dj, di * dj, t);
}

// Gaussian generating-function recursion restricted to m1 - m2 = n1 - n2.
SparseMatrix two_mode_squeeze_matrix(double r, int cut_i, int cut_j) {
    const int di = cut_i + 1;
    const int dj = cut_j + 1;
    const double t = std::tanh(r);
    const double sech = 1.0 / std::cosh(r);
    // g[(m1 * di + n1) * dj + n2] holds <m1, m2 | U | n1, n2>, m2 = m1 - n1 + n2.
    std::vector<double> g(static_cast<std::size_t>(di) * di * dj, 0.0);
    auto idx = [&](int m1, int n1, int n2) { return (static_cast<std::size_t>(m1) * di + n1) * dj + n2; };
    auto get = [&](int m1, int m2, int n1, int n2) -> double {
        if (m1 < 0 || m2 < 0 || n1 < 0 || n2 < 0 || m2 > cut_j || n2 > cut_j) {
            return 0.0;
        }
        if (m1 - m2 != n1 - n2) {
            return 0.0;
        }
        return g[idx(m1, n1, n2)];
    };
    for (int m1 = 0; m1 < di; ++m1) {
        for (int n1 = 0; n1 < di; ++n1) {
            for (int n2 = 0; n2 < dj; ++n2) {
                const int m2 = m1 - n1 + n2;
                if (m2 < 0 || m2 > cut_j) {
                    continue;
                }
                double v = 0.0;
                if (m1 > 0) {
                    v = (-t * std::sqrt(static_cast<double>(m2)) * get(m1 - 1, m2 - 1, n1, n2) +
                         sech * std::sqrt(static_cast<double>(n1)) * get(m1 - 1, m2, n1 - 1, n2)) /
                        std::sqrt(static_cast<double>(m1));
                } else if (m2 > 0) {
                    v = sech * std::sqrt(static_cast<double>(n2) / m2) * get(0, m2 - 1, n1, n2 - 1);
                } else if (n1 > 0) {
                    v = t * std::sqrt(static_cast<double>(n2) / n1) * get(0, 0, n1 - 1, n2 - 1);
                } else {
                    v = (n2 == 0) ? sech : 0.0;
                }
                g[idx(m1, n1, n2)] = v;
            }
        }
    }
    Triplets trip;
    for (int m1 = 0; m1 < di; ++m1) {
        for (int n1 = 0; n1 < di; ++n1) {
            for (int n2 = 0; n2 < dj; ++n2) {
                const int m2 = m1 - n1 + n2;
                if (m2 < 0 || m2 > cut_j) {
                    continue;
                }
                const double v = g[idx(m1, n1, n2)];
                if (v != 0.0) {
                    trip.emplace_back(m1 * dj + m2, n1 * dj + n2, v);
                }
            }
        }
    }
    return from_triplets(di * dj, di * dj, trip);
}

SparseMatrix swap_matrix(int cut_i, int cut_j) {
    const int di = cut_i + 1;
    const int dj = cut_j + 1;
    Triplets t;
    for (int a = 0; a < di; ++a) {
        for (int b = 0; b < dj; ++b) {
            // |a>_i |b>_j -> |b>_i |a>_j
            if (b <= cut_i && a <= cut_j) {
                t.emplace_back(b * dj + a, a * dj + b, 1.0);
            }
        }
    }
    return from_triplets(di * dj, di * dj, t);
}

void check_mode(int mode, int modes) {
    if (mode < 0 || mode >= modes) {
        throw std::invalid_argument("gate mode index out of range");
    }
}

void check_pair(int i, int j, int modes) {
    check_mode(i, modes);
    check_mode(j, modes);
    if (i == j) {
        throw std::invalid_argument("two-mode gate needs distinct modes");
    }
}

void check_phase(double phi) {
    if (!(phi >= 0.0 && phi < kTwoPi)) {
        throw std::invalid_argument("gate phase must lie in [0, 2 pi)");
    }
}

}  // namespace

namespace detail {

std::vector<double> laguerre_column(int max_degree, int k, double x) {
    std::vector<double> l(static_cast<std::size_t>(std::max(max_degree, 0)) + 1, 0.0);
    if (max_degree < 0) {
        return {};
    }
    l[0] = 1.0;
    if (max_degree >= 1) {
        l[1] = 1.0 + k - x;
    }
    for (int j = 1; j < max_degree; ++j) {
        l[j + 1] = ((2.0 * j + 1.0 + k - x) * l[j] - (j + k) * l[j - 1]) / (j + 1.0);
    }
    return l;
}

}  // namespace detail

double wrap_phase(double phi) {
    double w = std::fmod(phi, kTwoPi);
    if (w < 0.0) {
        w += kTwoPi;
    }
    if (w >= kTwoPi) {
        w = 0.0;
    }
    return w;
}

std::vector<int> gate_modes(const GateSpec &gate) {
    return std::visit(Overloaded{
                          [](const Displacement &g) { return std::vector<int>{g.mode}; },
                          [](const Squeeze &g) { return std::vector<int>{g.mode}; },
                          [](const PhaseRotation &g) { return std::vector<int>{g.mode}; },
                          [](const Beamsplitter &g) { return std::vector<int>{g.mode_i, g.mode_j}; },
                          [](const TwoModeSqueeze &g) { return std::vector<int>{g.mode_i, g.mode_j}; },
                          [](const ModeSwap &g) { return std::vector<int>{g.mode_i, g.mode_j}; },
                      },
                      gate);
}

std::string gate_name(const GateSpec &gate) {
    return std::visit(Overloaded{
                          [](const Displacement &) { return std::string("displacement"); },
                          [](const Squeeze &) { return std::string("squeeze"); },
                          [](const PhaseRotation &) { return std::string("phase"); },
                          [](const Beamsplitter &) { return std::string("beamsplitter"); },
                          [](const TwoModeSqueeze &) { return std::string("two_mode_squeeze"); },
                          [](const ModeSwap &) { return std::string("swap"); },
                      },
                      gate);
}

bool is_number_conserving(const GateSpec &gate) {
    return std::holds_alternative<Beamsplitter>(gate) || std::holds_alternative<PhaseRotation>(gate) ||
           std::holds_alternative<ModeSwap>(gate);
}

void validate_gate(const GateSpec &gate, int modes) {
    std::visit(Overloaded{
                   [&](const Displacement &g) {
                       check_mode(g.mode, modes);
                       if (!std::isfinite(g.alpha.real()) || !std::isfinite(g.alpha.imag())) {
                           throw std::invalid_argument("displacement amplitude must be finite");
                       }
                   },
                   [&](const Squeeze &g) {
                       check_mode(g.mode, modes);
                       if (!std::isfinite(g.z.real()) || !std::isfinite(g.z.imag())) {
                           throw std::invalid_argument("squeezing parameter must be finite");
                       }
                   },
                   [&](const PhaseRotation &g) {
                       check_mode(g.mode, modes);
                       check_phase(g.phi);
                   },
                   [&](const Beamsplitter &g) {
                       check_pair(g.mode_i, g.mode_j, modes);
                       if (!(g.theta >= 0.0 && g.theta <= std::numbers::pi)) {
                           throw std::invalid_argument("beamsplitter angle must lie in [0, pi]");
                       }
                       check_phase(g.phi);
                   },
                   [&](const TwoModeSqueeze &g) {
                       check_pair(g.mode_i, g.mode_j, modes);
                       if (!std::isfinite(g.r)) {
                           throw std::invalid_argument("two-mode squeezing must be finite");
                       }
                   },
                   [&](const ModeSwap &g) { check_pair(g.mode_i, g.mode_j, modes); },
               },
               gate);
}

GateSpec inverse(const GateSpec &gate) {
    return std::visit(Overloaded{
                          [](const Displacement &g) -> GateSpec { return Displacement{-g.alpha, g.mode}; },
                          [](const Squeeze &g) -> GateSpec { return Squeeze{-g.z, g.mode}; },
                          [](const PhaseRotation &g) -> GateSpec { return PhaseRotation{wrap_phase(-g.phi), g.mode}; },
                          [](const Beamsplitter &g) -> GateSpec {
                              return Beamsplitter{g.theta, wrap_phase(g.phi + std::numbers::pi), g.mode_i, g.mode_j};
                          },
                          [](const TwoModeSqueeze &g) -> GateSpec { return TwoModeSqueeze{-g.r, g.mode_i, g.mode_j}; },
                          [](const ModeSwap &g) -> GateSpec { return g; },
                      },
                      gate);
}

Circuit inverse(std::span<const GateSpec> circuit) {
    Circuit out;
    out.reserve(circuit.size());
    for (auto it = circuit.rbegin(); it != circuit.rend(); ++it) {
        out.push_back(inverse(*it));
    }
    return out;
}

GateSpec shifted(const GateSpec &gate, int offset) {
    GateSpec g = gate;
    std::visit(Overloaded{
                   [&](Displacement &x) { x.mode += offset; },
                   [&](Squeeze &x) { x.mode += offset; },
                   [&](PhaseRotation &x) { x.mode += offset; },
                   [&](Beamsplitter &x) {
                       x.mode_i += offset;
                       x.mode_j += offset;
                   },
                   [&](TwoModeSqueeze &x) {
                       x.mode_i += offset;
                       x.mode_j += offset;
                   },
                   [&](ModeSwap &x) {
                       x.mode_i += offset;
                       x.mode_j += offset;
                   },
               },
               g);
    return g;
}

SparseMatrix gate_matrix(const GateSpec &gate, const CutoffSpec &cutoff) {
    validate_gate(gate, cutoff.modes());
    const auto &n = cutoff.per_mode_max;
    return std::visit(Overloaded{
                          [&](const Displacement &g) { return displacement_matrix(g.alpha, n[g.mode]); },
                          [&](const Squeeze &g) { return squeeze_matrix(g.z, n[g.mode]); },
                          [&](const PhaseRotation &g) { return phase_matrix(g.phi, n[g.mode]); },
                          [&](const Beamsplitter &g) {
                              return beamsplitter_matrix(g.theta, g.phi, n[g.mode_i], n[g.mode_j]);
                          },
                          [&](const TwoModeSqueeze &g) {
                              return two_mode_squeeze_matrix(g.r, n[g.mode_i], n[g.mode_j]);
                          },
                          [&](const ModeSwap &g) { return swap_matrix(n[g.mode_i], n[g.mode_j]); },
                      },
                      gate);
}

FockState apply_matrix(const FockState &state, std::span<const int> modes, const SparseMatrix &matrix) {
    if (modes.empty() || modes.size() > 2) {
        throw std::invalid_argument("apply_matrix: one or two modes expected");
    }
    const auto strides = state.strides();
    std::vector<int> dims;
    for (int k : modes) {
        if (k < 0 || k >= state.modes()) {
            throw std::invalid_argument("apply_matrix: mode index out of range");
        }
        dims.push_back(state.cutoff().local_dim(k));
    }
    if (modes.size() == 2 && modes[0] == modes[1]) {
        throw std::invalid_argument("apply_matrix: modes must be distinct");
    }
    int local_dim = 1;
    for (int d : dims) {
        local_dim *= d;
    }
    if (matrix.rows() != local_dim || matrix.cols() != local_dim) {
        throw std::invalid_argument("apply_matrix: matrix shape does not match the modes");
    }

    std::vector<std::size_t> local(static_cast<std::size_t>(local_dim));
    if (modes.size() == 1) {
        for (int a = 0; a < dims[0]; ++a) {
            local[a] = static_cast<std::size_t>(a) * strides[modes[0]];
        }
    } else {
        for (int a = 0; a < dims[0]; ++a) {
            for (int b = 0; b < dims[1]; ++b) {
                local[static_cast<std::size_t>(a) * dims[1] + b] =
                    static_cast<std::size_t>(a) * strides[modes[0]] + static_cast<std::size_t>(b) * strides[modes[1]];
            }
        }
    }

    auto src = state.amplitudes();
    std::vector<cdouble> out(src.size(), 0.0);
    for (std::size_t base = 0; base < src.size(); ++base) {
        bool is_base = true;
        for (std::size_t r = 0; r < modes.size(); ++r) {
            if ((base / strides[modes[r]]) % static_cast<std::size_t>(dims[r]) != 0) {
                is_base = false;
                break;
            }
        }
        if (!is_base) {
            continue;
        }
        for (int col = 0; col < local_dim; ++col) {
            const cdouble x = src[base + local[col]];
            if (x == cdouble(0.0)) {
                continue;
            }
            for (SparseMatrix::InnerIterator it(matrix, col); it; ++it) {
                out[base + local[it.row()]] += it.value() * x;
            }
        }
    }
    return FockState(state.cutoff(), std::move(out));
}

FockState apply_gate(const FockState &state, const GateSpec &gate) {
    SparseMatrix m = gate_matrix(gate, state.cutoff());
    std::vector<int> modes = gate_modes(gate);
    return apply_matrix(state, modes, m);
}

FockState apply_circuit(const FockState &state, std::span<const GateSpec> circuit) {
    if (circuit.empty()) {
        return state;
    }
    return CompiledCircuit(circuit, state.cutoff()).apply(state);
}

CompiledCircuit::CompiledCircuit(std::span<const GateSpec> circuit, const CutoffSpec &cutoff) : cutoff_(cutoff) {
    steps_.reserve(circuit.size());
    for (const GateSpec &g : circuit) {
        steps_.push_back({gate_modes(g), gate_matrix(g, cutoff)});
    }
}

FockState CompiledCircuit::apply(const FockState &state) const {
    if (state.cutoff() != cutoff_) {
        throw std::invalid_argument("CompiledCircuit: state shape does not match the compiled cutoff");
    }
    FockState out = state;
    for (const Step &s : steps_) {
        out = apply_matrix(out, s.modes, s.matrix);
    }
    return out;
}

}  // namespace cvswap
