// Copyright 2026 The qswitch Authors
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

#ifndef QSWITCH_TEST_UTIL_H
#define QSWITCH_TEST_UTIL_H

#include <cmath>
#include <complex>
#include <vector>

#include "qswitch/linalg.h"

namespace qswitch::testing {

inline const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
inline const Complex kI{0.0, 1.0};

inline PureState ket0() { return PureState::basis(2, 0); }
inline PureState ket1() { return PureState::basis(2, 1); }
inline PureState ket_plus() { return PureState({kInvSqrt2, kInvSqrt2}); }
inline PureState ket_plus_i() { return PureState({kInvSqrt2, kI * kInvSqrt2}); }

inline ComplexMatrix pauli_x() { return ComplexMatrix::from_rows({{0, 1}, {1, 0}}); }
inline ComplexMatrix pauli_y() { return ComplexMatrix::from_rows({{0, -kI}, {kI, 0}}); }
inline ComplexMatrix pauli_z() { return ComplexMatrix::from_rows({{1, 0}, {0, -1}}); }

/// Reference product with the naive triple loop.
inline ComplexMatrix triple_loop_matmul(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            Complex acc{};
            for (std::size_t k = 0; k < a.cols(); ++k) {
                acc += a(i, k) * b(k, j);
            }
            out(i, j) = acc;
        }
    }
    return out;
}

/// Reference Bargmann invariant: <psi_1|psi_2>...<psi_n|psi_1> with explicit loops.
inline Complex chain_by_hand(const std::vector<PureState> &psis) {
    Complex acc{1.0};
    for (std::size_t k = 0; k < psis.size(); ++k) {
        const PureState &a = psis[k];
        const PureState &b = psis[(k + 1) % psis.size()];
        Complex ip{};
        for (std::size_t i = 0; i < a.dim(); ++i) {
            ip += std::conj(a[i]) * b[i];
        }
        acc *= ip;
    }
    return acc;
}

inline std::vector<PureState> random_pure_tuple(uint64_t seed, int n, std::size_t d) {
    std::vector<PureState> out;
    for (int i = 0; i < n; ++i) {
        out.push_back(haar_random_state(seed * 1000003ULL + static_cast<uint64_t>(i), d));
    }
    return out;
}

inline std::vector<DensityMatrix> random_mixed_tuple(uint64_t seed, int n, std::size_t d) {
    std::vector<DensityMatrix> out;
    for (int i = 0; i < n; ++i) {
        out.push_back(random_density_matrix(seed * 1000003ULL + static_cast<uint64_t>(i), d, d));
    }
    return out;
}

}  // namespace qswitch::testing

#endif  // QSWITCH_TEST_UTIL_H
