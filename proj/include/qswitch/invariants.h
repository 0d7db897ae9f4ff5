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

/**
 * @file
 * Three independent evaluators of Bargmann invariants Tr(rho_1 ... rho_n).
 * They act as mutual oracles for the switch protocols.
 */

#ifndef QSWITCH_INVARIANTS_H
#define QSWITCH_INVARIANTS_H

#include <cstddef>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "qswitch/linalg.h"

namespace qswitch {

using QuantumState = std::variant<PureState, DensityMatrix>;

std::size_t state_dim(const QuantumState &s);
DensityMatrix as_density(const QuantumState &s);
/// The state vector when `s` is pure; a DensityMatrix qualifies when its
/// purity is within `tol` of 1 (the dominant eigenvector is returned).
std::optional<PureState> as_pure(const QuantumState &s, double tol = kDerivedTolerance);

/// Ordered tuple (rho_1, ..., rho_n) on a common local dimension.
class StateTuple {
  public:
    explicit StateTuple(std::vector<QuantumState> states);
    static StateTuple pure(std::vector<PureState> states);
    static StateTuple mixed(std::vector<DensityMatrix> states);

    int size() const { return static_cast<int>(states_.size()); }
    std::size_t local_dim() const { return local_dim_; }
    const QuantumState &operator[](int i) const { return states_[i]; }
    const std::vector<QuantumState> &states() const { return states_; }

    bool is_pure(int i) const { return std::holds_alternative<PureState>(states_[i]); }
    bool all_pure() const;

    /// Copy with element `index` (0-based) repeated right after itself.
    StateTuple with_repeat(int index) const;
    /// Copy with element `index` replaced by `replacement`.
    StateTuple with_replaced(int index, std::vector<QuantumState> replacement) const;
    /// (rho_2, ..., rho_n, rho_1)
    StateTuple rotated() const;
    /// (rho_n, ..., rho_1)
    StateTuple reversed() const;

  private:
    std::vector<QuantumState> states_;
    std::size_t local_dim_;
};

enum class InvariantMethod { kProductTrace, kPureChain, kCycleExpectation, kSwitchProtocol };

std::string_view to_string(InvariantMethod m);

struct InvariantValue {
    /// Applies the modulus bound: warns above 1 + 1e-10, throws
    /// std::logic_error above 1 + 1e-6.
    InvariantValue(Complex value, int order, InvariantMethod method);

    Complex value;
    int order;
    InvariantMethod method;
};

/// Sequential d x d products; O(n d^3), never forms the tensor space.
InvariantValue bargmann_product_trace(const StateTuple &t);
/// <psi_1|psi_2><psi_2|psi_3>...<psi_n|psi_1>. Throws std::invalid_argument
/// if any element is a DensityMatrix.
InvariantValue bargmann_pure_chain(const StateTuple &t);
/// Tr(C_n (rho_1 x ... x rho_n)) evaluated on the d^n space through the basis
/// map of the cycle representation. Throws SizeCapError beyond `cap`.
InvariantValue bargmann_cycle_expectation(const StateTuple &t, std::size_t cap = kDefaultSizeCap);

/// Delta_{n+1}(psi_1, psi_1, psi_2, ..., psi_n) == Delta_n(psi_1, ..., psi_n)
/// within 1e-12, both sides by the pure chain.
bool repetition_reduction_check(const StateTuple &t);

}  // namespace qswitch

#endif  // QSWITCH_INVARIANTS_H
