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

#include "qswitch/invariants.h"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "qswitch/perm.h"

namespace qswitch {

std::size_t state_dim(const QuantumState &s) {
    return std::visit([](const auto &x) { return x.dim(); }, s);
}

DensityMatrix as_density(const QuantumState &s) {
    if (const auto *psi = std::get_if<PureState>(&s)) {
        return psi->density();
    }
    return std::get<DensityMatrix>(s);
}

std::optional<PureState> as_pure(const QuantumState &s, double tol) {
    if (const auto *psi = std::get_if<PureState>(&s)) {
        return *psi;
    }
    const auto &rho = std::get<DensityMatrix>(s);
    if (rho.purity() < 1.0 - tol) {
        return std::nullopt;
    }
    const HermitianEigen eig = eigh(rho.matrix());
    const std::size_t top = eig.values.size() - 1;
    std::vector<Complex> v(rho.dim());
    for (std::size_t r = 0; r < rho.dim(); ++r) {
        v[r] = eig.vectors(r, top);
    }
    return PureState::normalized(std::move(v));
}

// ---------------------------------------------------------------------------
// StateTuple

StateTuple::StateTuple(std::vector<QuantumState> states) : states_(std::move(states)) {
    if (states_.empty()) {
        throw std::invalid_argument("state tuple must contain at least one state");
    }
    local_dim_ = state_dim(states_.front());
    for (std::size_t i = 1; i < states_.size(); ++i) {
        if (state_dim(states_[i]) != local_dim_) {
            throw ValidationError(fmt::format("state {} has dimension {}, expected {}", i + 1,
                                              state_dim(states_[i]), local_dim_));
        }
    }
}

StateTuple StateTuple::pure(std::vector<PureState> states) {
    return StateTuple(std::vector<QuantumState>(states.begin(), states.end()));
}

StateTuple StateTuple::mixed(std::vector<DensityMatrix> states) {
    return StateTuple(std::vector<QuantumState>(states.begin(), states.end()));
}

bool StateTuple::all_pure() const {
    for (int i = 0; i < size(); ++i) {
        if (!is_pure(i)) {
            return false;
        }
    }
    return true;
}

StateTuple StateTuple::with_repeat(int index) const {
    std::vector<QuantumState> out = states_;
    out.insert(out.begin() + index + 1, states_.at(index));
    return StateTuple(std::move(out));
}

StateTuple StateTuple::with_replaced(int index, std::vector<QuantumState> replacement) const {
    std::vector<QuantumState> out(states_.begin(), states_.begin() + index);
    out.insert(out.end(), replacement.begin(), replacement.end());
    out.insert(out.end(), states_.begin() + index + 1, states_.end());
    return StateTuple(std::move(out));
}

StateTuple StateTuple::rotated() const {
    std::vector<QuantumState> out(states_.begin() + 1, states_.end());
    out.push_back(states_.front());
    return StateTuple(std::move(out));
}

StateTuple StateTuple::reversed() const { return StateTuple(std::vector<QuantumState>(states_.rbegin(), states_.rend())); }

// ---------------------------------------------------------------------------
// Evaluators

std::string_view to_string(InvariantMethod m) {
    switch (m) {
        case InvariantMethod::kProductTrace:
            return "product-trace";
        case InvariantMethod::kPureChain:
            return "pure-chain";
        case InvariantMethod::kCycleExpectation:
            return "cycle-expectation";
        case InvariantMethod::kSwitchProtocol:
            return "switch-protocol";
    }
    return "unknown";
}

InvariantValue::InvariantValue(Complex v, int n, InvariantMethod m) : value(v), order(n), method(m) {
    const double mod = std::abs(value);
    if (mod > 1.0 + 1e-6) {
        throw std::logic_error(fmt::format("{} invariant has modulus {:.9f} > 1; an input escaped validation",
                                           to_string(method), mod));
    }
    if (mod > 1.0 + kDerivedTolerance) {
        spdlog::warn("{} invariant of order {} has modulus {:.12f} above 1", to_string(method), order, mod);
    }
}

InvariantValue bargmann_product_trace(const StateTuple &t) {
    ComplexMatrix acc = as_density(t[0]).matrix();
    for (int i = 1; i < t.size(); ++i) {
        acc = matmul(acc, as_density(t[i]).matrix());
    }
    return {trace(acc), t.size(), InvariantMethod::kProductTrace};
}

InvariantValue bargmann_pure_chain(const StateTuple &t) {
    Complex acc{1.0};
    for (int i = 0; i < t.size(); ++i) {
        const auto *a = std::get_if<PureState>(&t[i]);
        const auto *b = std::get_if<PureState>(&t[(i + 1) % t.size()]);
        if (a == nullptr || b == nullptr) {
            throw std::invalid_argument(
                fmt::format("pure-chain needs pure states; state {} is mixed, use product-trace", a ? i + 2 : i + 1));
        }
        acc *= inner(a->amplitudes(), b->amplitudes());
    }
    return {acc, t.size(), InvariantMethod::kPureChain};
}

InvariantValue bargmann_cycle_expectation(const StateTuple &t, std::size_t cap) {
    const int n = t.size();
    const std::size_t d = t.local_dim();
    checked_power(d, n, cap, "use the product-trace evaluator");
    const std::vector<std::size_t> map = factor_index_map(cycle_shift(n), d, cap);

    std::vector<ComplexMatrix> factors;
    factors.reserve(n);
    for (const auto &s : t.states()) {
        factors.push_back(as_density(s).matrix());
    }
    // Tr(U rho) = sum_y rho[y][map(y)] with rho[y][z] = prod_i rho_i[y_i][z_i].
    std::vector<std::size_t> weight(n);
    std::size_t w = 1;
    for (int i = n - 1; i >= 0; --i) {
        weight[i] = w;
        w *= d;
    }
    Complex acc{};
    for (std::size_t y = 0; y < map.size(); ++y) {
        const std::size_t z = map[y];
        Complex term{1.0};
        for (int i = 0; i < n && term != Complex{}; ++i) {
            term *= factors[i]((y / weight[i]) % d, (z / weight[i]) % d);
        }
        acc += term;
    }
    return {acc, n, InvariantMethod::kCycleExpectation};
}

bool repetition_reduction_check(const StateTuple &t) {
    const Complex lhs = bargmann_pure_chain(t.with_repeat(0)).value;
    const Complex rhs = bargmann_pure_chain(t).value;
    return std::abs(lhs - rhs) <= kInvariantTolerance;
}

}  // namespace qswitch
