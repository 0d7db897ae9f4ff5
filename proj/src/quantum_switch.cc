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

#include "qswitch/quantum_switch.h"

#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace qswitch {

namespace {

void require_same_dim(const UnitaryMatrix &a, const UnitaryMatrix &b) {
    if (a.dim() != b.dim()) {
        throw ValidationError(fmt::format("switch operations differ in dimension: {} vs {}", a.dim(), b.dim()));
    }
}

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
const Complex kI{0.0, 1.0};

}  // namespace

UnitaryMatrix switch_unitary(const UnitaryMatrix &a, const UnitaryMatrix &b) {
    require_same_dim(a, b);
    const std::size_t d = a.dim();
    const ComplexMatrix ba = matmul(b.matrix(), a.matrix());
    const ComplexMatrix ab = matmul(a.matrix(), b.matrix());
    ComplexMatrix s(2 * d, 2 * d);
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            s(r, c) = ba(r, c);
            s(d + r, d + c) = ab(r, c);
        }
    }
    return UnitaryMatrix::unchecked(std::move(s));
}

CommutatorForm commutator_form(const UnitaryMatrix &a, const UnitaryMatrix &b) {
    require_same_dim(a, b);
    const ComplexMatrix ab = matmul(a.matrix(), b.matrix());
    const ComplexMatrix ba = matmul(b.matrix(), a.matrix());
    return {ab + ba, ab - ba};
}

UnitaryMatrix dab(const UnitaryMatrix &a, const UnitaryMatrix &b) {
    require_same_dim(a, b);
    return a.adjoint() * b.adjoint() * a * b;
}

PureState control_plus() { return PureState({kInvSqrt2, kInvSqrt2}); }
PureState control_minus() { return PureState({kInvSqrt2, -kInvSqrt2}); }
PureState control_plus_i() { return PureState({kInvSqrt2, kI * kInvSqrt2}); }
PureState control_minus_i() { return PureState({kInvSqrt2, -kI * kInvSqrt2}); }

SwitchInput::SwitchInput(UnitaryMatrix a_, UnitaryMatrix b_, QuantumState control_, QuantumState system_)
    : a(std::move(a_)), b(std::move(b_)), control(std::move(control_)), system(std::move(system_)) {
    require_same_dim(a, b);
    if (state_dim(control) != 2) {
        throw ValidationError(fmt::format("control must be a qubit, got dimension {}", state_dim(control)));
    }
    if (state_dim(system) != a.dim()) {
        throw ValidationError(
            fmt::format("system dimension {} does not match operation dimension {}", state_dim(system), a.dim()));
    }
}

SwitchOutput apply_switch(const SwitchInput &in) {
    const std::size_t d = in.a.dim();
    // Branch operators: control |0> runs A then B, control |1> runs B then A.
    const ComplexMatrix ops[2] = {matmul(in.b.matrix(), in.a.matrix()), matmul(in.a.matrix(), in.b.matrix())};

    const auto *c_pure = std::get_if<PureState>(&in.control);
    const auto *s_pure = std::get_if<PureState>(&in.system);
    if (c_pure != nullptr && s_pure != nullptr) {
        std::vector<Complex> v(2 * d);
        for (int k = 0; k < 2; ++k) {
            const std::vector<Complex> branch = matvec(ops[k], s_pure->amplitudes());
            for (std::size_t s = 0; s < d; ++s) {
                v[k * d + s] = (*c_pure)[k] * branch[s];
            }
        }
        return SwitchOutput(PureState(std::move(v)));
    }

    const ComplexMatrix sigma = as_density(in.control).matrix();
    const ComplexMatrix rho = as_density(in.system).matrix();
    ComplexMatrix joint(2 * d, 2 * d);
    for (int j = 0; j < 2; ++j) {
        const ComplexMatrix left = matmul(ops[j], rho);
        for (int k = 0; k < 2; ++k) {
            if (sigma(j, k) == Complex{}) {
                continue;
            }
            const ComplexMatrix block = matmul(left, dagger(ops[k]));
            for (std::size_t r = 0; r < d; ++r) {
                for (std::size_t c = 0; c < d; ++c) {
                    joint(j * d + r, k * d + c) = sigma(j, k) * block(r, c);
                }
            }
        }
    }
    return SwitchOutput(DensityMatrix::unchecked(std::move(joint)));
}

double control_probability(const SwitchOutput &out, const PureState &c) {
    if (c.dim() != 2) {
        throw std::invalid_argument("control outcome must be a qubit vector");
    }
    const std::size_t d = out.system_dim();
    const Complex c0 = std::conj(c[0]);
    const Complex c1 = std::conj(c[1]);
    double p = 0;
    if (const auto *v = std::get_if<PureState>(&out.joint())) {
        for (std::size_t s = 0; s < d; ++s) {
            p += std::norm(c0 * (*v)[s] + c1 * (*v)[d + s]);
        }
        return p;
    }
    const ComplexMatrix &j = std::get<DensityMatrix>(out.joint()).matrix();
    const Complex cc[2] = {c0, c1};
    for (std::size_t s = 0; s < d; ++s) {
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
                p += std::real(cc[a] * std::conj(cc[b]) * j(a * d + s, b * d + s));
            }
        }
    }
    return p;
}

ControlStats::ControlStats(double pm, double pmi) : p_minus(pm), p_minus_i(pmi) {
    for (double p : {pm, pmi}) {
        if (!(p >= -1e-12 && p <= 1.0 + 1e-12)) {
            throw std::logic_error(fmt::format("control probability {:.15g} outside [0, 1]", p));
        }
    }
}

ControlStats control_stats_born(const SwitchOutput &out) {
    return {control_probability(out, control_minus()), control_probability(out, control_minus_i())};
}

ControlStats control_stats_formula(const UnitaryMatrix &a, const UnitaryMatrix &b, const QuantumState &rho) {
    const ComplexMatrix d = dab(a, b).matrix();
    Complex t;
    if (const auto *psi = std::get_if<PureState>(&rho)) {
        t = inner(psi->amplitudes(), matvec(d, psi->amplitudes()));
    } else {
        t = trace(matmul(std::get<DensityMatrix>(rho).matrix(), d));
    }
    return {0.5 * (1.0 - t.real()), 0.5 * (1.0 - t.imag())};
}

}  // namespace qswitch
