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

#include "gtest/gtest.h"

#include "qswitch/perm.h"
#include "test_util.h"

using namespace qswitch;
using namespace qswitch::testing;

static UnitaryMatrix X() { return UnitaryMatrix(pauli_x()); }
static UnitaryMatrix Z() { return UnitaryMatrix(pauli_z()); }

TEST(quantum_switch, switch_unitary_trivial_cases) {
    ASSERT_EQ(switch_unitary(UnitaryMatrix::identity(3), UnitaryMatrix::identity(3)).matrix(),
              ComplexMatrix::identity(6));
    // Two functions of the same unitary commute.
    UnitaryMatrix u = haar_random_unitary(1, 3);
    UnitaryMatrix u2 = u * u;
    ASSERT_LE(max_abs_diff(switch_unitary(u, u2).matrix(),
                           tensor(ComplexMatrix::identity(2), matmul(u.matrix(), u2.matrix()))),
              1e-12);
    ASSERT_THROW(switch_unitary(UnitaryMatrix::identity(2), UnitaryMatrix::identity(3)), ValidationError);
}

TEST(quantum_switch, switch_unitary_blocks_and_unitarity) {
    for (std::size_t d : {2u, 5u, 16u}) {
        UnitaryMatrix a = haar_random_unitary(d, d);
        UnitaryMatrix b = haar_random_unitary(d + 100, d);
        const ComplexMatrix s = switch_unitary(a, b).matrix();
        ASSERT_LE(unitarity_defect(s), 1e-10);
        const ComplexMatrix ba = triple_loop_matmul(b.matrix(), a.matrix());
        const ComplexMatrix ab = triple_loop_matmul(a.matrix(), b.matrix());
        for (std::size_t r = 0; r < d; ++r) {
            for (std::size_t c = 0; c < d; ++c) {
                ASSERT_EQ(s(r, c), matmul(b.matrix(), a.matrix())(r, c));
                ASSERT_NEAR(std::abs(s(r, c) - ba(r, c)), 0.0, 1e-12);
                ASSERT_NEAR(std::abs(s(d + r, d + c) - ab(r, c)), 0.0, 1e-12);
                ASSERT_EQ(s(r, d + c), Complex{});
                ASSERT_EQ(s(d + r, c), Complex{});
            }
        }
    }
}

TEST(quantum_switch, commutator_form) {
    UnitaryMatrix a = haar_random_unitary(3, 3);
    CommutatorForm same = commutator_form(a, a);
    ASSERT_LE(max_abs_diff(same.anticommutator, Complex{2} * matmul(a.matrix(), a.matrix())), 1e-12);
    ASSERT_LE(max_abs_diff(same.commutator, ComplexMatrix(3, 3)), 1e-15);

    CommutatorForm xz = commutator_form(X(), Z());
    ASSERT_EQ(xz.anticommutator, ComplexMatrix(2, 2));
    ASSERT_EQ(xz.commutator, Complex{2} * matmul(pauli_x(), pauli_z()));

    UnitaryMatrix b = haar_random_unitary(4, 3);
    CommutatorForm f = commutator_form(a, b);
    ASSERT_LE(max_abs_diff(Complex{0.5} * (f.anticommutator - f.commutator), matmul(b.matrix(), a.matrix())), 1e-12);
}

TEST(quantum_switch, dab) {
    UnitaryMatrix a = haar_random_unitary(5, 4);
    ASSERT_LE(max_abs_diff(dab(a, a * a).matrix(), ComplexMatrix::identity(4)), 1e-12);
    ASSERT_LE(max_abs_diff(dab(X(), Z()).matrix(), Complex{-1} * ComplexMatrix::identity(2)), 1e-15);
    ASSERT_LE(unitarity_defect(dab(a, haar_random_unitary(6, 4)).matrix()), 1e-10);
}

TEST(quantum_switch, dab_main_family_n3_rotates_factors) {
    UnitaryMatrix a = perm_to_unitary(swap_layer_a(3), 2);
    UnitaryMatrix b = perm_to_unitary(swap_layer_b(3), 2);
    UnitaryMatrix d = dab(a, b);
    // A B A B |x1 x2 x3> = |x2 x3 x1>.
    for (int x1 = 0; x1 < 2; ++x1) {
        for (int x2 = 0; x2 < 2; ++x2) {
            for (int x3 = 0; x3 < 2; ++x3) {
                ASSERT_EQ(d.matrix()(x2 * 4 + x3 * 2 + x1, x1 * 4 + x2 * 2 + x3), Complex{1});
            }
        }
    }
}

TEST(quantum_switch, input_validation) {
    UnitaryMatrix u = UnitaryMatrix::identity(2);
    ASSERT_THROW(SwitchInput(u, u, ket0(), haar_random_state(1, 3)), ValidationError);
    ASSERT_THROW(SwitchInput(u, u, haar_random_state(1, 3), ket0()), ValidationError);
}

TEST(quantum_switch, control_zero_runs_a_then_b) {
    UnitaryMatrix a = haar_random_unitary(7, 3);
    UnitaryMatrix b = haar_random_unitary(8, 3);
    DensityMatrix rho = random_density_matrix(9, 3, 2);
    SwitchOutput out = apply_switch(SwitchInput(a, b, ket0().density(), rho));
    ComplexMatrix ba = matmul(b.matrix(), a.matrix());
    ComplexMatrix expected = tensor(ket0().density().matrix(), matmul(matmul(ba, rho.matrix()), dagger(ba)));
    ASSERT_LE(max_abs_diff(out.density().matrix(), expected), 1e-12);
}

TEST(quantum_switch, identity_operations_leave_input) {
    DensityMatrix rho = random_density_matrix(10, 2, 2);
    UnitaryMatrix id = UnitaryMatrix::identity(2);
    SwitchOutput out = apply_switch(SwitchInput(id, id, control_plus().density(), rho));
    ASSERT_LE(max_abs_diff(out.density().matrix(), tensor(control_plus().density().matrix(), rho.matrix())), 1e-15);
}

TEST(quantum_switch, coherent_control_matches_hand_assembled_blocks) {
    for (uint64_t s = 0; s < 10; ++s) {
        const std::size_t d = 2 + s % 3;
        UnitaryMatrix a = haar_random_unitary(s, d);
        UnitaryMatrix b = haar_random_unitary(s + 50, d);
        DensityMatrix rho = random_density_matrix(s + 99, d, d);
        SwitchOutput out = apply_switch(SwitchInput(a, b, control_plus().density(), rho));

        const ComplexMatrix ba = triple_loop_matmul(b.matrix(), a.matrix());
        const ComplexMatrix ab = triple_loop_matmul(a.matrix(), b.matrix());
        const ComplexMatrix *ops[2] = {&ba, &ab};
        ComplexMatrix expected(2 * d, 2 * d);
        for (int j = 0; j < 2; ++j) {
            for (int k = 0; k < 2; ++k) {
                ComplexMatrix block =
                    triple_loop_matmul(triple_loop_matmul(*ops[j], rho.matrix()), dagger(*ops[k]));
                for (std::size_t r = 0; r < d; ++r) {
                    for (std::size_t c = 0; c < d; ++c) {
                        expected(j * d + r, k * d + c) = 0.5 * block(r, c);
                    }
                }
            }
        }
        ASSERT_LE(max_abs_diff(out.density().matrix(), expected), 1e-12);
    }
}

TEST(quantum_switch, pure_fast_path_matches_density_path) {
    UnitaryMatrix a = haar_random_unitary(1, 4);
    UnitaryMatrix b = haar_random_unitary(2, 4);
    PureState psi = haar_random_state(3, 4);
    SwitchOutput pure = apply_switch(SwitchInput(a, b, control_plus(), psi));
    SwitchOutput mixed = apply_switch(SwitchInput(a, b, control_plus().density(), psi.density()));
    ASSERT_TRUE(pure.is_pure());
    ASSERT_FALSE(mixed.is_pure());
    ASSERT_LE(max_abs_diff(pure.density().matrix(), mixed.density().matrix()), 1e-12);
    ControlStats sp = control_stats_born(pure);
    ControlStats sm = control_stats_born(mixed);
    ASSERT_NEAR(sp.p_minus, sm.p_minus, 1e-12);
    ASSERT_NEAR(sp.p_minus_i, sm.p_minus_i, 1e-12);
}

TEST(quantum_switch, incoherent_control_is_mixture_of_orders) {
    for (uint64_t s = 0; s < 10; ++s) {
        UnitaryMatrix a = haar_random_unitary(s, 3);
        UnitaryMatrix b = haar_random_unitary(s + 7, 3);
        DensityMatrix rho = random_density_matrix(s + 13, 3, 3);
        const double p = 0.1 + 0.08 * static_cast<double>(s);
        DensityMatrix sigma(ComplexMatrix::from_rows({{p, 0}, {0, 1 - p}}));
        SwitchOutput out = apply_switch(SwitchInput(a, b, sigma, rho));
        ComplexMatrix ba = matmul(b.matrix(), a.matrix());
        ComplexMatrix ab = matmul(a.matrix(), b.matrix());
        ComplexMatrix mixture =
            Complex{p} * tensor(ket0().density().matrix(), matmul(matmul(ba, rho.matrix()), dagger(ba))) +
            Complex{1 - p} * tensor(ket1().density().matrix(), matmul(matmul(ab, rho.matrix()), dagger(ab)));
        ASSERT_LE(max_abs_diff(out.density().matrix(), mixture), 1e-12);
        // Without coherence both readouts are unbiased coin flips.
        ControlStats st = control_stats_born(out);
        ASSERT_NEAR(st.p_minus, 0.5, 1e-12);
        ASSERT_NEAR(st.p_minus_i, 0.5, 1e-12);
    }
}

TEST(quantum_switch, born_identity_operations) {
    UnitaryMatrix id = UnitaryMatrix::identity(3);
    ControlStats s = control_stats_born(apply_switch(SwitchInput(id, id, control_plus(), haar_random_state(2, 3))));
    ASSERT_NEAR(s.p_minus, 0.0, 1e-12);
    ASSERT_NEAR(s.p_minus_i, 0.5, 1e-12);
}

TEST(quantum_switch, born_anticommuting_paulis) {
    for (uint64_t seed = 0; seed < 5; ++seed) {
        DensityMatrix rho = random_density_matrix(seed, 2, 2);
        ControlStats s = control_stats_born(apply_switch(SwitchInput(X(), Z(), control_plus(), rho)));
        ASSERT_NEAR(s.p_minus, 1.0, 1e-12);
    }
}

TEST(quantum_switch, formula_values) {
    UnitaryMatrix id = UnitaryMatrix::identity(2);
    ControlStats s = control_stats_formula(id, id, QuantumState(ket_plus()));
    ASSERT_NEAR(s.p_minus, 0.0, 1e-15);
    ASSERT_NEAR(s.p_minus_i, 0.5, 1e-15);
    // A = X, B = diag(1, -i) give D = diag(i, -i), so <0|D|0> = i.
    UnitaryMatrix b(ComplexMatrix::from_rows({{1, 0}, {0, -kI}}));
    ASSERT_LE(max_abs_diff(dab(X(), b).matrix(), ComplexMatrix::from_rows({{kI, 0}, {0, -kI}})), 1e-15);
    ControlStats t = control_stats_formula(X(), b, QuantumState(ket0()));
    ASSERT_NEAR(t.p_minus, 0.5, 1e-15);
    ASSERT_NEAR(t.p_minus_i, 0.0, 1e-15);
}

TEST(quantum_switch, born_matches_formula) {
    int checked = 0;
    for (std::size_t d : {2u, 3u, 4u}) {
        for (uint64_t s = 0; s < 200; ++s) {
            UnitaryMatrix a = haar_random_unitary(s * 3 + d, d);
            UnitaryMatrix b = haar_random_unitary(s * 3 + d + 10000, d);
            QuantumState rho = s % 2 == 0 ? QuantumState(haar_random_state(s, d))
                                          : QuantumState(random_density_matrix(s, d, 1 + s % d));
            ControlStats born = control_stats_born(apply_switch(SwitchInput(a, b, control_plus(), rho)));
            ControlStats formula = control_stats_formula(a, b, rho);
            ASSERT_NEAR(born.p_minus, formula.p_minus, 1e-10);
            ASSERT_NEAR(born.p_minus_i, formula.p_minus_i, 1e-10);
            ++checked;
        }
    }
    ASSERT_EQ(checked, 600);
}

TEST(quantum_switch, main_family_n3_reads_invariant) {
    std::vector<PureState> psis = random_pure_tuple(3, 3, 2);
    PureState joint = tensor(tensor(psis[0], psis[1]), psis[2]);
    UnitaryMatrix a = perm_to_unitary(swap_layer_a(3), 2);
    UnitaryMatrix b = perm_to_unitary(swap_layer_b(3), 2);
    ControlStats s = control_stats_formula(a, b, QuantumState(joint));
    Complex delta = chain_by_hand(psis);
    ASSERT_NEAR(s.p_minus, 0.5 * (1 - delta.real()), 1e-12);
    ASSERT_NEAR(s.p_minus_i, 0.5 * (1 - delta.imag()), 1e-12);
}

TEST(quantum_switch, control_stats_range) {
    ASSERT_NO_THROW(ControlStats(-1e-13, 1 + 1e-13));
    ASSERT_THROW(ControlStats(-1e-9, 0.5), std::logic_error);
    ASSERT_THROW(ControlStats(0.5, 1.1), std::logic_error);
}
