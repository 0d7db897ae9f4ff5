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
 * The unitary quantum switch S_{A,B} = |0><0| x BA + |1><1| x AB acting on a
 * control qubit (most significant factor) and a d-dimensional system.
 *
 * Control readout bases: X = {|+>, |->}, Y = {|+i>, |-i>} with
 * |+-i> = (|0> +- i|1>)/sqrt2.
 */

#ifndef QSWITCH_QUANTUM_SWITCH_H
#define QSWITCH_QUANTUM_SWITCH_H

#include <utility>
#include <variant>

#include "qswitch/invariants.h"
#include "qswitch/linalg.h"

namespace qswitch {

UnitaryMatrix switch_unitary(const UnitaryMatrix &a, const UnitaryMatrix &b);

struct CommutatorForm {
    ComplexMatrix anticommutator;  // AB + BA
    ComplexMatrix commutator;      // AB - BA
};
CommutatorForm commutator_form(const UnitaryMatrix &a, const UnitaryMatrix &b);

/// D(A, B) = A^dagger B^dagger A B.
UnitaryMatrix dab(const UnitaryMatrix &a, const UnitaryMatrix &b);

PureState control_plus();
PureState control_minus();
PureState control_plus_i();
PureState control_minus_i();

struct SwitchInput {
    SwitchInput(UnitaryMatrix a, UnitaryMatrix b, QuantumState control, QuantumState system);

    UnitaryMatrix a;
    UnitaryMatrix b;
    QuantumState control;
    QuantumState system;
};

/// Joint control x system state. Stays a vector when both inputs were pure.
class SwitchOutput {
  public:
    explicit SwitchOutput(QuantumState joint) : joint_(std::move(joint)) {}

    std::size_t system_dim() const { return state_dim(joint_) / 2; }
    bool is_pure() const { return std::holds_alternative<PureState>(joint_); }
    const QuantumState &joint() const { return joint_; }
    DensityMatrix density() const { return as_density(joint_); }

  private:
    QuantumState joint_;
};

SwitchOutput apply_switch(const SwitchInput &input);

/// Probability of the control outcome `c` (a qubit vector) on the joint state.
double control_probability(const SwitchOutput &out, const PureState &c);

struct ControlStats {
    /// Throws std::logic_error outside [-1e-12, 1 + 1e-12]; values are not clamped.
    ControlStats(double p_minus, double p_minus_i);

    double p_minus;
    double p_minus_i;
};

/// Direct projection of the control onto |-> and |-i>.
ControlStats control_stats_born(const SwitchOutput &out);
/// p_- = (1 - Re Tr(rho D)) / 2, p_-i = (1 - Im Tr(rho D)) / 2, control |+>.
ControlStats control_stats_formula(const UnitaryMatrix &a, const UnitaryMatrix &b, const QuantumState &rho);

}  // namespace qswitch

#endif  // QSWITCH_QUANTUM_SWITCH_H
