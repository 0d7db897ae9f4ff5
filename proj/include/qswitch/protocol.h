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
 * End-to-end measurement protocols for Bargmann invariants: the odd-order
 * switch protocol, the two even-order workarounds, shot sampling, the cycle
 * test, the Hadamard-test simulation of the switch and the even-order no-go
 * witness.
 */

#ifndef QSWITCH_PROTOCOL_H
#define QSWITCH_PROTOCOL_H

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "qswitch/invariants.h"
#include "qswitch/linalg.h"
#include "qswitch/perm.h"
#include "qswitch/quantum_switch.h"

namespace qswitch {

enum class Family { kMain, kAlt };
enum class EvenStrategy { kNone, kRepeatPure, kConvexDecompose };

std::string_view to_string(Family f);
std::string_view to_string(EvenStrategy s);

struct ProtocolSpec {
    int n = 3;
    std::size_t local_dim = 2;
    Family family = Family::kMain;
    EvenStrategy even_strategy = EvenStrategy::kNone;
    /// 1-based position of the state that is repeated or decomposed.
    int strategy_index = 1;
    /// 0 selects the exact path.
    uint64_t shots = 0;
    uint64_t seed = 0;
    std::size_t cap = kDefaultSizeCap;

    /// Throws ValidationError on inconsistent fields.
    void validate() const;
    /// Order actually run through the switch: n, or n + 1 for even n.
    int effective_order() const { return n % 2 == 1 ? n : n + 1; }
};

/// Picks repeat-pure when the state at `index` has purity >= 1 - 1e-10,
/// otherwise convex-decompose.
EvenStrategy default_even_strategy(const StateTuple &t, int index = 1);

struct OddProtocol {
    Permutation a_perm;
    Permutation b_perm;
    Permutation p_perm;
    UnitaryMatrix a;
    UnitaryMatrix b;
    UnitaryMatrix p;
};

/// Main family: swap layers and the preprocessing permutation. Alt family:
/// the cycle-pair family with P the conjugator taking D(A, B) to C_n.
OddProtocol build_odd_protocol(int n, std::size_t local_dim, Family family, std::size_t cap = kDefaultSizeCap);

/// Exact control statistics of the switch on |+> x P rho P^dagger.
ControlStats odd_protocol_stats(const StateTuple &t, Family family, std::size_t cap = kDefaultSizeCap);

/// Readout (1 - 2 p_-) + i (1 - 2 p_-i).
Complex invariant_from_stats(const ControlStats &s);

InvariantValue odd_invariant_via_switch(const StateTuple &t, const ProtocolSpec &spec);
InvariantValue even_invariant_repeat_pure(const StateTuple &t, const ProtocolSpec &spec);

struct ConvexDecomposition {
    std::vector<double> weights;
    std::vector<PureState> components;

    DensityMatrix reconstruct() const;
};

/// Spectral decomposition with eigenvalues below 1e-12 dropped and the rest
/// renormalized.
ConvexDecomposition eigendecompose_for_protocol(const DensityMatrix &rho);

InvariantValue even_invariant_convex(const StateTuple &t, const ConvexDecomposition &decomp,
                                     const ProtocolSpec &spec);

/// Exact control statistics for any order, routed by `spec`. For the convex
/// route these are the weighted mixtures sum_j alpha_j p_j.
ControlStats protocol_stats(const StateTuple &t, const ProtocolSpec &spec);

struct EstimationResult {
    /// Observed frequencies when sampled, exact probabilities otherwise.
    double p_minus = 0;
    double p_minus_i = 0;
    double re_estimate = 0;
    double im_estimate = 0;
    /// Standard errors of the Re/Im estimates.
    double stderr_re = 0;
    double stderr_im = 0;
    /// Standard errors of the observed frequencies.
    double stderr_p_minus = 0;
    double stderr_p_minus_i = 0;
    uint64_t shots_x = 0;
    uint64_t shots_y = 0;
    bool exact = true;

    Complex value() const { return {re_estimate, im_estimate}; }
    bool operator==(const EstimationResult &other) const = default;
};

EstimationResult exact_estimate(const ControlStats &s);

/// Draws ceil(shots/2) X-basis and floor(shots/2) Y-basis outcomes from the
/// exact probabilities. Deterministic in `seed`; chunks of 65536 shots use
/// sub-seeds derive_seed(seed, 2 * chunk + basis).
EstimationResult sample_stats(const ControlStats &s, uint64_t shots, uint64_t seed);

/// Exact when spec.shots == 0, sampled otherwise.
EstimationResult sample_protocol(const StateTuple &t, const ProtocolSpec &spec);

/// Hadamard test with controlled C_n. Returns p(aux = 1):
/// s = 0 gives (1 - Re Delta) / 2, s = 1 gives (1 + Im Delta) / 2.
double cycle_test(const StateTuple &t, int s, std::size_t cap = kDefaultSizeCap);

/// prod over label pairs (i, j) of <psi_i|psi_j>; `psis` is indexed by label - 1.
Complex pair_product(const PairSet &pairs, const std::vector<PureState> &psis);
/// <psi_sw| T |psi_sw> where psi_sw = psi_{a_1} x ... x psi_{a_n} and T acts
/// on tensor slots.
Complex labelled_expectation(const Permutation &t, const std::vector<int> &labels,
                             const std::vector<PureState> &psis, std::size_t cap = kDefaultSizeCap);

struct SimulationReport {
    double max_deviation = 0;
    int k_a = 0;
    int k_b = 0;
    int inverse_queries_a = 0;
    int inverse_queries_b = 0;
    /// Each inverse costs four forward calls when implemented from black-box access.
    int expanded_k_a() const { return k_a + 4 * inverse_queries_a; }
    int expanded_k_b() const { return k_b + 4 * inverse_queries_b; }
};

/// Prepare BA|psi>, run controlled ABA^dagger B^dagger from |+>, apply H to
/// the control. The report compares with the direct switch output.
std::pair<PureState, SimulationReport> simulate_switch_hadamard(const UnitaryMatrix &a, const UnitaryMatrix &b,
                                                                const PureState &psi);

struct NogoReport {
    int n = 0;
    std::size_t local_dim = 0;
    Parity cycle_parity = Parity::kEven;
    /// Exhaustive search over (P, A, B) in S_n^3 for P^-1 A^-1 B^-1 A B P == C_n.
    bool exhaustive_searched = false;
    uint64_t exhaustive_triples = 0;
    uint64_t exhaustive_solutions = 0;
    int trials = 0;
    int operations = 0;
    /// max |det(P^dagger U_1^dagger .. U_m^dagger U_1 .. U_m P) - 1| over trials.
    double max_det_deviation = 0;
    /// Exact determinant of the C_n representation at this local dimension.
    int cycle_det_sign = 0;
    /// True when the determinant of C_n is +1, i.e. the determinant argument
    /// gives no obstruction at this (n, d).
    bool premise_fails = false;
    /// d = 0 or 1 (mod 4).
    bool d_mod4_flag = false;
};

/// Throws std::invalid_argument for odd n. The exhaustive search runs for n <= 4.
NogoReport nogo_witness(int n, std::size_t local_dim, int trials, uint64_t seed, int operations = 2);

}  // namespace qswitch

#endif  // QSWITCH_PROTOCOL_H
