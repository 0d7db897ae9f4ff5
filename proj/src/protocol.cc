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

#include "qswitch/protocol.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "qswitch/rng.h"

namespace qswitch {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
constexpr uint64_t kShotChunk = 65536;

void require_odd(int n) {
    if (n < 3 || n % 2 == 0) {
        throw ValidationError(fmt::format(
            "the switch protocol needs an odd order >= 3, got {}; even orders go through the repeat or convex strategies",
            n));
    }
}

PureState tensor_all(const StateTuple &t) {
    PureState out = std::get<PureState>(t[0]);
    for (int i = 1; i < t.size(); ++i) {
        out = tensor(out, std::get<PureState>(t[i]));
    }
    return out;
}

DensityMatrix tensor_all_density(const StateTuple &t) {
    DensityMatrix out = as_density(t[0]);
    for (int i = 1; i < t.size(); ++i) {
        out = tensor(out, as_density(t[i]));
    }
    return out;
}

PureState require_pure_at(const StateTuple &t, int index) {
    std::optional<PureState> psi = as_pure(t[index - 1]);
    if (!psi) {
        throw ValidationError(fmt::format(
            "state {} is mixed; repeat-pure needs a pure state there, use the convex strategy instead", index));
    }
    return *psi;
}

void require_index(const StateTuple &t, int index) {
    if (index < 1 || index > t.size()) {
        throw ValidationError(fmt::format("strategy index {} outside 1..{}", index, t.size()));
    }
}

}  // namespace

std::string_view to_string(Family f) { return f == Family::kMain ? "main" : "alt"; }

std::string_view to_string(EvenStrategy s) {
    switch (s) {
        case EvenStrategy::kNone:
            return "none";
        case EvenStrategy::kRepeatPure:
            return "repeat";
        case EvenStrategy::kConvexDecompose:
            return "convex";
    }
    return "unknown";
}

void ProtocolSpec::validate() const {
    if (n < 1) {
        throw ValidationError(fmt::format("order must be >= 1, got {}", n));
    }
    if (local_dim < 1) {
        throw ValidationError("local dimension must be >= 1");
    }
    if (n % 2 == 1 && even_strategy != EvenStrategy::kNone) {
        throw ValidationError(fmt::format("order {} is odd; an even-order strategy does not apply", n));
    }
    if (n % 2 == 1 && n < 3) {
        throw ValidationError("order 1 is trivially 1; the switch protocol starts at order 3");
    }
    if (strategy_index < 1 || strategy_index > n) {
        throw ValidationError(fmt::format("strategy index {} outside 1..{}", strategy_index, n));
    }
    if (shots == 1) {
        throw ValidationError("sampling needs at least 2 shots (one per measurement basis)");
    }
}

EvenStrategy default_even_strategy(const StateTuple &t, int index) {
    require_index(t, index);
    return as_pure(t[index - 1]) ? EvenStrategy::kRepeatPure : EvenStrategy::kConvexDecompose;
}

// ---------------------------------------------------------------------------
// Odd orders

OddProtocol build_odd_protocol(int n, std::size_t local_dim, Family family, std::size_t cap) {
    require_odd(n);
    checked_power(local_dim, n, cap, "the product-trace evaluator has no size cap");
    Permutation a = swap_layer_a(n);
    Permutation b = swap_layer_b(n);
    Permutation p = preprocess_perm(n);
    if (family == Family::kAlt) {
        std::tie(a, b) = alt_family(n);
        p = conjugator_to_cycle_shift(commutator_dab(a, b));
    }
    UnitaryMatrix ua = perm_to_unitary(a, local_dim, cap);
    UnitaryMatrix ub = perm_to_unitary(b, local_dim, cap);
    UnitaryMatrix up = perm_to_unitary(p, local_dim, cap);
    return {a, b, p, std::move(ua), std::move(ub), std::move(up)};
}

ControlStats odd_protocol_stats(const StateTuple &t, Family family, std::size_t cap) {
    const OddProtocol proto = build_odd_protocol(t.size(), t.local_dim(), family, cap);
    QuantumState system = t.all_pure() ? QuantumState(apply(proto.p, tensor_all(t)))
                                       : QuantumState(conjugate(proto.p, tensor_all_density(t)));
    const SwitchOutput out = apply_switch(SwitchInput(proto.a, proto.b, control_plus(), std::move(system)));
    return control_stats_born(out);
}

Complex invariant_from_stats(const ControlStats &s) { return {1.0 - 2.0 * s.p_minus, 1.0 - 2.0 * s.p_minus_i}; }

InvariantValue odd_invariant_via_switch(const StateTuple &t, const ProtocolSpec &spec) {
    spec.validate();
    require_odd(t.size());
    return {invariant_from_stats(odd_protocol_stats(t, spec.family, spec.cap)), t.size(),
            InvariantMethod::kSwitchProtocol};
}

// ---------------------------------------------------------------------------
// Even orders

InvariantValue even_invariant_repeat_pure(const StateTuple &t, const ProtocolSpec &spec) {
    spec.validate();
    if (t.size() % 2 == 1) {
        throw ValidationError(fmt::format("order {} is odd; use the direct protocol", t.size()));
    }
    require_index(t, spec.strategy_index);
    const PureState psi = require_pure_at(t, spec.strategy_index);
    const StateTuple extended = t.with_replaced(spec.strategy_index - 1, {psi, psi});
    return {invariant_from_stats(odd_protocol_stats(extended, spec.family, spec.cap)), t.size(),
            InvariantMethod::kSwitchProtocol};
}

DensityMatrix ConvexDecomposition::reconstruct() const {
    if (components.empty() || components.size() != weights.size()) {
        throw ValidationError("convex decomposition needs matching, non-empty weights and components");
    }
    const std::size_t d = components.front().dim();
    ComplexMatrix m(d, d);
    for (std::size_t j = 0; j < components.size(); ++j) {
        m += Complex{weights[j]} * outer(components[j].amplitudes());
    }
    return DensityMatrix::unchecked(std::move(m));
}

ConvexDecomposition eigendecompose_for_protocol(const DensityMatrix &rho) {
    const HermitianEigen eig = eigh(rho.matrix());
    ConvexDecomposition out;
    double kept = 0;
    for (std::size_t k = eig.values.size(); k-- > 0;) {
        if (eig.values[k] < 1e-12) {
            continue;
        }
        std::vector<Complex> v(rho.dim());
        for (std::size_t r = 0; r < rho.dim(); ++r) {
            v[r] = eig.vectors(r, k);
        }
        out.weights.push_back(eig.values[k]);
        out.components.push_back(PureState::normalized(std::move(v)));
        kept += eig.values[k];
    }
    for (double &w : out.weights) {
        w /= kept;
    }
    spdlog::debug("eigendecomposition kept {} components, renormalization residual {:.3e}", out.weights.size(),
                  std::abs(1.0 - kept));
    return out;
}

namespace {

void check_decomposition(const StateTuple &t, const ConvexDecomposition &decomp, int index) {
    const double total = std::accumulate(decomp.weights.begin(), decomp.weights.end(), 0.0);
    if (std::abs(total - 1.0) > 1e-12 ||
        std::any_of(decomp.weights.begin(), decomp.weights.end(), [](double w) { return w <= 0; })) {
        throw ValidationError(fmt::format("convex weights must be positive and sum to 1 (sum = {:.15g})", total));
    }
    const double residual = max_abs_diff(decomp.reconstruct().matrix(), as_density(t[index - 1]).matrix());
    if (residual > kDerivedTolerance) {
        throw ValidationError(
            fmt::format("decomposition does not reconstruct state {}: residual {:.3e}", index, residual));
    }
}

ControlStats convex_stats(const StateTuple &t, const ConvexDecomposition &decomp, const ProtocolSpec &spec) {
    check_decomposition(t, decomp, spec.strategy_index);
    double pm = 0;
    double pmi = 0;
    for (std::size_t j = 0; j < decomp.weights.size(); ++j) {
        const PureState &psi = decomp.components[j];
        const ControlStats s =
            odd_protocol_stats(t.with_replaced(spec.strategy_index - 1, {psi, psi}), spec.family, spec.cap);
        pm += decomp.weights[j] * s.p_minus;
        pmi += decomp.weights[j] * s.p_minus_i;
    }
    return {pm, pmi};
}

}  // namespace

InvariantValue even_invariant_convex(const StateTuple &t, const ConvexDecomposition &decomp,
                                     const ProtocolSpec &spec) {
    spec.validate();
    if (t.size() % 2 == 1) {
        throw ValidationError(fmt::format("order {} is odd; use the direct protocol", t.size()));
    }
    require_index(t, spec.strategy_index);
    return {invariant_from_stats(convex_stats(t, decomp, spec)), t.size(), InvariantMethod::kSwitchProtocol};
}

ControlStats protocol_stats(const StateTuple &t, const ProtocolSpec &spec) {
    spec.validate();
    if (t.size() != spec.n) {
        throw ValidationError(fmt::format("protocol order {} but {} states given", spec.n, t.size()));
    }
    if (t.size() % 2 == 1) {
        return odd_protocol_stats(t, spec.family, spec.cap);
    }
    EvenStrategy strategy = spec.even_strategy;
    if (strategy == EvenStrategy::kNone) {
        strategy = default_even_strategy(t, spec.strategy_index);
    }
    if (strategy == EvenStrategy::kRepeatPure) {
        const PureState psi = require_pure_at(t, spec.strategy_index);
        return odd_protocol_stats(t.with_replaced(spec.strategy_index - 1, {psi, psi}), spec.family, spec.cap);
    }
    return convex_stats(t, eigendecompose_for_protocol(as_density(t[spec.strategy_index - 1])), spec);
}

// ---------------------------------------------------------------------------
// Estimation

EstimationResult exact_estimate(const ControlStats &s) {
    EstimationResult r;
    r.p_minus = s.p_minus;
    r.p_minus_i = s.p_minus_i;
    r.re_estimate = 1.0 - 2.0 * s.p_minus;
    r.im_estimate = 1.0 - 2.0 * s.p_minus_i;
    r.exact = true;
    return r;
}

namespace {

uint64_t count_minus_outcomes(double p, uint64_t shots, uint64_t seed, uint64_t basis) {
    const double clamped = std::clamp(p, 0.0, 1.0);
    if (clamped != p) {
        spdlog::info("probability {:.3e} clamped to {} before sampling", p, clamped);
    }
    uint64_t hits = 0;
    for (uint64_t chunk = 0; chunk * kShotChunk < shots; ++chunk) {
        Xoshiro256 rng(derive_seed(seed, 2 * chunk + basis));
        const uint64_t todo = std::min(kShotChunk, shots - chunk * kShotChunk);
        for (uint64_t k = 0; k < todo; ++k) {
            hits += rng.uniform01() < clamped;
        }
    }
    return hits;
}

}  // namespace

EstimationResult sample_stats(const ControlStats &s, uint64_t shots, uint64_t seed) {
    if (shots < 2) {
        throw ValidationError("sampling needs at least 2 shots (one per measurement basis)");
    }
    EstimationResult r;
    r.exact = false;
    r.shots_x = (shots + 1) / 2;
    r.shots_y = shots / 2;
    const double nx = static_cast<double>(r.shots_x);
    const double ny = static_cast<double>(r.shots_y);
    r.p_minus = static_cast<double>(count_minus_outcomes(s.p_minus, r.shots_x, seed, 0)) / nx;
    r.p_minus_i = static_cast<double>(count_minus_outcomes(s.p_minus_i, r.shots_y, seed, 1)) / ny;
    r.stderr_p_minus = std::sqrt(r.p_minus * (1.0 - r.p_minus) / nx);
    r.stderr_p_minus_i = std::sqrt(r.p_minus_i * (1.0 - r.p_minus_i) / ny);
    r.re_estimate = 1.0 - 2.0 * r.p_minus;
    r.im_estimate = 1.0 - 2.0 * r.p_minus_i;
    r.stderr_re = 2.0 * r.stderr_p_minus;
    r.stderr_im = 2.0 * r.stderr_p_minus_i;
    return r;
}

EstimationResult sample_protocol(const StateTuple &t, const ProtocolSpec &spec) {
    const ControlStats exact = protocol_stats(t, spec);
    if (spec.shots == 0) {
        return exact_estimate(exact);
    }
    return sample_stats(exact, spec.shots, spec.seed);
}

// ---------------------------------------------------------------------------
// Cycle test

namespace {

double cycle_test_pure(const std::vector<PureState> &psis, int s, std::size_t cap) {
    const int n = static_cast<int>(psis.size());
    const std::size_t d = psis.front().dim();
    const std::size_t dim = checked_power(d, n, cap, "use the product-trace evaluator");
    PureState joint = psis.front();
    for (int i = 1; i < n; ++i) {
        joint = tensor(joint, psis[i]);
    }
    // Aux qubit after H: both branches carry joint / sqrt2.
    std::vector<Complex> b0(joint.amplitudes().begin(), joint.amplitudes().end());
    std::vector<Complex> b1 = b0;
    for (auto &z : b0) z *= kInvSqrt2;
    for (auto &z : b1) z *= kInvSqrt2;
    // Controlled C_n as the ladder SWAP_{1,2} first, SWAP_{n-1,n} last.
    std::vector<Complex> scratch(dim);
    for (int k = 1; k < n; ++k) {
        const std::vector<std::size_t> map = factor_index_map(Permutation::from_cycles(n, {{k, k + 1}}), d, cap);
        for (std::size_t x = 0; x < dim; ++x) {
            scratch[map[x]] = b1[x];
        }
        std::swap(scratch, b1);
    }
    const Complex phase = s == 0 ? Complex{1.0} : Complex{0.0, 1.0};
    double p1 = 0;
    for (std::size_t x = 0; x < dim; ++x) {
        p1 += std::norm(kInvSqrt2 * (b0[x] - phase * b1[x]));
    }
    return p1;
}

}  // namespace

double cycle_test(const StateTuple &t, int s, std::size_t cap) {
    if (s != 0 && s != 1) {
        throw std::invalid_argument(fmt::format("phase exponent s must be 0 or 1, got {}", s));
    }
    checked_power(t.local_dim(), t.size(), cap, "use the product-trace evaluator");
    if (t.all_pure()) {
        std::vector<PureState> psis;
        for (const auto &st : t.states()) {
            psis.push_back(std::get<PureState>(st));
        }
        return cycle_test_pure(psis, s, cap);
    }
    // The outcome probability is linear in each input state.
    std::vector<ConvexDecomposition> parts;
    std::size_t terms = 1;
    for (const auto &st : t.states()) {
        parts.push_back(eigendecompose_for_protocol(as_density(st)));
        terms *= parts.back().weights.size();
    }
    if (terms > cap) {
        throw SizeCapError(terms, cap, "mixed-input cycle test expands into too many pure terms");
    }
    const int n = t.size();
    std::vector<std::size_t> idx(n, 0);
    double total = 0;
    for (std::size_t term = 0; term < terms; ++term) {
        double w = 1;
        std::vector<PureState> psis;
        for (int i = 0; i < n; ++i) {
            w *= parts[i].weights[idx[i]];
            psis.push_back(parts[i].components[idx[i]]);
        }
        total += w * cycle_test_pure(psis, s, cap);
        for (int i = n - 1; i >= 0; --i) {
            if (++idx[i] < parts[i].weights.size()) {
                break;
            }
            idx[i] = 0;
        }
    }
    return total;
}

// ---------------------------------------------------------------------------
// Pair sets

Complex pair_product(const PairSet &pairs, const std::vector<PureState> &psis) {
    if (static_cast<int>(psis.size()) != pairs.size()) {
        throw std::invalid_argument(fmt::format("pair set of size {} given {} states", pairs.size(), psis.size()));
    }
    Complex acc{1.0};
    for (const auto &[i, j] : pairs.label_pairs()) {
        acc *= inner(psis[i - 1].amplitudes(), psis[j - 1].amplitudes());
    }
    return acc;
}

Complex labelled_expectation(const Permutation &t, const std::vector<int> &labels,
                             const std::vector<PureState> &psis, std::size_t cap) {
    if (static_cast<int>(labels.size()) != t.size() || psis.size() != labels.size()) {
        throw std::invalid_argument("labelled_expectation: permutation, labels and states must have equal length");
    }
    checked_power(psis.front().dim(), t.size(), cap, "use the pair product");
    PureState joint = psis[labels[0] - 1];
    for (std::size_t k = 1; k < labels.size(); ++k) {
        joint = tensor(joint, psis[labels[k] - 1]);
    }
    return inner(joint.amplitudes(), apply(perm_to_unitary(t, psis.front().dim(), cap), joint).amplitudes());
}

// ---------------------------------------------------------------------------
// Hadamard-test simulation of the switch

namespace {

class CountingOracle {
  public:
    explicit CountingOracle(const UnitaryMatrix &u) : u_(u.matrix()), u_dag_(dagger(u.matrix())) {}

    std::vector<Complex> forward(std::span<const Complex> v) {
        ++forward_calls_;
        return matvec(u_, v);
    }
    std::vector<Complex> inverse(std::span<const Complex> v) {
        ++inverse_calls_;
        return matvec(u_dag_, v);
    }
    int forward_calls() const { return forward_calls_; }
    int inverse_calls() const { return inverse_calls_; }

  private:
    ComplexMatrix u_;
    ComplexMatrix u_dag_;
    int forward_calls_ = 0;
    int inverse_calls_ = 0;
};

}  // namespace

std::pair<PureState, SimulationReport> simulate_switch_hadamard(const UnitaryMatrix &a, const UnitaryMatrix &b,
                                                                const PureState &psi) {
    if (a.dim() != b.dim() || a.dim() != psi.dim()) {
        throw ValidationError(fmt::format("dimension mismatch: A is {}, B is {}, psi is {}", a.dim(), b.dim(),
                                          psi.dim()));
    }
    const std::size_t d = psi.dim();
    CountingOracle oa(a);
    CountingOracle ob(b);

    const std::vector<Complex> phi = ob.forward(oa.forward(psi.amplitudes()));
    // Controlled U = A B A^dagger B^dagger on the |1> branch.
    const std::vector<Complex> u_phi = oa.forward(ob.forward(oa.inverse(ob.inverse(phi))));

    std::vector<Complex> out(2 * d);
    for (std::size_t s = 0; s < d; ++s) {
        out[s] = 0.5 * (phi[s] + u_phi[s]);
        out[d + s] = 0.5 * (phi[s] - u_phi[s]);
    }

    // Direct switch on |+> x psi followed by H x 1.
    const std::vector<Complex> plus_psi = kron(control_plus().amplitudes(), psi.amplitudes());
    const std::vector<Complex> switched = matvec(switch_unitary(a, b).matrix(), plus_psi);
    const ComplexMatrix h = Complex{kInvSqrt2} * ComplexMatrix::from_rows({{1, 1}, {1, -1}});
    const std::vector<Complex> oracle = matvec(tensor(h, ComplexMatrix::identity(d)), switched);

    SimulationReport report;
    report.max_deviation = max_abs_diff(out, oracle);
    report.k_a = oa.forward_calls();
    report.k_b = ob.forward_calls();
    report.inverse_queries_a = oa.inverse_calls();
    report.inverse_queries_b = ob.inverse_calls();
    return {PureState(std::move(out)), report};
}

// ---------------------------------------------------------------------------
// Even-order no-go witness

namespace {

std::vector<Permutation> all_permutations(int n) {
    std::vector<int> base(n);
    std::iota(base.begin(), base.end(), 0);
    std::vector<Permutation> out;
    do {
        out.emplace_back(base);
    } while (std::next_permutation(base.begin(), base.end()));
    return out;
}

}  // namespace

NogoReport nogo_witness(int n, std::size_t local_dim, int trials, uint64_t seed, int operations) {
    if (n < 2 || n % 2 == 1) {
        throw std::invalid_argument(fmt::format("the no-go witness is for even orders >= 2, got {}", n));
    }
    if (operations < 1) {
        throw std::invalid_argument("need at least one switch operation");
    }
    NogoReport r;
    r.n = n;
    r.local_dim = local_dim;
    r.trials = trials;
    r.operations = operations;
    const Permutation cn = cycle_shift(n);
    r.cycle_parity = parity(cn);

    if (n <= 4) {
        const std::vector<Permutation> group = all_permutations(n);
        r.exhaustive_searched = true;
        for (const auto &a : group) {
            for (const auto &b : group) {
                const Permutation k = commutator_dab(a, b);
                for (const auto &p : group) {
                    ++r.exhaustive_triples;
                    if (compose(inverse(p), compose(k, p)) == cn) {
                        ++r.exhaustive_solutions;
                    }
                }
            }
        }
    }

    const std::size_t dim = checked_power(local_dim, n, kDefaultSizeCap, "reduce n or d for the unitary trials");
    for (int trial = 0; trial < trials; ++trial) {
        const uint64_t base = derive_seed(seed, static_cast<uint64_t>(trial));
        const UnitaryMatrix p = haar_random_unitary(derive_seed(base, 0), dim);
        std::vector<UnitaryMatrix> us;
        for (int j = 0; j < operations; ++j) {
            us.push_back(haar_random_unitary(derive_seed(base, static_cast<uint64_t>(j + 1)), dim));
        }
        ComplexMatrix forward = us.front().matrix();
        ComplexMatrix backward = dagger(us.front().matrix());
        for (int j = 1; j < operations; ++j) {
            forward = matmul(forward, us[j].matrix());
            backward = matmul(backward, dagger(us[j].matrix()));
        }
        const ComplexMatrix rhs = matmul(matmul(dagger(p.matrix()), matmul(backward, forward)), p.matrix());
        r.max_det_deviation = std::max(r.max_det_deviation, std::abs(determinant(rhs) - 1.0));
    }

    r.cycle_det_sign = unitary_determinant_sign(cn, local_dim);
    r.premise_fails = r.cycle_det_sign == 1;
    r.d_mod4_flag = local_dim % 4 == 0 || local_dim % 4 == 1;
    return r;
}

}  // namespace qswitch
