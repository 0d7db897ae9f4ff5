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

#include "qswitch/cli.h"

#include <chrono>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <fmt/chrono.h>
#include <fmt/format.h>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"

#include "qswitch/invariants.h"
#include "qswitch/io.h"
#include "qswitch/perm.h"
#include "qswitch/protocol.h"
#include "qswitch/quantum_switch.h"
#include "qswitch/rng.h"

namespace qswitch {

namespace {

using nlohmann::json;

struct RunConfig {
    std::optional<int> n;
    std::size_t dim = 2;
    std::string family = "main";
    uint64_t shots = 0;
    uint64_t seed = 0;
    std::string even_strategy;
    int repeat_index = 1;
    std::string states_path;
    std::optional<int> random_count;
    std::string purity = "pure";
    std::string format = "json";
    bool deterministic = false;
    int verbosity = 0;

    std::string unitaries_path;

    int max_n = 21;
    int numeric_max_n = 9;
    int trials = 100;
    std::optional<int> nogo;
    std::optional<int> pair_recursion;

    std::string perm_action;
    std::string perm_p;
    std::string perm_q;
    std::vector<std::string> perm_args() const {
        std::vector<std::string> out;
        for (const auto *s : {&perm_p, &perm_q}) {
            if (!s->empty()) {
                out.push_back(*s);
            }
        }
        return out;
    }
};

/// Rows for the CSV projection; the first row is the header.
using Table = std::vector<std::vector<std::string>>;

struct Report {
    json doc;
    Table table;
    bool ok = true;
};

std::string num(double x) { return fmt::format("{:.17g}", x); }

json base_report(const RunConfig &cfg, std::string_view command) {
    json doc;
    doc["tool"] = "qswitch";
    doc["version"] = kVersion;
    doc["command"] = command;
    doc["seed"] = cfg.seed;
    doc["deterministic"] = cfg.deterministic;
    if (!cfg.deterministic) {
        doc["timestamp"] = fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", fmt::gmtime(std::chrono::system_clock::to_time_t(
                                                                      std::chrono::system_clock::now())));
    }
    return doc;
}

Family parse_family(const std::string &s) { return s == "alt" ? Family::kAlt : Family::kMain; }

// ---------------------------------------------------------------------------
// State acquisition

StateTuple acquire_states(const RunConfig &cfg) {
    const bool from_file = !cfg.states_path.empty();
    const bool from_generator = cfg.random_count.has_value();
    if (from_file == from_generator) {
        throw ValidationError("give exactly one of --states <path> or --random <count>");
    }
    if (from_file) {
        StateTuple t = states_from_json(read_json_file(cfg.states_path));
        if (cfg.n && *cfg.n != t.size()) {
            throw ValidationError(fmt::format("--n {} but the state file holds {} states", *cfg.n, t.size()));
        }
        return t;
    }
    const int count = *cfg.random_count;
    if (count < 1) {
        throw ValidationError("--random needs a positive count");
    }
    if (cfg.n && *cfg.n != count) {
        throw ValidationError(fmt::format("--n {} disagrees with --random {}", *cfg.n, count));
    }
    std::vector<QuantumState> states;
    for (int i = 0; i < count; ++i) {
        const uint64_t s = derive_seed(cfg.seed, static_cast<uint64_t>(i) + 1);
        if (cfg.purity == "pure") {
            states.emplace_back(haar_random_state(s, cfg.dim));
        } else {
            states.emplace_back(random_density_matrix(s, cfg.dim, cfg.dim));
        }
    }
    return StateTuple(std::move(states));
}

json tagged_value(const InvariantValue &v, double tolerance) {
    return {{"method", to_string(v.method)}, {"value", to_json(v.value)}, {"tolerance", tolerance}};
}

// ---------------------------------------------------------------------------
// invariant

Report cmd_invariant(const RunConfig &cfg) {
    const StateTuple t = acquire_states(cfg);
    Report r{base_report(cfg, "invariant"), {{"method", "re", "im", "tolerance"}}};
    r.doc["n"] = t.size();
    r.doc["local_dim"] = t.local_dim();

    std::vector<InvariantValue> values{bargmann_product_trace(t)};
    json skipped = json::array();
    if (t.all_pure()) {
        values.push_back(bargmann_pure_chain(t));
    } else {
        skipped.push_back({{"method", "pure-chain"}, {"reason", "mixed state present"}});
    }
    try {
        values.push_back(bargmann_cycle_expectation(t));
    } catch (const SizeCapError &e) {
        skipped.push_back({{"method", "cycle-expectation"}, {"reason", e.what()}});
    }

    json vals = json::array();
    for (const auto &v : values) {
        vals.push_back(tagged_value(v, kDerivedTolerance));
        r.table.push_back({std::string(to_string(v.method)), num(v.value.real()), num(v.value.imag()),
                           num(kDerivedTolerance)});
    }
    json residuals = json::array();
    for (std::size_t i = 0; i < values.size(); ++i) {
        for (std::size_t j = i + 1; j < values.size(); ++j) {
            const double res = std::abs(values[i].value - values[j].value);
            const bool passed = res <= kDerivedTolerance;
            r.ok = r.ok && passed;
            residuals.push_back({{"methods", {to_string(values[i].method), to_string(values[j].method)}},
                                 {"residual", res},
                                 {"tolerance", kDerivedTolerance},
                                 {"passed", passed}});
        }
    }
    r.doc["values"] = vals;
    r.doc["residuals"] = residuals;
    r.doc["skipped"] = skipped;
    r.doc["passed"] = r.ok;
    return r;
}

// ---------------------------------------------------------------------------
// protocol

Report cmd_protocol(const RunConfig &cfg) {
    const StateTuple t = acquire_states(cfg);
    ProtocolSpec spec;
    spec.n = t.size();
    spec.local_dim = t.local_dim();
    spec.family = parse_family(cfg.family);
    spec.shots = cfg.shots;
    spec.seed = cfg.seed;
    spec.strategy_index = cfg.repeat_index;
    if (!cfg.even_strategy.empty()) {
        if (t.size() % 2 == 1) {
            throw ValidationError(fmt::format("--even-strategy given but the order {} is odd", t.size()));
        }
        spec.even_strategy = cfg.even_strategy == "repeat" ? EvenStrategy::kRepeatPure
                                                           : EvenStrategy::kConvexDecompose;
    } else if (t.size() % 2 == 0) {
        spec.even_strategy = default_even_strategy(t, spec.strategy_index);
    }
    spec.validate();

    const EstimationResult est = sample_protocol(t, spec);
    const InvariantValue oracle = bargmann_product_trace(t);

    Report r{base_report(cfg, "protocol"),
             {{"method", "exact", "shots_x", "shots_y", "p_minus", "p_minus_i", "re", "im", "stderr_re", "stderr_im",
               "oracle_re", "oracle_im"}}};
    r.doc["protocol"] = {{"n", spec.n},
                         {"local_dim", spec.local_dim},
                         {"family", to_string(spec.family)},
                         {"even_strategy", to_string(spec.even_strategy)},
                         {"strategy_index", spec.strategy_index},
                         {"effective_order", spec.effective_order()},
                         {"shots", spec.shots}};
    r.doc["estimate"] = {{"method", "switch-protocol"},
                         {"exact", est.exact},
                         {"p_minus", est.p_minus},
                         {"p_minus_i", est.p_minus_i},
                         {"value", to_json(est.value())},
                         {"stderr_re", est.stderr_re},
                         {"stderr_im", est.stderr_im},
                         {"stderr_p_minus", est.stderr_p_minus},
                         {"stderr_p_minus_i", est.stderr_p_minus_i},
                         {"shots_x", est.shots_x},
                         {"shots_y", est.shots_y},
                         {"tolerance", est.exact ? kDerivedTolerance : 0.0}};
    r.doc["oracle"] = tagged_value(oracle, kDerivedTolerance);
    const double res = std::abs(est.value() - oracle.value);
    json residual = {{"residual", res}, {"method", est.exact ? "exact" : "sampled"}};
    if (est.exact) {
        const bool passed = res <= kDerivedTolerance;
        residual["tolerance"] = kDerivedTolerance;
        residual["passed"] = passed;
        r.ok = passed;
    } else {
        // Sampling noise is reported, not judged.
        auto z = [](double diff, double se) { return se > 0 ? diff / se : 0.0; };
        residual["z_re"] = z(est.re_estimate - oracle.value.real(), est.stderr_re);
        residual["z_im"] = z(est.im_estimate - oracle.value.imag(), est.stderr_im);
    }
    r.doc["residual"] = residual;
    r.doc["passed"] = r.ok;
    r.table.push_back({"switch-protocol", est.exact ? "true" : "false", std::to_string(est.shots_x),
                       std::to_string(est.shots_y), num(est.p_minus), num(est.p_minus_i), num(est.re_estimate),
                       num(est.im_estimate), num(est.stderr_re), num(est.stderr_im), num(oracle.value.real()),
                       num(oracle.value.imag())});
    return r;
}

// ---------------------------------------------------------------------------
// simulate-switch

json query_block(const SimulationReport &s) {
    return {{"raw", {{"a", s.k_a}, {"b", s.k_b}}},
            {"inverse", {{"a", s.inverse_queries_a}, {"b", s.inverse_queries_b}}},
            {"expanded", {{"a", s.expanded_k_a()}, {"b", s.expanded_k_b()}}},
            {"inverse_cost", 4}};
}

Report cmd_simulate_switch(const RunConfig &cfg) {
    Report r{base_report(cfg, "simulate-switch"),
             {{"instance", "local_dim", "max_deviation", "tolerance", "k_a", "k_b", "inv_a", "inv_b", "expanded_a",
               "expanded_b"}}};
    std::vector<std::tuple<UnitaryMatrix, UnitaryMatrix, PureState>> instances;
    if (!cfg.unitaries_path.empty() && cfg.random_count) {
        throw ValidationError("give exactly one of --unitaries <path> or --random <count>");
    }
    if (!cfg.unitaries_path.empty()) {
        UnitaryInput in = unitaries_from_json(read_json_file(cfg.unitaries_path));
        PureState psi = in.psi ? *in.psi : haar_random_state(derive_seed(cfg.seed, 0), in.a.dim());
        instances.emplace_back(in.a, in.b, psi);
    } else {
        const int count = cfg.random_count.value_or(1);
        if (count < 1) {
            throw ValidationError("--random needs a positive count");
        }
        for (int k = 0; k < count; ++k) {
            const uint64_t base = derive_seed(cfg.seed, static_cast<uint64_t>(k));
            instances.emplace_back(haar_random_unitary(derive_seed(base, 0), cfg.dim),
                                   haar_random_unitary(derive_seed(base, 1), cfg.dim),
                                   haar_random_state(derive_seed(base, 2), cfg.dim));
        }
    }
    double worst = 0;
    SimulationReport last;
    json rows = json::array();
    for (std::size_t k = 0; k < instances.size(); ++k) {
        const auto &[a, b, psi] = instances[k];
        last = simulate_switch_hadamard(a, b, psi).second;
        worst = std::max(worst, last.max_deviation);
        rows.push_back({{"local_dim", a.dim()}, {"max_deviation", last.max_deviation}});
        r.table.push_back({std::to_string(k), std::to_string(a.dim()), num(last.max_deviation),
                           num(kDerivedTolerance), std::to_string(last.k_a), std::to_string(last.k_b),
                           std::to_string(last.inverse_queries_a), std::to_string(last.inverse_queries_b),
                           std::to_string(last.expanded_k_a()), std::to_string(last.expanded_k_b())});
    }
    r.ok = worst <= kDerivedTolerance;
    r.doc["instances"] = rows;
    r.doc["max_deviation"] = {{"value", worst}, {"method", "sup-norm vs direct switch"}, {"tolerance", kDerivedTolerance}};
    r.doc["queries"] = query_block(last);
    r.doc["passed"] = r.ok;
    return r;
}

// ---------------------------------------------------------------------------
// verify

class CheckTable {
  public:
    void add(std::string name, bool passed, std::optional<double> residual = std::nullopt,
             std::optional<double> tolerance = std::nullopt, std::string method = "exact", std::string detail = "",
             bool info = false) {
        json row = {{"name", name}, {"passed", passed}, {"method", method}, {"info", info}};
        row["residual"] = residual ? json(*residual) : json(nullptr);
        row["tolerance"] = tolerance ? json(*tolerance) : json(nullptr);
        if (!detail.empty()) {
            row["detail"] = detail;
        }
        rows_.push_back(row);
        table_.push_back({name, passed ? "true" : "false", residual ? num(*residual) : "",
                          tolerance ? num(*tolerance) : "", method, info ? "true" : "false"});
        if (!info && !passed) {
            ok_ = false;
        }
    }
    json rows() const { return rows_; }
    Table table() const { return table_; }
    bool ok() const { return ok_; }

  private:
    json rows_ = json::array();
    Table table_{{"name", "passed", "residual", "tolerance", "method", "info"}};
    bool ok_ = true;
};

void verify_symbolic(const RunConfig &cfg, CheckTable &checks) {
    for (int n = 3; n <= cfg.max_n; n += 2) {
        checks.add(fmt::format("conjugacy n={}", n), verify_conjugacy(n), std::nullopt, 0.0, "exact permutation");
    }
    for (int n = 3; n <= cfg.max_n; n += 2) {
        checks.add(fmt::format("commutator-identity n={}", n), verify_commutator_identity(n), std::nullopt, 0.0,
                   "exact permutation");
    }
    for (int n = 3; n <= cfg.max_n; n += 2) {
        auto [a, b] = alt_family(n);
        const bool direct = commutator_dab(a, b) == cycle_shift(n);
        checks.add(fmt::format("alt-family D(A,B) = C_n without preprocessing, n={}", n), direct, std::nullopt,
                   std::nullopt, "exact permutation",
                   direct ? "" : fmt::format("D(A,B) = {}", to_cycle_string(commutator_dab(a, b))), true);
    }
}

void verify_pair_recursion(int max_n, uint64_t seed, CheckTable &checks) {
    if (max_n >= 5) {
        PairSet current = main_family_pairs(5);
        for (int n = 5; n + 2 <= max_n; n += 2) {
            PairSet next = extend_pair_set(current);
            checks.add(fmt::format("pair-set recursion {}->{}", n, n + 2), next == main_family_pairs(n + 2),
                       std::nullopt, 0.0, "exact pair sets");
            current = next;
        }
    }
    for (int n = 3; n <= std::min(max_n, 11); n += 2) {
        std::vector<PureState> psis;
        for (int i = 0; i < n; ++i) {
            psis.push_back(haar_random_state(derive_seed(seed, 100 + static_cast<uint64_t>(n * 16 + i)), 2));
        }
        const PairSet pairs = main_family_pairs(n);
        const Complex product = pair_product(pairs, psis);
        const Permutation ab = compose(swap_layer_a(n), swap_layer_b(n));
        const Complex expectation = labelled_expectation(compose(ab, ab), pairs.labels(), psis);
        const Complex delta = bargmann_pure_chain(StateTuple::pure(psis)).value;
        const double res = std::max(std::abs(product - expectation), std::abs(product - delta));
        checks.add(fmt::format("pair product = Tr(T psi_sw) = Delta, n={}", n), res <= kInvariantTolerance, res,
                   kInvariantTolerance, "pair-product vs expectation vs pure-chain");
    }
}

void verify_numeric(const RunConfig &cfg, CheckTable &checks) {
    const int tuples = 5;
    for (Family family : {Family::kMain, Family::kAlt}) {
        for (int n = 3; n <= cfg.numeric_max_n; n += 2) {
            double worst = 0;
            for (int k = 0; k < tuples; ++k) {
                const uint64_t base = derive_seed(cfg.seed, static_cast<uint64_t>(1000 * n + k));
                std::vector<QuantumState> states;
                for (int i = 0; i < n; ++i) {
                    const uint64_t s = derive_seed(base, static_cast<uint64_t>(i));
                    if (k % 2 == 0) {
                        states.emplace_back(haar_random_state(s, 2));
                    } else {
                        states.emplace_back(random_density_matrix(s, 2, 2));
                    }
                }
                const StateTuple t(std::move(states));
                ProtocolSpec spec;
                spec.n = n;
                spec.family = family;
                const Complex got = odd_invariant_via_switch(t, spec).value;
                worst = std::max(worst, std::abs(got - bargmann_product_trace(t).value));
            }
            checks.add(fmt::format("switch protocol ({}) n={} d=2", to_string(family), n), worst <= kDerivedTolerance,
                       worst, kDerivedTolerance, "switch-protocol vs product-trace");
        }
    }
    for (int n : {2, 4}) {
        double worst = 0;
        for (int k = 0; k < tuples; ++k) {
            const uint64_t base = derive_seed(cfg.seed, static_cast<uint64_t>(5000 + 10 * n + k));
            std::vector<QuantumState> states;
            states.emplace_back(random_density_matrix(derive_seed(base, 0), 2, 2));
            for (int i = 1; i < n; ++i) {
                states.emplace_back(haar_random_state(derive_seed(base, static_cast<uint64_t>(i)), 2));
            }
            const StateTuple t(std::move(states));
            ProtocolSpec spec;
            spec.n = n;
            spec.even_strategy = EvenStrategy::kConvexDecompose;
            const Complex got = sample_protocol(t, spec).value();
            worst = std::max(worst, std::abs(got - bargmann_product_trace(t).value));
        }
        checks.add(fmt::format("even order convex-decompose n={} d=2", n), worst <= kDerivedTolerance, worst,
                   kDerivedTolerance, "switch-protocol vs product-trace");
    }
    {
        const StateTuple t = StateTuple::pure({PureState::basis(2, 0), PureState({1 / std::sqrt(2.0), 1 / std::sqrt(2.0)}),
                                               PureState({1 / std::sqrt(2.0), Complex{0, 1 / std::sqrt(2.0)}})});
        const Complex delta = bargmann_product_trace(t).value;
        const double res = std::max(std::abs(cycle_test(t, 0) - 0.5 * (1 - delta.real())),
                                    std::abs(cycle_test(t, 1) - 0.5 * (1 + delta.imag())));
        checks.add("cycle test readout n=3", res <= kDerivedTolerance, res, kDerivedTolerance,
                   "cycle-test vs product-trace");
    }
    for (std::size_t d : {2u, 4u, 8u, 16u}) {
        double worst = 0;
        SimulationReport rep;
        for (int k = 0; k < 10; ++k) {
            const uint64_t base = derive_seed(cfg.seed, 9000 + d * 100 + static_cast<uint64_t>(k));
            rep = simulate_switch_hadamard(haar_random_unitary(derive_seed(base, 0), d),
                                           haar_random_unitary(derive_seed(base, 1), d),
                                           haar_random_state(derive_seed(base, 2), d))
                      .second;
            worst = std::max(worst, rep.max_deviation);
        }
        const bool counts = rep.k_a == 2 && rep.k_b == 2 && rep.inverse_queries_a == 1 && rep.inverse_queries_b == 1;
        checks.add(fmt::format("Hadamard-test switch simulation d={}", d), worst <= kDerivedTolerance && counts, worst,
                   kDerivedTolerance, "sup-norm vs direct switch",
                   fmt::format("queries raw ({},{}) inverse ({},{}) expanded ({},{})", rep.k_a, rep.k_b,
                               rep.inverse_queries_a, rep.inverse_queries_b, rep.expanded_k_a(), rep.expanded_k_b()));
    }
}

json verify_nogo(int n, const RunConfig &cfg, CheckTable &checks) {
    const NogoReport rep = nogo_witness(n, cfg.dim, cfg.trials, cfg.seed);
    checks.add(fmt::format("parity(C_{}) is odd", n), rep.cycle_parity == Parity::kOdd, std::nullopt, 0.0,
               "exact permutation");
    if (rep.exhaustive_searched) {
        checks.add(fmt::format("no (P,A,B) in S_{}^3 with P^-1 A^-1 B^-1 A B P = C_{}", n, n),
                   rep.exhaustive_solutions == 0, static_cast<double>(rep.exhaustive_solutions), 0.0,
                   fmt::format("exhaustive search over {} triples", rep.exhaustive_triples));
    }
    checks.add(fmt::format("det of the right side = 1, n={} d={} ({} trials)", n, cfg.dim, rep.trials),
               rep.max_det_deviation <= 1e-9, rep.max_det_deviation, 1e-9, "Haar-random unitaries, dense determinant");
    json table = json::array();
    for (std::size_t d = 2; d <= 5; ++d) {
        std::size_t total = 1;
        for (int k = 0; k < n; ++k) {
            total *= d;
        }
        if (total > (1u << 24)) {
            continue;
        }
        const int sign = unitary_determinant_sign(cycle_shift(n), d);
        table.push_back({{"local_dim", d},
                         {"det_sign", sign},
                         {"premise_fails", sign == 1},
                         {"d_mod4_flag", d % 4 == 0 || d % 4 == 1}});
        checks.add(fmt::format("det(C_{} rep) at d={} is {:+d}", n, d, sign), sign == -1, std::nullopt, std::nullopt,
                   "exact sign of the induced index permutation",
                   sign == 1 ? "determinant argument gives no obstruction here" : "", true);
    }
    return {{"n", n},
            {"local_dim", cfg.dim},
            {"cycle_parity", to_string(rep.cycle_parity)},
            {"exhaustive_searched", rep.exhaustive_searched},
            {"exhaustive_triples", rep.exhaustive_triples},
            {"exhaustive_solutions", rep.exhaustive_solutions},
            {"trials", rep.trials},
            {"max_det_deviation", rep.max_det_deviation},
            {"cycle_det_sign", rep.cycle_det_sign},
            {"premise_fails", rep.premise_fails},
            {"d_mod4_flag", rep.d_mod4_flag},
            {"determinant_table", table}};
}

Report cmd_verify(const RunConfig &cfg) {
    CheckTable checks;
    Report r{base_report(cfg, "verify"), {}};
    const bool full = !cfg.nogo && !cfg.pair_recursion;
    if (full) {
        verify_symbolic(cfg, checks);
        verify_pair_recursion(cfg.max_n, cfg.seed, checks);
        verify_numeric(cfg, checks);
        r.doc["nogo"] = verify_nogo(4, cfg, checks);
    }
    if (cfg.pair_recursion) {
        verify_pair_recursion(*cfg.pair_recursion, cfg.seed, checks);
    }
    if (cfg.nogo) {
        r.doc["nogo"] = verify_nogo(*cfg.nogo, cfg, checks);
    }
    r.doc["checks"] = checks.rows();
    r.doc["passed"] = checks.ok();
    r.table = checks.table();
    r.ok = checks.ok();
    return r;
}

// ---------------------------------------------------------------------------
// perm

Permutation parse_perm_arg(const std::string &text, int n) {
    if (!text.empty() && text.front() == '[') {
        Permutation p = parse_one_line(text);
        if (n != 0 && p.size() != n) {
            throw ValidationError(fmt::format("'{}' has size {}, expected {}", text, p.size(), n));
        }
        return p;
    }
    return parse_cycles(text, n);
}

json perm_json(const Permutation &p) {
    return {{"cycles", to_cycle_string(p)}, {"one_line", to_one_line_string(p)}, {"parity", to_string(parity(p))}};
}

Report cmd_perm(const RunConfig &cfg) {
    Report r{base_report(cfg, "perm"), {{"name", "cycles", "one_line", "parity"}}};
    r.doc["action"] = cfg.perm_action;
    auto add_row = [&](const std::string &name, const Permutation &p) {
        r.doc["results"][name] = perm_json(p);
        r.table.push_back({name, to_cycle_string(p), to_one_line_string(p), std::string(to_string(parity(p)))});
    };
    const std::string &action = cfg.perm_action;
    if (action == "families") {
        if (!cfg.n) {
            throw ValidationError("perm families needs --n");
        }
        const int n = *cfg.n;
        add_row("C", cycle_shift(n));
        add_row("A", parse_family(cfg.family) == Family::kAlt && n % 2 == 1 ? alt_family(n).first : swap_layer_a(n));
        add_row("B", parse_family(cfg.family) == Family::kAlt && n % 2 == 1 ? alt_family(n).second : swap_layer_b(n));
        if (n % 2 == 1 && n >= 3) {
            const OddProtocol proto = build_odd_protocol(n, 1, parse_family(cfg.family), kDefaultSizeCap);
            add_row("P", proto.p_perm);
            add_row("D", commutator_dab(proto.a_perm, proto.b_perm));
            r.doc["labels"] = preprocess_labels(n);
            r.doc["checks"] = {{"conjugacy", verify_conjugacy(n)}, {"commutator_identity", verify_commutator_identity(n)}};
        }
        r.doc["family"] = cfg.family;
        return r;
    }
    std::size_t expected = action == "compose" ? 2 : 1;
    if (action != "compose" && action != "invert" && action != "parity") {
        throw ValidationError(fmt::format("unknown perm action '{}'; use compose, invert, parity or families", action));
    }
    const std::vector<std::string> args = cfg.perm_args();
    if (args.size() != expected) {
        throw ValidationError(fmt::format("perm {} takes {} permutation argument(s)", action, expected));
    }
    int n = cfg.n.value_or(0);
    if (n == 0) {
        for (const auto &arg : args) {
            n = std::max(n, parse_perm_arg(arg, 0).size());
        }
    }
    std::vector<Permutation> ps;
    for (const auto &arg : args) {
        ps.push_back(parse_perm_arg(arg, n));
    }
    if (action == "compose") {
        add_row("p", ps[0]);
        add_row("q", ps[1]);
        add_row("p o q", compose(ps[0], ps[1]));
    } else if (action == "invert") {
        add_row("p", ps[0]);
        add_row("inverse", inverse(ps[0]));
    } else {
        add_row("p", ps[0]);
        r.doc["parity"] = to_string(parity(ps[0]));
    }
    return r;
}

// ---------------------------------------------------------------------------
// Rendering

std::string csv_escape(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

void render_human(const json &j, std::ostream &out, int indent) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    auto is_complex = [](const json &v) { return v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number(); };
    if (j.is_object()) {
        for (const auto &[key, value] : j.items()) {
            if (value.is_structured() && !is_complex(value)) {
                out << pad << key << ":\n";
                render_human(value, out, indent + 1);
            } else if (is_complex(value)) {
                out << pad << key << ": " << fmt::format("{:.12g} {:+.12g}i", value[0].get<double>(), value[1].get<double>())
                    << "\n";
            } else {
                out << pad << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
            }
        }
    } else if (j.is_array()) {
        for (const auto &value : j) {
            if (value.is_object()) {
                out << pad << "-\n";
                render_human(value, out, indent + 1);
            } else {
                out << pad << "- " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
            }
        }
    }
}

void render(const Report &r, const std::string &format, std::ostream &out) {
    if (format == "json") {
        out << r.doc.dump(2) << "\n";
    } else if (format == "csv") {
        for (const auto &row : r.table) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                out << (i ? "," : "") << csv_escape(row[i]);
            }
            out << "\n";
        }
    } else {
        render_human(r.doc, out, 0);
    }
}

void add_common(CLI::App *sub, RunConfig &cfg) {
    sub->add_option("--n", cfg.n, "Order of the invariant");
    sub->add_option("--dim", cfg.dim, "Local dimension for generated inputs")->check(CLI::PositiveNumber);
    sub->add_option("--family", cfg.family, "Switch input family")->check(CLI::IsMember({"main", "alt"}));
    sub->add_option("--shots", cfg.shots, "Measurement shots (0 = exact)");
    sub->add_option("--seed", cfg.seed, "Seed for generated inputs and sampling");
    sub->add_option("--even-strategy", cfg.even_strategy, "Even-order strategy")
        ->check(CLI::IsMember({"repeat", "convex"}));
    sub->add_option("--repeat-index", cfg.repeat_index, "1-based state to repeat or decompose");
    sub->add_option("--states", cfg.states_path, "State file (JSON)");
    sub->add_option("--random", cfg.random_count, "Generate this many Haar-random inputs");
    sub->add_option("--purity", cfg.purity, "Generated state kind")->check(CLI::IsMember({"pure", "mixed"}));
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv", "human"}));
    sub->add_flag("--deterministic", cfg.deterministic, "Omit the timestamp so identical runs give identical bytes");
    sub->add_flag("-v,--verbose", cfg.verbosity, "Log more (repeatable)");
}

void configure_logging(int verbosity) {
    auto logger = spdlog::get("qswitch");
    if (!logger) {
        logger = spdlog::stderr_logger_mt("qswitch");
    }
    spdlog::set_default_logger(logger);
    spdlog::set_level(verbosity >= 2 ? spdlog::level::debug
                      : verbosity == 1 ? spdlog::level::info
                                       : spdlog::level::warn);
}

}  // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Bargmann invariants with the quantum switch", "qswitch"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);
    RunConfig cfg;

    CLI::App *inv = app.add_subcommand("invariant", "Evaluate Delta_n by every applicable method");
    CLI::App *proto = app.add_subcommand("protocol", "Run the switch protocol, exactly or with shots");
    CLI::App *sim = app.add_subcommand("simulate-switch", "Hadamard-test simulation of the switch");
    CLI::App *ver = app.add_subcommand("verify", "Check every algebraic identity of the protocols");
    CLI::App *perm = app.add_subcommand("perm", "Permutation utilities");
    for (CLI::App *sub : {inv, proto, sim, ver, perm}) {
        add_common(sub, cfg);
    }
    sim->add_option("--unitaries", cfg.unitaries_path, "Unitary file (JSON) with fields a, b and optional psi");
    ver->add_option("--max-n", cfg.max_n, "Largest odd order for the symbolic checks");
    ver->add_option("--numeric-max-n", cfg.numeric_max_n, "Largest odd order for the numeric protocol checks");
    ver->add_option("--trials", cfg.trials, "Haar-random trials for the no-go determinant check");
    ver->add_option("--nogo", cfg.nogo, "Run only the even-order no-go witness at this order");
    ver->add_option("--pair-recursion,--lemma5", cfg.pair_recursion, "Run only the pair-set recursion checks up to this order");
    perm->add_option("action", cfg.perm_action, "compose | invert | parity | families")->required();
    // Scalar positionals so CLI11 leaves the one-line bracket form intact.
    perm->add_option("p", cfg.perm_p, "Permutation in cycle '(1 2 3)' or one-line '[2,3,1]' form");
    perm->add_option("q", cfg.perm_q, "Second permutation for compose");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInputError;
    }
    configure_logging(cfg.verbosity);

    try {
        Report r;
        if (inv->parsed()) {
            r = cmd_invariant(cfg);
        } else if (proto->parsed()) {
            r = cmd_protocol(cfg);
        } else if (sim->parsed()) {
            r = cmd_simulate_switch(cfg);
        } else if (ver->parsed()) {
            r = cmd_verify(cfg);
        } else {
            r = cmd_perm(cfg);
        }
        render(r, cfg.format, out);
        return r.ok ? kExitOk : kExitCheckFailed;
    } catch (const SizeCapError &e) {
        err << "error: " << e.what() << "\n"
            << "hint: `qswitch invariant` evaluates Delta_n by product-trace without materializing the tensor space\n";
        return kExitSizeCap;
    } catch (const ParseError &e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitCheckFailed;
    }
}

}  // namespace qswitch
