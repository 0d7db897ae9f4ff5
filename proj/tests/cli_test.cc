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

#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "json.hpp"

namespace qswitch {
namespace {

using nlohmann::json;

struct CliRun {
    int code;
    std::string out;
    std::string err;
    json doc() const { return json::parse(out); }
};

CliRun run(std::vector<std::string> args) {
    args.insert(args.begin(), "qswitch");
    std::vector<const char *> argv;
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

TEST(cli, invariant_reports_all_methods) {
    const CliRun r = run({"invariant", "--random", "4", "--seed", "3", "--deterministic"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const json doc = r.doc();
    EXPECT_EQ(doc["values"].size(), 3u);
    EXPECT_EQ(doc["residuals"].size(), 3u);
    EXPECT_FALSE(doc.contains("timestamp"));
    for (const auto &v : doc["values"]) {
        EXPECT_TRUE(v.contains("method"));
        EXPECT_TRUE(v.contains("tolerance"));
    }
}

TEST(cli, invariant_mixed_skips_pure_chain) {
    const CliRun r = run({"invariant", "--random", "3", "--purity", "mixed", "--dim", "3", "--deterministic"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const json doc = r.doc();
    EXPECT_EQ(doc["values"].size(), 2u);
    EXPECT_EQ(doc["skipped"][0]["method"], "pure-chain");
}

TEST(cli, invariant_beyond_cap_falls_back_to_product_trace) {
    const CliRun r = run({"invariant", "--random", "13", "--deterministic"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(r.doc()["skipped"][0]["method"], "cycle-expectation");
}

TEST(cli, needs_exactly_one_state_source) {
    EXPECT_EQ(run({"invariant"}).code, kExitInputError);
    EXPECT_EQ(run({"invariant", "--random", "3", "--states", "x.json"}).code, kExitInputError);
    EXPECT_EQ(run({"invariant", "--random", "3", "--n", "4"}).code, kExitInputError);
}

TEST(cli, missing_file_is_input_error) {
    const CliRun r = run({"invariant", "--states", "/nonexistent/states.json"});
    EXPECT_EQ(r.code, kExitInputError);
    EXPECT_NE(r.err.find("cannot open"), std::string::npos);
}

TEST(cli, protocol_exact_n5) {
    const CliRun r = run({"protocol", "--random", "5", "--seed", "11", "--deterministic"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const json doc = r.doc();
    EXPECT_TRUE(doc["estimate"]["exact"].get<bool>());
    EXPECT_LE(doc["residual"]["residual"].get<double>(), 1e-10);
}

TEST(cli, protocol_even_convex) {
    const CliRun r = run({"protocol", "--random", "4", "--purity", "mixed", "--even-strategy", "convex", "--deterministic"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(r.doc()["protocol"]["even_strategy"], "convex");
    EXPECT_LE(r.doc()["residual"]["residual"].get<double>(), 1e-10);
}

TEST(cli, protocol_even_default_picks_by_purity) {
    EXPECT_EQ(run({"protocol", "--random", "2", "--deterministic"}).doc()["protocol"]["even_strategy"], "repeat");
    EXPECT_EQ(run({"protocol", "--random", "2", "--purity", "mixed", "--deterministic"}).doc()["protocol"]["even_strategy"],
              "convex");
}

TEST(cli, protocol_rejects_strategy_on_odd_order) {
    EXPECT_EQ(run({"protocol", "--random", "3", "--even-strategy", "repeat"}).code, kExitInputError);
}

TEST(cli, protocol_repeat_on_mixed_state_is_rejected) {
    EXPECT_EQ(run({"protocol", "--random", "4", "--purity", "mixed", "--even-strategy", "repeat"}).code,
              kExitInputError);
}

TEST(cli, protocol_size_cap_exit_code) {
    const CliRun r = run({"protocol", "--random", "13"});
    EXPECT_EQ(r.code, kExitSizeCap);
    EXPECT_NE(r.err.find("qswitch invariant"), std::string::npos);
}

TEST(cli, sampled_output_is_byte_identical) {
    const std::vector<std::string> args{"protocol", "--random", "3", "--shots", "1000000", "--seed", "5",
                                        "--deterministic"};
    const CliRun a = run(args);
    const CliRun b = run(args);
    ASSERT_EQ(a.code, kExitOk) << a.err;
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.doc()["estimate"]["shots_x"], 500000);
    EXPECT_FALSE(a.doc()["estimate"]["exact"].get<bool>());
}

TEST(cli, timestamp_present_unless_deterministic) {
    EXPECT_TRUE(run({"perm", "parity", "(1 2 3)"}).doc().contains("timestamp"));
}

TEST(cli, simulate_switch_queries) {
    const CliRun r = run({"simulate-switch", "--random", "3", "--dim", "8", "--deterministic"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const json q = r.doc()["queries"];
    EXPECT_EQ(q["raw"]["a"], 2);
    EXPECT_EQ(q["raw"]["b"], 2);
    EXPECT_EQ(q["inverse"]["a"], 1);
    EXPECT_EQ(q["expanded"]["a"], 6);
    EXPECT_EQ(q["expanded"]["b"], 6);
    EXPECT_LE(r.doc()["max_deviation"]["value"].get<double>(), 1e-10);
}

TEST(cli, perm_compose) {
    const CliRun r = run({"perm", "compose", "(1 2)", "(2 3)", "--deterministic"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(r.doc()["results"]["p o q"]["cycles"], "(1 2 3)");
}

TEST(cli, perm_one_line_and_invert) {
    const CliRun r = run({"perm", "invert", "[2,3,1]", "--deterministic"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_EQ(r.doc()["results"]["inverse"]["one_line"], "[3,1,2]");
}

TEST(cli, perm_parity) {
    EXPECT_EQ(run({"perm", "parity", "(1 2 3 4)", "--deterministic"}).doc()["parity"], "odd");
}

TEST(cli, perm_families_n7) {
    const CliRun r = run({"perm", "families", "--n", "7", "--deterministic"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    EXPECT_TRUE(r.doc()["checks"]["conjugacy"].get<bool>());
    EXPECT_TRUE(r.doc()["checks"]["commutator_identity"].get<bool>());
}

TEST(cli, perm_errors) {
    EXPECT_EQ(run({"perm", "compose", "(1 2)"}).code, kExitInputError);
    EXPECT_EQ(run({"perm", "rotate", "(1 2)"}).code, kExitInputError);
    EXPECT_EQ(run({"perm", "parity", "(1 1)"}).code, kExitInputError);
}

TEST(cli, verify_nogo_only) {
    const CliRun r = run({"verify", "--nogo", "4", "--trials", "10", "--deterministic"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    const json nogo = r.doc()["nogo"];
    EXPECT_EQ(nogo["exhaustive_triples"], 13824);
    EXPECT_EQ(nogo["exhaustive_solutions"], 0);
    EXPECT_EQ(nogo["determinant_table"].size(), 4u);
}

TEST(cli, csv_and_human_formats) {
    const CliRun csv = run({"invariant", "--random", "3", "--format", "csv", "--deterministic"});
    ASSERT_EQ(csv.code, kExitOk);
    EXPECT_EQ(csv.out.rfind("method,re,im,tolerance\n", 0), 0u);
    const CliRun human = run({"invariant", "--random", "3", "--format", "human", "--deterministic"});
    ASSERT_EQ(human.code, kExitOk);
    EXPECT_NE(human.out.find("command: invariant"), std::string::npos);
}

TEST(cli, usage_errors) {
    EXPECT_EQ(run({}).code, kExitInputError);
    EXPECT_EQ(run({"bogus"}).code, kExitInputError);
    EXPECT_EQ(run({"protocol", "--family", "other", "--random", "3"}).code, kExitInputError);
    EXPECT_EQ(run({"--help"}).code, kExitOk);
}

}  // namespace
}  // namespace qswitch
