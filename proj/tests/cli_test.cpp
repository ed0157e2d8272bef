// Copyright 2026 The telepovm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli/cli.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "telepovm/errors.hpp"
#include "telepovm/povm.hpp"
#include "telepovm/protocols.hpp"
#include "csv_reader.hpp"

namespace telepovm::cli {
namespace {

using testing::read_csv;
using testing::records;

struct Invocation {
  int code;
  std::string out;
  std::string err;
};

Invocation invoke(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = main_entry(args, out, err);
  return {code, out.str(), err.str()};
}

double num(const std::map<std::string, std::string>& row, const char* key) {
  return std::stod(row.at(key));
}

TEST(ParseRange, SingleValueAndSweep) {
  EXPECT_EQ(parse_range("p", "0.25").values, (std::vector<double>{0.25}));
  const Range r = parse_range("a2", "0.5:1.0:0.1");
  ASSERT_EQ(r.values.size(), 6u);
  EXPECT_EQ(r.values.front(), 0.5);
  EXPECT_EQ(r.values.back(), 1.0);
  EXPECT_EQ(r.name, "a2");
  EXPECT_EQ(parse_range("n", "1:16:5").values,
            (std::vector<double>{1, 6, 11, 16}));
  EXPECT_EQ(parse_range("n", "1:15:5").values,
            (std::vector<double>{1, 6, 11}));
  EXPECT_EQ(parse_range("n", "2:2:1").values, (std::vector<double>{2}));
}

TEST(ParseRange, StopWithinSlackIsIncluded) {
  const Range r = parse_range("a2", "0.5:0.8:0.1");
  ASSERT_EQ(r.values.size(), 4u);
  EXPECT_EQ(r.values.back(), 0.8);
}

TEST(ParseRange, Rejects) {
  EXPECT_THROW(parse_range("p", ""), ValidationError);
  EXPECT_THROW(parse_range("p", "x"), ValidationError);
  EXPECT_THROW(parse_range("p", "0.1:0.2"), ValidationError);
  EXPECT_THROW(parse_range("p", "0.1:0.2:0"), ValidationError);
  EXPECT_THROW(parse_range("p", "0.1:0.2:-1"), ValidationError);
  EXPECT_THROW(parse_range("p", "0.3:0.2:0.1"), ValidationError);
  EXPECT_THROW(parse_range("p", "0.1:0.2:0.1:"), ValidationError);
  EXPECT_THROW(parse_range("p", "1e400"), ValidationError);
  EXPECT_THROW(parse_range("p", "0.5abc"), ValidationError);
}

TEST(Validate, Domains) {
  RunConfig c;
  EXPECT_NO_THROW(validate(c));
  c.trials = 0;
  EXPECT_THROW(validate(c), ValidationError);
  c = RunConfig{};
  c.sweep.push_back(Range{"a2", {0.4}});
  EXPECT_THROW(validate(c), ValidationError);
  c.sweep = {Range{"p", {1.0}}};
  EXPECT_THROW(validate(c), ValidationError);
  c.sweep = {Range{"n", {0.5}}};
  EXPECT_THROW(validate(c), ValidationError);
  c.sweep = {Range{"epsilon", {0.0}}};
  EXPECT_THROW(validate(c), ValidationError);
  c.sweep = {Range{"p", {}}};
  EXPECT_THROW(validate(c), ValidationError);
  c = RunConfig{};
  c.alpha = 1.0;
  EXPECT_THROW(validate(c), ValidationError);
  c = RunConfig{};
  c.povm = "sic";
  EXPECT_THROW(validate(c), ValidationError);
}

TEST(Render, EmptyTableIsHeaderOnly) {
  const Table t{{"a", "b"}, {}};
  EXPECT_EQ(render(t, Format::Csv), "# schema=1\na,b\n");
  EXPECT_EQ(render(t, Format::Json), "[]\n");
}

TEST(Render, CsvQuotingAndTypes) {
  const Table t{{"s", "b", "i", "u", "d", "none"},
                {{std::string("x,\"y\"\nz"), true, std::int64_t{-3},
                  std::uint64_t{7}, 0.1, std::monostate{}}}};
  const std::string csv = render(t, Format::Csv);
  EXPECT_EQ(csv,
            "# schema=1\ns,b,i,u,d,none\n\"x,\"\"y\"\"\nz\",true,-3,7,"
            "0.10000000000000001,\n");
  const auto rows = read_csv(csv);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1][0], "x,\"y\"\nz");
}

TEST(Render, FloatRoundTrip) {
  const Table t{{"d"}, {{0.15625}, {1.0 / 3.0}, {1e-300}}};
  const auto rows = read_csv(render(t, Format::Csv));
  EXPECT_EQ(std::stod(rows[1][0]), 0.15625);
  EXPECT_EQ(rows[1][0], "0.15625");
  EXPECT_EQ(std::stod(rows[2][0]), 1.0 / 3.0);
  EXPECT_EQ(std::stod(rows[3][0]), 1e-300);
}

TEST(Render, JsonSingleRow) {
  const Table t{{"name", "x", "missing"},
                {{std::string("a"), 0.5, std::monostate{}}}};
  EXPECT_EQ(render(t, Format::Json),
            "[\n  {\n    \"name\": \"a\",\n    \"x\": 0.5,\n    \"missing\": "
            "null\n  }\n]\n");
}

TEST(Run, QuasiSpotRow) {
  const Invocation r = invoke({"quasi", "--p", "0.5", "--n", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = records(r.out);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_NEAR(num(rows[0], "p_prime"), 0.8, 1e-12);
  EXPECT_EQ(num(rows[0], "success_prob"), 0.15625);
  EXPECT_NEAR(num(rows[0], "simulated_success_prob"), 0.15625, 1e-12);
  EXPECT_NEAR(num(rows[0], "simulated_p_prime"), 0.8, 1e-12);
  EXPECT_EQ(rows[0].at("epsilon"), "");
}

TEST(Run, QuasiPlannerRow) {
  const Invocation r = invoke({"quasi", "--p", "0.5", "--epsilon", "0.01"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = records(r.out);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(num(rows[0], "n"), 66.0);
  EXPECT_NEAR(num(rows[0], "success_prob"), 0.007690541781450872, 1e-15);
  EXPECT_GE(num(rows[0], "average_fidelity"), 0.99);
  EXPECT_EQ(invoke({"quasi", "--n", "2", "--epsilon", "0.1"}).code, 2);
}

TEST(Run, QuasiEmpiricalRateWithinThreeSigma) {
  const Invocation r = invoke(
      {"quasi", "--p", "0.5", "--n", "4", "--trials", "20000", "--seed", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto row = records(r.out).at(0);
  const double q = 0.15625;
  const double sigma = std::sqrt(q * (1 - q) / 20000.0);
  EXPECT_NEAR(num(row, "empirical_success_rate"), q, 3 * sigma);
}

TEST(Run, ConclusiveEmpiricalRate) {
  const Invocation r = invoke(
      {"conclusive", "--a2", "0.8", "--trials", "20000", "--seed", "7"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto row = records(r.out).at(0);
  EXPECT_NEAR(num(row, "success_probability"), 0.4, 1e-12);
  EXPECT_LE(std::abs(num(row, "z_score")), 3.0);
  EXPECT_EQ(row.at("wrong_outcomes"), "0");
  EXPECT_GE(num(row, "min_success_fidelity"), 1.0 - 1e-10);
}

TEST(Run, ConclusiveEdgesOfSweep) {
  const Invocation r =
      invoke({"conclusive", "--a2", "0.5:1:0.5", "--trials", "50"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = records(r.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].at("successes"), "50");
  EXPECT_EQ(rows[0].at("z_score"), "");
  EXPECT_EQ(rows[1].at("successes"), "0");
  EXPECT_EQ(rows[1].at("min_success_fidelity"), "");
}

TEST(Run, PovmCheckBasisInput) {
  const Invocation r =
      invoke({"povm-check", "--alpha-re", "1", "--beta-re", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = records(r.out);
  ASSERT_EQ(rows.size(), 4u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_LT(num(rows[i], "completeness_residual"), 1e-9);
    EXPECT_EQ(rows[i].at("psd_ok"), "true");
    EXPECT_EQ(rows[i].at("complete_ok"), "true");
  }
  EXPECT_EQ(rows[3].at("builder"), "discrimination-unnormalized");
  EXPECT_EQ(rows[3].at("complete_ok"), "false");
}

TEST(Run, SteerTelepovmOnSinglet) {
  const Invocation r = invoke({"steer", "--povm", "telepovm", "--alpha-re",
                               "0.6", "--beta-re", "0.8"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = records(r.out);
  ASSERT_EQ(rows.size(), 4u);
  // (beta, -alpha), (alpha, beta), (alpha, -beta), (beta, alpha)
  const double expected[4][2] = {{0.8, -0.6}, {0.6, 0.8}, {0.6, -0.8},
                                 {0.8, 0.6}};
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_NEAR(num(rows[i], "probability"), 0.25, 1e-12);
    EXPECT_NEAR(num(rows[i], "bob_0_re"), expected[i][0], 1e-12);
    EXPECT_NEAR(num(rows[i], "bob_1_re"), expected[i][1], 1e-12);
    EXPECT_LT(num(rows[i], "hjw_residual"), 1e-9);
  }
}

TEST(Run, SteerB92Overlap) {
  const Invocation r = invoke({"steer", "--povm", "b92", "--a2", "0.8"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = records(r.out);
  ASSERT_EQ(rows.size(), 2u);
  const double overlap = num(rows[0], "bob_0_re") * num(rows[1], "bob_0_re") +
                         num(rows[0], "bob_1_re") * num(rows[1], "bob_1_re");
  EXPECT_NEAR(overlap, 0.6, 1e-12);
}

TEST(Run, NaiveAnalyticColumnsMatchLibrary) {
  const Invocation r = invoke({"naive", "--a2", "0.5:1:0.1", "--trials", "10"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = records(r.out);
  ASSERT_EQ(rows.size(), 6u);
  const PureState phi{0.70710678118654752, 0.70710678118654752};
  for (const auto& row : rows) {
    const SchmidtPair s = SchmidtPair::from_a2(num(row, "a2"));
    EXPECT_NEAR(num(row, "phi_plus_probability_formula"),
                naive_phi_plus_probability(phi, s), 1e-12);
    EXPECT_NEAR(num(row, "phi_plus_fidelity_formula"),
                naive_phi_plus_fidelity(phi, s), 1e-12);
    EXPECT_NEAR(num(row, "phi_plus_probability"),
                num(row, "phi_plus_probability_formula"), 1e-10);
  }
  EXPECT_NEAR(num(rows[3], "phi_plus_fidelity"), 0.9, 1e-10);
}

TEST(Run, TeleportSummary) {
  const Invocation r = invoke({"teleport", "--trials", "200", "--seed", "9"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto row = records(r.out).at(0);
  EXPECT_LT(num(row, "max_probability_deviation"), 1e-10);
  EXPECT_GE(num(row, "min_fidelity"), 1.0 - 1e-10);
  const double total = num(row, "count_phi_plus") + num(row, "count_phi_minus") +
                       num(row, "count_psi_plus") + num(row, "count_psi_minus");
  EXPECT_EQ(total, 200.0);
}

TEST(Run, DeterministicOutput) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"teleport", "--trials", "300", "--seed", "11"},
           {"conclusive", "--a2", "0.6:0.9:0.1", "--trials", "300"},
           {"quasi", "--p", "0.2:0.8:0.3", "--trials", "300", "--format",
            "json"}}) {
    const Invocation a = invoke(args);
    const Invocation b = invoke(args);
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
  }
  EXPECT_NE(invoke({"teleport", "--trials", "50", "--seed", "1"}).out,
            invoke({"teleport", "--trials", "50", "--seed", "2"}).out);
}

TEST(Run, WritesFileAndReportsIoErrors) {
  const auto path =
      std::filesystem::temp_directory_path() / "telepovm_cli_test.csv";
  const Invocation w = invoke(
      {"povm-check", "--out", path.string(), "--format", "csv"});
  ASSERT_EQ(w.code, 0) << w.err;
  EXPECT_TRUE(w.out.empty());
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  EXPECT_EQ(buf.str(), invoke({"povm-check"}).out);
  std::filesystem::remove(path);

  EXPECT_EQ(invoke({"povm-check", "--out", "/nonexistent-dir/x/y.csv"}).code,
            1);
}

TEST(Run, ExitCodes) {
  EXPECT_EQ(invoke({"--help"}).code, 0);
  EXPECT_EQ(invoke({"quasi", "--help"}).code, 0);
  EXPECT_EQ(invoke({}).code, 2);
  EXPECT_EQ(invoke({"bogus"}).code, 2);
  EXPECT_EQ(invoke({"quasi", "--p", "1.5"}).code, 2);
  EXPECT_EQ(invoke({"quasi", "--p", "abc"}).code, 2);
  EXPECT_EQ(invoke({"quasi", "--unknown", "1"}).code, 2);
  EXPECT_EQ(invoke({"teleport", "--trials", "0"}).code, 2);
  EXPECT_EQ(invoke({"teleport", "--format", "xml"}).code, 2);
  EXPECT_EQ(invoke({"steer", "--povm", "sic"}).code, 2);
  EXPECT_EQ(invoke({"naive", "--alpha-re", "1"}).code, 2);
  const Invocation cap = invoke({"quasi", "--p", "0.001", "--epsilon", "1e-17"});
  EXPECT_EQ(cap.code, 2);
  EXPECT_NE(cap.err.find("2^53"), std::string::npos);
}

}  // namespace
}  // namespace telepovm::cli
