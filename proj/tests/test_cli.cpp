// Copyright 2026 gmsfit authors.
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "json.hpp"
#include "test_util.hpp"

// Provided by the build: absolute path to the command-line binary.
#ifndef GMSFIT_CLI_PATH
#error "GMSFIT_CLI_PATH must be defined by the build"
#endif

namespace {

const std::string kCli = GMSFIT_CLI_PATH;

testutil::CliResult run(const std::string& args) {
  return testutil::run_cli(kCli + " " + args + " 2>/dev/null");
}

double cell(const std::vector<std::vector<std::string>>& rows, std::size_t r,
            std::size_t c) {
  return std::stod(rows.at(r).at(c));
}

}  // namespace

TEST_CASE("exact emits the cdf/pdf table with a closing row") {
  const auto result = run("exact --p 0.5 --m 1 --grid 5");
  REQUIRE(result.exit_code == 0);
  const auto rows = testutil::parse_csv(result.out);
  REQUIRE(rows.size() == 6);  // header + 5 grid points
  CHECK(rows[0] == std::vector<std::string>{"t", "cdf", "pdf"});
  CHECK(cell(rows, 1, 0) == 0.0);
  CHECK(cell(rows, 1, 1) == 0.0);
  // Closed form at p = 1/2, m = 1: cdf(t) = 1 - sqrt(1 - t), so cdf(3/4) = 1/2.
  CHECK(cell(rows, 4, 0) == doctest::Approx(0.75));
  CHECK(cell(rows, 4, 1) == doctest::Approx(0.5).epsilon(1e-12));
  // Final row closes the distribution and leaves the density cell empty.
  CHECK(cell(rows, 5, 0) == 1.0);
  CHECK(cell(rows, 5, 1) == doctest::Approx(1.0).epsilon(1e-10));
  REQUIRE(rows[5].size() == 3);
  CHECK(rows[5][2].empty());
}

TEST_CASE("exact cdf column is nondecreasing and closes at one") {
  const auto result = run("exact --p 0.25 --m 10 --grid 101");
  REQUIRE(result.exit_code == 0);
  const auto rows = testutil::parse_csv(result.out);
  REQUIRE(rows.size() == 102);
  double prev = -1.0;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const double cdf = cell(rows, r, 1);
    CHECK(cdf >= prev);
    prev = cdf;
    if (r + 1 < rows.size()) CHECK(cell(rows, r, 2) >= 0.0);
  }
  CHECK(prev == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("pdf is an alias of exact") {
  const auto a = run("exact --p 0.3 --m 2 --grid 9");
  const auto b = run("pdf --p 0.3 --m 2 --grid 9");
  REQUIRE(a.exit_code == 0);
  REQUIRE(b.exit_code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("exact rejects supercritical p with a usage exit") {
  CHECK(run("exact --p 0.6 --m 1").exit_code == 2);
  CHECK(run("exact --p 0.5 --m 0").exit_code == 2);
  CHECK(run("exact --p 0.5 --m 1 --grid 1").exit_code == 2);
}

TEST_CASE("mean lists one row per m with the closed form only at p = 1/2") {
  // precision 17 makes the text round-trip exact for doubles.
  const auto critical = run("mean --p 0.5 --m 1,2,10 --precision 17");
  REQUIRE(critical.exit_code == 0);
  const auto rows = testutil::parse_csv(critical.out);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == std::vector<std::string>{
                       "m", "mean_exact", "mean_half_closed_form_if_p_half"});
  const int ms[] = {1, 2, 10};
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const int m = ms[r - 1];
    const double closed = 1.0 - 2.0 / ((m + 1.0) * (m + 2.0));
    CHECK(cell(rows, r, 0) == m);
    CHECK(cell(rows, r, 1) == doctest::Approx(closed).epsilon(1e-10));
    CHECK(cell(rows, r, 2) == doctest::Approx(closed).epsilon(1e-14));
  }

  const auto subcritical = run("mean --p 0.25 --m 3");
  REQUIRE(subcritical.exit_code == 0);
  const auto sub_rows = testutil::parse_csv(subcritical.out);
  REQUIRE(sub_rows.size() == 2);
  REQUIRE(sub_rows[1].size() == 3);
  CHECK(sub_rows[1][2].empty());
}

TEST_CASE("tau tabulates the excursion-length pmf with running mass") {
  const auto result = run("tau --p 0.25 --m 1 --kmax 5");
  REQUIRE(result.exit_code == 0);
  const auto rows = testutil::parse_csv(result.out);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] ==
        std::vector<std::string>{"length", "probability", "cumulative"});
  CHECK(cell(rows, 1, 0) == 2);
  CHECK(cell(rows, 1, 1) == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(cell(rows, 2, 0) == 4);
  CHECK(cell(rows, 2, 1) == doctest::Approx(0.140625).epsilon(1e-14));
  CHECK(cell(rows, 3, 0) == 6);
  CHECK(cell(rows, 3, 1) == doctest::Approx(0.052734375).epsilon(1e-14));
  CHECK(cell(rows, 3, 2) ==
        doctest::Approx(0.75 + 0.140625 + 0.052734375).epsilon(1e-14));
  CHECK(run("tau --p 0.25 --m 3 --kmax 2").exit_code == 2);
}

TEST_CASE("simulate is byte-identical across repeats and worker counts") {
  const std::string args = "simulate --p 0.4 --m 2 --excursions 500 --seed 1";
  const auto first = run(args + " --workers 1");
  const auto second = run(args + " --workers 1");
  const auto parallel = run(args + " --workers 4");
  REQUIRE(first.exit_code == 0);
  REQUIRE(second.exit_code == 0);
  REQUIRE(parallel.exit_code == 0);
  CHECK(first.out == second.out);
  CHECK(first.out == parallel.out);
  const auto rows = testutil::parse_csv(first.out);
  REQUIRE(rows.size() == 501);
  CHECK(rows[0] == std::vector<std::string>{"excursion_ordinal", "length",
                                            "births", "deaths",
                                            "strongest_fitness"});
  for (std::size_t r = 1; r < rows.size(); ++r) {
    CHECK(cell(rows, r, 0) == r - 1);
    CHECK(cell(rows, r, 2) == cell(rows, r, 3));  // births == deaths
  }
}

TEST_CASE("simulate requires exactly one run mode") {
  CHECK(run("simulate --p 0.4 --m 1 --seed 1").exit_code == 2);
  CHECK(run("simulate --p 0.4 --m 1 --excursions 10 --steps 10 --seed 1")
            .exit_code == 2);
  CHECK(run("simulate --p 0.4 --m 1 --excursions 0 --seed 1").exit_code == 2);
}

TEST_CASE("simulate histogram mode bins the strongest fitnesses") {
  const auto result = run(
      "simulate --p 0.3 --m 2 --excursions 2000 --seed 3 "
      "--mode histogram --bins 10");
  REQUIRE(result.exit_code == 0);
  const auto rows = testutil::parse_csv(result.out);
  REQUIRE(rows.size() == 11);
  CHECK(rows[0] == std::vector<std::string>{"bin_left", "bin_right", "count",
                                            "frequency"});
  double count_total = 0.0;
  double frequency_total = 0.0;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    CHECK(cell(rows, r, 0) == doctest::Approx((r - 1) / 10.0));
    CHECK(cell(rows, r, 1) == doctest::Approx(r / 10.0));
    count_total += cell(rows, r, 2);
    frequency_total += cell(rows, r, 3);
  }
  CHECK(count_total == 2000);
  CHECK(frequency_total == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("a budget too small for any excursion") {
  // Records mode: an empty table is a valid answer.
  const auto records = run("simulate --p 0.3 --m 4 --steps 3 --seed 5");
  CHECK(records.exit_code == 0);
  CHECK(testutil::parse_csv(records.out).size() == 1);  // header only
  // Histogram mode: nothing to bin is a usage error.
  const auto histogram =
      run("simulate --p 0.3 --m 4 --steps 3 --seed 5 --mode histogram");
  CHECK(histogram.exit_code == 2);
}

TEST_CASE("validate cross-checks both samplers and reports JSON") {
  const auto result =
      run("validate --p 0.25 --m 10 --excursions 20000 --seed 42");
  REQUIRE(result.exit_code == 0);
  const auto report = nlohmann::json::parse(result.out);
  REQUIRE(report.is_array());
  REQUIRE(report.size() == 3);
  const std::vector<std::string> names = {"full_vs_exact", "shortcut_vs_exact",
                                          "full_vs_shortcut"};
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(report[i]["test"] == names[i]);
    CHECK(report[i]["n"].get<double>() > 0.0);
    CHECK(report[i]["statistic"].get<double>() >= 0.0);
    CHECK(report[i]["p_value_bound"].get<double>() > 0.001);
    CHECK(report[i]["passed"] == true);
  }
}

TEST_CASE("validate with a corrupted reference must fail") {
  const auto result = run(
      "validate --p 0.25 --m 10 --excursions 20000 --seed 42 --corrupt-cdf");
  REQUIRE(result.exit_code == 1);
  const auto report = nlohmann::json::parse(result.out);
  CHECK(report[0]["passed"] == false);
  CHECK(report[1]["passed"] == false);
  // The two samplers still agree with each other; only the reference is off.
  CHECK(report[2]["passed"] == true);
}

TEST_CASE("hyp evaluates one series point") {
  const auto result = run("hyp --a 0.5 --b 1 --c 2 --z 0.5 --precision 17");
  REQUIRE(result.exit_code == 0);
  const auto rows = testutil::parse_csv(result.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == std::vector<std::string>{"a", "b", "c", "z", "value"});
  // 2F1(1/2, 1; 2; z) = 2(1 - sqrt(1-z))/z, so 4 - 2 sqrt(2) at z = 1/2.
  CHECK(cell(rows, 1, 4) ==
        doctest::Approx(4.0 - 2.0 * std::sqrt(2.0)).epsilon(1e-13));
  CHECK(run("hyp --a 1 --b 1 --c 2 --z 1.5").exit_code == 2);
  // Non-convergence (starved budget) is a numeric failure, not usage.
  CHECK(run("hyp --a 1 --b 2 --c 3 --z 0.99 --max-terms 1000").exit_code == 3);
}

TEST_CASE("json format carries the same tables") {
  const auto result = run("exact --p 0.5 --m 1 --grid 3 --format json");
  REQUIRE(result.exit_code == 0);
  const auto table = nlohmann::json::parse(result.out);
  REQUIRE(table.is_array());
  REQUIRE(table.size() == 3);
  CHECK(table[1]["t"] == 0.5);
  CHECK(table[1]["cdf"].get<double>() ==
        doctest::Approx(1.0 - std::sqrt(0.5)).epsilon(1e-12));
  CHECK(table[2]["pdf"].is_null());  // closing row has no density
}

TEST_CASE("output lands in the requested file") {
  const std::string path = "cli_test_mean_out.csv";
  std::remove(path.c_str());
  const auto result = run("mean --p 0.5 --m 2 --out " + path);
  REQUIRE(result.exit_code == 0);
  CHECK(result.out.empty());  // table went to the file instead
  FILE* file = std::fopen(path.c_str(), "rb");
  REQUIRE(file != nullptr);
  char buffer[256] = {0};
  const std::size_t got = std::fread(buffer, 1, sizeof(buffer) - 1, file);
  std::fclose(file);
  std::remove(path.c_str());
  const auto rows = testutil::parse_csv(std::string(buffer, got));
  REQUIRE(rows.size() == 2);
  CHECK(cell(rows, 1, 1) == doctest::Approx(5.0 / 6.0).epsilon(1e-12));
}

TEST_CASE("usage errors and help") {
  CHECK(run("unknown-subcommand").exit_code == 2);
  CHECK(run("exact --m 1").exit_code == 2);       // missing required --p
  CHECK(run("exact --p 0.5").exit_code == 2);     // missing required --m
  CHECK(run("mean --p 0.5 --m 1 --precision 3").exit_code == 2);
  CHECK(run("mean --p 0.5 --m 1 --format yaml").exit_code == 2);
  CHECK(run("--help").exit_code == 0);
}
