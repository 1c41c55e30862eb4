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
#include <cstdint>
#include <vector>

#include "gmsfit/errors.hpp"
#include "gmsfit/fitness_law.hpp"
#include "gmsfit/rng.hpp"
#include "gmsfit/simulation.hpp"
#include "gmsfit/stats.hpp"

using gmsfit::DomainError;
using gmsfit::EmpiricalDistribution;
using gmsfit::ExcursionRecord;
using gmsfit::ModelParams;
using gmsfit::run_full_simulation;
using gmsfit::SimConfig;
using gmsfit::simulate_fitness_histograms;

namespace {

SimConfig excursions_config(double p, int m, std::uint64_t n,
                            std::uint64_t seed, unsigned workers = 1) {
  SimConfig config;
  config.params = ModelParams{p, m};
  config.n_excursions = n;
  config.seed = seed;
  config.workers = workers;
  return config;
}

SimConfig steps_config(double p, int m, std::uint64_t budget,
                       std::uint64_t seed, unsigned workers = 1) {
  SimConfig config;
  config.params = ModelParams{p, m};
  config.n_steps = budget;
  config.seed = seed;
  config.workers = workers;
  return config;
}

bool same_records(const std::vector<ExcursionRecord>& a,
                  const std::vector<ExcursionRecord>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].length != b[i].length || a[i].births != b[i].births ||
        a[i].deaths != b[i].deaths ||
        a[i].strongest_fitness != b[i].strongest_fitness) {
      return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("config validation") {
  SimConfig config;
  config.params = ModelParams{0.3, 1};
  CHECK_THROWS_AS(config.validate(), DomainError);  // no mode set
  config.n_excursions = 10;
  config.n_steps = 10;
  CHECK_THROWS_AS(config.validate(), DomainError);  // both modes set
  config.n_steps.reset();
  CHECK_NOTHROW(config.validate());
  config.n_excursions = 0;
  CHECK_THROWS_AS(config.validate(), DomainError);
  config.n_excursions = 10;
  config.workers = 0;
  CHECK_THROWS_AS(config.validate(), DomainError);
}

TEST_CASE("record invariants hold for every excursion") {
  const auto records = run_full_simulation(excursions_config(0.4, 3, 2000, 5));
  REQUIRE(records.size() == 2000);
  for (const auto& r : records) {
    CHECK(r.births == r.deaths);
    CHECK(r.length == r.births + r.deaths - 3 + 1);
    CHECK(r.length >= 4);
    CHECK(r.strongest_fitness > 0.0);
    CHECK(r.strongest_fitness < 1.0);
  }
}

TEST_CASE("identical config reproduces identical records") {
  const auto config = excursions_config(0.45, 2, 3000, 99);
  const auto a = run_full_simulation(config);
  const auto b = run_full_simulation(config);
  CHECK(same_records(a, b));
}

TEST_CASE("worker count cannot change the output") {
  const auto base = run_full_simulation(excursions_config(0.4, 2, 4000, 17, 1));
  for (unsigned workers : {2U, 3U, 7U}) {
    const auto parallel =
        run_full_simulation(excursions_config(0.4, 2, 4000, 17, workers));
    CHECK_MESSAGE(same_records(base, parallel), "workers=" << workers);
  }
  // Also in budget mode, where speculative waves do the truncation.
  const auto steps_base =
      run_full_simulation(steps_config(0.45, 3, 30000, 23, 1));
  const auto steps_parallel =
      run_full_simulation(steps_config(0.45, 3, 30000, 23, 4));
  CHECK(same_records(steps_base, steps_parallel));
}

TEST_CASE("different seeds decouple the runs") {
  const auto a = run_full_simulation(excursions_config(0.4, 1, 100, 1));
  const auto b = run_full_simulation(excursions_config(0.4, 1, 100, 2));
  CHECK_FALSE(same_records(a, b));
}

TEST_CASE("shortest possible excursion dominates when p is small") {
  // With p = 0.3 and m = 1, an excursion is (birth, death) with
  // probability q = 0.7: the walk drops to -1 immediately.
  const auto records = run_full_simulation(excursions_config(0.3, 1, 20000, 8));
  std::size_t minimal = 0;
  for (const auto& r : records) {
    if (r.births == 1 && r.deaths == 1) ++minimal;
  }
  const double fraction =
      static_cast<double>(minimal) / static_cast<double>(records.size());
  // Three sigma = 3 * sqrt(0.21/20000) = 0.0097.
  CHECK(std::abs(fraction - 0.7) < 0.01);
}

TEST_CASE("budget mode emits the maximal complete prefix") {
  const std::uint64_t budget = 30000;
  const auto by_steps = run_full_simulation(steps_config(0.35, 2, budget, 31));
  REQUIRE(!by_steps.empty());
  std::uint64_t events = 0;
  for (const auto& r : by_steps) events += r.births + r.deaths;
  CHECK(events <= budget);
  // The same seed run by excursion count reproduces exactly this prefix...
  const auto by_count = run_full_simulation(
      excursions_config(0.35, 2, by_steps.size(), 31));
  CHECK(same_records(by_steps, by_count));
  // ...and the next excursion would not have fit the budget.
  const auto one_more = run_full_simulation(
      excursions_config(0.35, 2, by_steps.size() + 1, 31));
  const auto& next = one_more.back();
  CHECK(events + next.births + next.deaths > budget);
}

TEST_CASE("a budget smaller than the first excursion yields no records") {
  // m = 4 means the revival alone is 4 events, so a 3-event budget cannot
  // complete anything; the run must stop cleanly rather than error out.
  const auto records = run_full_simulation(steps_config(0.3, 4, 3, 12));
  CHECK(records.empty());
}

TEST_CASE("strongest fitness sample matches the analytic law") {
  const ModelParams params{0.25, 1};
  const auto records =
      run_full_simulation(excursions_config(params.p, params.m, 20000, 271));
  std::vector<double> strongest;
  strongest.reserve(records.size());
  for (const auto& r : records) strongest.push_back(r.strongest_fitness);
  const EmpiricalDistribution dist(std::move(strongest));
  const auto report = gmsfit::ks_one_sample(
      dist, [&](double t) { return gmsfit::fitness_cdf(params, t); });
  CHECK_MESSAGE(report.passed, "statistic=" << report.statistic);

  // Same check at the critical point, m = 1, against the closed form
  // (exact at every t, so the reference itself cannot fail to evaluate).
  const auto critical = run_full_simulation(excursions_config(0.5, 1, 5000, 33));
  std::vector<double> critical_strongest;
  critical_strongest.reserve(critical.size());
  for (const auto& r : critical) {
    critical_strongest.push_back(r.strongest_fitness);
  }
  const EmpiricalDistribution critical_dist(std::move(critical_strongest));
  const auto critical_report = gmsfit::ks_one_sample(
      critical_dist,
      [](double t) { return gmsfit::fitness_cdf_closed_m1(0.5, t); });
  CHECK_MESSAGE(critical_report.passed,
                "statistic=" << critical_report.statistic);
}

TEST_CASE("full simulator and shortcut sampler draw the same law") {
  const ModelParams params{0.3, 2};
  constexpr std::uint64_t kSamples = 20000;
  const auto full =
      run_full_simulation(excursions_config(params.p, params.m, kSamples, 41));
  std::vector<double> full_strongest;
  std::vector<double> shortcut_strongest;
  full_strongest.reserve(kSamples);
  shortcut_strongest.reserve(kSamples);
  for (const auto& r : full) full_strongest.push_back(r.strongest_fitness);
  for (std::uint64_t i = 0; i < kSamples; ++i) {
    auto rng = gmsfit::make_stream(911, i);
    shortcut_strongest.push_back(
        gmsfit::sample_excursion_shortcut(params, rng).strongest_fitness);
  }
  const auto report =
      gmsfit::ks_two_sample(EmpiricalDistribution(std::move(full_strongest)),
                            EmpiricalDistribution(std::move(shortcut_strongest)));
  CHECK_MESSAGE(report.passed, "statistic=" << report.statistic);
}

TEST_CASE("histogram series reproduces the qualitative picture") {
  const auto series = simulate_fitness_histograms(0.25, {1, 10}, 20000, 10, 77);
  REQUIRE(series.size() == 2);
  CHECK(series[0].m == 1);
  CHECK(series[1].m == 10);
  CHECK(series[1].sample_mean > series[0].sample_mean);
  for (const auto& s : series) {
    CHECK(s.n_excursions >= 1);
    CHECK(std::abs(s.sample_mean - s.analytic_mean) < 0.05);
    std::uint64_t total = 0;
    for (auto c : s.hist.counts) total += c;
    CHECK(total == s.n_excursions);
  }
  // A single bin swallows every excursion.
  const auto single = simulate_fitness_histograms(0.25, {1}, 20000, 1, 77);
  CHECK(single[0].hist.counts[0] == single[0].n_excursions);
}

TEST_CASE("histogram series rejects tiny budgets") {
  CHECK_THROWS_AS(simulate_fitness_histograms(0.25, {1}, 5000, 10, 1),
                  DomainError);
}
