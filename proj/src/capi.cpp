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

#include "gmsfit.h"

#include <exception>
#include <memory>
#include <new>
#include <string>
#include <utility>
#include <vector>

#include "gmsfit/errors.hpp"
#include "gmsfit/excursion.hpp"
#include "gmsfit/fitness_law.hpp"
#include "gmsfit/hypergeom.hpp"
#include "gmsfit/rng.hpp"
#include "gmsfit/simulation.hpp"
#include "gmsfit/stats.hpp"

struct gmsfit_tau_table {
  gmsfit::LengthPmfTable table;
};

struct gmsfit_records {
  std::vector<gmsfit::ExcursionRecord> records;
};

namespace {

thread_local std::string g_last_error;

// Runs `body`, translating exceptions into status codes and the per-thread
// error message.
template <typename F>
int guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return GMSFIT_OK;
  } catch (const gmsfit::Error& e) {
    g_last_error = e.what();
    return static_cast<int>(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return GMSFIT_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return GMSFIT_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return GMSFIT_ERR_INTERNAL;
  }
}

int fail_domain(const char* message) {
  g_last_error = message;
  return GMSFIT_ERR_DOMAIN;
}

gmsfit::SeriesControl to_ctrl(const gmsfit_series_ctrl* ctrl) {
  if (ctrl == nullptr) return gmsfit::SeriesControl{};
  gmsfit::SeriesControl out;
  out.rel_tol = ctrl->rel_tol;
  out.max_terms = ctrl->max_terms;
  out.boundary_switch = ctrl->boundary_switch;
  return out;
}

void fill_report(const gmsfit::KsReport& report, gmsfit_ks_report* out) {
  out->statistic = report.statistic;
  out->n = report.n;
  out->p_value_bound = report.p_value_bound;
  out->passed = report.passed ? 1 : 0;
}

std::vector<double> strongest_of(const gmsfit_records* records) {
  std::vector<double> values;
  values.reserve(records->records.size());
  for (const auto& r : records->records) values.push_back(r.strongest_fitness);
  return values;
}

}  // namespace

extern "C" {

const char* gmsfit_last_error(void) { return g_last_error.c_str(); }

const char* gmsfit_version(void) { return "0.1.0"; }

gmsfit_series_ctrl gmsfit_series_ctrl_default(void) {
  const gmsfit::SeriesControl defaults;
  gmsfit_series_ctrl ctrl;
  ctrl.rel_tol = defaults.rel_tol;
  ctrl.max_terms = defaults.max_terms;
  ctrl.boundary_switch = defaults.boundary_switch;
  return ctrl;
}

int gmsfit_hyp2f1(double a, double b, double c, double z,
                  const gmsfit_series_ctrl* ctrl, double* out) {
  if (out == nullptr) return fail_domain("gmsfit_hyp2f1: null out");
  return guarded([&] { *out = gmsfit::hyp2f1(a, b, c, z, to_ctrl(ctrl)); });
}

int gmsfit_cdf(double p, int m, double t, const gmsfit_series_ctrl* ctrl,
               double* out) {
  if (out == nullptr) return fail_domain("gmsfit_cdf: null out");
  return guarded([&] {
    *out = gmsfit::fitness_cdf(gmsfit::ModelParams{p, m}, t, to_ctrl(ctrl));
  });
}

int gmsfit_cdf_closed_m1(double p, double t, double* out) {
  if (out == nullptr) return fail_domain("gmsfit_cdf_closed_m1: null out");
  return guarded([&] { *out = gmsfit::fitness_cdf_closed_m1(p, t); });
}

int gmsfit_pdf(double p, int m, double t, const gmsfit_series_ctrl* ctrl,
               double* out) {
  if (out == nullptr) return fail_domain("gmsfit_pdf: null out");
  return guarded([&] {
    *out = gmsfit::fitness_pdf(gmsfit::ModelParams{p, m}, t, to_ctrl(ctrl));
  });
}

int gmsfit_mean(double p, int m, const gmsfit_series_ctrl* ctrl, double* out) {
  if (out == nullptr) return fail_domain("gmsfit_mean: null out");
  return guarded([&] {
    *out = gmsfit::fitness_mean(gmsfit::ModelParams{p, m}, to_ctrl(ctrl));
  });
}

int gmsfit_mean_critical(int m, double* out) {
  if (out == nullptr) return fail_domain("gmsfit_mean_critical: null out");
  return guarded([&] { *out = gmsfit::fitness_mean_critical(m); });
}

int gmsfit_excursion_pmf(double p, int m, uint64_t k, double* out) {
  if (out == nullptr) return fail_domain("gmsfit_excursion_pmf: null out");
  return guarded([&] {
    *out = gmsfit::first_passage_pmf(gmsfit::ModelParams{p, m}, k);
  });
}

int gmsfit_tau_table_build(double p, int m, uint64_t k_max,
                           gmsfit_tau_table** out) {
  if (out == nullptr) return fail_domain("gmsfit_tau_table_build: null out");
  return guarded([&] {
    auto table = std::make_unique<gmsfit_tau_table>();
    table->table =
        gmsfit::length_pmf_table(gmsfit::ModelParams{p, m}, k_max);
    *out = table.release();
  });
}

size_t gmsfit_tau_table_size(const gmsfit_tau_table* table) {
  return table == nullptr ? 0 : table->table.entries.size();
}

uint64_t gmsfit_tau_table_length(const gmsfit_tau_table* table, size_t i) {
  if (table == nullptr || i >= table->table.entries.size()) return 0;
  return table->table.entries[i].length;
}

double gmsfit_tau_table_probability(const gmsfit_tau_table* table, size_t i) {
  if (table == nullptr || i >= table->table.entries.size()) return 0.0;
  return table->table.entries[i].probability;
}

double gmsfit_tau_table_mass(const gmsfit_tau_table* table) {
  return table == nullptr ? 0.0 : table->table.mass;
}

void gmsfit_tau_table_free(gmsfit_tau_table* table) { delete table; }

int gmsfit_simulate_full(double p, int m, int by_steps, uint64_t count,
                         uint64_t seed, unsigned workers,
                         gmsfit_records** out) {
  if (out == nullptr) return fail_domain("gmsfit_simulate_full: null out");
  return guarded([&] {
    gmsfit::SimConfig config;
    config.params = gmsfit::ModelParams{p, m};
    if (by_steps != 0) {
      config.n_steps = count;
    } else {
      config.n_excursions = count;
    }
    config.seed = seed;
    config.workers = workers;
    auto records = std::make_unique<gmsfit_records>();
    records->records = gmsfit::run_full_simulation(config);
    *out = records.release();
  });
}

int gmsfit_sample_shortcut(double p, int m, uint64_t count, uint64_t seed,
                           gmsfit_records** out) {
  if (out == nullptr) return fail_domain("gmsfit_sample_shortcut: null out");
  return guarded([&] {
    if (count < 1) {
      throw gmsfit::DomainError("gmsfit_sample_shortcut: count must be >= 1");
    }
    const gmsfit::ModelParams params{p, m};
    params.validate();
    auto records = std::make_unique<gmsfit_records>();
    records->records.reserve(count);
    for (uint64_t i = 0; i < count; ++i) {
      auto rng = gmsfit::make_stream(seed, i);
      records->records.push_back(
          gmsfit::sample_excursion_shortcut(params, rng));
    }
    *out = records.release();
  });
}

size_t gmsfit_records_size(const gmsfit_records* records) {
  return records == nullptr ? 0 : records->records.size();
}

uint64_t gmsfit_records_length(const gmsfit_records* records, size_t i) {
  if (records == nullptr || i >= records->records.size()) return 0;
  return records->records[i].length;
}

uint64_t gmsfit_records_births(const gmsfit_records* records, size_t i) {
  if (records == nullptr || i >= records->records.size()) return 0;
  return records->records[i].births;
}

uint64_t gmsfit_records_deaths(const gmsfit_records* records, size_t i) {
  if (records == nullptr || i >= records->records.size()) return 0;
  return records->records[i].deaths;
}

double gmsfit_records_strongest(const gmsfit_records* records, size_t i) {
  if (records == nullptr || i >= records->records.size()) return 0.0;
  return records->records[i].strongest_fitness;
}

void gmsfit_records_free(gmsfit_records* records) { delete records; }

int gmsfit_ks_records_vs_exact(const gmsfit_records* records, double p, int m,
                               int corrupt_cdf, double threshold,
                               const gmsfit_series_ctrl* ctrl,
                               gmsfit_ks_report* out) {
  if (out == nullptr || records == nullptr) {
    return fail_domain("gmsfit_ks_records_vs_exact: null argument");
  }
  return guarded([&] {
    const gmsfit::ModelParams params{p, m};
    params.validate();
    const gmsfit::SeriesControl series_ctrl = to_ctrl(ctrl);
    const gmsfit::EmpiricalDistribution dist(strongest_of(records));
    auto cdf = [&](double t) {
      const double f = gmsfit::fitness_cdf(params, t, series_ctrl);
      return corrupt_cdf != 0 ? f * f : f;
    };
    fill_report(gmsfit::ks_one_sample(dist, cdf, threshold), out);
  });
}

int gmsfit_ks_two_sample(const gmsfit_records* a, const gmsfit_records* b,
                         double threshold, gmsfit_ks_report* out) {
  if (out == nullptr || a == nullptr || b == nullptr) {
    return fail_domain("gmsfit_ks_two_sample: null argument");
  }
  return guarded([&] {
    const gmsfit::EmpiricalDistribution dist_a(strongest_of(a));
    const gmsfit::EmpiricalDistribution dist_b(strongest_of(b));
    fill_report(gmsfit::ks_two_sample(dist_a, dist_b, threshold), out);
  });
}

int gmsfit_histogram(const gmsfit_records* records, size_t bins, double lo,
                     double hi, uint64_t* counts, uint64_t* below,
                     uint64_t* above) {
  if (records == nullptr || counts == nullptr) {
    return fail_domain("gmsfit_histogram: null argument");
  }
  return guarded([&] {
    const gmsfit::EmpiricalDistribution dist(strongest_of(records));
    const gmsfit::Histogram h = gmsfit::histogram(dist, bins, lo, hi);
    for (size_t i = 0; i < bins; ++i) counts[i] = h.counts[i];
    if (below != nullptr) *below = h.below;
    if (above != nullptr) *above = h.above;
  });
}

}  // extern "C"
