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

// Command-line front end for the gmsfit shared library (C API only).
//
// Exit codes: 0 success, 1 validation failure, 2 usage/flag error,
// 3 numeric or runtime failure.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gmsfit.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidationFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

using RecordsPtr =
    std::unique_ptr<gmsfit_records, decltype(&gmsfit_records_free)>;
using TauTablePtr =
    std::unique_ptr<gmsfit_tau_table, decltype(&gmsfit_tau_table_free)>;

struct OutputSpec {
  std::string path;            // empty = standard output
  std::string format = "csv";  // csv | json
  int precision = 12;
};

void add_output_flags(CLI::App* sub, OutputSpec& out,
                      const std::string& default_format) {
  out.format = default_format;
  sub->add_option("--out", out.path, "Output file (default: standard output)");
  sub->add_option("--format", out.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--precision", out.precision,
                  "Significant digits for numeric fields")
      ->check(CLI::Range(6, 17));
}

// Reports the library's last error and maps its status to an exit code.
int fail_status(int status) {
  std::cerr << "error: " << gmsfit_last_error() << "\n";
  return status == GMSFIT_ERR_DOMAIN ? kExitUsage : kExitNumeric;
}

std::string format_number(double value, int precision) {
  std::ostringstream os;
  os << std::setprecision(precision) << value;
  return os.str();
}

// A table whose cells are JSON values: null renders as an empty CSV cell,
// floats honor the requested precision, everything else keeps its JSON form.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<nlohmann::ordered_json>> rows;
};

std::string render_csv_cell(const nlohmann::ordered_json& cell, int precision) {
  if (cell.is_null()) return "";
  if (cell.is_string()) return cell.get<std::string>();
  if (cell.is_number_float()) {
    return format_number(cell.get<double>(), precision);
  }
  return cell.dump();  // integers, booleans
}

int write_table(const Table& table, const OutputSpec& out) {
  std::ostringstream body;
  if (out.format == "csv") {
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      body << (c > 0 ? "," : "") << table.columns[c];
    }
    body << "\n";
    for (const auto& row : table.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        body << (c > 0 ? "," : "")
             << render_csv_cell(row[c], out.precision);
      }
      body << "\n";
    }
  } else {
    nlohmann::ordered_json array = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
      nlohmann::ordered_json obj = nlohmann::ordered_json::object();
      for (std::size_t c = 0; c < row.size(); ++c) {
        obj[table.columns[c]] = row[c];
      }
      array.push_back(std::move(obj));
    }
    body << array.dump(2) << "\n";
  }
  if (out.path.empty()) {
    std::cout << body.str();
    return kExitOk;
  }
  std::ofstream file(out.path, std::ios::binary);
  if (!file) {
    std::cerr << "error: cannot open output file " << out.path << "\n";
    return kExitUsage;
  }
  file << body.str();
  return file.good() ? kExitOk : kExitNumeric;
}

// --- exact ---------------------------------------------------------------

struct ExactArgs {
  double p = 0.5;
  int m = 1;
  int grid = 201;
  gmsfit_series_ctrl ctrl = gmsfit_series_ctrl_default();
  OutputSpec out;
};

int cmd_exact(const ExactArgs& args) {
  if (args.grid < 2) {
    std::cerr << "error: --grid must be >= 2\n";
    return kExitUsage;
  }
  Table table;
  table.columns = {"t", "cdf", "pdf"};
  for (int j = 0; j < args.grid; ++j) {
    const double t =
        static_cast<double>(j) / static_cast<double>(args.grid - 1);
    double cdf = 0.0;
    int status = gmsfit_cdf(args.p, args.m, t, &args.ctrl, &cdf);
    if (status != GMSFIT_OK) return fail_status(status);
    // The density is reported on [0,1); the t = 1 row closes the CDF column
    // and leaves the pdf cell empty.
    nlohmann::ordered_json pdf_cell;
    if (j < args.grid - 1) {
      double pdf = 0.0;
      status = gmsfit_pdf(args.p, args.m, t, &args.ctrl, &pdf);
      if (status != GMSFIT_OK) return fail_status(status);
      pdf_cell = pdf;
    }
    table.rows.push_back({t, cdf, pdf_cell});
  }
  return write_table(table, args.out);
}

// --- mean ----------------------------------------------------------------

struct MeanArgs {
  double p = 0.5;
  std::vector<int> m_values;
  OutputSpec out;
};

int cmd_mean(const MeanArgs& args) {
  Table table;
  table.columns = {"m", "mean_exact", "mean_half_closed_form_if_p_half"};
  for (int m : args.m_values) {
    double mean = 0.0;
    const int status = gmsfit_mean(args.p, m, nullptr, &mean);
    if (status != GMSFIT_OK) return fail_status(status);
    nlohmann::ordered_json closed_cell;
    if (args.p == 0.5) {
      double closed = 0.0;
      const int closed_status = gmsfit_mean_critical(m, &closed);
      if (closed_status != GMSFIT_OK) return fail_status(closed_status);
      closed_cell = closed;
    }
    table.rows.push_back({m, mean, closed_cell});
  }
  return write_table(table, args.out);
}

// --- tau -----------------------------------------------------------------

struct TauArgs {
  double p = 0.5;
  int m = 1;
  std::uint64_t k_max = 0;
  OutputSpec out;
};

int cmd_tau(const TauArgs& args) {
  gmsfit_tau_table* raw = nullptr;
  const int status = gmsfit_tau_table_build(args.p, args.m, args.k_max, &raw);
  if (status != GMSFIT_OK) return fail_status(status);
  TauTablePtr table_handle(raw, &gmsfit_tau_table_free);
  Table table;
  table.columns = {"length", "probability", "cumulative"};
  double cumulative = 0.0;
  const std::size_t size = gmsfit_tau_table_size(raw);
  for (std::size_t i = 0; i < size; ++i) {
    cumulative += gmsfit_tau_table_probability(raw, i);
    table.rows.push_back({gmsfit_tau_table_length(raw, i),
                          gmsfit_tau_table_probability(raw, i), cumulative});
  }
  return write_table(table, args.out);
}

// --- simulate ------------------------------------------------------------

struct SimulateArgs {
  double p = 0.5;
  int m = 1;
  std::uint64_t excursions = 0;
  std::uint64_t steps = 0;
  bool excursions_set = false;
  bool steps_set = false;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  std::string mode = "records";
  std::size_t bins = 50;
  OutputSpec out;
};

void print_simulate_summary(const gmsfit_records* records, double p, int m,
                            int precision) {
  const std::size_t n = gmsfit_records_size(records);
  std::ostringstream line;
  line << std::setprecision(precision) << "summary: excursions=" << n;
  if (n > 0) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      sum += gmsfit_records_strongest(records, i);
    }
    const double sample_mean = sum / static_cast<double>(n);
    line << " sample_mean=" << sample_mean;
    double analytic = 0.0;
    if (gmsfit_mean(p, m, nullptr, &analytic) == GMSFIT_OK) {
      line << " analytic_mean=" << analytic
           << " abs_gap=" << std::abs(sample_mean - analytic);
    } else {
      // The summary is advisory; the mean can be out of numerical reach
      // (p extremely close to 1/2) while the simulation itself is fine.
      line << " analytic_mean=unavailable abs_gap=unavailable";
    }
  } else {
    line << " sample_mean=unavailable";
  }
  std::cerr << line.str() << "\n";
}

int cmd_simulate(const SimulateArgs& args) {
  if (args.excursions_set == args.steps_set) {
    std::cerr << "error: exactly one of --excursions and --steps is "
                 "required\n";
    return kExitUsage;
  }
  if (args.bins < 1) {
    std::cerr << "error: --bins must be >= 1\n";
    return kExitUsage;
  }
  gmsfit_records* raw = nullptr;
  const int status = gmsfit_simulate_full(
      args.p, args.m, args.steps_set ? 1 : 0,
      args.steps_set ? args.steps : args.excursions, args.seed, args.workers,
      &raw);
  if (status != GMSFIT_OK) return fail_status(status);
  RecordsPtr records(raw, &gmsfit_records_free);
  print_simulate_summary(raw, args.p, args.m, args.out.precision);

  Table table;
  if (args.mode == "records") {
    table.columns = {"excursion_ordinal", "length", "births", "deaths",
                     "strongest_fitness"};
    const std::size_t n = gmsfit_records_size(raw);
    for (std::size_t i = 0; i < n; ++i) {
      table.rows.push_back({i, gmsfit_records_length(raw, i),
                            gmsfit_records_births(raw, i),
                            gmsfit_records_deaths(raw, i),
                            gmsfit_records_strongest(raw, i)});
    }
  } else {
    if (gmsfit_records_size(raw) == 0) {
      std::cerr << "error: no complete excursion within the event budget; "
                   "nothing to bin\n";
      return kExitUsage;
    }
    std::vector<std::uint64_t> counts(args.bins, 0);
    const int hist_status = gmsfit_histogram(raw, args.bins, 0.0, 1.0,
                                             counts.data(), nullptr, nullptr);
    if (hist_status != GMSFIT_OK) return fail_status(hist_status);
    std::uint64_t in_range = 0;
    for (std::uint64_t c : counts) in_range += c;
    table.columns = {"bin_left", "bin_right", "count", "frequency"};
    for (std::size_t i = 0; i < args.bins; ++i) {
      const double left =
          static_cast<double>(i) / static_cast<double>(args.bins);
      const double right =
          static_cast<double>(i + 1) / static_cast<double>(args.bins);
      const double frequency =
          in_range == 0 ? 0.0
                        : static_cast<double>(counts[i]) /
                              static_cast<double>(in_range);
      table.rows.push_back({left, right, counts[i], frequency});
    }
  }
  return write_table(table, args.out);
}

// --- validate ------------------------------------------------------------

struct ValidateArgs {
  double p = 0.5;
  int m = 1;
  std::uint64_t excursions = 0;
  std::uint64_t seed = 0;
  double threshold = 0.001;
  bool corrupt_cdf = false;
  OutputSpec out;
};

int cmd_validate(const ValidateArgs& args) {
  if (!(args.threshold > 0.0 && args.threshold < 1.0)) {
    std::cerr << "error: --threshold must lie strictly between 0 and 1\n";
    return kExitUsage;
  }
  gmsfit_records* raw_full = nullptr;
  int status = gmsfit_simulate_full(args.p, args.m, 0, args.excursions,
                                    args.seed, 1, &raw_full);
  if (status != GMSFIT_OK) return fail_status(status);
  RecordsPtr full(raw_full, &gmsfit_records_free);

  // Salted seed so the shortcut sampler's streams are decorrelated from the
  // full simulator's (both derive per-excursion streams from their seed).
  const std::uint64_t shortcut_seed = args.seed ^ 0x9e3779b97f4a7c15ULL;
  gmsfit_records* raw_shortcut = nullptr;
  status = gmsfit_sample_shortcut(args.p, args.m, args.excursions,
                                  shortcut_seed, &raw_shortcut);
  if (status != GMSFIT_OK) return fail_status(status);
  RecordsPtr shortcut(raw_shortcut, &gmsfit_records_free);

  const int corrupt = args.corrupt_cdf ? 1 : 0;
  gmsfit_ks_report full_vs_exact;
  status = gmsfit_ks_records_vs_exact(raw_full, args.p, args.m, corrupt,
                                      args.threshold, nullptr,
                                      &full_vs_exact);
  if (status != GMSFIT_OK) return fail_status(status);
  gmsfit_ks_report shortcut_vs_exact;
  status = gmsfit_ks_records_vs_exact(raw_shortcut, args.p, args.m, corrupt,
                                      args.threshold, nullptr,
                                      &shortcut_vs_exact);
  if (status != GMSFIT_OK) return fail_status(status);
  gmsfit_ks_report full_vs_shortcut;
  status = gmsfit_ks_two_sample(raw_full, raw_shortcut, args.threshold,
                                &full_vs_shortcut);
  if (status != GMSFIT_OK) return fail_status(status);

  Table table;
  table.columns = {"test", "statistic", "n", "p_value_bound", "passed"};
  const auto add_row = [&table](const char* name,
                                const gmsfit_ks_report& report) {
    table.rows.push_back({name, report.statistic, report.n,
                          report.p_value_bound, report.passed != 0});
  };
  add_row("full_vs_exact", full_vs_exact);
  add_row("shortcut_vs_exact", shortcut_vs_exact);
  add_row("full_vs_shortcut", full_vs_shortcut);
  const int write_status = write_table(table, args.out);
  if (write_status != kExitOk) return write_status;
  const bool all_passed = full_vs_exact.passed != 0 &&
                          shortcut_vs_exact.passed != 0 &&
                          full_vs_shortcut.passed != 0;
  return all_passed ? kExitOk : kExitValidationFailed;
}

// --- hyp -----------------------------------------------------------------

struct HypArgs {
  double a = 0.0;
  double b = 0.0;
  double c = 1.0;
  double z = 0.0;
  gmsfit_series_ctrl ctrl = gmsfit_series_ctrl_default();
  OutputSpec out;
};

int cmd_hyp(const HypArgs& args) {
  double value = 0.0;
  const int status =
      gmsfit_hyp2f1(args.a, args.b, args.c, args.z, &args.ctrl, &value);
  if (status != GMSFIT_OK) return fail_status(status);
  Table table;
  table.columns = {"a", "b", "c", "z", "value"};
  table.rows.push_back({args.a, args.b, args.c, args.z, value});
  return write_table(table, args.out);
}

void add_series_ctrl_flags(CLI::App* sub, gmsfit_series_ctrl& ctrl) {
  sub->add_option("--rel-tol", ctrl.rel_tol,
                  "Relative stopping tolerance for the series");
  sub->add_option("--max-terms", ctrl.max_terms,
                  "Series term budget before reporting non-convergence");
  sub->add_option("--boundary-switch", ctrl.boundary_switch,
                  "Argument above which the transformed series is used");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact laws and simulators for the strongest fitness per "
               "excursion of a subcritical birth-death fitness model"};
  app.require_subcommand(1);

  ExactArgs exact_args;
  CLI::App* exact = app.add_subcommand(
      "exact", "Tabulate the exact CDF and density of the strongest fitness");
  exact->alias("pdf");
  exact->add_option("--p", exact_args.p, "Birth probability (0 < p <= 1/2)")
      ->required();
  exact->add_option("--m", exact_args.m, "Revival batch size (m >= 1)")
      ->required();
  exact->add_option("--grid", exact_args.grid,
                    "Number of grid points on [0,1], endpoints included");
  add_series_ctrl_flags(exact, exact_args.ctrl);
  add_output_flags(exact, exact_args.out, "csv");

  MeanArgs mean_args;
  CLI::App* mean = app.add_subcommand(
      "mean", "Expected strongest fitness for one or more batch sizes");
  mean->add_option("--p", mean_args.p, "Birth probability (0 < p <= 1/2)")
      ->required();
  mean->add_option("--m", mean_args.m_values,
                   "Comma-separated batch sizes, e.g. 1,2,10")
      ->required()
      ->delimiter(',');
  add_output_flags(mean, mean_args.out, "csv");

  TauArgs tau_args;
  CLI::App* tau = app.add_subcommand(
      "tau", "Tabulate the excursion-length probability mass function");
  tau->add_option("--p", tau_args.p, "Birth probability (0 < p <= 1/2)")
      ->required();
  tau->add_option("--m", tau_args.m, "Revival batch size (m >= 1)")
      ->required();
  tau->add_option("--kmax", tau_args.k_max,
                  "Largest first-passage step to tabulate (>= m)")
      ->required();
  add_output_flags(tau, tau_args.out, "csv");

  SimulateArgs sim_args;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "Run the event-by-event simulation and emit records or a "
                  "strongest-fitness histogram");
  simulate->add_option("--p", sim_args.p, "Birth probability (0 < p <= 1/2)")
      ->required();
  simulate->add_option("--m", sim_args.m, "Revival batch size (m >= 1)")
      ->required();
  CLI::Option* opt_excursions = simulate->add_option(
      "--excursions", sim_args.excursions, "Complete this many excursions");
  CLI::Option* opt_steps = simulate->add_option(
      "--steps", sim_args.steps,
      "Event budget (births + deaths); the trailing incomplete excursion "
      "is discarded");
  simulate->add_option("--seed", sim_args.seed, "RNG seed")->required();
  simulate->add_option("--workers", sim_args.workers,
                       "Worker threads (results are worker-invariant)");
  simulate->add_option("--mode", sim_args.mode, "Output mode")
      ->check(CLI::IsMember({"records", "histogram"}));
  simulate->add_option("--bins", sim_args.bins,
                       "Histogram bin count (histogram mode)");
  add_output_flags(simulate, sim_args.out, "csv");

  ValidateArgs val_args;
  CLI::App* validate = app.add_subcommand(
      "validate", "Cross-check both samplers against the analytic law "
                  "(Kolmogorov-Smirnov)");
  validate->add_option("--p", val_args.p, "Birth probability (0 < p <= 1/2)")
      ->required();
  validate->add_option("--m", val_args.m, "Revival batch size (m >= 1)")
      ->required();
  validate
      ->add_option("--excursions", val_args.excursions,
                   "Sample size for each sampler")
      ->required();
  validate->add_option("--seed", val_args.seed, "RNG seed")->required();
  validate->add_option("--threshold", val_args.threshold,
                       "P-value threshold below which a test fails");
  validate->add_flag("--corrupt-cdf", val_args.corrupt_cdf,
                     "Negative control: compare against a deliberately "
                     "wrong reference CDF (must fail)");
  add_output_flags(validate, val_args.out, "json");

  HypArgs hyp_args;
  CLI::App* hyp = app.add_subcommand(
      "hyp", "Evaluate the Gauss hypergeometric series (debug aid)");
  hyp->add_option("--a", hyp_args.a, "First numerator parameter")->required();
  hyp->add_option("--b", hyp_args.b, "Second numerator parameter")
      ->required();
  hyp->add_option("--c", hyp_args.c, "Denominator parameter")->required();
  hyp->add_option("--z", hyp_args.z, "Argument in [0,1]")->required();
  add_series_ctrl_flags(hyp, hyp_args.ctrl);
  add_output_flags(hyp, hyp_args.out, "csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  sim_args.excursions_set = opt_excursions->count() > 0;
  sim_args.steps_set = opt_steps->count() > 0;

  try {
    if (app.got_subcommand(exact)) return cmd_exact(exact_args);
    if (app.got_subcommand(mean)) return cmd_mean(mean_args);
    if (app.got_subcommand(tau)) return cmd_tau(tau_args);
    if (app.got_subcommand(simulate)) return cmd_simulate(sim_args);
    if (app.got_subcommand(validate)) return cmd_validate(val_args);
    if (app.got_subcommand(hyp)) return cmd_hyp(hyp_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
  std::cerr << "error: no subcommand selected\n";
  return kExitUsage;
}
