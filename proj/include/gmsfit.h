/* Copyright 2026 gmsfit authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the gmsfit shared library.
 *
 * Every fallible function returns a gmsfit status code and writes its result
 * through out-pointers; gmsfit_last_error() describes the most recent failure
 * on the calling thread. Opaque handles own their memory and must be released
 * with their matching _free function.
 */

#ifndef GMSFIT_H_
#define GMSFIT_H_

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

enum {
  GMSFIT_OK = 0,
  GMSFIT_ERR_DOMAIN = 1,         /* invalid argument or parameter set */
  GMSFIT_ERR_NONCONVERGENCE = 2, /* series failed to converge in budget */
  GMSFIT_ERR_RUNTIME_LIMIT = 3,  /* an excursion exceeded the event cap */
  GMSFIT_ERR_INTERNAL = 4        /* invariant violation or allocation bug */
};

/* Message for the calling thread's most recent failure ("" after success). */
const char* gmsfit_last_error(void);

const char* gmsfit_version(void);

/* ------------------------------------------------------------------ */
/* Hypergeometric series controls                                      */

typedef struct gmsfit_series_ctrl {
  double rel_tol;          /* relative stopping tolerance */
  int64_t max_terms;       /* series term budget before giving up */
  double boundary_switch;  /* argument above which the Euler form is used */
} gmsfit_series_ctrl;

gmsfit_series_ctrl gmsfit_series_ctrl_default(void);

/* Gauss hypergeometric 2F1(a,b;c;z) for 0 <= z <= 1. ctrl may be NULL for
 * defaults. */
int gmsfit_hyp2f1(double a, double b, double c, double z,
                  const gmsfit_series_ctrl* ctrl, double* out);

/* ------------------------------------------------------------------ */
/* Exact law of the strongest fitness per excursion                    */

/* CDF at t in [0,1], for birth probability 0 < p <= 1/2 and batch size
 * m >= 1. */
int gmsfit_cdf(double p, int m, double t, const gmsfit_series_ctrl* ctrl,
               double* out);

/* m = 1 closed form of the CDF (independent code path, used for
 * cross-checking). */
int gmsfit_cdf_closed_m1(double p, double t, double* out);

/* Density at t in [0,1). */
int gmsfit_pdf(double p, int m, double t, const gmsfit_series_ctrl* ctrl,
               double* out);

/* Mean of the strongest fitness. */
int gmsfit_mean(double p, int m, const gmsfit_series_ctrl* ctrl, double* out);

/* Closed-form mean at p = 1/2: 1 - 2/((m+1)(m+2)). */
int gmsfit_mean_critical(int m, double* out);

/* ------------------------------------------------------------------ */
/* Excursion-length law                                                */

/* P[excursion length = k+1] (first passage of the embedded walk to -m at
 * step k). Zero when k+m is odd; GMSFIT_ERR_DOMAIN when k < m. */
int gmsfit_excursion_pmf(double p, int m, uint64_t k, double* out);

typedef struct gmsfit_tau_table gmsfit_tau_table;

/* Tabulates the excursion-length pmf for all admissible k <= k_max. */
int gmsfit_tau_table_build(double p, int m, uint64_t k_max,
                           gmsfit_tau_table** out);
size_t gmsfit_tau_table_size(const gmsfit_tau_table* table);
uint64_t gmsfit_tau_table_length(const gmsfit_tau_table* table, size_t i);
double gmsfit_tau_table_probability(const gmsfit_tau_table* table, size_t i);
/* Total pmf mass captured by the table. */
double gmsfit_tau_table_mass(const gmsfit_tau_table* table);
void gmsfit_tau_table_free(gmsfit_tau_table* table);

/* ------------------------------------------------------------------ */
/* Simulation                                                          */

typedef struct gmsfit_records gmsfit_records;

/* Event-by-event simulation. When by_steps is zero, `count` is the number
 * of excursions to complete; otherwise it is the birth/death event budget
 * and the trailing incomplete excursion is discarded. Deterministic in
 * (seed, arguments) for any workers >= 1. */
int gmsfit_simulate_full(double p, int m, int by_steps, uint64_t count,
                         uint64_t seed, unsigned workers,
                         gmsfit_records** out);

/* Draws `count` excursions from the walk-based shortcut sampler (one RNG
 * stream per excursion ordinal, like the full simulation). */
int gmsfit_sample_shortcut(double p, int m, uint64_t count, uint64_t seed,
                           gmsfit_records** out);

size_t gmsfit_records_size(const gmsfit_records* records);
uint64_t gmsfit_records_length(const gmsfit_records* records, size_t i);
uint64_t gmsfit_records_births(const gmsfit_records* records, size_t i);
uint64_t gmsfit_records_deaths(const gmsfit_records* records, size_t i);
double gmsfit_records_strongest(const gmsfit_records* records, size_t i);
void gmsfit_records_free(gmsfit_records* records);

/* ------------------------------------------------------------------ */
/* Goodness of fit                                                     */

typedef struct gmsfit_ks_report {
  double statistic;     /* sup-norm distance */
  double n;             /* sample size (effective size for two-sample) */
  double p_value_bound; /* asymptotic Kolmogorov tail bound */
  int passed;           /* 1 iff p_value_bound > threshold */
} gmsfit_ks_report;

/* One-sample KS of the records' strongest fitnesses against the analytic
 * CDF. With corrupt_cdf nonzero the reference is deliberately wrong (the
 * CDF squared) — a negative control that must fail. */
int gmsfit_ks_records_vs_exact(const gmsfit_records* records, double p, int m,
                               int corrupt_cdf, double threshold,
                               const gmsfit_series_ctrl* ctrl,
                               gmsfit_ks_report* out);

/* Two-sample KS between the strongest fitnesses of two record sets. */
int gmsfit_ks_two_sample(const gmsfit_records* a, const gmsfit_records* b,
                         double threshold, gmsfit_ks_report* out);

/* Bins the records' strongest fitnesses into `bins` equal-width bins on
 * [lo, hi] (left-closed; a sample exactly at hi joins the last bin).
 * `counts` must hold `bins` entries; below/above receive the out-of-range
 * tallies and may be NULL. */
int gmsfit_histogram(const gmsfit_records* records, size_t bins, double lo,
                     double hi, uint64_t* counts, uint64_t* below,
                     uint64_t* above);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* GMSFIT_H_ */
