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

#ifndef GMSFIT_SIMULATION_HPP_
#define GMSFIT_SIMULATION_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "gmsfit/excursion.hpp"
#include "gmsfit/fitness_law.hpp"
#include "gmsfit/stats.hpp"

namespace gmsfit {

struct SimConfig {
  ModelParams params;
  // Exactly one of the two run modes must be set.
  std::optional<std::uint64_t> n_excursions;  // complete this many excursions
  std::optional<std::uint64_t> n_steps;       // event budget: births + deaths
  std::uint64_t seed = 0;
  unsigned workers = 1;

  // DomainError unless exactly one mode is set, its value is >= 1, the
  // model parameters are valid, and workers >= 1.
  void validate() const;
};

// Event-by-event simulation of the population chain. Each step is a birth
// with probability p (a fresh uniform fitness; from the empty state the
// single birth step places m individuals at once) or a death with
// probability q that removes the current minimum-fitness individual (a
// no-op idle step when the system is empty). A record is emitted each time
// the population returns to empty; its strongest fitness is the final
// death, asserted against a running maximum of everything born (mismatch
// would be an InternalError, i.e. a bug).
//
// Determinism: excursion number i consumes only the RNG stream derived from
// (seed, i) — the idle steps leading into it included — so the record list
// is a pure function of (seed, config) regardless of worker count or
// scheduling. Records are returned in excursion order.
//
// In n_steps mode the budget counts birth and death events only (a batch
// revival contributes m birth events in its single step; idle steps are
// free), and the trailing incomplete excursion is discarded.
//
// RuntimeLimit if a single excursion exceeds kExcursionEventCap events
// before the run's budget (if any) is exhausted.
std::vector<ExcursionRecord> run_full_simulation(const SimConfig& config);

// One strongest-fitness histogram per population floor m, all runs sharing
// the same event budget and seed.
struct FitnessHistogramSeries {
  int m = 1;
  std::size_t n_excursions = 0;
  double sample_mean = 0.0;
  double analytic_mean = 0.0;
  Histogram hist;
};

// Runs the full simulation for each m with an n_steps event budget and bins
// the per-excursion strongest fitnesses into `bins` equal-width bins on
// [0,1]. DomainError if n_steps < 10^4 (too few events for a meaningful
// histogram) or any parameter set is invalid.
std::vector<FitnessHistogramSeries> simulate_fitness_histograms(
    double p, const std::vector<int>& m_values, std::uint64_t n_steps,
    std::size_t bins, std::uint64_t seed, unsigned workers = 1,
    const SeriesControl& ctrl = SeriesControl{});

}  // namespace gmsfit

#endif  // GMSFIT_SIMULATION_HPP_
