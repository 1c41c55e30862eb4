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

#include "gmsfit/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <queue>
#include <sstream>
#include <thread>
#include <utility>
#include <vector>

#include "gmsfit/errors.hpp"
#include "gmsfit/rng.hpp"

namespace gmsfit {
namespace {

// Individuals are (fitness, insertion index); the index breaks fitness ties
// by insertion order so delete-min is deterministic at any RNG granularity.
using Individual = std::pair<double, std::uint64_t>;
using Population =
    std::priority_queue<Individual, std::vector<Individual>,
                        std::greater<Individual>>;

struct ExcursionOutcome {
  ExcursionRecord record;
  std::uint64_t events = 0;  // births + deaths
  bool cap_hit = false;      // aborted with events == cap + 1
  bool aborted = false;      // gave up because another ordinal went fatal
  std::exception_ptr error;
};

// Simulates excursion `ordinal` from its private stream: the idle steps
// leading into it, the batch revival, then events until the system empties
// or `event_cap` is exceeded. Pure in (seed, ordinal) apart from the
// cooperative abort flag, which only ever converts work we are about to
// throw away into an early exit.
ExcursionOutcome simulate_one_excursion(const ModelParams& params,
                                        std::uint64_t seed,
                                        std::uint64_t ordinal,
                                        std::uint64_t event_cap,
                                        const std::atomic<bool>* abort_flag) {
  ExcursionOutcome out;
  try {
    Xoshiro256pp rng = make_stream(seed, ordinal);
    const double p = params.p;
    const auto m = static_cast<std::uint64_t>(params.m);

    // Idle phase: death steps on the empty system are no-ops.
    while (uniform01(rng) >= p) {
      if (abort_flag != nullptr &&
          abort_flag->load(std::memory_order_relaxed)) {
        out.aborted = true;
        return out;
      }
    }

    Population population;
    std::uint64_t insertion = 0;
    std::uint64_t births = 0;
    std::uint64_t deaths = 0;
    double shadow_max = 0.0;  // max fitness ever born, kept independently

    // Batch revival: the one birth step that places m individuals.
    for (std::uint64_t j = 0; j < m; ++j) {
      const double fitness = uniform_open01(rng);
      population.emplace(fitness, insertion++);
      shadow_max = std::max(shadow_max, fitness);
      ++births;
      ++out.events;
      if (out.events > event_cap) {
        out.cap_hit = true;
        return out;
      }
    }

    double last_death = 0.0;
    while (!population.empty()) {
      if (uniform01(rng) < p) {
        const double fitness = uniform_open01(rng);
        population.emplace(fitness, insertion++);
        shadow_max = std::max(shadow_max, fitness);
        ++births;
      } else {
        const double fitness = population.top().first;
        population.pop();
        ++deaths;
        if (population.empty()) last_death = fitness;
      }
      ++out.events;
      if (out.events > event_cap) {
        out.cap_hit = true;
        return out;
      }
      if (abort_flag != nullptr && (out.events & 1023U) == 0 &&
          abort_flag->load(std::memory_order_relaxed)) {
        out.aborted = true;
        return out;
      }
    }

    if (last_death != shadow_max) {
      std::ostringstream msg;
      msg << "simulation bug: final death fitness " << last_death
          << " differs from the maximum fitness ever born " << shadow_max;
      throw InternalError(msg.str());
    }
    out.record.length = births + deaths - m + 1;
    out.record.births = births;
    out.record.deaths = deaths;
    out.record.strongest_fitness = last_death;
  } catch (...) {
    out.error = std::current_exception();
  }
  return out;
}

// Fills slots[i] with the outcome of ordinal base+i, i in [0, count), using
// up to `workers` threads. Slot assignment is by ordinal, so scheduling
// cannot affect results. A fatal outcome raises `fatal` so peers can stop
// wasting work on a run that is going to throw.
void run_wave(const ModelParams& params, std::uint64_t seed,
              std::uint64_t base, std::size_t count, std::uint64_t event_cap,
              unsigned workers, std::atomic<bool>* fatal,
              std::vector<ExcursionOutcome>& slots) {
  slots.resize(count);
  auto work_one = [&](std::size_t i) {
    if (fatal != nullptr && fatal->load(std::memory_order_relaxed)) {
      slots[i].aborted = true;
      return;
    }
    slots[i] = simulate_one_excursion(params, seed, base + i, event_cap,
                                      fatal);
    if (fatal != nullptr && (slots[i].cap_hit || slots[i].error)) {
      fatal->store(true, std::memory_order_relaxed);
    }
  };
  if (workers <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) work_one(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto claim_loop = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= count) return;
      work_one(i);
    }
  };
  std::vector<std::thread> pool;
  const std::size_t n_threads =
      std::min<std::size_t>(workers, count);
  pool.reserve(n_threads);
  for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(claim_loop);
  for (auto& th : pool) th.join();
}

[[noreturn]] void throw_event_cap(const ModelParams& params) {
  std::ostringstream msg;
  msg << "an excursion exceeded the " << kExcursionEventCap
      << "-event safety cap (p = " << params.p << ", m = " << params.m
      << "); at p near 1/2 excursion lengths are heavy-tailed";
  throw RuntimeLimit(msg.str());
}

std::vector<ExcursionRecord> run_excursion_mode(const SimConfig& config) {
  const std::uint64_t target = *config.n_excursions;
  std::vector<ExcursionRecord> records;
  records.reserve(static_cast<std::size_t>(
      std::min<std::uint64_t>(target, 1U << 22U)));
  std::atomic<bool> fatal{false};
  std::vector<ExcursionOutcome> slots;
  const std::uint64_t wave_size =
      std::max<std::uint64_t>(8192, std::uint64_t{config.workers} * 64U);
  for (std::uint64_t base = 0; base < target; base += wave_size) {
    const auto count = static_cast<std::size_t>(
        std::min<std::uint64_t>(wave_size, target - base));
    run_wave(config.params, config.seed, base, count, kExcursionEventCap,
             config.workers, &fatal, slots);
    if (fatal.load()) {
      // The run is lost either way; prefer reporting a real bug over the
      // cap. (Under racing aborts the surviving diagnosis can vary, but
      // only a fatal run is affected.)
      for (const auto& slot : slots) {
        if (slot.error) std::rethrow_exception(slot.error);
      }
      throw_event_cap(config.params);
    }
    for (auto& slot : slots) records.push_back(slot.record);
  }
  return records;
}

std::vector<ExcursionRecord> run_steps_mode(const SimConfig& config) {
  const std::uint64_t budget = *config.n_steps;
  std::vector<ExcursionRecord> records;
  std::uint64_t consumed = 0;
  std::uint64_t base = 0;
  std::vector<ExcursionOutcome> slots;
  const std::size_t wave_size = std::max<std::size_t>(config.workers, 16);
  while (consumed < budget) {
    // Every ordinal in the wave has at least `consumed` events in front of
    // it, so capping speculative work at the remaining budget cannot starve
    // an excursion the sequential run would have completed.
    const std::uint64_t cap =
        std::min(kExcursionEventCap, budget - consumed);
    run_wave(config.params, config.seed, base, wave_size, cap,
             config.workers, nullptr, slots);
    for (const auto& slot : slots) {
      if (slot.error) std::rethrow_exception(slot.error);
      if (slot.cap_hit) {
        // The budget boundary lands inside the capped stretch unless the
        // excursion legitimately outran the safety cap first.
        if (budget - consumed <= cap + 1) return records;
        throw_event_cap(config.params);
      }
      if (consumed + slot.events > budget) return records;  // trailing cut
      records.push_back(slot.record);
      consumed += slot.events;
    }
    base += wave_size;
  }
  return records;
}

}  // namespace

void SimConfig::validate() const {
  params.validate();
  if (n_excursions.has_value() == n_steps.has_value()) {
    throw DomainError(
        "SimConfig: exactly one of n_excursions and n_steps must be set");
  }
  if (n_excursions && *n_excursions < 1) {
    throw DomainError("SimConfig: n_excursions must be >= 1");
  }
  if (n_steps && *n_steps < 1) {
    throw DomainError("SimConfig: n_steps must be >= 1");
  }
  if (workers < 1) throw DomainError("SimConfig: workers must be >= 1");
}

std::vector<ExcursionRecord> run_full_simulation(const SimConfig& config) {
  config.validate();
  if (config.n_excursions) return run_excursion_mode(config);
  return run_steps_mode(config);
}

std::vector<FitnessHistogramSeries> simulate_fitness_histograms(
    double p, const std::vector<int>& m_values, std::uint64_t n_steps,
    std::size_t bins, std::uint64_t seed, unsigned workers,
    const SeriesControl& ctrl) {
  if (n_steps < 10000) {
    throw DomainError(
        "simulate_fitness_histograms: need an event budget of at least 10^4");
  }
  if (m_values.empty()) {
    throw DomainError("simulate_fitness_histograms: m_values is empty");
  }
  std::vector<FitnessHistogramSeries> result;
  result.reserve(m_values.size());
  for (int m : m_values) {
    SimConfig config;
    config.params = ModelParams{p, m};
    config.n_steps = n_steps;
    config.seed = seed;  // shared on purpose: one seed reproduces the set
    config.workers = workers;
    const auto records = run_full_simulation(config);
    if (records.empty()) {
      std::ostringstream msg;
      msg << "no complete excursion within " << n_steps
          << " events for m = " << m << "; increase the budget";
      throw DomainError(msg.str());
    }
    std::vector<double> strongest;
    strongest.reserve(records.size());
    double sum = 0.0;
    for (const auto& r : records) {
      strongest.push_back(r.strongest_fitness);
      sum += r.strongest_fitness;
    }
    FitnessHistogramSeries series;
    series.m = m;
    series.n_excursions = records.size();
    series.sample_mean = sum / static_cast<double>(records.size());
    series.analytic_mean = fitness_mean(ModelParams{p, m}, ctrl);
    series.hist = histogram(EmpiricalDistribution(std::move(strongest)),
                            bins, 0.0, 1.0);
    result.push_back(std::move(series));
  }
  return result;
}

}  // namespace gmsfit
