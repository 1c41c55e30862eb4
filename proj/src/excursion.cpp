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

#include "gmsfit/excursion.hpp"

#include <cmath>
#include <cstdint>
#include <sstream>

#include "gmsfit/errors.hpp"

namespace gmsfit {
namespace {

// log C(n, r) via lgamma; exact enough for n up to well beyond 10^6.
double log_choose(std::uint64_t n, std::uint64_t r) {
  return std::lgamma(static_cast<double>(n) + 1.0) -
         std::lgamma(static_cast<double>(r) + 1.0) -
         std::lgamma(static_cast<double>(n - r) + 1.0);
}

}  // namespace

double first_passage_pmf(const ModelParams& params, std::uint64_t k) {
  params.validate();
  const auto m = static_cast<std::uint64_t>(params.m);
  if (k < m) {
    std::ostringstream msg;
    msg << "first_passage_pmf: k = " << k << " is below m = " << m
        << "; the walk cannot reach -m earlier";
    throw DomainError(msg.str());
  }
  if ((k - m) % 2 != 0) return 0.0;  // parity: k and m must match
  const std::uint64_t ups = (k - m) / 2;    // up-steps (births after revival)
  const std::uint64_t downs = (k + m) / 2;  // down-steps (deaths)
  const double log_pmf =
      std::log(static_cast<double>(m)) - std::log(static_cast<double>(k)) +
      log_choose(k, ups) + static_cast<double>(ups) * std::log(params.p) +
      static_cast<double>(downs) * std::log(params.q());
  return std::exp(log_pmf);
}

LengthPmfTable length_pmf_table(const ModelParams& params,
                                std::uint64_t k_max) {
  params.validate();
  const auto m = static_cast<std::uint64_t>(params.m);
  if (k_max < m) {
    std::ostringstream msg;
    msg << "length_pmf_table: k_max = " << k_max << " is below m = " << m
        << "; no admissible first-passage step exists";
    throw DomainError(msg.str());
  }
  LengthPmfTable table;
  table.entries.reserve((k_max - m) / 2 + 1);
  for (std::uint64_t k = m; k <= k_max; k += 2) {
    const double pmf = first_passage_pmf(params, k);
    table.entries.push_back(LengthPmfEntry{k + 1, pmf});
    table.mass += pmf;
  }
  return table;
}

ExcursionRecord sample_excursion_shortcut(const ModelParams& params,
                                          Xoshiro256pp& rng) {
  params.validate();
  const auto m = static_cast<std::int64_t>(params.m);
  std::int64_t position = 0;
  std::uint64_t steps = 0;
  while (position > -m) {
    if (steps >= kExcursionEventCap) {
      std::ostringstream msg;
      msg << "sample_excursion_shortcut: walk exceeded " << kExcursionEventCap
          << " steps without reaching -m (p = " << params.p
          << ", m = " << params.m << ")";
      throw RuntimeLimit(msg.str());
    }
    position += uniform01(rng) < params.p ? 1 : -1;
    ++steps;
  }
  const std::uint64_t k = steps;
  ExcursionRecord record;
  record.length = k + 1;  // the batch revival step plus the k walk steps
  record.births = (k - static_cast<std::uint64_t>(m)) / 2 +
                  static_cast<std::uint64_t>(m);
  record.deaths = (k + static_cast<std::uint64_t>(m)) / 2;
  // Max of `deaths` iid uniforms by the inverse transform; every fitness ever
  // born is eventually removed, so the strongest is a max over the deaths.
  double strongest =
      std::pow(uniform_open01(rng), 1.0 / static_cast<double>(record.deaths));
  if (strongest >= 1.0) strongest = std::nextafter(1.0, 0.0);
  record.strongest_fitness = strongest;
  return record;
}

}  // namespace gmsfit
