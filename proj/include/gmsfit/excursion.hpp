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

#ifndef GMSFIT_EXCURSION_HPP_
#define GMSFIT_EXCURSION_HPP_

#include <cstdint>
#include <vector>

#include "gmsfit/fitness_law.hpp"
#include "gmsfit/rng.hpp"

namespace gmsfit {

// Safety cap on the events of one excursion. Termination is almost sure for
// p <= 1/2, but at p = 1/2 the excursion length has an infinite mean and a
// k^(-3/2) tail, so a cap is the only way to bound a single excursion's work.
inline constexpr std::uint64_t kExcursionEventCap = 1000000000ULL;

// One completed excursion: the stretch from the batch revival step (counted
// as one step placing m individuals) to the death that empties the system.
struct ExcursionRecord {
  std::uint64_t length = 0;  // steps in the excursion
  std::uint64_t births = 0;  // individuals born, the revival batch counts m
  std::uint64_t deaths = 0;
  double strongest_fitness = 0.0;
};

struct LengthPmfEntry {
  std::uint64_t length = 0;  // excursion length, always >= m+1
  double probability = 0.0;
};

struct LengthPmfTable {
  std::vector<LengthPmfEntry> entries;  // increasing length order
  double mass = 0.0;                    // partial sum of the probabilities
};

// P[excursion length = k+1], i.e. the probability that the embedded +/-1
// walk (up with probability p) first reaches -m at step k:
//
//   (m/k) C(k, (k-m)/2) p^((k-m)/2) q^((k+m)/2)   for k >= m, k+m even,
//
// and exactly 0 for odd k+m. Evaluated in log space so k up to 10^6 works.
// DomainError if k < m.
double first_passage_pmf(const ModelParams& params, std::uint64_t k);

// Tabulates the pmf for every admissible k <= k_max, reporting entries as
// excursion lengths (k+1) together with the accumulated mass.
// DomainError if k_max < m.
LengthPmfTable length_pmf_table(const ModelParams& params,
                                std::uint64_t k_max);

// Draws one excursion record without touching the population structure:
// simulates the embedded walk step by step until first passage to -m (never
// by inverting the pmf), then draws the strongest fitness as a max of
// (k+m)/2 iid uniforms via the inverse transform U^(2/(k+m)).
// RuntimeLimit if the walk exceeds kExcursionEventCap steps.
ExcursionRecord sample_excursion_shortcut(const ModelParams& params,
                                          Xoshiro256pp& rng);

}  // namespace gmsfit

#endif  // GMSFIT_EXCURSION_HPP_
