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

#ifndef GMSFIT_HYPERGEOM_HPP_
#define GMSFIT_HYPERGEOM_HPP_

#include <cstdint>

namespace gmsfit {

// Truncation policy for the Gauss hypergeometric series.
//
// The series for 2F1(a,b;c;z) is summed with the term-ratio recurrence
//
//   term_{k+1} = term_k * (a+k)(b+k) / ((c+k)(k+1)) * z,
//
// stopping once |term| <= rel_tol * |partial sum| for two consecutive terms
// (a single small term can be an accident of sign or of a slowly developing
// hump in the term sequence). Exceeding max_terms raises NonConvergence,
// which callers should read as "argument too close to the singular boundary
// z = 1 for this budget", not as a recoverable tolerance miss.
struct SeriesControl {
  double rel_tol = 1e-14;
  std::int64_t max_terms = 2000000;
  // Above this argument the Euler transformation is applied first; between
  // 0.75 and 1 the raw series still converges but loses digits to its
  // near-singular tail.
  double boundary_switch = 0.75;

  // DomainError unless 0 < rel_tol < 1e-6, max_terms >= 1000,
  // 0.5 <= boundary_switch < 1.
  void validate() const;
};

struct HypParams {
  double a = 0;
  double b = 0;
  double c = 1;
  double z = 0;

  // DomainError unless |z| <= 1 and c is not zero or a negative integer.
  void validate() const;
};

// Rising factorial (a)_k = a (a+1) ... (a+k-1), with (a)_0 = 1.
// Overflow to +/-infinity is permitted for large k.
double pochhammer(double a, std::uint64_t k);

// Raw truncated series, no argument transformations. Exposed so that the
// Euler transformation can be cross-checked against the direct sum; most
// callers want hyp2f1 below.
double hyp2f1_series(double a, double b, double c, double z,
                     const SeriesControl& ctrl = {});

// 2F1(a,b;c;z) for |z| <= 1.
//
//   z == 0                 exact 1
//   z == 1                 Gauss summation (requires c - a - b > 0)
//   z > boundary_switch    Euler transformation
//                          (1-z)^(c-a-b) * 2F1(c-a, c-b; c; z)
//   otherwise              direct series
double hyp2f1(const HypParams& params, const SeriesControl& ctrl = {});
double hyp2f1(double a, double b, double c, double z,
              const SeriesControl& ctrl = {});

// Gauss summation at z = 1:
//
//   2F1(a,b;c;1) = Gamma(c) Gamma(c-a-b) / (Gamma(c-a) Gamma(c-b)),
//
// evaluated through log-gamma with explicit sign tracking. Requires
// c - a - b > 0 and that no gamma argument is zero or a negative integer.
double hyp2f1_at_one(double a, double b, double c);

// log |2F1(a,b;c;1)| with the sign returned separately; lets callers attach
// other log-scale factors (for example q^m for large m) before exponentiating.
double hyp2f1_at_one_log(double a, double b, double c, int& sign);

}  // namespace gmsfit

#endif  // GMSFIT_HYPERGEOM_HPP_
