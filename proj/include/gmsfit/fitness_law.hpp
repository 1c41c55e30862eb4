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

#ifndef GMSFIT_FITNESS_LAW_HPP_
#define GMSFIT_FITNESS_LAW_HPP_

#include "gmsfit/hypergeom.hpp"

namespace gmsfit {

// Birth probability p and revival batch size m of the subcritical model.
// A birth inserts one individual with uniform [0,1] fitness, a death removes
// the current minimum, and a birth step on an empty system places m
// individuals at once.
struct ModelParams {
  double p = 0.5;
  int m = 1;

  double q() const { return 1.0 - p; }

  // DomainError unless 0 < p <= 0.5 and m >= 1.
  void validate() const;
};

// P[Z <= t] where Z is the strongest fitness seen over one excursion
// (equivalently the fitness of the last individual to die):
//
//   cdf(t) = (q t)^m * 2F1(m/2, (m+1)/2; m+1; 4 p q t).
//
// Accepts 0 <= t <= 1; t = 1 is the domain closure where the argument of the
// series reaches 4pq (and exactly 1 when p = 1/2, handled by Gauss
// summation). Results are clamped to [0,1]; a clamp larger than 1e-9 is an
// InternalError because the formula cannot legitimately stray that far.
double fitness_cdf(const ModelParams& params, double t,
                   const SeriesControl& ctrl = {});

// Closed form for m = 1, kept as an independent route for cross-checks:
//
//   cdf(t) = (1 - sqrt(1 - 4 p q t)) / (2 p),
//
// evaluated in the cancellation-free form 2 q t / (1 + sqrt(1 - 4 p q t)).
double fitness_cdf_closed_m1(double p, double t);

// Density of the same law:
//
//   pdf(t) = m q^m t^(m-1) * 2F1(m/2, (m+1)/2; m; 4 p q t).
//
// Accepts 0 <= t < 1 (the formula extends continuously to t = 0; at t = 1
// the density diverges when p = 1/2, so t = 1 is a DomainError).
double fitness_pdf(const ModelParams& params, double t,
                   const SeriesControl& ctrl = {});

// E[Z] = 1 - q^m / (m+1) * 2F1(m/2, (m+1)/2; m+2; 4 p q).
//
// The denominator parameter is m+2: integrating the cdf termwise gives
// (m+1)_k (m+k+1) = (m+1) (m+2)_k, and only m+2 reproduces the closed form
// at p = 1/2 below.
double fitness_mean(const ModelParams& params, const SeriesControl& ctrl = {});

// E[Z] at the critical point p = 1/2, where Gauss summation and the gamma
// duplication formula collapse the mean to 1 - 2 / ((m+1)(m+2)).
double fitness_mean_critical(int m);

}  // namespace gmsfit

#endif  // GMSFIT_FITNESS_LAW_HPP_
