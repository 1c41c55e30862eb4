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

#include "gmsfit/hypergeom.hpp"

#include <cmath>
#include <sstream>

#include "gmsfit/errors.hpp"

namespace gmsfit {

namespace {

bool is_nonpositive_integer(double x) {
  return x <= 0.0 && x == std::floor(x);
}

// Sign of Gamma(x) for x not a pole: positive on (0, inf), alternating on
// the negative intervals (-n-1, -n).
int gamma_sign(double x) {
  if (x > 0.0) return 1;
  const auto n = static_cast<std::int64_t>(std::floor(-x));
  return (n % 2 == 0) ? -1 : 1;
}

std::string describe(double a, double b, double c, double z) {
  std::ostringstream os;
  os << "2F1(a=" << a << ", b=" << b << ", c=" << c << ", z=" << z << ")";
  return os.str();
}

}  // namespace

void SeriesControl::validate() const {
  if (!(rel_tol > 0.0) || !(rel_tol < 1e-6))
    throw DomainError("SeriesControl: rel_tol must lie in (0, 1e-6)");
  if (max_terms < 1000)
    throw DomainError("SeriesControl: max_terms must be at least 1000");
  if (!(boundary_switch >= 0.5) || !(boundary_switch < 1.0))
    throw DomainError("SeriesControl: boundary_switch must lie in [0.5, 1)");
}

void HypParams::validate() const {
  if (!(std::abs(z) <= 1.0))
    throw DomainError("HypParams: |z| must be at most 1, got " +
                      describe(a, b, c, z));
  if (is_nonpositive_integer(c))
    throw DomainError(
        "HypParams: c must not be zero or a negative integer, got " +
        describe(a, b, c, z));
}

double pochhammer(double a, std::uint64_t k) {
  double prod = 1.0;
  for (std::uint64_t i = 0; i < k; ++i) prod *= a + static_cast<double>(i);
  return prod;
}

double hyp2f1_series(double a, double b, double c, double z,
                     const SeriesControl& ctrl) {
  ctrl.validate();
  if (z == 0.0) return 1.0;

  // Extended precision for the recurrence and the accumulator: near z = 1
  // the sum can run to ~10^5 terms, and double-precision drift in the term
  // recurrence would reach ~10^-13 relative — larger than the truncation
  // tail the stopping rule is calibrated for.
  long double term = 1.0L;
  long double sum = 1.0L;
  int below = 0;
  for (std::int64_t k = 0; k < ctrl.max_terms; ++k) {
    const auto dk = static_cast<long double>(k);
    term *= (a + dk) * (b + dk) / ((c + dk) * (dk + 1.0L)) * z;
    sum += term;
    if (std::abs(term) <= ctrl.rel_tol * std::abs(sum)) {
      if (++below >= 2) return static_cast<double>(sum);
    } else {
      below = 0;
    }
  }
  throw NonConvergence(describe(a, b, c, z) + ": series needs more than " +
                       std::to_string(ctrl.max_terms) +
                       " terms; argument too close to the singular boundary "
                       "for this budget");
}

double hyp2f1(const HypParams& params, const SeriesControl& ctrl) {
  ctrl.validate();
  params.validate();
  const double a = params.a, b = params.b, c = params.c, z = params.z;

  if (z == 0.0) return 1.0;
  if (z == 1.0) return hyp2f1_at_one(a, b, c);
  if (z > ctrl.boundary_switch) {
    const double s = c - a - b;
    return std::pow(1.0 - z, s) * hyp2f1_series(c - a, c - b, c, z, ctrl);
  }
  return hyp2f1_series(a, b, c, z, ctrl);
}

double hyp2f1(double a, double b, double c, double z,
              const SeriesControl& ctrl) {
  return hyp2f1(HypParams{a, b, c, z}, ctrl);
}

double hyp2f1_at_one_log(double a, double b, double c, int& sign) {
  const double s = c - a - b;
  if (!(s > 0.0))
    throw DomainError("hyp2f1_at_one: requires c - a - b > 0, got " +
                      describe(a, b, c, 1.0));
  const double args[4] = {c, s, c - a, c - b};
  for (double x : args) {
    if (is_nonpositive_integer(x))
      throw DomainError(
          "hyp2f1_at_one: gamma argument is zero or a negative integer in " +
          describe(a, b, c, 1.0));
  }
  sign = gamma_sign(c) * gamma_sign(s) * gamma_sign(c - a) * gamma_sign(c - b);
  return std::lgamma(c) + std::lgamma(s) - std::lgamma(c - a) -
         std::lgamma(c - b);
}

double hyp2f1_at_one(double a, double b, double c) {
  int sign = 1;
  const double lg = hyp2f1_at_one_log(a, b, c, sign);
  return sign * std::exp(lg);
}

}  // namespace gmsfit
