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

#include "gmsfit/fitness_law.hpp"

#include <cmath>
#include <string>

#include "gmsfit/errors.hpp"

namespace gmsfit {

namespace {

constexpr double kClampSlack = 1e-9;

void check_unit_interval(double t, bool closed_right, const char* where) {
  const bool ok = t >= 0.0 && (closed_right ? t <= 1.0 : t < 1.0);
  if (!ok)
    throw DomainError(std::string(where) + ": t=" + std::to_string(t) +
                      (closed_right ? " outside [0, 1]" : " outside [0, 1)"));
}

double clamp_probability(double value, const char* where) {
  if (value < -kClampSlack || value > 1.0 + kClampSlack)
    throw InternalError(std::string(where) + ": value " +
                        std::to_string(value) +
                        " strayed outside [0, 1] beyond slack");
  if (value < 0.0) return 0.0;
  if (value > 1.0) return 1.0;
  return value;
}

// The series stops once two consecutive terms fall below rel_tol * |sum|,
// which leaves an unsummed geometric tail of roughly rel_tol * z / (1 - z).
// The law's argument z = 4pqt approaches 1 near the critical point, where
// that tail would dwarf rel_tol itself, so ask the series for a
// proportionally tighter tolerance: the value returned to the caller is then
// genuinely good to about ctrl.rel_tol. The floor keeps the request
// satisfiable; past it the term budget is the binding constraint anyway.
SeriesControl tail_compensated(const SeriesControl& ctrl, double z) {
  SeriesControl tightened = ctrl;
  if (z > 0.5) {
    tightened.rel_tol =
        std::max(ctrl.rel_tol * (1.0 - z) / z, 1e-18);
  }
  return tightened;
}

}  // namespace

void ModelParams::validate() const {
  if (!(p > 0.0) || !(p <= 0.5))
    throw DomainError("ModelParams: p must lie in (0, 0.5], got " +
                      std::to_string(p));
  if (m < 1)
    throw DomainError("ModelParams: m must be at least 1, got " +
                      std::to_string(m));
}

double fitness_cdf(const ModelParams& params, double t,
                   const SeriesControl& ctrl) {
  params.validate();
  ctrl.validate();
  check_unit_interval(t, /*closed_right=*/true, "fitness_cdf");
  if (t == 0.0) return 0.0;

  const double m = params.m;
  const double q = params.q();
  const double z = 4.0 * params.p * q * t;

  double value;
  if (z == 1.0) {
    // p = 1/2 and t = 1; keep everything in log scale so large m cannot
    // underflow the (q t)^m factor against the gamma ratio.
    int sign = 1;
    const double lg = hyp2f1_at_one_log(m / 2.0, (m + 1.0) / 2.0, m + 1.0, sign);
    value = sign * std::exp(m * std::log(q * t) + lg);
  } else {
    const double f = hyp2f1(m / 2.0, (m + 1.0) / 2.0, m + 1.0, z,
                            tail_compensated(ctrl, z));
    value = std::pow(q * t, m) * f;
  }
  return clamp_probability(value, "fitness_cdf");
}

double fitness_cdf_closed_m1(double p, double t) {
  ModelParams{p, 1}.validate();
  check_unit_interval(t, /*closed_right=*/true, "fitness_cdf_closed_m1");
  const double q = 1.0 - p;
  const double z = 4.0 * p * q * t;
  return clamp_probability(2.0 * q * t / (1.0 + std::sqrt(1.0 - z)),
                           "fitness_cdf_closed_m1");
}

double fitness_pdf(const ModelParams& params, double t,
                   const SeriesControl& ctrl) {
  params.validate();
  ctrl.validate();
  check_unit_interval(t, /*closed_right=*/false, "fitness_pdf");

  const double m = params.m;
  const double q = params.q();
  const double z = 4.0 * params.p * q * t;
  const double f =
      hyp2f1(m / 2.0, (m + 1.0) / 2.0, m, z, tail_compensated(ctrl, z));
  const double value = m * std::pow(q, m) * std::pow(t, m - 1.0) * f;
  if (value < 0.0)
    throw InternalError("fitness_pdf: negative density " +
                        std::to_string(value));
  return value;
}

double fitness_mean(const ModelParams& params, const SeriesControl& ctrl) {
  params.validate();
  ctrl.validate();

  const double m = params.m;
  const double q = params.q();
  const double z = 4.0 * params.p * q;

  double correction;
  if (z == 1.0) {
    int sign = 1;
    const double lg = hyp2f1_at_one_log(m / 2.0, (m + 1.0) / 2.0, m + 2.0, sign);
    correction = sign * std::exp(m * std::log(q) - std::log(m + 1.0) + lg);
  } else {
    const double f = hyp2f1(m / 2.0, (m + 1.0) / 2.0, m + 2.0, z,
                            tail_compensated(ctrl, z));
    correction = std::pow(q, m) / (m + 1.0) * f;
  }
  const double value = 1.0 - correction;
  if (!(value > 0.0) || !(value < 1.0))
    throw InternalError("fitness_mean: value " + std::to_string(value) +
                        " outside (0, 1)");
  return value;
}

double fitness_mean_critical(int m) {
  if (m < 1)
    throw DomainError("fitness_mean_critical: m must be at least 1, got " +
                      std::to_string(m));
  const double dm = m;
  return 1.0 - 2.0 / ((dm + 1.0) * (dm + 2.0));
}

}  // namespace gmsfit
