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

#include "gmsfit/stats.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gmsfit/errors.hpp"

namespace gmsfit {

EmpiricalDistribution::EmpiricalDistribution(std::vector<double> samples)
    : samples_(std::move(samples)) {
  if (samples_.empty()) {
    throw DomainError("EmpiricalDistribution: need at least one sample");
  }
  std::sort(samples_.begin(), samples_.end());
}

double EmpiricalDistribution::ecdf(double t) const {
  const auto it = std::upper_bound(samples_.begin(), samples_.end(), t);
  return static_cast<double>(it - samples_.begin()) /
         static_cast<double>(samples_.size());
}

double kolmogorov_survival(double lambda) {
  constexpr int kMaxTerms = 100;
  if (lambda <= 0.0) return 1.0;
  if (lambda < 1.0) {
    // Jacobi theta form: P[K <= x] = (sqrt(2*pi)/x) sum exp(-(2j-1)^2 pi^2
    // / (8 x^2)); each extra term is smaller by a factor exp(-pi^2/x^2), so
    // far fewer than 100 terms ever contribute.
    const double pi = 3.14159265358979323846;
    double sum = 0.0;
    for (int j = 1; j <= kMaxTerms; ++j) {
      const double odd = 2.0 * j - 1.0;
      const double term = std::exp(-odd * odd * pi * pi / (8.0 * lambda * lambda));
      sum += term;
      if (term < 1e-18 * sum) break;
    }
    const double cdf = std::sqrt(2.0 * pi) / lambda * sum;
    return std::clamp(1.0 - cdf, 0.0, 1.0);
  }
  // Alternating series for the survival function directly.
  double sum = 0.0;
  for (int j = 1; j <= kMaxTerms; ++j) {
    const double term = std::exp(-2.0 * j * j * lambda * lambda);
    sum += (j % 2 == 1) ? term : -term;
    if (term < 1e-18) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsReport ks_one_sample(const EmpiricalDistribution& dist,
                       const std::function<double(double)>& cdf,
                       double threshold) {
  const auto& xs = dist.samples();
  const double n = static_cast<double>(xs.size());
  double statistic = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    const double hi = std::abs(static_cast<double>(i + 1) / n - f);
    const double lo = std::abs(static_cast<double>(i) / n - f);
    statistic = std::max({statistic, hi, lo});
  }
  KsReport report;
  report.statistic = statistic;
  report.n = n;
  report.p_value_bound = kolmogorov_survival(std::sqrt(n) * statistic);
  report.passed = report.p_value_bound > threshold;
  return report;
}

KsReport ks_two_sample(const EmpiricalDistribution& a,
                       const EmpiricalDistribution& b, double threshold) {
  const auto& xa = a.samples();
  const auto& xb = b.samples();
  const double na = static_cast<double>(xa.size());
  const double nb = static_cast<double>(xb.size());
  double statistic = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  // Merge walk: advance past ties in both samples before comparing, so the
  // ECDF gap is measured only at points where both step functions are flat
  // to the right.
  while (i < xa.size() && j < xb.size()) {
    const double x = std::min(xa[i], xb[j]);
    while (i < xa.size() && xa[i] <= x) ++i;
    while (j < xb.size() && xb[j] <= x) ++j;
    statistic = std::max(
        statistic, std::abs(static_cast<double>(i) / na -
                            static_cast<double>(j) / nb));
  }
  KsReport report;
  report.statistic = statistic;
  report.n = na * nb / (na + nb);
  report.p_value_bound = kolmogorov_survival(std::sqrt(report.n) * statistic);
  report.passed = report.p_value_bound > threshold;
  return report;
}

double Histogram::bin_left(std::size_t i) const {
  return lo + (hi - lo) * static_cast<double>(i) /
                  static_cast<double>(counts.size());
}

double Histogram::bin_right(std::size_t i) const {
  return lo + (hi - lo) * static_cast<double>(i + 1) /
                  static_cast<double>(counts.size());
}

double Histogram::frequency(std::size_t i) const {
  if (in_range == 0) return 0.0;
  return static_cast<double>(counts[i]) / static_cast<double>(in_range);
}

Histogram histogram(const EmpiricalDistribution& dist, std::size_t bins,
                    double lo, double hi) {
  if (bins < 1) throw DomainError("histogram: bins must be >= 1");
  if (!(lo < hi)) {
    std::ostringstream msg;
    msg << "histogram: need lo < hi, got [" << lo << ", " << hi << "]";
    throw DomainError(msg.str());
  }
  Histogram h;
  h.lo = lo;
  h.hi = hi;
  h.counts.assign(bins, 0);
  const double width = (hi - lo) / static_cast<double>(bins);
  for (double x : dist.samples()) {
    if (x < lo) {
      ++h.below;
      continue;
    }
    if (x > hi) {
      ++h.above;
      continue;
    }
    auto index = static_cast<std::size_t>((x - lo) / width);
    if (index >= bins) index = bins - 1;  // x == hi joins the last bin
    ++h.counts[index];
    ++h.in_range;
  }
  return h;
}

}  // namespace gmsfit
