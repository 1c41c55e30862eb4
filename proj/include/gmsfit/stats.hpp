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

#ifndef GMSFIT_STATS_HPP_
#define GMSFIT_STATS_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace gmsfit {

// Immutable sorted sample set with an exact ECDF.
class EmpiricalDistribution {
 public:
  // Takes ownership of the samples and sorts them. DomainError if empty.
  explicit EmpiricalDistribution(std::vector<double> samples);

  std::size_t n() const { return samples_.size(); }
  const std::vector<double>& samples() const { return samples_; }

  // (#samples <= t) / n, by binary search.
  double ecdf(double t) const;

 private:
  std::vector<double> samples_;  // nondecreasing
};

struct KsReport {
  std::string test;            // label, e.g. "full_vs_exact"
  double statistic = 0.0;      // sup-norm distance, in [0,1]
  double n = 0.0;              // sample size (effective size for two-sample)
  double p_value_bound = 0.0;  // asymptotic Kolmogorov tail bound
  bool passed = false;         // p_value_bound > threshold
};

// P[K > lambda] for the Kolmogorov distribution: the asymptotic law of
// sqrt(n) times the KS statistic. Two branches, both truncated at 100 terms:
// the Jacobi-theta form for small lambda (where the alternating series loses
// accuracy) and the alternating series 2 sum (-1)^(j-1) exp(-2 j^2 lambda^2)
// otherwise.
double kolmogorov_survival(double lambda);

// Exact one-sample KS against a reference CDF: the statistic is the sup over
// order statistics x_(i) of max(|i/n - F(x_(i))|, |(i-1)/n - F(x_(i))|).
// Exceptions from `cdf` propagate.
KsReport ks_one_sample(const EmpiricalDistribution& dist,
                       const std::function<double(double)>& cdf,
                       double threshold = 0.001);

// Two-sample KS: sup distance between the two ECDFs, with effective
// n = n_a * n_b / (n_a + n_b) feeding the asymptotic bound.
KsReport ks_two_sample(const EmpiricalDistribution& a,
                       const EmpiricalDistribution& b,
                       double threshold = 0.001);

struct Histogram {
  double lo = 0.0;
  double hi = 1.0;
  std::vector<std::uint64_t> counts;   // one per bin, left-closed bins
  std::uint64_t below = 0;             // samples < lo
  std::uint64_t above = 0;             // samples > hi
  std::uint64_t in_range = 0;          // sum of counts

  double bin_left(std::size_t i) const;
  double bin_right(std::size_t i) const;
  // count / in_range (0 when no sample landed in range).
  double frequency(std::size_t i) const;
};

// Equal-width left-closed bins on [lo, hi]; a sample exactly at hi goes to
// the last bin. Out-of-range samples are tallied, not dropped silently.
// DomainError if bins < 1 or lo >= hi.
Histogram histogram(const EmpiricalDistribution& dist, std::size_t bins,
                    double lo, double hi);

}  // namespace gmsfit

#endif  // GMSFIT_STATS_HPP_
