// SPDX-License-Identifier: Apache-2.0
#include <boost/math/distributions/chi_squared.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fracbin/errors.hpp"
#include "fracbin/oracle.hpp"

namespace fracbin::oracle {
namespace {

double chi_square_survival(double statistic, int dof) {
  if (dof < 1) return 1.0;
  const boost::math::chi_squared_distribution<double> dist(dof);
  return boost::math::cdf(boost::math::complement(dist, statistic));
}

/// Groups consecutive bins until each group's expected count reaches
/// `min_expected`; a short final group is merged into its predecessor.
std::vector<std::pair<std::size_t, std::size_t>> pool_bins(std::span<const double> expected,
                                                           double min_expected) {
  std::vector<std::pair<std::size_t, std::size_t>> groups;
  std::size_t begin = 0;
  double acc = 0.0;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    acc += expected[i];
    if (acc >= min_expected) {
      groups.emplace_back(begin, i + 1);
      begin = i + 1;
      acc = 0.0;
    }
  }
  if (begin < expected.size()) {
    if (groups.empty()) {
      groups.emplace_back(begin, expected.size());
    } else {
      groups.back().second = expected.size();
    }
  }
  return groups;
}

double ks_p_value(double d, double effective_n) {
  const double root = std::sqrt(effective_n);
  return kolmogorov_survival((root + 0.12 + 0.11 / root) * d);
}

}  // namespace

TestOutcome chi_square_gof(std::span<const std::int64_t> counts, std::span<const double> probs,
                           double min_expected) {
  if (counts.size() != probs.size() || counts.empty()) {
    throw DomainError("chi_square_gof: counts and probs must be nonempty and equally long");
  }
  const double total = static_cast<double>(std::accumulate(counts.begin(), counts.end(), std::int64_t{0}));
  std::vector<double> expected(probs.size());
  for (std::size_t i = 0; i < probs.size(); ++i) expected[i] = total * probs[i];
  TestOutcome out;
  for (const auto& [begin, end] : pool_bins(expected, min_expected)) {
    double obs = 0.0;
    double exp = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
      obs += static_cast<double>(counts[i]);
      exp += expected[i];
    }
    if (exp > 0.0) {
      out.statistic += (obs - exp) * (obs - exp) / exp;
      ++out.dof;
    } else if (obs > 0.0) {
      out.statistic = INFINITY;
    }
  }
  out.dof -= 1;
  out.p_value = std::isinf(out.statistic) ? 0.0 : chi_square_survival(out.statistic, out.dof);
  return out;
}

TestOutcome chi_square_two_sample(std::span<const std::int64_t> a, std::span<const std::int64_t> b,
                                  double min_expected) {
  if (a.size() != b.size() || a.empty()) {
    throw DomainError("chi_square_two_sample: count vectors must be nonempty and equally long");
  }
  const double na = static_cast<double>(std::accumulate(a.begin(), a.end(), std::int64_t{0}));
  const double nb = static_cast<double>(std::accumulate(b.begin(), b.end(), std::int64_t{0}));
  if (na == 0.0 || nb == 0.0) throw DomainError("chi_square_two_sample: empty sample");
  const double share_a = na / (na + nb);
  std::vector<double> smaller(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    smaller[i] = static_cast<double>(a[i] + b[i]) * std::min(share_a, 1.0 - share_a);
  }
  TestOutcome out;
  for (const auto& [begin, end] : pool_bins(smaller, min_expected)) {
    double oa = 0.0;
    double ob = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
      oa += static_cast<double>(a[i]);
      ob += static_cast<double>(b[i]);
    }
    const double pooled = oa + ob;
    if (pooled == 0.0) continue;
    const double ea = pooled * share_a;
    const double eb = pooled - ea;
    out.statistic += (oa - ea) * (oa - ea) / ea + (ob - eb) * (ob - eb) / eb;
    ++out.dof;
  }
  out.dof -= 1;
  out.p_value = chi_square_survival(out.statistic, out.dof);
  return out;
}

double kolmogorov_survival(double x) {
  if (x <= 0.0) return 1.0;
  if (x < 0.2) return 1.0;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * x * x);
    sum += (k % 2 ? 2.0 : -2.0) * term;
    if (term < 1e-18) break;
  }
  return std::clamp(sum, 0.0, 1.0);
}

TestOutcome ks_one_sample(std::span<const double> sorted,
                          const std::function<double(double)>& cdf) {
  if (sorted.empty()) throw DomainError("ks_one_sample: empty sample");
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i > 0 && sorted[i] < sorted[i - 1]) throw DomainError("ks_one_sample: sample not sorted");
    const double f = cdf(sorted[i]);
    d = std::max({d, f - i / n, (i + 1) / n - f});
  }
  TestOutcome out;
  out.statistic = d;
  out.p_value = ks_p_value(d, n);
  return out;
}

TestOutcome ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw DomainError("ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    d = std::max(d, std::abs(i / na - j / nb));
  }
  TestOutcome out;
  out.statistic = d;
  out.p_value = ks_p_value(d, na * nb / (na + nb));
  return out;
}

MeanSe mean_se(std::span<const double> xs) {
  if (xs.size() < 2) throw DomainError("mean_se needs at least two values");
  const double n = static_cast<double>(xs.size());
  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  double sq = 0.0;
  for (double x : xs) sq += (x - mean) * (x - mean);
  return {mean, std::sqrt(sq / (n - 1.0) / n)};
}

}  // namespace fracbin::oracle
