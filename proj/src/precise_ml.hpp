// SPDX-License-Identifier: Apache-2.0
#pragma once

// Fixed-precision MPFR arithmetic for the alternating exponential sums behind
// the closed-form pmf. Private to the library.

#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "fracbin/errors.hpp"

namespace fracbin::precise {

namespace bmp = boost::multiprecision;

template <unsigned Digits>
using Big = bmp::number<bmp::mpfr_float_backend<Digits>, bmp::et_off>;

/// E_{nu,beta}(-x) for 0 <= x <= x_max, absolute accuracy about 10^{-(D+5)}.
///
/// Taylor series summed at 2D+32 digits while the cancellation it suffers
/// (about X/ln 10 digits, X = x^{1/nu}) fits in the extra precision; the
/// algebraic asymptotic expansion once its smallest term, about e^{-X}, is
/// below 10^{-(D+5)}. Reciprocal gamma tables are built in the constructor so
/// that operator() is const and safe to call concurrently.
template <unsigned D>
class MittagLefflerNeg {
 public:
  static constexpr unsigned kWork = 2 * D + 32;
  using Real = Big<D>;
  using Work = Big<kWork>;

  MittagLefflerNeg(double nu, double beta, double x_max) : nu_(nu), beta_(beta) {
    if (!(nu > 0.0 && nu <= 1.0) || !(beta > 0.0) || !(x_max >= 0.0)) {
      throw DomainError("MittagLefflerNeg: need 0 < nu <= 1, beta > 0, x_max >= 0");
    }
    exp_fast_path_ = (nu == 1.0 && beta == 1.0);
    asym_min_X_ = std::numbers::ln10 * (D + 5) + 10.0;
    series_max_X_ = std::numbers::ln10 * (D + 17);
    if (exp_fast_path_ || x_max == 0.0) return;

    const double X_max = std::pow(x_max, 1.0 / nu);
    if (X_max < asym_min_X_) {
      build_series_table(x_max);
    } else {
      build_series_table(std::pow(asym_min_X_, nu));
      build_asymptotic_table(std::pow(asym_min_X_, nu));
    }
  }

  Real operator()(const Real& x) const {
    if (x == 0) return Real(1) / bmp::tgamma(Real(beta_));
    if (exp_fast_path_) return bmp::exp(-x);
    const double xd = static_cast<double>(x);
    const double X = std::exp(std::log(xd) / nu_);
    if (X >= asym_min_X_ && !asym_rg_.empty()) return asymptotic(x, xd);
    if (X > series_max_X_ || series_rg_.empty()) {
      throw ConvergenceError("MittagLefflerNeg: argument outside the prepared range");
    }
    return series(x, xd, X);
  }

 private:
  static double log_term_series(double nu, double beta, double log_x, int r) {
    return r * log_x - std::lgamma(nu * r + beta);
  }

  void build_series_table(double x_cap) {
    // Index past the peak where x_cap^r / Gamma(nu r + beta) < 10^{-(D+8)}.
    const double log_x = std::log(std::max(x_cap, 1e-300));
    const double X = std::pow(x_cap, 1.0 / nu_);
    const double stop = -(D + 8.0) * std::numbers::ln10;
    int r_max = 1;
    while (!(nu_ * r_max + beta_ > X + 1.0 && log_term_series(nu_, beta_, log_x, r_max) < stop)) {
      if (++r_max > 2000000) throw ConvergenceError("MittagLefflerNeg: series table too large");
    }
    series_rg_.reserve(r_max + 1);
    const Work nu(nu_);
    const Work beta(beta_);
    for (int r = 0; r <= r_max; ++r) {
      series_rg_.push_back(Work(1) / bmp::tgamma(nu * r + beta));
    }
  }

  static double envelope_log(double nu, double beta, double log_x, int k) {
    const double y = beta - nu * k;
    if (y > 0.0) return -std::lgamma(y) - k * log_x;
    return std::lgamma(1.0 - y) - std::log(std::numbers::pi) - k * log_x;
  }

  void build_asymptotic_table(double x_min) {
    const double log_x = std::log(x_min);
    const double stop = -(D + 5.0) * std::numbers::ln10;
    int k_max = 1;
    while (envelope_log(nu_, beta_, log_x, k_max) >= stop || beta_ - nu_ * k_max > 0.0) {
      if (++k_max > 2000000) throw ConvergenceError("MittagLefflerNeg: asymptotic table too large");
    }
    asym_rg_.reserve(k_max + 1);
    asym_rg_.push_back(Real(0));  // k = 0 unused
    const Real nu(nu_);
    const Real beta(beta_);
    for (int k = 1; k <= k_max; ++k) {
      const Real y = beta - nu * k;
      if (y <= 0 && y == bmp::floor(y)) {
        asym_rg_.push_back(Real(0));
      } else {
        asym_rg_.push_back(Real(1) / bmp::tgamma(y));
      }
    }
  }

  Real asymptotic(const Real& x, double xd) const {
    const double log_x = std::log(xd);
    const double stop = -(D + 5.0) * std::numbers::ln10;
    const Real inv_x = Real(1) / x;
    Real power = inv_x;
    Real sum = 0;
    for (std::size_t k = 1; k < asym_rg_.size(); ++k) {
      // -z^{-k} with z = -x
      if (k % 2 == 0) {
        sum -= power * asym_rg_[k];
      } else {
        sum += power * asym_rg_[k];
      }
      if (beta_ - nu_ * k <= 0.0 && envelope_log(nu_, beta_, log_x, static_cast<int>(k)) < stop) {
        return sum;
      }
      power *= inv_x;
    }
    return sum;
  }

  Real series(const Real& x, double xd, double X) const {
    const double log_x = std::log(xd);
    const double stop = -(D + 8.0) * std::numbers::ln10;
    const Work z = -Work(x);
    Work power = 1;
    Work sum = 0;
    for (std::size_t r = 0; r < series_rg_.size(); ++r) {
      sum += power * series_rg_[r];
      if (nu_ * r + beta_ > X + 1.0 &&
          log_term_series(nu_, beta_, log_x, static_cast<int>(r)) < stop) {
        return Real(sum);
      }
      power *= z;
    }
    throw ConvergenceError("MittagLefflerNeg: series table exhausted");
  }

  double nu_;
  double beta_;
  bool exp_fast_path_ = false;
  double asym_min_X_ = 0.0;
  double series_max_X_ = 0.0;
  std::vector<Work> series_rg_;
  std::vector<Real> asym_rg_;
};

/// Binomial coefficient in working precision.
template <unsigned D>
Big<D> binomial(int n, int k) {
  if (k < 0 || k > n) return Big<D>(0);
  k = std::min(k, n - k);
  Big<D> c = 1;
  for (int i = 1; i <= k; ++i) {
    c *= n - k + i;
    c /= i;
  }
  return c;
}

}  // namespace fracbin::precise
