// SPDX-License-Identifier: Apache-2.0
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/multiprecision/float128.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <map>
#include <numbers>
#include <tuple>
#include <vector>

#include "fracbin/errors.hpp"
#include "fracbin/oracle.hpp"

namespace fracbin::oracle {
namespace {

namespace bmp = boost::multiprecision;

template <unsigned D>
using Float = bmp::number<bmp::mpfr_float_backend<D>, bmp::et_off>;

/// Reciprocal gammas 1/Gamma(alpha r + beta), grown on demand and kept per
/// (alpha, beta) so a calibration sweep along z pays for them once.
template <unsigned D>
const Float<D>& reciprocal_gamma(double alpha, double beta, std::size_t r) {
  thread_local std::map<std::pair<double, double>, std::vector<Float<D>>> cache;
  auto& table = cache[{alpha, beta}];
  const Float<D> a(alpha);
  const Float<D> b(beta);
  while (table.size() <= r) {
    const Float<D> x = a * static_cast<unsigned>(table.size()) + b;
    table.push_back(Float<D>(1) / bmp::tgamma(x));
  }
  return table[r];
}

template <unsigned D>
HighPrecValue series(double alpha, double beta, double z, int digits, double X) {
  using Real = Float<D>;
  const Real zr(z);
  const Real eps = bmp::pow(Real(10), -(digits + 3));
  Real power = 1;
  Real sum = 0;
  Real max_term = 0;
  for (std::size_t r = 0; r < 1000000; ++r) {
    const Real term = power * reciprocal_gamma<D>(alpha, beta, r);
    sum += term;
    if (bmp::abs(term) > max_term) max_term = bmp::abs(term);
    if (alpha * r + beta > X + 1.0 && bmp::abs(term) < eps) {
      HighPrecValue out;
      out.value = static_cast<double>(sum);
      // Truncated tail is dominated by a geometric series of ratio < 1/2 past
      // the peak; rounding is bounded by the largest partial term.
      const double rounding = static_cast<double>(max_term) * std::pow(10.0, -static_cast<double>(D));
      out.error_bound = 2.0 * static_cast<double>(eps) + r * rounding +
                        std::abs(out.value) * std::numeric_limits<double>::epsilon();
      out.working_digits = D;
      out.terms = static_cast<int>(r + 1);
      return out;
    }
    power *= zr;
  }
  throw ConvergenceError("ml_series_highprec: iteration cap reached");
}

// tanh_sinh cannot be constructed over the MPFR backend in this Boost release;
// quad precision leaves ~15 digits of margin over the double result.
using Quad = bmp::float128;

Quad integral_kernel(const Quad& chi, double alpha, double beta, const Quad& z) {
  const Quad pi = boost::math::constants::pi<Quad>();
  const Quad a(alpha);
  const Quad b(beta);
  const Quad num = chi * sin(pi * (1 - b)) - z * sin(pi * (1 - b + a));
  const Quad den = chi * chi - 2 * chi * z * cos(a * pi) + z * z;
  const Quad decay = pow(chi, 1 / a);
  if (!(decay < 1e6)) return Quad(0);  // e^{-1e6} is far below the working precision
  return pow(chi, (1 - b) / a) * exp(-decay) * num / (den * a * pi);
}

HighPrecValue integral_below(double alpha, double beta, double z) {
  const Quad zr(z);
  auto f = [&](const Quad& chi) { return integral_kernel(chi, alpha, beta, zr); };
  // e^{-chi^{1/alpha}} sets the scale; the tail rule picks up the rest.
  const Quad split = Quad(1);
  const Quad tol = Quad(1e-28);
  boost::math::quadrature::tanh_sinh<Quad> head_rule(15);
  boost::math::quadrature::exp_sinh<Quad> tail_rule(12);
  Quad head_err = 0;
  Quad tail_err = 0;
  Quad head_l1 = 0;
  Quad tail_l1 = 0;
  std::size_t head_levels = 0;
  std::size_t tail_levels = 0;
  const Quad head = head_rule.integrate(f, Quad(0), split, tol, &head_err, &head_l1, &head_levels);
  const Quad tail = tail_rule.integrate(
      [&](const Quad& u) { return f(split + u); }, tol, &tail_err, &tail_l1, &tail_levels);
  HighPrecValue out;
  out.value = static_cast<double>(head + tail);
  out.error_bound = static_cast<double>(head_err + tail_err) +
                    std::abs(out.value) * std::numeric_limits<double>::epsilon();
  out.working_digits = 33;
  out.terms = static_cast<int>(head_levels + tail_levels);
  return out;
}

double required_digits(double alpha, double z, int digits) {
  const double X = std::pow(std::abs(z), 1.0 / alpha);
  return digits + X / std::numbers::ln10 + 12.0;
}

}  // namespace

HighPrecValue ml_series_highprec(double alpha, double beta, double z, int digits) {
  if (!(alpha > 0.0 && alpha <= 1.0) || !(beta > 0.0)) {
    throw DomainError("ml_series_highprec: need 0 < alpha <= 1, beta > 0");
  }
  if (!(z <= 0.0 && z >= -100.0)) throw DomainError("ml_series_highprec: need -100 <= z <= 0");
  if (digits < 1 || digits > 60) throw DomainError("ml_series_highprec: need 1 <= digits <= 60");
  const double X = std::pow(std::abs(z), 1.0 / alpha);
  const double need = required_digits(alpha, z, digits);
  if (need <= 64) return series<64>(alpha, beta, z, digits, X);
  if (need <= 128) return series<128>(alpha, beta, z, digits, X);
  if (need <= 256) return series<256>(alpha, beta, z, digits, X);
  if (need <= kMaxSeriesDigits) return series<kMaxSeriesDigits>(alpha, beta, z, digits, X);
  throw ConvergenceError("ml_series_highprec: cancellation needs " +
                         std::to_string(static_cast<int>(need)) + " digits");
}

HighPrecValue ml_integral_highprec(double alpha, double beta, double z) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("ml_integral_highprec: need 0 < alpha < 1");
  if (!(beta > 0.0 && beta <= 1.0 + alpha)) {
    throw DomainError("ml_integral_highprec: need 0 < beta <= 1 + alpha");
  }
  if (!(z < 0.0) || !std::isfinite(z)) throw DomainError("ml_integral_highprec: need z < 0");
  if (beta < 1.0 + alpha) return integral_below(alpha, beta, z);
  // The representation degenerates at beta = 1 + alpha; use
  // E_{a,1+a}(z) = (E_{a,1}(z) - 1) / z.
  HighPrecValue one = integral_below(alpha, 1.0, z);
  one.value = (one.value - 1.0) / z;
  one.error_bound = one.error_bound / std::abs(z) +
                    std::abs(one.value) * std::numeric_limits<double>::epsilon();
  return one;
}

HighPrecValue ml_reference(double alpha, double beta, double z) {
  constexpr int kDigits = 30;
  if (z == 0.0 || alpha == 1.0 || required_digits(alpha, z, kDigits) <= 128) {
    return ml_series_highprec(alpha, beta, z, kDigits);
  }
  return ml_integral_highprec(alpha, beta, z);
}

}  // namespace fracbin::oracle
