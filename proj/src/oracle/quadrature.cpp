// SPDX-License-Identifier: Apache-2.0
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "fracbin/errors.hpp"
#include "fracbin/oracle.hpp"

namespace fracbin::oracle {

QuadratureResult integrate_interval(const std::function<double(double)>& f, double a, double b,
                                    double tol) {
  if (!(a <= b)) throw DomainError("integrate_interval needs a <= b");
  if (a == b) return {};
  boost::math::quadrature::tanh_sinh<double> rule;
  QuadratureResult out;
  out.value = rule.integrate(f, a, b, tol, &out.error_estimate);
  return out;
}

QuadratureResult integrate_half_line(const std::function<double(double)>& f, double split,
                                     double tol) {
  if (!(split > 0.0)) throw DomainError("integrate_half_line needs split > 0");
  const QuadratureResult head = integrate_interval(f, 0.0, split, tol);
  boost::math::quadrature::exp_sinh<double> rule;
  double tail_err = 0.0;
  const double tail = rule.integrate([&](double u) { return f(split + u); }, tol, &tail_err);
  return {head.value + tail, head.error_estimate + tail_err};
}

}  // namespace fracbin::oracle
