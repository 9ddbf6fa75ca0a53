// SPDX-License-Identifier: Apache-2.0
#include "fracbin/mlf.hpp"

#include <quadmath.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include "fracbin/errors.hpp"

namespace fracbin::mlf {
namespace {

using quad = __float128;

void check_domain(const MLArgs& a) {
  if (!std::isfinite(a.alpha) || !std::isfinite(a.beta) || !std::isfinite(a.z) ||
      !(a.alpha > 0.0 && a.alpha <= 1.0) || !(a.beta > 0.0) || a.z > 0.0) {
    std::ostringstream os;
    os << "Mittag-Leffler arguments out of range (alpha=" << a.alpha << ", beta=" << a.beta
       << ", z=" << a.z << "); need 0<alpha<=1, beta>0, z<=0";
    throw DomainError(os.str());
  }
}

/// sin(pi*y) with exact zeros at the integers.
double sin_pi(double y) {
  const double n = std::nearbyint(y);
  const double s = std::sin(std::numbers::pi * (y - n));
  return std::fmod(n, 2.0) == 0.0 ? s : -s;
}

bool is_nonpositive_integer(double y) { return y <= 0.0 && y == std::nearbyint(y); }

double series_double(double alpha, double beta, double z, double X) {
  double sum = 0.0;
  double comp = 0.0;
  double power = 1.0;
  for (int r = 0; r < 20000; ++r) {
    const double term = power * rgamma(alpha * r + beta);
    // Kahan
    const double y = term - comp;
    const double s = sum + y;
    comp = (s - sum) - y;
    sum = s;
    if (alpha * r + beta > X + 1.0 && std::abs(term) < 1e-20) return sum;
    power *= z;
  }
  throw ConvergenceError("Mittag-Leffler double series did not converge");
}

/// Reciprocal gammas 1/Gamma(alpha*r + beta) in quad precision, grown on
/// demand. A handful of (alpha, beta) pairs are kept per thread.
class QuadRgammaCache {
 public:
  const std::vector<quad>& table(double alpha, double beta, int needed) {
    Entry* hit = nullptr;
    for (auto& e : entries_) {
      if (e.alpha == alpha && e.beta == beta) hit = &e;
    }
    if (hit == nullptr) {
      if (entries_.size() >= kMaxEntries) entries_.erase(entries_.begin());
      entries_.push_back({alpha, beta, {}});
      hit = &entries_.back();
    }
    auto& v = hit->values;
    for (int r = static_cast<int>(v.size()); r < needed; ++r) {
      const quad arg = static_cast<quad>(alpha) * r + static_cast<quad>(beta);
      v.push_back(1.0Q / tgammaq(arg));
    }
    return v;
  }

 private:
  struct Entry {
    double alpha;
    double beta;
    std::vector<quad> values;
  };
  static constexpr std::size_t kMaxEntries = 8;
  std::vector<Entry> entries_;
};

double series_quad(double alpha, double beta, double z, double X) {
  thread_local QuadRgammaCache cache;
  // Terms peak near alpha*r ~ X and are below 1e-22 well before 6X/alpha + 64.
  const int needed = static_cast<int>(std::ceil(6.0 * X / alpha)) + 64;
  const auto& rg = cache.table(alpha, beta, needed);
  quad sum = 0;
  quad power = 1;
  const quad zq = z;
  for (int r = 0; r < needed; ++r) {
    const quad term = power * rg[r];
    sum += term;
    if (alpha * r + beta > X + 1.0 && fabsq(term) < 1e-22Q) return static_cast<double>(sum);
    power *= zq;
  }
  throw ConvergenceError("Mittag-Leffler quad series did not converge");
}

/// -sum_{k>=1} z^{-k} / Gamma(beta - alpha k), z = -x. Terms are tracked by
/// their envelope |x^{-k}| Gamma(1-y)/pi (y = beta - alpha k < 0), which is
/// monotone once y < 0 even though the sin(pi y) factor is not.
double asymptotic(double alpha, double beta, double x) {
  const double log_x = std::log(x);
  const double log_pi = std::log(std::numbers::pi);
  double sum = 0.0;
  double last_env = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 200000; ++k) {
    const double y = beta - alpha * k;
    double env_log;
    double factor;
    if (y > 0.0) {
      env_log = -std::lgamma(y) - k * log_x;
      factor = 1.0;
    } else {
      env_log = std::lgamma(1.0 - y) - log_pi - k * log_x;
      factor = is_nonpositive_integer(y) ? 0.0 : sin_pi(y);
    }
    const double env = std::exp(env_log);
    if (y <= 0.0 && env > last_env) {
      // Past the optimal truncation point of the divergent expansion.
      if (last_env > 1e-3 * kAbsTolerance) {
        throw ConvergenceError("Mittag-Leffler asymptotic expansion cannot reach tolerance");
      }
      return sum;
    }
    // -z^{-k} = -(-1)^k x^{-k}
    sum += ((k % 2 == 0) ? -1.0 : 1.0) * factor * env;
    if (y <= 0.0) {
      last_env = env;
      if (env < 1e-18 * std::abs(sum) || env < 1e-22) return sum;
    }
  }
  throw ConvergenceError("Mittag-Leffler asymptotic expansion did not terminate");
}

}  // namespace

double rgamma(double x) {
  if (x > 0.0) {
    if (x > 171.7) return 0.0;
    return 1.0 / std::tgamma(x);
  }
  if (is_nonpositive_integer(x)) return 0.0;
  const double g = std::tgamma(1.0 - x);
  if (!std::isfinite(g)) return 0.0;  // overflow of Gamma(1-x): reciprocal underflows
  return sin_pi(x) * g / std::numbers::pi;
}

double ml(const MLArgs& args) {
  check_domain(args);
  const auto [alpha, beta, z] = args;
  if (z == 0.0) return rgamma(beta);
  if (alpha == 1.0 && beta == 1.0) return std::exp(z);

  const double x = -z;
  const double X = std::exp(std::log(x) / alpha);
  if (X <= kDoubleSeriesMaxX) return series_double(alpha, beta, z, X);
  if (X <= kQuadSeriesMaxX) return series_quad(alpha, beta, z, X);
  return asymptotic(alpha, beta, x);
}

double ml_one(double alpha, double z) { return ml({alpha, 1.0, z}); }

}  // namespace fracbin::mlf
