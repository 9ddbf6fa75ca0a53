// SPDX-License-Identifier: Apache-2.0
#include "fracbin/analytics.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "exp_sum.hpp"
#include "fracbin/errors.hpp"
#include "fracbin/mlf.hpp"

namespace fracbin::analytics {
namespace {

void check_time(double t) {
  if (!std::isfinite(t) || t < 0.0) throw DomainError("time must be finite and >= 0");
}

void check_u(double u) {
  if (!(u >= 0.0 && u <= 2.0)) throw DomainError("pgf argument u must lie in [0, 2]");
}

void check_pmf_size(const ProcessParams& params) {
  if (params.N() > kMaxPmfN) {
    std::ostringstream os;
    os << "closed-form pmf supports N <= " << kMaxPmfN << " (got N=" << params.N() << ")";
    throw DomainError(os.str());
  }
}

/// E_{nu,1}(-k (lambda+mu) t^nu) for k = 1, 2.
struct RelaxationFactors {
  double e1;
  double e2;
};

RelaxationFactors relaxation(const ProcessParams& params, double t) {
  const double a = params.total_rate() * std::pow(t, params.nu());
  return {mlf::ml_one(params.nu(), -a), mlf::ml_one(params.nu(), -2.0 * a)};
}

Pmf point_mass(double t, int size, int at) {
  Pmf out;
  out.t = t;
  out.probs.assign(size, 0.0);
  out.probs[at] = 1.0;
  return out;
}

double log_binomial(int n, int k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace

double Pmf::sum() const { return std::accumulate(probs.begin(), probs.end(), 0.0); }

double mean(const ProcessParams& params, double t) {
  check_time(t);
  if (t == 0.0) return params.M();
  const double target = params.N() * equilibrium_p(params);
  const auto [e1, e2] = relaxation(params, t);
  (void)e2;
  return (params.M() - target) * e1 + target;
}

double second_factorial_moment(const ProcessParams& params, double t) {
  check_time(t);
  const double N = params.N();
  const double M = params.M();
  if (t == 0.0) return M * (M - 1.0);
  const double p = equilibrium_p(params);
  const double c = p * p * N * (N - 1.0);
  const double cross = 2.0 * p * M * (N - 1.0);
  const auto [e1, e2] = relaxation(params, t);
  return c + e2 * (c - cross + M * (M - 1.0)) - e1 * (2.0 * c - cross);
}

double variance(const ProcessParams& params, double t) {
  check_time(t);
  if (t == 0.0) return 0.0;
  const double N = params.N();
  const double M = params.M();
  const double p = equilibrium_p(params);
  const double q = params.mu() / params.total_rate();
  const auto [e1, e2] = relaxation(params, t);
  const double drift = M - N * p;
  return (p * p * N * (N - 1.0) - 2.0 * p * M * (N - 1.0) + M * (M - 1.0)) * e2 +
         (2.0 * p * p * N - p * (N + 2.0 * M) + M) * e1 - drift * drift * e1 * e1 + N * p * q;
}

double extinction_probability(const ProcessParams& params, double t) {
  check_time(t);
  if (classify(params) == Regime::PureBirth) return 0.0;
  if (t == 0.0) return 0.0;
  const auto table = precise::make_table(params, precise::TableKind::Extinction, Exec::Serial);
  const double p0 = precise::evaluate(table, params.nu(), t, Exec::Serial).front();
  return std::clamp(p0, 0.0, 1.0);
}

// PmfEvaluator

struct PmfEvaluator::Impl {
  precise::AnyTable table;
};

PmfEvaluator::PmfEvaluator(const ProcessParams& params, Exec exec)
    : params_(params), exec_(exec) {
  check_pmf_size(params);
  const auto kind = classify(params) == Regime::PureBirth ? precise::TableKind::PureBirth
                                                          : precise::TableKind::General;
  impl_ = std::make_unique<Impl>(Impl{precise::make_table(params, kind, exec)});
}

PmfEvaluator::~PmfEvaluator() = default;
PmfEvaluator::PmfEvaluator(PmfEvaluator&&) noexcept = default;
PmfEvaluator& PmfEvaluator::operator=(PmfEvaluator&&) noexcept = default;

unsigned PmfEvaluator::working_digits() const { return precise::table_digits(impl_->table); }

Pmf PmfEvaluator::operator()(double t) const {
  check_time(t);
  if (t == 0.0) return point_mass(t, params_.N() + 1, params_.M());
  return detail::finalize(t, precise::evaluate(impl_->table, params_.nu(), t, exec_));
}

Pmf pmf(const ProcessParams& params, double t) {
  check_time(t);
  if (classify(params) == Regime::PureBirth) return pure_birth_pmf(params, t);
  return PmfEvaluator(params)(t);
}

Pmf pure_birth_pmf(const ProcessParams& params, double t) {
  check_time(t);
  if (classify(params) != Regime::PureBirth) {
    throw DomainError("pure_birth_pmf requires mu == 0");
  }
  return PmfEvaluator(params)(t);
}

Pmf equilibrium_pmf(const ProcessParams& params) {
  const int N = params.N();
  const double p = equilibrium_p(params);
  if (p == 0.0) return point_mass(INFINITY, N + 1, 0);
  if (p == 1.0) return point_mass(INFINITY, N + 1, N);
  const double log_p = std::log(p);
  const double log_q = std::log(params.mu() / params.total_rate());
  Pmf out;
  out.t = INFINITY;
  out.probs.resize(N + 1);
  for (int n = 0; n <= N; ++n) {
    out.probs[n] = std::exp(log_binomial(N, n) + n * log_p + (N - n) * log_q);
  }
  return out;
}

double classical_pgf(const ProcessParams& params, double u, double t) {
  check_u(u);
  check_time(t);
  const double p = equilibrium_p(params);
  const double decay = std::exp(-params.total_rate() * t);
  const double grown = (1.0 - decay) * p;
  return std::pow(1.0 - grown * u, params.N() - params.M()) *
         std::pow(1.0 - (grown + decay) * u, params.M());
}

double pgf(const ProcessParams& params, double u, double t) {
  check_u(u);
  const Pmf dist = pmf(params, t);
  double q = 0.0;
  double power = 1.0;
  for (double p : dist.probs) {
    q += power * p;
    power *= 1.0 - u;
  }
  return q;
}

double waiting_time_density(const ProcessParams& params, int j, double s) {
  if (classify(params) != Regime::PureBirth) {
    throw DomainError("waiting_time_density is defined for the pure-birth sub-model (mu == 0)");
  }
  if (j < params.M() || j >= params.N()) {
    throw DomainError("waiting_time_density needs M <= j < N");
  }
  if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("waiting_time_density needs s > 0");
  const double nu = params.nu();
  const double rate = params.birth_rate(j);
  return rate * std::pow(s, nu - 1.0) * mlf::ml({nu, nu, -rate * std::pow(s, nu)});
}

namespace detail {

std::vector<double> pmf_raw(const ProcessParams& params, double t, Exec exec) {
  check_time(t);
  check_pmf_size(params);
  const auto kind = classify(params) == Regime::PureBirth ? precise::TableKind::PureBirth
                                                          : precise::TableKind::General;
  return precise::evaluate(precise::make_table(params, kind, exec), params.nu(), t, exec);
}

std::vector<double> pmf_general_route(const ProcessParams& params, double t, Exec exec) {
  check_time(t);
  check_pmf_size(params);
  return precise::evaluate(precise::make_table(params, precise::TableKind::General, exec),
                           params.nu(), t, exec);
}

std::vector<double> pmf_quadruple_sum(const ProcessParams& params, double t) {
  check_time(t);
  if (params.mu() == 0.0) throw DomainError("quadruple-sum route needs mu > 0");
  const int N = params.N();
  const int M = params.M();
  const double rho = params.lambda() / params.mu();
  const double a = params.total_rate() * std::pow(t, params.nu());

  // Every g_{n,r} term weights E(-k a) with k = m1+m2+m3+m4 <= N.
  std::vector<double> e(N + 1);
  for (int k = 0; k <= N; ++k) e[k] = mlf::ml_one(params.nu(), -k * a);

  const double log_front = N * std::log(params.mu() / params.total_rate());
  std::vector<double> out(N + 1, 0.0);
  for (int n = 0; n <= N; ++n) {
    double sum = 0.0;
    double comp = 0.0;
    auto add = [&](double term) {
      const double y = term - comp;
      const double s = sum + y;
      comp = (s - sum) - y;
      sum = s;
    };
    for (int r = std::max(0, n - M); r <= std::min(n, N - M); ++r) {
      const double front = std::exp(log_front + log_binomial(N - M, r) + log_binomial(M, n - r));
      for (int m1 = 0; m1 <= r; ++m1) {
        const double c1 = std::exp(log_binomial(r, m1)) * (m1 % 2 ? -1.0 : 1.0);
        for (int m2 = 0; m2 <= N - M - r; ++m2) {
          const double c2 = std::exp(log_binomial(N - M - r, m2)) * std::pow(rho, m2);
          for (int m3 = 0; m3 <= n - r; ++m3) {
            const double c3 = std::exp(log_binomial(n - r, m3)) * std::pow(rho, n - m3);
            for (int m4 = 0; m4 <= M - n + r; ++m4) {
              const double c4 = std::exp(log_binomial(M - n + r, m4)) * (m4 % 2 ? -1.0 : 1.0);
              add(front * c1 * c2 * c3 * c4 * e[m1 + m2 + m3 + m4]);
            }
          }
        }
      }
    }
    out[n] = sum;
  }
  return out;
}

Pmf finalize(double t, std::vector<double> raw) {
  Pmf out;
  out.t = t;
  for (std::size_t n = 0; n < raw.size(); ++n) {
    double& p = raw[n];
    if (!std::isfinite(p) || p < -kPmfSlack || p > 1.0 + kPmfSlack) {
      std::ostringstream os;
      os << "pmf entry p_" << n << "(" << t << ") = " << p << " outside [-" << kPmfSlack
         << ", 1+" << kPmfSlack << "]";
      throw AccuracyError(os.str());
    }
    if (p < 0.0) {
      p = 0.0;
      ++out.clamped;
    }
  }
  const double total = std::accumulate(raw.begin(), raw.end(), 0.0);
  if (std::abs(total - 1.0) > kPmfSlack) {
    std::ostringstream os;
    os << "pmf at t=" << t << " sums to " << total;
    throw AccuracyError(os.str());
  }
  for (double& p : raw) p /= total;
  out.probs = std::move(raw);
  return out;
}

}  // namespace detail

}  // namespace fracbin::analytics
