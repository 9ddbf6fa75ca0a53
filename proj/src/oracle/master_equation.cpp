// SPDX-License-Identifier: Apache-2.0
#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "fracbin/errors.hpp"
#include "fracbin/oracle.hpp"

namespace fracbin::oracle {
namespace {

using State = std::vector<double>;

/// Tridiagonal generator of the classical chain, applied as dp/dt = Q p.
class Generator {
 public:
  explicit Generator(const ProcessParams& params) : n_(params.N() + 1) {
    birth_.resize(n_);
    death_.resize(n_);
    for (int n = 0; n < n_; ++n) {
      birth_[n] = params.birth_rate(n);
      death_[n] = params.death_rate(n);
    }
  }

  int size() const { return n_; }

  double max_exit_rate() const {
    double r = 0.0;
    for (int n = 0; n < n_; ++n) r = std::max(r, birth_[n] + death_[n]);
    return r;
  }

  void apply(const State& p, State& dp) const {
    for (int n = 0; n < n_; ++n) {
      double v = -(birth_[n] + death_[n]) * p[n];
      if (n > 0) v += birth_[n - 1] * p[n - 1];
      if (n + 1 < n_) v += death_[n + 1] * p[n + 1];
      dp[n] = v;
    }
  }

  Eigen::MatrixXd dense() const {
    Eigen::MatrixXd q = Eigen::MatrixXd::Zero(n_, n_);
    for (int n = 0; n < n_; ++n) {
      q(n, n) = -(birth_[n] + death_[n]);
      if (n + 1 < n_) {
        q(n + 1, n) = birth_[n];
        q(n, n + 1) = death_[n + 1];
      }
    }
    return q;
  }

 private:
  int n_;
  std::vector<double> birth_;
  std::vector<double> death_;
};

/// Dormand-Prince 5(4) with FSAL and absolute local error control.
class Dopri {
 public:
  Dopri(const Generator& gen, double tol) : gen_(gen), tol_(tol) {
    for (auto& k : k_) k.assign(gen.size(), 0.0);
    tmp_.assign(gen.size(), 0.0);
    h_ = 0.05 / std::max(gen.max_exit_rate(), 1e-300);
  }

  /// Advances y from t0 to t1.
  void advance(State& y, double t0, double t1, OdeSolution& stats) {
    double t = t0;
    if (t1 <= t0) return;
    if (!fsal_valid_) {
      gen_.apply(y, k_[0]);
      fsal_valid_ = true;
    }
    while (t < t1) {
      const double remaining = t1 - t;
      const bool clamped = h_ >= remaining;
      const double h = clamped ? remaining : h_;
      if (h < 1e-14 * std::max(1.0, std::abs(t))) {
        throw ConvergenceError("master equation: step size underflow");
      }
      const double err = attempt(y, h);
      if (err <= 1.0) {
        std::swap(k_[0], k_[6]);
        y.swap(tmp_);
        t = clamped ? t1 : t + h;
        ++stats.accepted_steps;
        const double mass = std::accumulate(y.begin(), y.end(), 0.0);
        stats.max_mass_defect = std::max(stats.max_mass_defect, std::abs(mass - 1.0));
      } else {
        ++stats.rejected_steps;
      }
      const double factor =
          err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
      // A clamped accepted step says nothing about the natural step size.
      if (!(clamped && err <= 1.0)) h_ = h * factor;
    }
  }

 private:
  /// One trial step of size h; fills tmp_ with the 5th-order solution and
  /// k_[6] with f(tmp_). Returns the scaled error norm.
  double attempt(const State& y, double h) {
    static constexpr double a[6][6] = {
        {1.0 / 5},
        {3.0 / 40, 9.0 / 40},
        {44.0 / 45, -56.0 / 15, 32.0 / 9},
        {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
        {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
        {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
    };
    static constexpr double e[7] = {71.0 / 57600,    0.0,          -71.0 / 16695, 71.0 / 1920,
                                    -17253.0 / 339200, 22.0 / 525, -1.0 / 40};
    const int n = gen_.size();
    for (int s = 1; s <= 6; ++s) {
      for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int j = 0; j < s; ++j) acc += a[s - 1][j] * k_[j][i];
        tmp_[i] = y[i] + h * acc;
      }
      gen_.apply(tmp_, k_[s]);
    }
    // tmp_ now holds the 5th-order solution (last stage row equals b).
    double norm = 0.0;
    for (int i = 0; i < n; ++i) {
      double acc = 0.0;
      for (int j = 0; j < 7; ++j) acc += e[j] * k_[j][i];
      norm = std::max(norm, std::abs(h * acc));
    }
    return norm / tol_;
  }

  const Generator& gen_;
  double tol_;
  double h_;
  bool fsal_valid_ = false;
  std::array<State, 7> k_;
  State tmp_;
};

void check_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("time must be finite and >= 0");
}

State initial_state(const ProcessParams& params) {
  State p(params.N() + 1, 0.0);
  p[params.M()] = 1.0;
  return p;
}

}  // namespace

OdeSolution master_equation_dopri(const ProcessParams& params, double t, double tol) {
  check_time(t);
  const Generator gen(params);
  OdeSolution out;
  out.t = t;
  out.probs = initial_state(params);
  Dopri solver(gen, tol);
  solver.advance(out.probs, 0.0, t, out);
  return out;
}

OdeSolution master_equation_expm(const ProcessParams& params, double t) {
  check_time(t);
  if (params.N() > 64) throw DomainError("matrix exponential route supports N <= 64");
  const Generator gen(params);
  const Eigen::MatrixXd propagator = (gen.dense() * t).exp();
  OdeSolution out;
  out.t = t;
  out.probs.resize(gen.size());
  for (int n = 0; n < gen.size(); ++n) out.probs[n] = propagator(n, params.M());
  out.max_mass_defect = std::abs(std::accumulate(out.probs.begin(), out.probs.end(), 0.0) - 1.0);
  return out;
}

OdeSolution master_equation_classical(const ProcessParams& params, double t) {
  check_time(t);
  const Generator gen(params);
  if (gen.max_exit_rate() * t > kStiffHorizon && params.N() <= 64) {
    return master_equation_expm(params, t);
  }
  return master_equation_dopri(params, t);
}

std::vector<std::vector<double>> master_equation_at_times(const ProcessParams& params,
                                                          std::span<const double> sorted_times,
                                                          double tol) {
  const Generator gen(params);
  Dopri solver(gen, tol);
  OdeSolution stats;
  State y = initial_state(params);
  double now = 0.0;
  std::vector<std::vector<double>> out;
  out.reserve(sorted_times.size());
  for (double t : sorted_times) {
    check_time(t);
    if (t < now) throw DomainError("master_equation_at_times needs ascending times");
    solver.advance(y, now, t, stats);
    now = t;
    out.push_back(y);
  }
  return out;
}

}  // namespace fracbin::oracle
