// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <vector>

#include "fracbin/exec.hpp"
#include "fracbin/model.hpp"

namespace fracbin::analytics {

/// State probabilities p_n(t), n = 0..N.
struct Pmf {
  double t = 0.0;
  std::vector<double> probs;
  /// Entries in [-kPmfSlack, 0) that were clamped to zero before renormalizing.
  int clamped = 0;

  double sum() const;
};

/// Roundoff slack for pmf entries and normalization.
inline constexpr double kPmfSlack = 1e-9;

/// Largest ceiling population accepted by the closed-form pmf routines.
inline constexpr int kMaxPmfN = 150;

double mean(const ProcessParams& params, double t);
/// H(t) = E[N(t)(N(t)-1)].
double second_factorial_moment(const ProcessParams& params, double t);
double variance(const ProcessParams& params, double t);

/// p_0(t). Exactly 0 in the pure-birth regime.
double extinction_probability(const ProcessParams& params, double t);

/// Full pmf. Pure-birth parameters are routed to pure_birth_pmf.
Pmf pmf(const ProcessParams& params, double t);
Pmf pure_birth_pmf(const ProcessParams& params, double t);

/// Binomial(N, lambda/(lambda+mu)).
Pmf equilibrium_pmf(const ProcessParams& params);

/// Generating function of the classical (nu = 1) process,
/// Q(u,t) = sum_n (1-u)^n p_n(t). Requires u in [0, 2].
double classical_pgf(const ProcessParams& params, double u, double t);
/// Q^nu(u,t) summed over the closed-form pmf. Requires u in [0, 2].
double pgf(const ProcessParams& params, double u, double t);

/// Density of the sojourn in state j of the pure-birth sub-model,
/// lambda(N-j) s^{nu-1} E_{nu,nu}(-lambda(N-j) s^nu). Requires M <= j < N, s > 0.
double waiting_time_density(const ProcessParams& params, int j, double s);

/// Evaluates the closed-form pmf of one parameter set at many times. The
/// coefficient table of the exponential-sum representation depends only on
/// (lambda, mu, N, M), so it is built once here and reused; Mittag-Leffler
/// values are memoized per call.
class PmfEvaluator {
 public:
  explicit PmfEvaluator(const ProcessParams& params, Exec exec = Exec::Parallel);
  ~PmfEvaluator();
  PmfEvaluator(PmfEvaluator&&) noexcept;
  PmfEvaluator& operator=(PmfEvaluator&&) noexcept;

  Pmf operator()(double t) const;
  const ProcessParams& params() const { return params_; }
  /// Working precision (decimal digits) selected for this parameter set.
  unsigned working_digits() const;

 private:
  struct Impl;
  ProcessParams params_;
  Exec exec_;
  std::unique_ptr<Impl> impl_;
};

namespace detail {

/// Unclamped closed-form pmf entries (no normalization check).
std::vector<double> pmf_raw(const ProcessParams& params, double t, Exec exec);

/// The g_{n,r} quadruple sum evaluated term by term in double precision with
/// compensated summation. Only reliable for small N; kept as a second route.
std::vector<double> pmf_quadruple_sum(const ProcessParams& params, double t);

/// Pmf through the general-case product expansion, also for mu == 0
/// (where the public pmf() dispatches to the pure-birth formula instead).
std::vector<double> pmf_general_route(const ProcessParams& params, double t, Exec exec);

/// Sanity-checks raw entries: clamps roundoff negatives, renormalizes, throws
/// AccuracyError on larger violations.
Pmf finalize(double t, std::vector<double> raw);

}  // namespace detail

}  // namespace fracbin::analytics
