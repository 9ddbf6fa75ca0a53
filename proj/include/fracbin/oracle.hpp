// SPDX-License-Identifier: Apache-2.0
#pragma once

// Independent reference implementations used for validation only. Nothing in
// here calls fracbin::mlf or fracbin::analytics.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "fracbin/exec.hpp"
#include "fracbin/model.hpp"
#include "fracbin/rng.hpp"

namespace fracbin::oracle {

struct OdeSolution {
  double t = 0.0;
  std::vector<double> probs;
  /// Accepted / rejected steps of the adaptive integrator (0 for expm).
  int accepted_steps = 0;
  int rejected_steps = 0;
  /// Largest |sum(p) - 1| seen over accepted steps.
  double max_mass_defect = 0.0;
};

/// Solves the classical master equation dp/dt = Q p from delta_M up to t
/// (nu ignored). Adaptive Dormand-Prince 5(4) with local tolerance 1e-12;
/// for stiff horizons (max exit rate * t > kStiffHorizon) and N <= 64 the
/// matrix exponential is used instead.
OdeSolution master_equation_classical(const ProcessParams& params, double t);

/// Same system, always via Dormand-Prince.
OdeSolution master_equation_dopri(const ProcessParams& params, double t, double tol = 1e-12);

/// Same system via the matrix exponential (Pade, scaling and squaring).
/// Requires N <= 64.
OdeSolution master_equation_expm(const ProcessParams& params, double t);

/// Classical pmf at each of the ascending times, integrating once through them.
std::vector<std::vector<double>> master_equation_at_times(const ProcessParams& params,
                                                          std::span<const double> sorted_times,
                                                          double tol = 1e-11);

inline constexpr double kStiffHorizon = 2.0e4;

struct HighPrecValue {
  double value = 0.0;
  /// Bound on |returned value - exact|, including rounding to double.
  double error_bound = 0.0;
  /// Decimal digits of working precision used.
  unsigned working_digits = 0;
  /// Terms summed (series) or function evaluations (quadrature).
  int terms = 0;
};

/// E_{alpha,beta}(z) by direct power series in software floating point with
/// working precision raised to absorb the cancellation. Requires z <= 0,
/// |z| <= 100, digits <= 60; throws ConvergenceError when the cancellation
/// would need more than kMaxSeriesDigits of working precision.
HighPrecValue ml_series_highprec(double alpha, double beta, double z, int digits);

inline constexpr unsigned kMaxSeriesDigits = 512;

/// E_{alpha,beta}(z), z < 0, 0 < alpha < 1, 0 < beta <= 1 + alpha, from the
/// real integral representation of E on the negative axis, integrated with
/// double-exponential quadrature in quad precision.
HighPrecValue ml_integral_highprec(double alpha, double beta, double z);

/// Series when the required working precision is modest, integral otherwise.
HighPrecValue ml_reference(double alpha, double beta, double z);

/// int_0^inf f(s) ds, splitting at `split` (tanh-sinh on [0, split] copes
/// with an integrable endpoint singularity; exp-sinh on the tail).
struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
};
QuadratureResult integrate_half_line(const std::function<double(double)>& f, double split = 1.0,
                                     double tol = 1e-10);
QuadratureResult integrate_interval(const std::function<double(double)>& f, double a, double b,
                                    double tol = 1e-10);

struct PmfEstimate {
  double t = 0.0;
  std::vector<double> probs;
  std::vector<double> se;
  std::int64_t n_samples = 0;
};

/// p_n^nu(t) ~ (1/K) sum_k p_n(V_k) with V_k draws of the inverse stable
/// subordinator; the classical p_n(.) comes from master_equation_at_times.
PmfEstimate subordination_pmf_mc(const ProcessParams& params, double t, std::int64_t n_samples,
                                 RngSeed seed, Exec exec = Exec::Parallel);

// Goodness-of-fit helpers.

struct TestOutcome {
  double statistic = 0.0;
  double p_value = 1.0;
  int dof = 0;
  bool rejected(double level) const { return p_value < level; }
};

/// Pearson chi-square of observed counts against probabilities; adjacent bins
/// with expected count below `min_expected` are pooled.
TestOutcome chi_square_gof(std::span<const std::int64_t> counts, std::span<const double> probs,
                           double min_expected = 5.0);

/// Two-sample chi-square homogeneity test on count vectors over the same bins.
TestOutcome chi_square_two_sample(std::span<const std::int64_t> a, std::span<const std::int64_t> b,
                                  double min_expected = 5.0);

/// One-sample Kolmogorov-Smirnov test of sorted samples against a CDF.
TestOutcome ks_one_sample(std::span<const double> sorted, const std::function<double(double)>& cdf);

/// Two-sample Kolmogorov-Smirnov test (asymptotic p-value).
TestOutcome ks_two_sample(std::vector<double> a, std::vector<double> b);

/// Kolmogorov limiting survival function Q_KS(x) = P(sqrt(n) D > x).
double kolmogorov_survival(double x);

/// Mean and standard error of a sample.
struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};
MeanSe mean_se(std::span<const double> xs);

}  // namespace fracbin::oracle
