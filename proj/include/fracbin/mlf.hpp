// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace fracbin::mlf {

/// Arguments of the two-parameter Mittag-Leffler function E_{alpha,beta}(z).
/// Supported range: 0 < alpha <= 1, beta > 0, z <= 0.
struct MLArgs {
  double alpha;
  double beta;
  double z;
};

/// Absolute accuracy targeted by ml() over the supported range.
inline constexpr double kAbsTolerance = 1e-10;

/// Crossover points in X = |z|^{1/alpha}. Below kDoubleSeriesMaxX the Taylor
/// series is summed in double; up to kQuadSeriesMaxX in __float128; beyond
/// that the algebraic asymptotic expansion is used.
inline constexpr double kDoubleSeriesMaxX = 8.0;
inline constexpr double kQuadSeriesMaxX = 40.0;

/// E_{alpha,beta}(z). Throws DomainError outside the supported range and
/// ConvergenceError if the selected method cannot meet kAbsTolerance.
double ml(const MLArgs& args);

/// E_{alpha,1}(z).
double ml_one(double alpha, double z);

/// Reciprocal gamma function, 0 at the poles.
double rgamma(double x);

}  // namespace fracbin::mlf
