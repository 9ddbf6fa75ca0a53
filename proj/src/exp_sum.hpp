// SPDX-License-Identifier: Apache-2.0
#pragma once

// Exponential-sum representation of the closed-form state probabilities:
//
//   p_n(t) = sum_k c[n][k] * E_{nu,1}(-k * rate * t^nu)
//
// which is what the g_{n,r} quadruple sum reduces to once its Mittag-Leffler
// factors are memoized by k = m1+m2+m3+m4. The c[n][k] are the coefficients of
// w^k in the classical p_n(s), w = exp(-rate*s); they alternate in sign and
// their absolute mass grows like 3^N, hence the multiprecision tiers.

#include <variant>
#include <vector>

#include "fracbin/exec.hpp"
#include "fracbin/model.hpp"
#include "precise_ml.hpp"

namespace fracbin::precise {

template <unsigned D>
struct ExpSumTable {
  int rows = 0;
  int cols = 0;
  double rate = 0.0;
  std::vector<Big<D>> c;

  Big<D>& at(int n, int k) { return c[static_cast<std::size_t>(n) * cols + k]; }
  const Big<D>& at(int n, int k) const { return c[static_cast<std::size_t>(n) * cols + k]; }
};

inline constexpr unsigned kTiers[] = {32, 64, 128};

using AnyTable = std::variant<ExpSumTable<32>, ExpSumTable<64>, ExpSumTable<128>>;

/// Which table to build.
enum class TableKind {
  General,     // product form of the classical pgf, valid for every regime
  PureBirth,   // binomial-difference formula of the mu = 0 sub-model
  Extinction,  // row n = 0 only, from the extinction double sum
};

/// log10 of a bound on sum_k |c[n][k]|, used to pick the precision tier.
double coefficient_mass_log10(const ProcessParams& params, TableKind kind);

/// Builds the table in the smallest tier with >= mass + 20 digits.
AnyTable make_table(const ProcessParams& params, TableKind kind, Exec exec);

unsigned table_digits(const AnyTable& table);

/// sum_k c[n][k] E_{nu,1}(-k rate t^nu) for every row, rounded to double.
std::vector<double> evaluate(const AnyTable& table, double nu, double t, Exec exec);

// Tier-specific kernels, exposed for tests and the benchmark.
template <unsigned D>
ExpSumTable<D> general_table(const ProcessParams& params, Exec exec);
template <unsigned D>
ExpSumTable<D> pure_birth_table(const ProcessParams& params);
template <unsigned D>
ExpSumTable<D> extinction_table(const ProcessParams& params);
template <unsigned D>
std::vector<double> evaluate_table(const ExpSumTable<D>& table, double nu, double t, Exec exec);

}  // namespace fracbin::precise
