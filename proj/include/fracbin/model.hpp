// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string_view>

namespace fracbin {

enum class Regime { General, PureBirth, PureDeath };

std::string_view to_string(Regime regime);

/// Parameters of the fractional binomial process: birth coefficient lambda
/// (state birth rate lambda*(N-n)), death coefficient mu (state death rate
/// mu*n), ceiling N, initial population M and fractional order nu.
///
/// Rates carry dimension time^{-nu}; no unit system is attached.
/// The constructor rejects every invalid tuple with InvalidParams.
class ProcessParams {
 public:
  ProcessParams(double lambda, double mu, int N, int M, double nu);

  double lambda() const { return lambda_; }
  double mu() const { return mu_; }
  int N() const { return N_; }
  int M() const { return M_; }
  double nu() const { return nu_; }

  /// lambda + mu
  double total_rate() const { return lambda_ + mu_; }

  double birth_rate(int n) const { return lambda_ * (N_ - n); }
  double death_rate(int n) const { return mu_ * n; }

  ProcessParams with_nu(double nu) const { return {lambda_, mu_, N_, M_, nu}; }

  friend bool operator==(const ProcessParams&, const ProcessParams&) = default;

 private:
  double lambda_;
  double mu_;
  int N_;
  int M_;
  double nu_;
};

Regime classify(const ProcessParams& params);

/// lambda / (lambda + mu), the success probability of the equilibrium binomial.
double equilibrium_p(const ProcessParams& params);

}  // namespace fracbin
