// SPDX-License-Identifier: Apache-2.0
#include "fracbin/model.hpp"

#include <cmath>
#include <sstream>

#include "fracbin/errors.hpp"

namespace fracbin {
namespace {

[[noreturn]] void reject(const std::string& what, double lambda, double mu, int N, int M,
                         double nu) {
  std::ostringstream os;
  os << "invalid process parameters (lambda=" << lambda << ", mu=" << mu << ", N=" << N
     << ", M=" << M << ", nu=" << nu << "): " << what;
  throw InvalidParams(os.str());
}

}  // namespace

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::General:
      return "general";
    case Regime::PureBirth:
      return "pure-birth";
    case Regime::PureDeath:
      return "pure-death";
  }
  return "?";
}

ProcessParams::ProcessParams(double lambda, double mu, int N, int M, double nu)
    : lambda_(lambda), mu_(mu), N_(N), M_(M), nu_(nu) {
  if (!std::isfinite(lambda) || lambda < 0.0) reject("lambda must be finite and >= 0", lambda, mu, N, M, nu);
  if (!std::isfinite(mu) || mu < 0.0) reject("mu must be finite and >= 0", lambda, mu, N, M, nu);
  if (!(lambda + mu > 0.0)) reject("lambda + mu must be > 0", lambda, mu, N, M, nu);
  if (N < 1) reject("N must be >= 1", lambda, mu, N, M, nu);
  if (M < 1 || M > N) reject("M must satisfy 1 <= M <= N", lambda, mu, N, M, nu);
  if (!std::isfinite(nu) || !(nu > 0.0 && nu <= 1.0)) reject("nu must lie in (0, 1]", lambda, mu, N, M, nu);
}

Regime classify(const ProcessParams& params) {
  if (params.mu() == 0.0) return Regime::PureBirth;
  if (params.lambda() == 0.0) return Regime::PureDeath;
  return Regime::General;
}

double equilibrium_p(const ProcessParams& params) {
  return params.lambda() / params.total_rate();
}

}  // namespace fracbin
