// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>

#include "fracbin/errors.hpp"
#include "fracbin/oracle.hpp"
#include "fracbin/sampler.hpp"

namespace fracbin::oracle {

PmfEstimate subordination_pmf_mc(const ProcessParams& params, double t, std::int64_t n_samples,
                                 RngSeed seed, Exec exec) {
  if (n_samples < 1000) throw DomainError("subordination_pmf_mc needs n_samples >= 1000");
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("time must be finite and >= 0");

  std::vector<double> op_times(static_cast<std::size_t>(n_samples));
  auto draw = [&](std::int64_t k) {
    RngStream rng(seed, static_cast<std::uint64_t>(k));
    op_times[k] = sampler::inverse_subordinator_sample(params.nu(), t, rng);
  };
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
    for (std::int64_t k = 0; k < n_samples; ++k) draw(k);
  } else {
    for (std::int64_t k = 0; k < n_samples; ++k) draw(k);
  }
  std::sort(op_times.begin(), op_times.end());

  const auto classical = master_equation_at_times(params, op_times);
  const int states = params.N() + 1;
  const double K = static_cast<double>(n_samples);
  PmfEstimate out;
  out.t = t;
  out.n_samples = n_samples;
  out.probs.assign(states, 0.0);
  out.se.assign(states, 0.0);
  for (const auto& p : classical) {
    for (int n = 0; n < states; ++n) out.probs[n] += p[n];
  }
  for (double& v : out.probs) v /= K;
  for (const auto& p : classical) {
    for (int n = 0; n < states; ++n) {
      const double d = p[n] - out.probs[n];
      out.se[n] += d * d;
    }
  }
  for (double& v : out.se) v = std::sqrt(v / (K - 1.0) / K);
  return out;
}

}  // namespace fracbin::oracle
