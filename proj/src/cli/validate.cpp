// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>

#include "fracbin/analytics.hpp"
#include "fracbin/cli.hpp"
#include "fracbin/mlf.hpp"
#include "fracbin/oracle.hpp"

namespace fracbin::cli {
namespace {

CheckResult at_most(std::string name, double measured, double threshold) {
  return {std::move(name), measured <= threshold, measured, threshold};
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

CheckResult ml_against_reference(std::span<const double> alphas) {
  double worst = 0.0;
  for (double alpha : alphas) {
    for (double beta : {alpha, 1.0}) {
      for (double z : {0.0, -0.5, -2.0, -10.0, -50.0}) {
        const double ref = oracle::ml_reference(alpha, beta, z).value;
        worst = std::max(worst, std::abs(mlf::ml({alpha, beta, z}) - ref));
      }
    }
  }
  return at_most("ml_vs_high_precision_reference", worst, mlf::kAbsTolerance);
}

CheckResult pmf_against_master_equation(const ProcessParams& params) {
  double worst = 0.0;
  for (double t : {0.5, 1.0}) {
    const auto ode = oracle::master_equation_classical(params, t);
    worst = std::max(worst, max_abs_diff(analytics::pmf(params, t).probs, ode.probs));
  }
  return at_most("pmf_nu1_vs_master_equation", worst, 1e-6);
}

CheckResult moments_against_master_equation(const ProcessParams& params) {
  double worst = 0.0;
  for (double t : {0.5, 1.0}) {
    const auto ode = oracle::master_equation_classical(params, t);
    double m1 = 0.0;
    double m2 = 0.0;
    for (std::size_t n = 0; n < ode.probs.size(); ++n) {
      m1 += n * ode.probs[n];
      m2 += static_cast<double>(n * n) * ode.probs[n];
    }
    worst = std::max(worst, std::abs(analytics::mean(params, t) - m1));
    worst = std::max(worst, std::abs(analytics::variance(params, t) - (m2 - m1 * m1)));
  }
  return at_most("moments_nu1_vs_master_equation", worst, 1e-6);
}

CheckResult extinction_matches_pmf(const ProcessParams& params) {
  const double t = 1.0;
  const double gap =
      std::abs(analytics::extinction_probability(params, t) - analytics::pmf(params, t).probs[0]);
  return at_most("extinction_vs_pmf_entry_0", gap, 1e-10);
}

CheckResult pmf_normalization(const ProcessParams& params) {
  double worst = 0.0;
  for (double t : {0.1, 1.0, 10.0}) {
    const auto raw = analytics::detail::pmf_raw(params, t, Exec::Parallel);
    double sum = 0.0;
    for (double p : raw) {
      sum += p;
      worst = std::max(worst, -p);
    }
    worst = std::max(worst, std::abs(sum - 1.0));
  }
  return at_most("pmf_normalization", worst, analytics::kPmfSlack);
}

CheckResult moments_match_pmf(const ProcessParams& params) {
  double worst = 0.0;
  for (double t : {0.5, 3.0}) {
    const auto dist = analytics::pmf(params, t);
    double m1 = 0.0;
    double m2 = 0.0;
    for (std::size_t n = 0; n < dist.probs.size(); ++n) {
      m1 += n * dist.probs[n];
      m2 += static_cast<double>(n * n) * dist.probs[n];
    }
    worst = std::max(worst, std::abs(analytics::mean(params, t) - m1));
    worst = std::max(worst, std::abs(analytics::variance(params, t) - (m2 - m1 * m1)));
  }
  return at_most("moments_vs_pmf", worst, 1e-8);
}

CheckResult pmf_against_subordination_mc(const ProcessParams& params, std::uint64_t seed) {
  const double t = 1.0;
  const auto mc = oracle::subordination_pmf_mc(params, t, 20000, RngSeed{seed});
  const auto dist = analytics::pmf(params, t);
  double worst = 0.0;
  for (std::size_t n = 0; n < dist.probs.size(); ++n) {
    worst = std::max(worst, std::abs(dist.probs[n] - mc.probs[n]) / std::max(mc.se[n], 1e-9));
  }
  return at_most("pmf_vs_subordination_mc_in_se", worst, 4.0);
}

CheckResult pure_birth_routes(const ProcessParams& params) {
  const double t = 1.0;
  const auto direct = analytics::pure_birth_pmf(params, t);
  const auto general = analytics::detail::pmf_general_route(params, t, Exec::Parallel);
  return at_most("pure_birth_vs_general_expansion", max_abs_diff(direct.probs, general), 1e-10);
}

CheckResult quadruple_sum_route(const ProcessParams& params) {
  const double t = 0.8;
  const auto quad = analytics::detail::pmf_quadruple_sum(params, t);
  return at_most("quadruple_sum_vs_pmf", max_abs_diff(analytics::pmf(params, t).probs, quad),
                 1e-8);
}

}  // namespace

std::vector<CheckResult> run_validation(const RunConfig& config) {
  const ProcessParams small(1.0, 2.0, 12, 5, 0.7);
  const ProcessParams classical = small.with_nu(1.0);
  std::vector<CheckResult> checks;
  if (config.suite == "quick") {
    const double alphas[] = {0.5, 1.0};
    checks.push_back(ml_against_reference(alphas));
    checks.push_back(pmf_normalization(small));
  } else if (config.suite == "nu1") {
    const double alphas[] = {1.0};
    checks.push_back(ml_against_reference(alphas));
    checks.push_back(pmf_against_master_equation(classical));
    checks.push_back(moments_against_master_equation(classical));
    checks.push_back(extinction_matches_pmf(classical));
    checks.push_back(moments_match_pmf(classical));
  } else {
    const double alphas[] = {0.5, 0.7, 1.0};
    checks.push_back(ml_against_reference(alphas));
    checks.push_back(pmf_against_master_equation(classical));
    checks.push_back(moments_against_master_equation(classical));
    checks.push_back(pmf_normalization(ProcessParams(1.0, 1.0, 60, 20, 0.7)));
    checks.push_back(extinction_matches_pmf(small.with_nu(0.6)));
    checks.push_back(moments_match_pmf(small));
    checks.push_back(pmf_against_subordination_mc(small, config.seed));
    checks.push_back(pure_birth_routes(ProcessParams(1.0, 0.0, 20, 5, 0.8)));
    checks.push_back(quadruple_sum_route(ProcessParams(1.0, 2.0, 8, 3, 0.6)));
  }
  if (config.force_fail) checks.push_back({"forced_failure", false, 1.0, 0.0});
  return checks;
}

Table validation_table(std::span<const CheckResult> checks) {
  Table table{"fracbin.validate.v1", {"check", "passed", "measured", "threshold"}, {}};
  for (const auto& c : checks) {
    table.rows.push_back({c.name, static_cast<std::int64_t>(c.passed), c.measured, c.threshold});
  }
  return table;
}

}  // namespace fracbin::cli
