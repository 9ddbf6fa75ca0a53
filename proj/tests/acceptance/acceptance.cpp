// SPDX-License-Identifier: Apache-2.0
// Acceptance runner: `acceptance N` checks criterion N, `acceptance` runs all.
// Prints one "criterion N: PASS|FAIL ..." line per criterion; exit status 0
// only when every requested criterion passed.

#include <omp.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "fracbin/analytics.hpp"
#include "fracbin/cli.hpp"
#include "fracbin/errors.hpp"
#include "fracbin/mlf.hpp"
#include "fracbin/oracle.hpp"
#include "fracbin/sampler.hpp"

namespace {

using fracbin::ProcessParams;
using fracbin::RngSeed;
using fracbin::RngStream;
namespace an = fracbin::analytics;
namespace orc = fracbin::oracle;
namespace sm = fracbin::sampler;

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* pattern, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

Moments moments_of(const std::vector<double>& probs) {
  double m1 = 0.0;
  double m2 = 0.0;
  for (std::size_t n = 0; n < probs.size(); ++n) {
    m1 += n * probs[n];
    m2 += static_cast<double>(n) * n * probs[n];
  }
  return {m1, m2 - m1 * m1};
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

// 1. ml against the high-precision reference on the calibration grid.
Verdict ml_accuracy() {
  // 12 (alpha, beta) pairs x 42 points of [-100, 0] = 504 points. Where the
  // series would need more than its precision ceiling the reference switches
  // to the quad-precision integral representation.
  const int per_pair = 42;
  double worst = 0.0;
  double worst_z = 0.0;
  double worst_alpha = 0.0;
  double worst_beta = 0.0;
  int points = 0;
  for (double alpha : {0.3, 0.5, 0.7, 1.0}) {
    for (double beta : {alpha, 1.0, alpha + 1.0}) {
      for (int k = 0; k < per_pair; ++k) {
        const double z = -100.0 * k / (per_pair - 1);
        const auto ref = orc::ml_reference(alpha, beta, z);
        const double err = std::abs(fracbin::mlf::ml({alpha, beta, z}) - ref.value);
        if (err > worst) {
          worst = err;
          worst_z = z;
          worst_alpha = alpha;
          worst_beta = beta;
        }
        ++points;
      }
    }
  }
  return {worst <= 1e-10,
          fmt("max |ml - reference| = %.3e over %d points (at alpha=%.1f beta=%.1f z=%.2f), "
              "tolerance 1e-10",
              worst, points, worst_alpha, worst_beta, worst_z)};
}

// 2. nu = 1 closed form against the classical master equation.
Verdict classical_equivalence() {
  const std::array<std::array<double, 4>, 3> sets{{{12, 5, 1, 2}, {50, 20, 1, 1}, {100, 40, 1, 3}}};
  double pmf_worst = 0.0;
  double moment_worst = 0.0;
  for (const auto& s : sets) {
    const ProcessParams params(s[2], s[3], static_cast<int>(s[0]), static_cast<int>(s[1]), 1.0);
    for (double t : {0.1, 0.5, 1.0, 5.0}) {
      const auto ode = orc::master_equation_classical(params, t);
      pmf_worst = std::max(pmf_worst, max_abs_diff(an::pmf(params, t).probs, ode.probs));
      const auto ref = moments_of(ode.probs);
      moment_worst = std::max(moment_worst, std::abs(an::mean(params, t) - ref.mean));
      moment_worst = std::max(moment_worst, std::abs(an::variance(params, t) - ref.variance));
    }
  }
  return {pmf_worst <= 1e-6 && moment_worst <= 1e-6,
          fmt("max pmf gap %.3e, max mean/variance gap %.3e, tolerance 1e-6", pmf_worst,
              moment_worst)};
}

// 3. Closed form against the subordination Monte Carlo estimate.
Verdict subordination_cross_check() {
  // Seed fixed before looking at any output.
  const RngSeed seed{20240521};
  int entries = 0;
  int beyond_two = 0;
  double worst = 0.0;
  for (double nu : {0.5, 0.7, 0.9}) {
    const ProcessParams params(1.0, 2.0, 12, 5, nu);
    for (double t : {0.5, 2.0}) {
      const auto mc = orc::subordination_pmf_mc(params, t, 100000, seed);
      const auto exact = an::pmf(params, t).probs;
      for (std::size_t n = 0; n < exact.size(); ++n) {
        const double gap = std::abs(exact[n] - mc.probs[n]);
        const double z = mc.se[n] > 0.0 ? gap / mc.se[n] : (gap == 0.0 ? 0.0 : INFINITY);
        worst = std::max(worst, z);
        beyond_two += z > 2.0;
        ++entries;
      }
    }
  }
  const int allowed = entries / 20;
  return {worst <= 4.0 && beyond_two <= allowed,
          fmt("%d entries, max |gap|/se = %.2f (limit 4), %d beyond 2 se (limit %d)", entries,
              worst, beyond_two, allowed)};
}

// 4. Mean curves for N=100, M=40, nu=0.7.
Verdict mean_curves() {
  std::vector<double> grid;
  for (int i = 0; i <= 240; ++i) grid.push_back(std::pow(10.0, -3.0 + 6.0 * i / 240));
  bool monotone = true;
  std::string parts;
  bool terminal_ok = true;
  for (const auto& [lambda, mu] : {std::pair{1.0, 1.0}, std::pair{1.0, 3.0}}) {
    const ProcessParams params(lambda, mu, 100, 40, 0.7);
    const double limit = 100.0 * lambda / (lambda + mu);
    const double direction = limit > 40.0 ? 1.0 : -1.0;
    double previous = an::mean(params, 0.0);
    for (double t : grid) {
      const double m = an::mean(params, t);
      if (direction * (m - previous) < 0.0) monotone = false;
      if (direction * (limit - m) < 0.0) monotone = false;
      previous = m;
    }
    const double terminal = an::mean(params, 1e3);
    const double gap = std::abs(terminal - limit);
    terminal_ok = terminal_ok && gap <= 1e-3;
    parts += fmt("(%g,%g): mean(1e3)=%.6f limit %g gap %.3e; ", lambda, mu, terminal, limit, gap);
  }
  return {monotone && terminal_ok,
          fmt("monotone toward limit: %s; ", monotone ? "yes" : "no") + parts +
              "terminal tolerance 1e-3"};
}

// 5. Equilibrium at t = 1e3.
Verdict equilibrium_limit() {
  const std::array<std::array<double, 4>, 3> sets{{{12, 5, 1, 2}, {50, 20, 1, 1}, {100, 40, 1, 3}}};
  double sup = 0.0;
  double var_gap = 0.0;
  for (const auto& s : sets) {
    const ProcessParams params(s[2], s[3], static_cast<int>(s[0]), static_cast<int>(s[1]), 0.7);
    const double t = 1e3;
    sup = std::max(sup, max_abs_diff(an::pmf(params, t).probs, an::equilibrium_pmf(params).probs));
    const double target = s[0] * s[2] * s[3] / ((s[2] + s[3]) * (s[2] + s[3]));
    var_gap = std::max(var_gap, std::abs(an::variance(params, t) - target));
  }
  return {sup <= 1e-6 && var_gap <= 1e-3,
          fmt("sup-norm to binomial %.3e (limit 1e-6), variance gap %.3e (limit 1e-3)", sup,
              var_gap)};
}

// 6. Saturable pure birth: direct paths, and variance formula at mu = 0.
Verdict pure_birth() {
  const ProcessParams params(1.0, 0.0, 20, 5, 0.8);
  const double t = 1.0;
  const int n_paths = 100000;
  std::vector<int> states(n_paths);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n_paths; ++i) {
    RngStream rng(RngSeed{606}, static_cast<std::uint64_t>(i));
    states[i] = sm::pure_birth_path_direct(params, t, rng).state_at(t);
  }
  std::vector<std::int64_t> counts(params.N() + 1, 0);
  for (int s : states) ++counts[s];
  const auto exact = an::pure_birth_pmf(params, t).probs;
  const auto chi = orc::chi_square_gof(counts, exact);

  double general_gap = 0.0;
  double printed_gap = 0.0;
  const double N = params.N();
  const double M = params.M();
  for (double s : {0.2, 0.5, 1.0, 2.0, 5.0}) {
    const double reference = moments_of(an::pure_birth_pmf(params, s).probs).variance;
    general_gap = std::max(general_gap, std::abs(an::variance(params, s) - reference));
    const double e1 = fracbin::mlf::ml_one(0.8, -std::pow(s, 0.8));
    const double e2 = fracbin::mlf::ml_one(0.8, -2.0 * std::pow(s, 0.8));
    const double printed =
        (M * (M - 1) - N * (N - 1)) * e2 - (N - M) * (4 * N - 1) * e1 - (M - N) * (M - N) * e1 * e1;
    printed_gap = std::max(printed_gap, std::abs(printed - reference));
  }
  std::cout << fmt("  printed saturable variance formula: max gap %.3e vs pmf moments -> %s "
                   "(expected FAIL, erratum-suspect)\n",
                   printed_gap, printed_gap <= 1e-8 ? "PASS" : "FAIL");
  return {!chi.rejected(0.01) && general_gap <= 1e-8,
          fmt("chi-square %.2f on %d dof, p=%.3f (reject below 0.01); mu=0 variance formula gap "
              "%.3e (limit 1e-8)",
              chi.statistic, chi.dof, chi.p_value, general_gap)};
}

// 7. Pure death at nu = 1.
Verdict pure_death() {
  double var_gap = 0.0;
  for (const auto& [N, M, mu] : {std::tuple{20, 10, 1.5}, std::tuple{3, 3, 1.0}}) {
    const ProcessParams params(0.0, mu, N, M, 1.0);
    for (int i = 0; i <= 40; ++i) {
      const double t = 0.1 * i;
      const double e = std::exp(-mu * t);
      var_gap = std::max(var_gap, std::abs(an::variance(params, t) - M * e * (1.0 - e)));
    }
  }
  const ProcessParams three(0.0, 1.0, 3, 3, 1.0);
  const double expected = std::pow(1.0 - std::exp(-1.0), 3);
  const double ext_gap = std::abs(an::extinction_probability(three, 1.0) - expected);
  return {var_gap <= 1e-10 && ext_gap <= 1e-10,
          fmt("variance gap %.3e, extinction gap %.3e (value %.15f), tolerance 1e-10", var_gap,
              ext_gap, expected)};
}

// 8. Mittag-Leffler waiting times.
Verdict waiting_times() {
  const int n = 1000000;
  RngStream rng(RngSeed{808}, 0);
  std::vector<double> w(n);
  for (double& x : w) x = sm::ml_waiting_time(0.75, 1.0, rng);
  std::sort(w.begin(), w.end());
  const auto ks = orc::ks_one_sample(
      w, [](double s) { return 1.0 - fracbin::mlf::ml_one(0.75, -std::pow(s, 0.75)); });
  return {!ks.rejected(0.01), fmt("KS p=%.3f over %d draws (reject below 0.01)",
                                  ks.p_value, n)};
}

// 9. Byte-identical repeated runs.
std::string run_in_process(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"fracbin"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = fracbin::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  if (code != 0) throw std::runtime_error("fracbin exited with " + std::to_string(code));
  return out.str();
}

std::string run_tool(const std::vector<std::string>& args) {
  std::string command = FRACBIN_TOOL;
  for (const auto& a : args) command += " " + a;
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(command.c_str(), "r"), pclose);
  if (!pipe) throw std::runtime_error("cannot run " + command);
  std::string out;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe.get())) > 0) out.append(buf.data(), got);
  return out;
}

Verdict determinism() {
  const std::vector<std::vector<std::string>> commands{
      {"simulate", "--lambda", "1", "--mu", "1", "--N", "50", "--M", "20", "--nu", "0.7",
       "--horizon", "20", "--paths", "5", "--seed", "9"},
      {"simulate", "--lambda", "1", "--mu", "0", "--N", "40", "--M", "5", "--nu", "0.6",
       "--horizon", "10", "--dt", "0.5", "--paths", "3", "--seed", "9"},
      {"ensemble", "--lambda", "1", "--mu", "3", "--N", "100", "--M", "40", "--nu", "0.7",
       "--t-grid", "0:10:11", "--paths", "2000", "--seed", "9"},
  };
  int identical = 0;
  int total = 0;
  const int threads = omp_get_max_threads();
  for (const auto& args : commands) {
    const std::string first = run_in_process(args);
    omp_set_num_threads(std::max(2, 2 * threads));
    const std::string wider = run_in_process(args);
    omp_set_num_threads(1);
    const std::string single = run_in_process(args);
    omp_set_num_threads(threads);
    const std::string tool_a = run_tool(args);
    const std::string tool_b = run_tool(args);
    for (const auto* other : {&wider, &single, &tool_a, &tool_b}) {
      identical += !first.empty() && *other == first;
      ++total;
    }
  }
  return {identical == total,
          fmt("%d of %d repeated outputs byte-identical (in-process across thread counts and "
              "two tool runs)",
              identical, total)};
}

const std::array<std::function<Verdict()>, 9> kCriteria{
    ml_accuracy,   classical_equivalence, subordination_cross_check,
    mean_curves,   equilibrium_limit,     pure_birth,
    pure_death,    waiting_times,         determinism,
};

// Wall-clock budgets in seconds; 0 means none stated.
constexpr std::array<double, 9> kBudget{5, 30, 300, 1, 0, 0, 0, 0, 0};

bool run_one(int index) {
  const auto start = std::chrono::steady_clock::now();
  Verdict v;
  try {
    v = kCriteria[index - 1]();
  } catch (const std::exception& e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const double budget = kBudget[index - 1];
  if (budget > 0.0 && secs > budget) {
    v.pass = false;
    v.detail += fmt("; over the %.0f s budget", budget);
  }
  std::cout << "criterion " << index << ": " << (v.pass ? "PASS" : "FAIL") << "  " << v.detail
            << fmt("  [%.2f s]", secs) << std::endl;
  return v.pass;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> wanted;
  for (int i = 1; i < argc; ++i) {
    const int k = std::atoi(argv[i]);
    if (k < 1 || k > 9) {
      std::cerr << "usage: acceptance [1-9 ...]\n";
      return 2;
    }
    wanted.push_back(k);
  }
  if (wanted.empty()) {
    for (int k = 1; k <= 9; ++k) wanted.push_back(k);
  }
  bool all = true;
  for (int k : wanted) all = run_one(k) && all;
  return all ? 0 : 1;
}
