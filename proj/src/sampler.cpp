// SPDX-License-Identifier: Apache-2.0
#include "fracbin/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "fracbin/errors.hpp"

namespace fracbin::sampler {
namespace {

void check_nu_open(double nu) {
  if (!(nu > 0.0 && nu < 1.0)) throw DomainError("stable sampling needs 0 < nu < 1");
}

void check_horizon(double horizon) {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw DomainError("horizon must be finite and > 0");
  }
}

/// One Gillespie step from state n. Returns the holding time (infinity in an
/// absorbing state) and moves n.
double gillespie_step(const ProcessParams& params, int& n, RngStream& rng) {
  const double birth = params.birth_rate(n);
  const double total = birth + params.death_rate(n);
  if (total == 0.0) return INFINITY;
  const double hold = rng.exponential() / total;
  n += rng.uniform() * total < birth ? 1 : -1;
  return hold;
}

}  // namespace

int Path::state_at(double t) const {
  if (records.empty()) throw DomainError("empty path");
  if (t < 0.0) throw DomainError("state_at needs t >= 0");
  const auto it = std::upper_bound(records.begin(), records.end(), t,
                                   [](double v, const JumpRecord& r) { return v < r.time; });
  return std::prev(it)->state;
}

std::vector<int> Path::sample(std::span<const double> times) const {
  std::vector<int> out;
  out.reserve(times.size());
  for (double t : times) out.push_back(state_at(t));
  return out;
}

bool Path::valid(int N) const {
  if (records.empty() || records.front().time != 0.0) return false;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    if (r.state < 0 || r.state > N) return false;
    if (i == 0) continue;
    if (!(r.time > records[i - 1].time)) return false;
    if (std::abs(r.state - records[i - 1].state) != 1) return false;
  }
  return true;
}

double stable_subordinator_unit(double nu, RngStream& rng) {
  check_nu_open(nu);
  const double u = std::numbers::pi * rng.uniform();
  const double w = rng.exponential();
  const double log_s = std::log(std::sin(nu * u)) - std::log(std::sin(u)) / nu +
                       (1.0 - nu) / nu * (std::log(std::sin((1.0 - nu) * u)) - std::log(w));
  return std::exp(log_s);
}

double inverse_subordinator_sample(double nu, double t, RngStream& rng) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("time must be finite and >= 0");
  if (!(nu > 0.0 && nu <= 1.0)) throw DomainError("nu must lie in (0, 1]");
  if (nu == 1.0 || t == 0.0) return t;
  const double s = stable_subordinator_unit(nu, rng);
  return std::exp(nu * (std::log(t) - std::log(s)));
}

Path classical_path(const ProcessParams& params, double horizon, RngStream& rng) {
  check_horizon(horizon);
  Path path;
  int n = params.M();
  double time = 0.0;
  path.records.push_back({0.0, n});
  for (;;) {
    int next = n;
    const double hold = gillespie_step(params, next, rng);
    time += hold;
    if (!(time <= horizon)) break;
    n = next;
    path.records.push_back({time, n});
  }
  return path;
}

namespace detail {

int classical_state_at(const ProcessParams& params, double s, RngStream& rng) {
  if (!(s >= 0.0)) throw DomainError("operational time must be >= 0");
  if (s == 0.0) return params.M();
  // The chain is N independent on/off units (on -> off at rate mu, off -> on
  // at rate lambda), so its state at s is a sum of two binomials.
  const double p = equilibrium_p(params);
  const double decay = std::exp(-params.total_rate() * s);
  const double stay_on = std::clamp(p + (1.0 - p) * decay, 0.0, 1.0);
  const double turn_on = std::clamp(p * (1.0 - decay), 0.0, 1.0);
  std::binomial_distribution<int> from_on(params.M(), stay_on);
  std::binomial_distribution<int> from_off(params.N() - params.M(), turn_on);
  const int on = from_on(rng);
  return on + from_off(rng);
}

}  // namespace detail

int fractional_value_at(const ProcessParams& params, double t, RngStream& rng) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("time must be finite and >= 0");
  if (t == 0.0) return params.M();
  return detail::classical_state_at(params, inverse_subordinator_sample(params.nu(), t, rng), rng);
}

Path fractional_path(const ProcessParams& params, double horizon, RngStream& rng) {
  check_horizon(horizon);
  const double nu = params.nu();
  Path path;
  int n = params.M();
  double real_time = 0.0;
  path.records.push_back({0.0, n});
  for (;;) {
    int next = n;
    const double hold = gillespie_step(params, next, rng);
    if (std::isinf(hold)) break;
    // S(tau_i) - S(tau_{i-1}) =d hold^{1/nu} S(1)
    real_time += nu == 1.0 ? hold
                           : std::exp(std::log(hold) / nu) * stable_subordinator_unit(nu, rng);
    if (!(real_time <= horizon)) break;
    n = next;
    path.records.push_back({real_time, n});
  }
  return path;
}

double ml_waiting_time(double nu, double rate, RngStream& rng) {
  if (!(nu > 0.0 && nu <= 1.0)) throw DomainError("nu must lie in (0, 1]");
  if (!(rate > 0.0) || !std::isfinite(rate)) throw DomainError("rate must be finite and > 0");
  if (nu == 1.0) return rng.exponential() / rate;
  const double e = rng.exponential();
  const double v = rng.uniform();
  const double pi_nu = std::numbers::pi * nu;
  const double ratio = std::sin(pi_nu * (1.0 - v)) / std::sin(pi_nu * v);
  return std::exp((std::log(ratio) - std::log(rate)) / nu) * e;
}

Path pure_birth_path_direct(const ProcessParams& params, double horizon, RngStream& rng) {
  if (classify(params) != Regime::PureBirth) {
    throw DomainError("pure_birth_path_direct requires mu == 0");
  }
  check_horizon(horizon);
  Path path;
  int j = params.M();
  double time = 0.0;
  path.records.push_back({0.0, j});
  while (j < params.N()) {
    time += ml_waiting_time(params.nu(), params.birth_rate(j), rng);
    if (!(time <= horizon)) break;
    path.records.push_back({time, ++j});
  }
  return path;
}

}  // namespace fracbin::sampler
