// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fracbin/exec.hpp"
#include "fracbin/model.hpp"
#include "fracbin/rng.hpp"

namespace fracbin::sampler {

struct JumpRecord {
  double time;
  int state;

  friend bool operator==(const JumpRecord&, const JumpRecord&) = default;
};

/// Piecewise-constant trajectory: records at strictly increasing times, the
/// first at time 0; consecutive states differ by +-1.
struct Path {
  std::vector<JumpRecord> records;

  /// State at time t (right-continuous).
  int state_at(double t) const;
  /// States on a time grid.
  std::vector<int> sample(std::span<const double> times) const;
  /// True when the structural invariants hold for ceiling N.
  bool valid(int N) const;
};

struct EnsembleStats {
  std::vector<double> t_grid;
  std::vector<double> mean_est;
  std::vector<double> var_est;
  std::vector<double> se_mean;
  std::int64_t n_paths = 0;

  friend bool operator==(const EnsembleStats&, const EnsembleStats&) = default;
};

/// Positive nu-stable variable with Laplace transform exp(-z^nu), 0 < nu < 1
/// (Chambers-Mallows-Stuck / Kanter construction).
double stable_subordinator_unit(double nu, RngStream& rng);

/// One draw of the inverse nu-stable subordinator at time t, via
/// V_t = (t / S(1))^nu. For nu == 1 returns t without drawing.
double inverse_subordinator_sample(double nu, double t, RngStream& rng);

/// Gillespie path of the classical binomial process up to `horizon`
/// (nu is ignored). Stops early in an absorbing state.
Path classical_path(const ProcessParams& params, double horizon, RngStream& rng);

/// One exact draw of N^nu(t) through the one-dimensional subordination
/// N^nu(t) = N(V_t).
int fractional_value_at(const ProcessParams& params, double t, RngStream& rng);

/// Trajectory of the time-changed process N(V_t) up to real time `horizon`.
/// Subordinator increments are drawn between consecutive classical jump
/// epochs, so the jump times S(tau_i) are exact in law. Only the one-time
/// marginals are backed by the subordination identity; the joint law is that
/// of the time-change construction.
Path fractional_path(const ProcessParams& params, double horizon, RngStream& rng);

/// Mittag-Leffler(nu) waiting time with survival E_{nu,1}(-rate s^nu),
/// Kozubowski mixture representation. Exponential(rate) for nu == 1.
double ml_waiting_time(double nu, double rate, RngStream& rng);

/// Pure-birth path as a renewal sequence of Mittag-Leffler sojourns with
/// rates lambda(N-j). Requires the pure-birth regime.
Path pure_birth_path_direct(const ProcessParams& params, double horizon, RngStream& rng);

/// Per-time marginal mean/variance from n_paths independent draws of
/// N^nu(t) (independent time change per path and grid point). Path i uses
/// stream i of `seed`; reductions run in path-index order so the result is
/// bit-identical for every Exec and thread count.
EnsembleStats ensemble(const ProcessParams& params, std::span<const double> t_grid,
                       std::int64_t n_paths, RngSeed seed, Exec exec = Exec::Parallel);

namespace detail {

/// Raw ensemble draws, row-major [path][grid point].
std::vector<int> ensemble_draws(const ProcessParams& params, std::span<const double> t_grid,
                                std::int64_t n_paths, RngSeed seed, Exec exec);

/// Classical chain state at operational time s without recording the path.
int classical_state_at(const ProcessParams& params, double s, RngStream& rng);

}  // namespace detail

}  // namespace fracbin::sampler
