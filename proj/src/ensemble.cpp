// SPDX-License-Identifier: Apache-2.0
#include <cmath>

#include "fracbin/errors.hpp"
#include "fracbin/sampler.hpp"

namespace fracbin::sampler {
namespace {

void check_grid(std::span<const double> t_grid, std::int64_t n_paths) {
  if (n_paths < 2) throw DomainError("ensemble needs n_paths >= 2");
  if (t_grid.empty()) throw DomainError("ensemble needs a nonempty time grid");
  for (std::size_t j = 0; j < t_grid.size(); ++j) {
    if (!(t_grid[j] >= 0.0) || !std::isfinite(t_grid[j])) {
      throw DomainError("grid times must be finite and >= 0");
    }
    if (j > 0 && t_grid[j] < t_grid[j - 1]) throw DomainError("time grid must be ascending");
  }
}

void fill_row(const ProcessParams& params, std::span<const double> t_grid, RngSeed seed,
              std::int64_t path, int* row) {
  RngStream rng(seed, static_cast<std::uint64_t>(path));
  for (std::size_t j = 0; j < t_grid.size(); ++j) {
    row[j] = fractional_value_at(params, t_grid[j], rng);
  }
}

}  // namespace

namespace detail {

std::vector<int> ensemble_draws(const ProcessParams& params, std::span<const double> t_grid,
                                std::int64_t n_paths, RngSeed seed, Exec exec) {
  check_grid(t_grid, n_paths);
  const auto width = static_cast<std::int64_t>(t_grid.size());
  std::vector<int> draws(static_cast<std::size_t>(n_paths * width));
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < n_paths; ++i) {
      fill_row(params, t_grid, seed, i, draws.data() + i * width);
    }
  } else {
    for (std::int64_t i = 0; i < n_paths; ++i) {
      fill_row(params, t_grid, seed, i, draws.data() + i * width);
    }
  }
  return draws;
}

}  // namespace detail

EnsembleStats ensemble(const ProcessParams& params, std::span<const double> t_grid,
                       std::int64_t n_paths, RngSeed seed, Exec exec) {
  const auto draws = detail::ensemble_draws(params, t_grid, n_paths, seed, exec);
  const std::size_t width = t_grid.size();
  EnsembleStats stats;
  stats.t_grid.assign(t_grid.begin(), t_grid.end());
  stats.n_paths = n_paths;
  const double n = static_cast<double>(n_paths);
  for (std::size_t j = 0; j < width; ++j) {
    double sum = 0.0;
    for (std::int64_t i = 0; i < n_paths; ++i) sum += draws[i * width + j];
    const double mean = sum / n;
    double sq = 0.0;
    for (std::int64_t i = 0; i < n_paths; ++i) {
      const double d = draws[i * width + j] - mean;
      sq += d * d;
    }
    const double var = sq / (n - 1.0);
    stats.mean_est.push_back(mean);
    stats.var_est.push_back(var);
    stats.se_mean.push_back(std::sqrt(var / n));
  }
  return stats;
}

}  // namespace fracbin::sampler
