// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "fracbin/analytics.hpp"
#include "fracbin/errors.hpp"
#include "fracbin/sampler.hpp"
#include "internal.hpp"

namespace fracbin::cli {
namespace {

const ProcessParams& params_of(const RunConfig& config) {
  if (!config.params) throw std::invalid_argument("process parameters missing");
  return *config.params;
}

}  // namespace

Table cmd_moments(const RunConfig& config) {
  const auto& params = params_of(config);
  Table table{"fracbin.moments.v1", {"t", "mean", "variance", "H"}, {}};
  for (double t : config.times) {
    table.rows.push_back({t, analytics::mean(params, t), analytics::variance(params, t),
                          analytics::second_factorial_moment(params, t)});
  }
  return table;
}

Table cmd_pmf(const RunConfig& config) {
  const auto& params = params_of(config);
  Table table{"fracbin.pmf.v1", {"t", "n", "p"}, {}};
  const analytics::PmfEvaluator evaluate(params);
  for (double t : config.times) {
    const auto dist = evaluate(t);
    for (std::size_t n = 0; n < dist.probs.size(); ++n) {
      table.rows.push_back({t, static_cast<std::int64_t>(n), dist.probs[n]});
    }
  }
  return table;
}

Table cmd_extinct(const RunConfig& config) {
  const auto& params = params_of(config);
  Table table{"fracbin.extinct.v1", {"t", "p0"}, {}};
  for (double t : config.times) {
    table.rows.push_back({t, analytics::extinction_probability(params, t)});
  }
  return table;
}

Table cmd_equilibrium(const RunConfig& config) {
  const auto dist = analytics::equilibrium_pmf(params_of(config));
  Table table{"fracbin.equilibrium.v1", {"n", "p"}, {}};
  for (std::size_t n = 0; n < dist.probs.size(); ++n) {
    table.rows.push_back({static_cast<std::int64_t>(n), dist.probs[n]});
  }
  return table;
}

Table cmd_simulate(const RunConfig& config) {
  const auto& params = params_of(config);
  Table table{"fracbin.paths.v1", {"path_id", "t", "state"}, {}};
  std::vector<double> grid;
  if (config.dt > 0.0) {
    const auto steps = static_cast<std::int64_t>(std::floor(config.horizon / config.dt + 1e-9));
    for (std::int64_t k = 0; k <= steps; ++k) grid.push_back(static_cast<double>(k) * config.dt);
  }
  for (std::int64_t id = 0; id < config.paths; ++id) {
    RngStream rng(RngSeed{config.seed}, static_cast<std::uint64_t>(id));
    const auto path = sampler::fractional_path(params, config.horizon, rng);
    if (grid.empty()) {
      for (const auto& r : path.records) {
        table.rows.push_back({id, r.time, static_cast<std::int64_t>(r.state)});
      }
    } else {
      const auto states = path.sample(grid);
      for (std::size_t k = 0; k < grid.size(); ++k) {
        table.rows.push_back({id, grid[k], static_cast<std::int64_t>(states[k])});
      }
    }
  }
  return table;
}

Table cmd_ensemble(const RunConfig& config) {
  const auto& params = params_of(config);
  const auto stats = sampler::ensemble(params, config.times, config.paths, RngSeed{config.seed});
  Table table{"fracbin.ensemble.v1",
              {"t", "mean_est", "var_est", "se_mean", "mean", "variance", "n_paths"},
              {}};
  for (std::size_t j = 0; j < stats.t_grid.size(); ++j) {
    const double t = stats.t_grid[j];
    table.rows.push_back({t, stats.mean_est[j], stats.var_est[j], stats.se_mean[j],
                          analytics::mean(params, t), analytics::variance(params, t),
                          stats.n_paths});
  }
  return table;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const AccuracyError*>(&e) || dynamic_cast<const ConvergenceError*>(&e)) {
    return static_cast<int>(ExitCode::AccuracyError);
  }
  if (dynamic_cast<const std::invalid_argument*>(&e) || dynamic_cast<const std::domain_error*>(&e)) {
    return static_cast<int>(ExitCode::ConfigError);
  }
  return 1;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  auto parsed = parse_args(argc, argv, out, err);
  if (const int* code = std::get_if<int>(&parsed)) return *code;
  const auto& config = std::get<RunConfig>(parsed);

  Table table;
  ExitCode status = ExitCode::Ok;
  try {
    if (config.command == "moments") {
      table = cmd_moments(config);
    } else if (config.command == "pmf") {
      table = cmd_pmf(config);
    } else if (config.command == "extinct") {
      table = cmd_extinct(config);
    } else if (config.command == "equilibrium") {
      table = cmd_equilibrium(config);
    } else if (config.command == "simulate") {
      table = cmd_simulate(config);
    } else if (config.command == "ensemble") {
      table = cmd_ensemble(config);
    } else if (config.command == "validate") {
      const auto checks = run_validation(config);
      std::size_t passed = 0;
      for (const auto& c : checks) {
        err << (c.passed ? "PASS " : "FAIL ") << c.name << '\n';
        passed += c.passed ? 1 : 0;
      }
      err << "validate: " << passed << '/' << checks.size() << " checks passed\n";
      table = validation_table(checks);
      if (passed != checks.size()) status = ExitCode::ValidationFailure;
    }
  } catch (const std::exception& e) {
    err << "fracbin: " << e.what() << '\n';
    return exit_code_for(e);
  }

  std::ostringstream buffer;
  if (config.format == Format::Json) {
    write_json_lines(table, buffer);
  } else {
    write_csv(table, buffer);
  }
  if (config.out_path.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(config.out_path, std::ios::binary | std::ios::trunc);
    if (!file) {
      err << "fracbin: cannot open output file " << config.out_path << '\n';
      return static_cast<int>(ExitCode::ConfigError);
    }
    file << buffer.str();
  }
  return static_cast<int>(status);
}

}  // namespace fracbin::cli
