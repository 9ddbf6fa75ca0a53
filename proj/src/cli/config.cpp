// SPDX-License-Identifier: Apache-2.0
#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <random>
#include <sstream>
#include <stdexcept>

#include "fracbin/errors.hpp"
#include "internal.hpp"

namespace fracbin::cli {
namespace {

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t begin = 0;
  for (;;) {
    const std::size_t at = s.find(sep, begin);
    parts.push_back(s.substr(begin, at - begin));
    if (at == std::string_view::npos) return parts;
    begin = at + 1;
  }
}

double to_double(std::string_view s) {
  const std::string copy(s);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(copy, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != copy.size() || !std::isfinite(v)) {
    throw std::invalid_argument("not a number: '" + copy + "'");
  }
  return v;
}

int to_count(std::string_view s) {
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || v < 1) {
    throw std::invalid_argument("grid count must be a positive integer, got '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

std::vector<double> parse_time_grid(std::string_view text) {
  const auto parts = split(text, ':');
  std::vector<double> grid;
  if (parts.size() == 1) {
    grid.push_back(to_double(parts[0]));
  } else if (parts.size() == 3) {
    const double start = to_double(parts[0]);
    const double stop = to_double(parts[1]);
    const int count = to_count(parts[2]);
    for (int i = 0; i < count; ++i) {
      grid.push_back(count == 1 ? start : start + (stop - start) * i / (count - 1));
    }
    if (count > 1) grid.back() = stop;
  } else if (parts.size() == 4 && parts[0] == "log") {
    const double start = to_double(parts[1]);
    const double stop = to_double(parts[2]);
    const int count = to_count(parts[3]);
    if (!(start > 0.0 && stop > 0.0)) {
      throw std::invalid_argument("log grid needs start > 0 and stop > 0");
    }
    const double ls = std::log10(start);
    const double le = std::log10(stop);
    for (int i = 0; i < count; ++i) {
      grid.push_back(count == 1 ? start : std::pow(10.0, ls + (le - ls) * i / (count - 1)));
    }
    grid.front() = start;
    if (count > 1) grid.back() = stop;
  } else {
    throw std::invalid_argument("time grid must be 'T', 'start:stop:count' or 'log:start:stop:count'");
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] < 0.0) throw std::invalid_argument("times must be >= 0");
    if (i > 0 && grid[i] < grid[i - 1]) throw std::invalid_argument("time grid must be ascending");
  }
  return grid;
}

std::uint64_t resolve_seed(std::optional<std::uint64_t> flag, bool& generated) {
  generated = false;
  if (flag) return *flag;
  if (const char* env = std::getenv("FRACBIN_SEED"); env != nullptr && *env != '\0') {
    const std::string_view text(env);
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      throw std::invalid_argument("FRACBIN_SEED must be an unsigned 64-bit integer");
    }
    return v;
  }
  generated = true;
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

namespace {

struct RawOptions {
  std::optional<double> lambda;
  std::optional<double> mu;
  std::optional<int> N;
  std::optional<int> M;
  double nu = 1.0;
  std::optional<std::string> t;
  std::optional<std::string> t_grid;
  std::optional<std::uint64_t> seed;
  std::string format = "csv";
};

void add_params(CLI::App& sub, RawOptions& raw) {
  sub.add_option("--lambda", raw.lambda, "birth coefficient (state birth rate lambda*(N-n))");
  sub.add_option("--mu", raw.mu, "death coefficient (state death rate mu*n)");
  sub.add_option("--N", raw.N, "ceiling population");
  sub.add_option("--M", raw.M, "initial population");
  sub.add_option("--nu", raw.nu, "fractional order in (0, 1]")->capture_default_str();
}

void add_times(CLI::App& sub, RawOptions& raw) {
  auto* t = sub.add_option("--t", raw.t, "single time");
  auto* grid = sub.add_option("--t-grid", raw.t_grid, "start:stop:count or log:start:stop:count");
  t->excludes(grid);
}

void add_output(CLI::App& sub, RawOptions& raw, RunConfig& config) {
  sub.add_option("--format", raw.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sub.add_option("--out", config.out_path, "output file (default: standard output)");
}

void add_seed(CLI::App& sub, RawOptions& raw) {
  sub.add_option("--seed", raw.seed, "master seed (default: FRACBIN_SEED, else random)");
}

}  // namespace

ParseOutcome parse_args(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fractional binomial process: closed forms, simulation and validation", "fracbin"};
  app.require_subcommand(1, 1);
  RawOptions raw;
  RunConfig config;

  auto* moments = app.add_subcommand("moments", "mean, variance and H(t) on a time grid");
  auto* pmf = app.add_subcommand("pmf", "state probabilities p_n(t)");
  auto* extinct = app.add_subcommand("extinct", "extinction probability p_0(t)");
  auto* equilibrium = app.add_subcommand("equilibrium", "binomial equilibrium distribution");
  auto* simulate = app.add_subcommand("simulate", "sample trajectories");
  auto* ensemble = app.add_subcommand("ensemble", "Monte Carlo mean/variance on a time grid");
  auto* validate = app.add_subcommand("validate", "oracle cross-checks with pass/fail report");

  for (auto* sub : {moments, pmf, extinct, ensemble}) {
    add_params(*sub, raw);
    add_times(*sub, raw);
    add_output(*sub, raw, config);
  }
  add_params(*equilibrium, raw);
  add_output(*equilibrium, raw, config);

  add_params(*simulate, raw);
  add_output(*simulate, raw, config);
  add_seed(*simulate, raw);
  simulate->add_option("--paths", config.paths, "number of trajectories")->capture_default_str();
  simulate->add_option("--horizon", config.horizon, "real-time horizon")->capture_default_str();
  simulate->add_option("--dt", config.dt, "sample on a dt grid instead of emitting jumps");

  add_seed(*ensemble, raw);
  ensemble->add_option("--paths", config.paths, "number of draws per grid point")
      ->capture_default_str();

  add_output(*validate, raw, config);
  add_seed(*validate, raw);
  validate->add_option("--suite", config.suite, "default, nu1 or quick")
      ->check(CLI::IsMember({"default", "nu1", "quick"}))
      ->capture_default_str();
  validate->add_flag("--force-fail", config.force_fail, "add a check that always fails");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "fracbin: " << e.what() << '\n';
    return static_cast<int>(ExitCode::ConfigError);
  }

  auto* chosen = app.get_subcommands().front();
  config.command = chosen->get_name();
  config.format = raw.format == "json" ? Format::Json : Format::Csv;

  const bool needs_params = config.command != "validate";
  const bool needs_times = chosen == moments || chosen == pmf || chosen == extinct || chosen == ensemble;
  const bool needs_seed = chosen == simulate || chosen == ensemble || chosen == validate;

  try {
    if (needs_params) {
      if (!raw.lambda || !raw.mu || !raw.N || !raw.M) {
        throw std::invalid_argument("--lambda, --mu, --N and --M are required");
      }
      config.params.emplace(*raw.lambda, *raw.mu, *raw.N, *raw.M, raw.nu);
    }
    if (needs_times) {
      if (raw.t) {
        config.times = parse_time_grid(*raw.t);
        if (config.times.size() != 1) throw std::invalid_argument("--t takes a single time");
      } else if (raw.t_grid) {
        config.times = parse_time_grid(*raw.t_grid);
      } else {
        throw std::invalid_argument("one of --t or --t-grid is required");
      }
    }
    if (chosen == simulate) {
      if (config.paths < 1) throw std::invalid_argument("--paths must be >= 1");
      if (!(config.horizon > 0.0) || !std::isfinite(config.horizon)) {
        throw std::invalid_argument("--horizon must be > 0");
      }
      if (config.dt < 0.0) throw std::invalid_argument("--dt must be >= 0");
    }
    if (chosen == ensemble && config.paths < 2) {
      throw std::invalid_argument("--paths must be >= 2 for an ensemble");
    }
    if (needs_seed) {
      config.seed = resolve_seed(raw.seed, config.seed_generated);
      if (config.seed_generated) err << "fracbin: using generated seed " << config.seed << '\n';
    }
  } catch (const std::invalid_argument& e) {
    err << "fracbin: " << e.what() << '\n';
    return static_cast<int>(ExitCode::ConfigError);
  }
  return config;
}

}  // namespace fracbin::cli
