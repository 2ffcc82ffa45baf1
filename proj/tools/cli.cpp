#include <CLI11.hpp>
#include <fmt/format.h>

#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>

#include "commands.hpp"
#include "gravsim/core.hpp"
#include "gravsim/parallel.hpp"

namespace gravsim::cli {

namespace {

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Config:
      return kExitConfig;
    case ErrorKind::Data:
      return kExitData;
    case ErrorKind::Convergence:
      return kExitConvergence;
    case ErrorKind::Coverage:
      return kExitCoverage;
  }
  return kExitOther;
}

struct Command {
  std::string name;
  std::string help;
  std::string seed_key;  // empty when the command draws no random numbers
  std::function<void(RunConfig&, const Options&)> fn;
};

}  // namespace

int run(const std::vector<std::string>& args) {
  const std::vector<Command> commands{
      {"rabi", "single-pulse Rabi dynamics, closed form against the RK4 oracle", "", cmd_rabi},
      {"fringe", "chirp-scan fringe and g estimate", "fringe.seed", cmd_fringe},
      {"gsweep", "fringe scan over an explicit beta grid", "gsweep.seed", cmd_gsweep},
      {"allan", "Allan deviation of a time-series file", "", cmd_allan},
      {"sensitivity", "sensitivity function and transfer function", "", cmd_sensitivity},
      {"psd-variance", "phase variance and vibration Allan variance from PSD files", "", cmd_psd_variance},
      {"synth", "Gaussian noise series with a target PSD", "synth.seed", cmd_synth},
  };

  CLI::App app{"Atom-interferometer gravimeter simulator"};
  app.require_subcommand(1);
  std::string config_path;
  std::uint64_t seed = 0;
  std::string out_dir = ".";
  int workers = 0;
  bool paper_gs = false;
  app.add_option("--config", config_path, "INI run configuration (falls back to $GRAVSIM_CONFIG)");
  auto* seed_opt = app.add_option("--seed", seed, "RNG seed, overrides the config value");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--workers", workers, "OpenMP worker count (results do not depend on it)")
      ->check(CLI::NonNegativeNumber);
  app.add_flag("--paper-gs", paper_gs, "use the printed piecewise sensitivity function");
  app.fallthrough();
  std::map<const CLI::App*, const Command*> lookup;
  for (const Command& c : commands) lookup[app.add_subcommand(c.name, c.help)] = &c;

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    const Command* cmd = lookup.at(app.get_subcommands().front());
    if (config_path.empty()) {
      if (const char* env = std::getenv("GRAVSIM_CONFIG")) config_path = env;
    }
    RunConfig config = config_path.empty() ? RunConfig{} : RunConfig::load(config_path);
    if (*seed_opt) {
      if (cmd->seed_key.empty()) throw ConfigError(fmt::format("{} does not take a seed", cmd->name));
      config.set(cmd->seed_key, std::to_string(seed));
    }
    if (workers > 0) set_worker_count(workers);
    cmd->fn(config, Options{out_dir, paper_gs});
    return kExitOk;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitOther;
  }
}

}  // namespace gravsim::cli
