#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "relaxcut/error.hpp"

namespace {

using namespace relaxcut;
using namespace relaxcut::cli;

struct RawOptions {
  std::string mode;
  std::string out;
  std::string format;

  CommonOptions resolve() const {
    CommonOptions o;
    if (!mode.empty()) o.mode = parse_mode(mode);
    if (!out.empty()) o.out = out;
    if (!format.empty()) o.format = parse_trace_format(format);
    return o;
  }
};

void add_common(CLI::App* cmd, RawOptions& raw) {
  cmd->add_option("--mode", raw.mode, "Parameter range: strict or permissive")
      ->check(CLI::IsMember({"strict", "permissive"}));
  cmd->add_option("--out", raw.out, "Output path ('-' for stdout)");
  cmd->add_option("--format", raw.format, "Trace format: csv or jsonl")
      ->check(CLI::IsMember({"csv", "jsonl"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"relaxcut: averaged relaxed cutter methods for convex feasibility"};
  app.require_subcommand(1);

  RawOptions raw;
  std::string config;
  std::string grid;
  std::string fixture;
  std::size_t jobs = 0;
  std::size_t samples = 10000;
  std::uint64_t seed = 0;
  bool seed_given = false;

  auto* solve = app.add_subcommand("solve", "Iterate a problem file and write its trace");
  solve->add_option("config", config, "Problem file (YAML)")->required();
  add_common(solve, raw);

  auto* sweep = app.add_subcommand("sweep", "Solve over a (gamma, mu, lambda) grid");
  sweep->add_option("config", config, "Problem file (YAML)")->required();
  sweep->add_option("--grid", grid, "e.g. \"gamma=0.5,1,1.5;mu=0.5,1;lambda=1\"")->required();
  sweep->add_option("--jobs", jobs, "Worker threads (0 = hardware concurrency)");
  add_common(sweep, raw);

  auto* audit = app.add_subcommand("audit", "Sample the cutter and operator inequalities");
  audit->add_option("config", config, "Problem file (YAML)")->required();
  audit->add_option("--samples", samples, "Number of (x, y) pairs per inequality");
  auto* seed_opt = audit->add_option("--seed", seed, "PRNG seed (MT19937-64)");
  add_common(audit, raw);

  auto* run = app.add_subcommand("run-fixture", "Run a gallery fixture and check it");
  run->add_option("name", fixture, "Fixture name (see `list`)")->required();
  add_common(run, raw);

  auto* list = app.add_subcommand("list", "List fixtures, catalog functions and set types");

  CLI11_PARSE(app, argc, argv);

  try {
    const CommonOptions opts = raw.resolve();
    if (*solve) return cmd_solve(config, opts, std::cout, std::cerr);
    if (*sweep) return cmd_sweep(config, grid, jobs, opts, std::cout, std::cerr);
    if (*audit) {
      seed_given = seed_opt->count() > 0;
      if (!seed_given) {
        const ProblemConfig c = load_config(config);
        if (c.seed) seed = *c.seed;
      }
      return cmd_audit(config, samples, seed, opts, std::cout, std::cerr);
    }
    if (*run) return cmd_run_fixture(fixture, opts, std::cout, std::cerr);
    if (*list) return cmd_list(std::cout);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
