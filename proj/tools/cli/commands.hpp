#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"

namespace relaxcut::cli {

/// Process exit codes.
inline constexpr int kExitResidualMet = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitMaxIter = 2;
inline constexpr int kExitStagnated = 3;
inline constexpr int kExitError = 4;
inline constexpr int kExitCheckFailed = 5;

int exit_code(TerminationReason reason);

struct CommonOptions {
  std::optional<ParamMode> mode;
  std::optional<std::string> out;
  std::optional<TraceFormat> format;
};

/// Values per axis; an empty axis takes the config's value.
struct SweepGrid {
  std::vector<double> gamma;
  std::vector<double> mu;
  std::vector<double> lambda;
};

/// "gamma=0.5,1,1.5;mu=0.5,1;lambda=1". Keys may appear in any order.
SweepGrid parse_grid(const std::string& text);

/// Runs solve or varying_params_solve depending on the parameter spec.
IterationTrace run_problem(const ResolvedProblem& problem);

int cmd_solve(const std::string& config_path, const CommonOptions& opts, std::ostream& out,
              std::ostream& err);
int cmd_sweep(const std::string& config_path, const std::string& grid, std::size_t jobs,
              const CommonOptions& opts, std::ostream& out, std::ostream& err);
int cmd_audit(const std::string& config_path, std::size_t samples, std::uint64_t seed,
              const CommonOptions& opts, std::ostream& out, std::ostream& err);
int cmd_run_fixture(const std::string& name, const CommonOptions& opts, std::ostream& out,
                    std::ostream& err);
int cmd_list(std::ostream& out);

}  // namespace relaxcut::cli
