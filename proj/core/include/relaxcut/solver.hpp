#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "relaxcut/cutter.hpp"
#include "relaxcut/operators.hpp"
#include "relaxcut/point.hpp"

namespace relaxcut {

/// Stopping rule for the fixed-point iteration.
///
/// The run stops at the first of:
///   - max(residual_a, residual_b) <= residual_tol            (ResidualMet)
///   - three consecutive steps with ||x_{n+1} - x_n|| == 0, or
///     <= stagnation_tol when stagnation_tol > 0              (Stagnated)
///   - max_iter applications of T                             (MaxIter)
struct StopRule {
  std::size_t max_iter = 100000;
  double residual_tol = 1e-10;
  double stagnation_tol = 0.0;

  void validate() const;

  friend bool operator==(const StopRule&, const StopRule&) = default;
};

enum class TerminationReason { ResidualMet, MaxIter, Stagnated, Error };

std::string_view to_string(TerminationReason reason);

/// Iterate x_n with the quantities evaluated at it. step_norm is ||T x_n - x_n||,
/// so the last row of a trace reports the step that was not taken.
struct TraceRow {
  std::size_t n = 0;
  Point x;
  double residual_a = 0.0;
  double residual_b = 0.0;
  double theta = 0.0;
  double step_norm = 0.0;
  double gamma = 1.0;
  double mu = 1.0;
  double lambda = 1.0;
};

/// Memory bound for long runs: the first `cap` rows are kept verbatim, later
/// rows only at geometrically spaced indices (each kept index at least
/// `growth` times the previous one). The final row is always kept.
struct TraceOptions {
  std::size_t cap = 10000;
  double growth = 1.05;
};

struct IterationTrace {
  std::vector<TraceRow> rows;
  TerminationReason reason = TerminationReason::MaxIter;
  std::string error;
  /// Number of applications of T performed.
  std::size_t iterations = 0;
  /// Sum of theta(x_j) over every evaluated iterate, thinned rows included.
  double theta_sum = 0.0;

  const Point& final_point() const { return rows.back().x; }
  const TraceRow& final_row() const { return rows.back(); }
  double final_residual() const;
};

/// Iterates x_{n+1} = T x_n from x0. Cutter failures (e.g. ZeroSubgradient)
/// end the run with reason Error and the partial trace; parameter and
/// dimension problems are thrown before iterating.
IterationTrace solve(const Cutter& a, const Cutter& b, const OperatorParams& params,
                     const Point& x0, const StopRule& stop = {}, const TraceOptions& opts = {});

using ParamSequence = std::function<double(std::size_t n)>;

/// As solve, with gamma_n, mu_n read from sequences indexed by step n = 0, 1, ...
/// Each value must lie in (0, 2), and the running minimum of gamma_n(2 - gamma_n)
/// and mu_n(2 - mu_n) must stay at or above `floor`; otherwise ParamFloorViolated
/// is thrown.
IterationTrace varying_params_solve(const Cutter& a, const Cutter& b, const ParamSequence& gammas,
                                    const ParamSequence& mus, double lambda, const Point& x0,
                                    const StopRule& stop = {}, double floor = 1e-3,
                                    const TraceOptions& opts = {});

}  // namespace relaxcut
