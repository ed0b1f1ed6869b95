#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "relaxcut/cutter.hpp"
#include "relaxcut/operators.hpp"
#include "relaxcut/point.hpp"
#include "relaxcut/solver.hpp"

namespace relaxcut {

/// Absolute slack applied to every inequality check, multiplied by a scale
/// of max(1, ||x||^2, ||y||^2) for squared-norm inequalities and
/// max(1, ||x||, ||y||) for plain norms.
inline constexpr double kInequalitySlack = 1e-9;

/// Outcome of one inequality over a batch of sample pairs.
///
/// worst_slack is min over pairs of (rhs - lhs) / scale, so the check passes
/// iff worst_slack >= -kInequalitySlack. The offending pair is kept for
/// reporting.
struct InequalityResult {
  std::string name;
  std::size_t pairs = 0;
  double worst_slack = 0.0;
  bool pass = true;
  std::optional<Point> worst_x;
  std::optional<Point> worst_y;
};

struct AuditReport {
  std::vector<InequalityResult> checks;
  bool pass() const;
  const InequalityResult& check(const std::string& name) const;
};

/// For a cutter P with relaxation R^gamma, gamma in (0, 2), and every
/// (x, y) in xs x ys with y in Fix P:
///   (i)  ||R x - y||^2 <= gamma(gamma-2)||x - Px||^2 + ||x - y||^2
///   (ii) ||R x - y||^2 <= ||x - y||^2 - (gamma/(2-gamma))||R x - x||^2
/// Checks are named "sqne-i" and "sqne-ii".
AuditReport sqne_audit(const Cutter& cutter, double gamma, std::span<const Point> xs,
                       std::span<const Point> ys);

/// <x - Px, z - Px> <= 0 for all z in Fix P ("cutter").
InequalityResult cutter_audit(const Cutter& cutter, std::span<const Point> xs,
                              std::span<const Point> zs);

/// ||Px - Py||^2 + ||(x - Px) - (y - Py)||^2 <= ||x - y||^2 over xs x ys.
InequalityResult firmly_nonexpansive_audit(const Cutter& cutter, std::span<const Point> xs,
                                           std::span<const Point> ys);

/// ||Px - Py|| <= ||x - y|| over xs x ys.
InequalityResult nonexpansive_audit(const Cutter& cutter, std::span<const Point> xs,
                                    std::span<const Point> ys);

/// For T built from (a, b, gamma, mu, lambda) and refs in A cap B:
///   "quasinonexpansive": ||Tx - y|| <= ||x - y||
///   "theta-bound":       ||Tx - y||^2 <= lambda theta(x) + ||x - y||^2
AuditReport averaged_operator_audit(const Cutter& a, const Cutter& b, double gamma, double mu,
                                    double lambda, std::span<const Point> xs,
                                    std::span<const Point> refs);

struct FejerReport {
  std::vector<Point> reference_points;
  /// max over consecutive kept rows and refs of ||x_{n+1} - ref|| - ||x_n - ref||.
  double max_violation = 0.0;
  /// kInequalitySlack * max(1, largest ||x_n||, largest ||ref||).
  double tolerance = 0.0;
  bool monotone = true;
  std::size_t worst_step = 0;
};

/// Fejer monotonicity of a trace with respect to caller-certified points of
/// A cap B. Throws EmptyReferenceSet when refs is empty.
FejerReport fejer_check(const IterationTrace& trace, std::span<const Point> refs);

}  // namespace relaxcut
