#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "relaxcut/cutter.hpp"
#include "relaxcut/operators.hpp"
#include "relaxcut/point.hpp"
#include "relaxcut/solver.hpp"

namespace relaxcut {

/// Unvalidated (gamma, mu, lambda); validated against a mode when a fixture runs.
struct ParamTriple {
  double gamma = 1.0;
  double mu = 1.0;
  double lambda = 1.0;
};

/// The cutter property fails at (x, z): <x - Px, z - Px> equals `violation` > 0.
/// The cutter audit over `xs` against `zs` must fail as well.
struct ExpectNotCutter {
  Point x;
  Point z;
  double violation = 0.0;
  std::vector<Point> xs;
  std::vector<Point> zs;
};

/// ||Px - Py|| > ||x - y|| for the listed pair, with the exact images given,
/// while the SQNE audit over `xs` x `fixed` passes for every gamma listed.
struct ExpectNonexpansiveViolation {
  Point x;
  Point y;
  Point px;
  Point py;
  std::vector<Point> xs;
  std::vector<Point> fixed;
  std::vector<double> gammas;
};

/// Every grid point is fixed by T (to `tol` relative) and every run started
/// off A cap B stagnates. Over `image_grid`, P_A x lies in A cap B iff
/// `image_in_intersection`.
struct ExpectFixedPoints {
  std::vector<Point> grid;
  double tol = 0.0;
  bool image_in_intersection = true;
  std::vector<Point> image_grid;
  std::vector<std::pair<Point, Point>> images;  // x, expected P_A x
};

/// Iterates equal closed_form(n) for n <= through within `tol`; the ratio
/// x_{n+1}/x_n is nondecreasing and equals `ratio_value` at n = `ratio_at`.
struct ExpectExactIterates {
  std::function<double(std::size_t)> closed_form;
  std::size_t through = 0;
  double tol = 0.0;
  std::size_t ratio_at = 0;
  double ratio_value = 0.0;
};

/// At e_n, n = 1..K: ||e_n - P e_n|| = 1/n (within `tol`) and d(e_n, A) = 1.
struct ExpectStepGap {
  std::size_t K = 0;
  double tol = 0.0;
};

/// Every run terminates ResidualMet with final residual below `residual_tol`.
struct ExpectConvergence {
  double residual_tol = 0.0;
};

using Expectation = std::variant<ExpectNotCutter, ExpectNonexpansiveViolation, ExpectFixedPoints,
                                 ExpectExactIterates, ExpectStepGap, ExpectConvergence>;

struct Fixture {
  std::string name;
  std::string description;
  Cutter a;
  Cutter b;
  std::vector<ParamTriple> runs;
  ParamMode mode = ParamMode::Strict;
  Point x0;
  StopRule stop;
  Expectation expected;
};

struct FixtureCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct FixtureRun {
  ParamTriple params;
  IterationTrace trace;
};

struct FixtureResult {
  std::string fixture;
  std::vector<FixtureRun> runs;
  std::vector<FixtureCheck> checks;

  bool pass() const;
};

/// The 1-D map x (x <= 0), 0 (0 < x < 1), 1 (x >= 1). Fix = (-inf, 0] u {1},
/// and it is not a cutter: T(0.5) = 0 does not separate 0.5 from 1.
Cutter make_separator_cutter();

Fixture fixture_separator_not_cutter();
Fixture fixture_eg1_nonexpansivity();
Fixture fixture_fixedpoints_abs();
Fixture fixture_fixedpoints_maxabs();
Fixture fixture_sublinear();
Fixture fixture_phis_truncated(std::size_t K = 10);
Fixture fixture_figure_comparison();

std::vector<std::string> fixture_names();

/// Looks a fixture up by name; UnknownName lists the valid names.
Fixture make_fixture(const std::string& name);

/// Runs every parameter triple of the fixture and checks its expectation.
/// `mode` defaults to the fixture's own; running a permissive fixture in
/// strict mode throws GammaOutOfRange before any iteration.
FixtureResult run_fixture(const Fixture& fixture, std::optional<ParamMode> mode = std::nullopt);

/// Points k * step for integer k with |k * step| <= half_width, per axis.
std::vector<Point> grid_1d(double half_width, double step);
std::vector<Point> grid_2d(double half_width, double step);

}  // namespace relaxcut
