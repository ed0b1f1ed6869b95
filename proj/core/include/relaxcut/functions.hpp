#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "relaxcut/convex_function.hpp"
#include "relaxcut/cutter.hpp"
#include "relaxcut/sets.hpp"

namespace relaxcut {

/// f(x) = |x| on R. Selection sign(x), with s(0) = 0.
ConvexFunction make_abs();

/// f(x, y) = max{|x|, |y|}. Selection (sign x, 0) when |x| >= |y|, else (0, sign y).
ConvexFunction make_maxabs2();

/// f(x) = |x| for x <= 1 and 2x - 1 otherwise. The selection is the right
/// derivative: -1 on x < 0, 1 on [0, 1), 2 on [1, inf).
ConvexFunction make_piecewise_eg1();

/// f = d(., S). Its subgradient projector coincides with the metric projection.
ConvexFunction make_distance(PrimitiveSet set);

/// ((x - a)^2 + (y - b)^2 - 1)^2. Not convex; flagged as such so that the
/// construction-time subgradient check is skipped.
ConvexFunction make_ellipse_residual(double a, double b);

/// phi_k(t) = max{-t/k, t/k, kt + 1 - k, -kt + 1 - k}, k >= 1.
double phi(std::size_t k, double t);

/// f(x) = max_{k = 1..K} phi_k(x_k) on R^K; zero exactly at the origin.
/// Selection: the first k attaining the max, then the first attaining piece.
ConvexFunction make_phis_truncated(std::size_t K);

/// The one-dimensional cutter for Fix = {0} that maps 1/n to 1/(n+1) (n > 0),
/// sends (1/(n+1), 1/n) to 1/(n+1), and is odd-symmetric. With itself as both
/// cutters and gamma = mu = lambda = 1 it produces x_n = 1/(2n+1) from x_0 = 1.
Cutter make_sublinear_cutter();

/// Evaluates the sublinear cutter map on a scalar.
double sublinear_map(double x);

/// Result of sampling f(y) >= f(x) + <s(x), y - x> over random pairs.
struct SubgradientCheck {
  bool ok = true;
  double worst_slack = 0.0;  // min over pairs of f(y) - f(x) - <s(x), y - x>
  Point worst_x;
  Point worst_y;
};

SubgradientCheck check_subgradient_inequality(const ConvexFunction& f, std::uint64_t seed,
                                              std::size_t pairs, double box = 5.0,
                                              double tol = 1e-9);

/// Arguments for catalog builders. Scalars are looked up by name; `set` is
/// used by entries defined relative to a primitive set.
struct FunctionArgs {
  std::map<std::string, double> scalars;
  std::optional<PrimitiveSet> set;
  bool allow_nonconvex = false;

  double scalar(const std::string& key) const;
  double scalar_or(const std::string& key, double fallback) const;
};

struct FunctionCatalogEntry {
  std::string name;
  std::string summary;
  std::function<ConvexFunction(const FunctionArgs&)> builder;
};

const std::vector<FunctionCatalogEntry>& function_catalog();
std::vector<std::string> function_catalog_names();

/// Builds a catalog function by name and runs the subgradient-inequality
/// sample test on it. Unknown names raise UnknownName listing the valid ones.
ConvexFunction build_function(const std::string& name, const FunctionArgs& args);

}  // namespace relaxcut
