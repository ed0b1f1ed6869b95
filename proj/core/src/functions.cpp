#include "relaxcut/functions.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "relaxcut/error.hpp"
#include "relaxcut/random.hpp"

namespace relaxcut {
namespace {

double sign(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

// Largest n >= 1 with 1/(n+1) < x, for 0 < x < 1 and x not of the form 1/m.
double lower_reciprocal_step(double x) {
  double n = std::floor(1.0 / x);
  if (n < 1.0) n = 1.0;
  while (1.0 / (n + 1.0) >= x) n += 1.0;
  while (n > 1.0 && 1.0 / n <= x) n -= 1.0;
  return 1.0 / (n + 1.0);
}

double sublinear_positive(double x) {
  if (x > 1.0) return 1.0;
  const double m = std::round(1.0 / x);
  if (m >= 1.0 && 1.0 / m == x) return 1.0 / (m + 1.0);
  return lower_reciprocal_step(x);
}

}  // namespace

ConvexFunction make_abs() {
  return ConvexFunction(
      "abs", 1, [](const Point& x) { return std::abs(x[0]); },
      [](const Point& x) { return Point{sign(x[0])}; });
}

ConvexFunction make_maxabs2() {
  return ConvexFunction(
      "maxabs2", 2, [](const Point& x) { return std::max(std::abs(x[0]), std::abs(x[1])); },
      [](const Point& x) {
        if (std::abs(x[0]) >= std::abs(x[1])) return Point{sign(x[0]), 0.0};
        return Point{0.0, sign(x[1])};
      });
}

ConvexFunction make_piecewise_eg1() {
  return ConvexFunction(
      "eg1", 1,
      [](const Point& x) { return x[0] <= 1.0 ? std::abs(x[0]) : 2.0 * x[0] - 1.0; },
      [](const Point& x) {
        if (x[0] < 0.0) return Point{-1.0};
        if (x[0] < 1.0) return Point{1.0};
        return Point{2.0};
      });
}

ConvexFunction make_distance(PrimitiveSet set) {
  const std::size_t dim = ambient_dim(set);
  return ConvexFunction(
      "distance to " + describe(set), dim,
      [set](const Point& x) { return distance_to(set, x); },
      [set](const Point& x) {
        const Point p = project_exact(set, x);
        const double d = distance(x, p);
        if (d == 0.0) return Point::zeros(x.dim());
        return (1.0 / d) * (x - p);
      });
}

ConvexFunction make_ellipse_residual(double a, double b) {
  return ConvexFunction(
      "ellipse_residual", 2,
      [a, b](const Point& x) {
        const double r = (x[0] - a) * (x[0] - a) + (x[1] - b) * (x[1] - b) - 1.0;
        return r * r;
      },
      [a, b](const Point& x) {
        const double r = (x[0] - a) * (x[0] - a) + (x[1] - b) * (x[1] - b) - 1.0;
        return Point{4.0 * r * (x[0] - a), 4.0 * r * (x[1] - b)};
      },
      /*convex=*/false);
}

double phi(std::size_t k, double t) {
  const double kk = static_cast<double>(k);
  return std::max({-t / kk, t / kk, kk * t + 1.0 - kk, -kk * t + 1.0 - kk});
}

ConvexFunction make_phis_truncated(std::size_t K) {
  if (K < 1) throw Error(ErrorCode::InvalidArgument, "phis truncation needs K >= 1");
  return ConvexFunction(
      "phis", K,
      [K](const Point& x) {
        double best = phi(1, x[0]);
        for (std::size_t k = 2; k <= K; ++k) best = std::max(best, phi(k, x[k - 1]));
        return best;
      },
      [K](const Point& x) {
        std::size_t arg = 1;
        double best = phi(1, x[0]);
        for (std::size_t k = 2; k <= K; ++k) {
          const double v = phi(k, x[k - 1]);
          if (v > best) {
            best = v;
            arg = k;
          }
        }
        const double kk = static_cast<double>(arg);
        const double t = x[arg - 1];
        const std::array<double, 4> pieces{-t / kk, t / kk, kk * t + 1.0 - kk, -kk * t + 1.0 - kk};
        const std::array<double, 4> slopes{-1.0 / kk, 1.0 / kk, kk, -kk};
        std::size_t piece = 0;
        for (std::size_t i = 1; i < pieces.size(); ++i) {
          if (pieces[i] > pieces[piece]) piece = i;
        }
        Point s = Point::zeros(K);
        s[arg - 1] = slopes[piece];
        return s;
      });
}

double sublinear_map(double x) {
  if (x == 0.0) return 0.0;
  return x > 0.0 ? sublinear_positive(x) : -sublinear_positive(-x);
}

Cutter make_sublinear_cutter() {
  return Cutter(CustomCutter{
      .name = "sublinear",
      .dim = 1,
      .map = [](const Point& x) { return Point{sublinear_map(x[0])}; },
      .in_fixed_set = [](const Point& x) { return x[0] == 0.0; },
      .witnesses = {Point{0.0}},
  });
}

SubgradientCheck check_subgradient_inequality(const ConvexFunction& f, std::uint64_t seed,
                                              std::size_t pairs, double box, double tol) {
  Rng rng(seed);
  SubgradientCheck out;
  out.worst_slack = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pairs; ++i) {
    const Point x = rng.point_in_box(f.dim(), -box, box);
    const Point y = rng.point_in_box(f.dim(), -box, box);
    const double slack = f.value(y) - f.value(x) - dot(f.subgradient(x), y - x);
    if (slack < out.worst_slack) {
      out.worst_slack = slack;
      out.worst_x = x;
      out.worst_y = y;
    }
    const double scale = std::max({1.0, squared_norm(x), squared_norm(y)});
    if (slack < -tol * scale) out.ok = false;
  }
  return out;
}

double FunctionArgs::scalar(const std::string& key) const {
  const auto it = scalars.find(key);
  if (it == scalars.end()) {
    throw Error(ErrorCode::InvalidArgument, "missing function parameter '" + key + "'");
  }
  return it->second;
}

double FunctionArgs::scalar_or(const std::string& key, double fallback) const {
  const auto it = scalars.find(key);
  return it == scalars.end() ? fallback : it->second;
}

const std::vector<FunctionCatalogEntry>& function_catalog() {
  static const std::vector<FunctionCatalogEntry> catalog{
      {"abs", "|x| on R", [](const FunctionArgs&) { return make_abs(); }},
      {"maxabs2", "max{|x|,|y|} on R^2", [](const FunctionArgs&) { return make_maxabs2(); }},
      {"eg1", "|x| for x <= 1, 2x - 1 otherwise",
       [](const FunctionArgs&) { return make_piecewise_eg1(); }},
      {"distance", "Euclidean distance to a primitive set (needs `set`)",
       [](const FunctionArgs& args) {
         if (!args.set) {
           throw Error(ErrorCode::InvalidArgument, "function 'distance' needs a set");
         }
         return make_distance(*args.set);
       }},
      {"ellipse_residual", "((x-a)^2 + (y-b)^2 - 1)^2, nonconvex (needs allow_nonconvex)",
       [](const FunctionArgs& args) {
         if (!args.allow_nonconvex) {
           throw Error(ErrorCode::InvalidArgument,
                       "ellipse_residual is nonconvex; set allow_nonconvex to use it");
         }
         return make_ellipse_residual(args.scalar_or("a", 0.0), args.scalar_or("b", 0.0));
       }},
      {"phis", "max_k phi_k(x_k) on R^K (parameter K)",
       [](const FunctionArgs& args) {
         const double K = args.scalar_or("K", 10.0);
         if (!(K >= 1.0) || K != std::floor(K)) {
           throw Error(ErrorCode::InvalidArgument, "phis needs an integer K >= 1");
         }
         return make_phis_truncated(static_cast<std::size_t>(K));
       }},
  };
  return catalog;
}

std::vector<std::string> function_catalog_names() {
  std::vector<std::string> names;
  for (const auto& e : function_catalog()) names.push_back(e.name);
  return names;
}

ConvexFunction build_function(const std::string& name, const FunctionArgs& args) {
  for (const auto& entry : function_catalog()) {
    if (entry.name != name) continue;
    ConvexFunction f = entry.builder(args);
    if (f.convex()) {
      const SubgradientCheck check = check_subgradient_inequality(f, 0x5eed, 256);
      if (!check.ok) {
        throw Error(ErrorCode::InvalidSubgradient,
                    "function '" + name + "' failed the subgradient inequality at x=" +
                        check.worst_x.to_string() + ", y=" + check.worst_y.to_string());
      }
    }
    return f;
  }
  std::string valid;
  for (const auto& n : function_catalog_names()) valid += (valid.empty() ? "" : ", ") + n;
  throw Error(ErrorCode::UnknownName, "unknown function '" + name + "' (valid: " + valid + ")");
}

}  // namespace relaxcut
