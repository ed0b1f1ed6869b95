#include "relaxcut/gallery.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>

#include "relaxcut/diagnostics.hpp"
#include "relaxcut/error.hpp"
#include "relaxcut/functions.hpp"
#include "relaxcut/sets.hpp"
#include "relaxcut/trace_io.hpp"

namespace relaxcut {
namespace {

constexpr double kMachineTol = 4.0 * DBL_EPSILON;

std::string fmt(double v) { return format_double(v); }

void add(FixtureResult& r, std::string name, bool pass, std::string detail) {
  r.checks.push_back({std::move(name), pass, std::move(detail)});
}

bool in_intersection(const Fixture& f, const Point& x) { return f.a.fixes(x) && f.b.fixes(x); }

double separator_map(double x) {
  if (x <= 0.0) return x;
  return x < 1.0 ? 0.0 : 1.0;
}

struct Checker {
  const Fixture& f;
  const std::vector<OperatorParams>& params;
  FixtureResult& r;

  void operator()(const ExpectNotCutter& e) const {
    const Point px = f.a.apply(e.x);
    const double v = dot(e.x - px, e.z - px);
    add(r, "violation-at-pair", v == e.violation && v > 0.0,
        "<x - Px, z - Px> = " + fmt(v) + " at x = " + e.x.to_string() +
            ", z = " + e.z.to_string() + " (expected " + fmt(e.violation) + ")");
    add(r, "z-is-fixed", f.a.fixes(e.z), "P(z) = " + f.a.apply(e.z).to_string());
    const InequalityResult audit = cutter_audit(f.a, e.xs, e.zs);
    std::string where;
    if (audit.worst_x) where = " at x = " + audit.worst_x->to_string() + ", z = " +
                               audit.worst_y->to_string();
    add(r, "cutter-audit-fails", !audit.pass, "worst slack " + fmt(audit.worst_slack) + where);
  }

  void operator()(const ExpectNonexpansiveViolation& e) const {
    const Point px = f.a.apply(e.x);
    const Point py = f.a.apply(e.y);
    add(r, "images", px == e.px && py == e.py,
        "P" + e.x.to_string() + " = " + px.to_string() + ", P" + e.y.to_string() + " = " +
            py.to_string());
    const double image_gap = distance(px, py);
    const double gap = distance(e.x, e.y);
    add(r, "not-nonexpansive", image_gap > gap,
        "|Px - Py| = " + fmt(image_gap) + " > |x - y| = " + fmt(gap));
    for (double g : e.gammas) {
      const AuditReport audit = sqne_audit(f.a, g, e.xs, e.fixed);
      double worst = 0.0;
      for (const auto& c : audit.checks) worst = std::min(worst, c.worst_slack);
      add(r, "sqne-audit gamma=" + fmt(g), audit.pass(), "worst slack " + fmt(worst));
    }
  }

  void operator()(const ExpectFixedPoints& e) const {
    for (const OperatorParams& p : params) {
      const std::string tag = " (" + fmt(p.gamma()) + "," + fmt(p.mu()) + "," +
                              fmt(p.lambda()) + ")";
      double worst_move = 0.0;
      std::size_t stalled = 0;
      std::size_t off = 0;
      std::string bad;
      for (const Point& x : e.grid) {
        const StepRecord s = averaged_step(f.a, f.b, p, x);
        worst_move = std::max(worst_move, distance(s.next, x) / std::max(1.0, norm(x)));
        if (in_intersection(f, x)) continue;
        ++off;
        const IterationTrace t = solve(f.a, f.b, p, x, f.stop);
        if (t.reason == TerminationReason::Stagnated) {
          ++stalled;
        } else if (bad.empty()) {
          bad = "; " + x.to_string() + " ended " + std::string(to_string(t.reason));
        }
      }
      add(r, "grid-fixed" + tag, worst_move <= e.tol,
          std::to_string(e.grid.size()) + " points, worst relative move " + fmt(worst_move));
      add(r, "stagnates" + tag, stalled == off,
          std::to_string(stalled) + "/" + std::to_string(off) + " runs Stagnated" + bad);
    }
    std::size_t agree = 0;
    for (const Point& x : e.image_grid) {
      if (in_intersection(f, f.a.apply(x)) == e.image_in_intersection) ++agree;
    }
    add(r, e.image_in_intersection ? "image-in-intersection" : "image-outside-intersection",
        agree == e.image_grid.size(),
        std::to_string(agree) + "/" + std::to_string(e.image_grid.size()) + " points");
    for (const auto& [x, expected] : e.images) {
      const Point px = f.a.apply(x);
      add(r, "image " + x.to_string(), px == expected,
          "P_A x = " + px.to_string() + " (expected " + expected.to_string() + ", " +
              (in_intersection(f, px) ? "in" : "not in") + " A cap B)");
    }
  }

  void operator()(const ExpectExactIterates& e) const {
    const auto& rows = r.runs.front().trace.rows;
    double worst = 0.0;
    bool complete = rows.size() > e.through + 1;
    for (std::size_t n = 0; complete && n <= e.through; ++n) {
      worst = std::max(worst, std::abs(rows[n].x[0] - e.closed_form(n)));
    }
    add(r, "closed-form", complete && worst <= e.tol,
        "n = 0.." + std::to_string(e.through) + ", worst error " + fmt(worst));
    if (!complete) return;
    bool nondecreasing = true;
    for (std::size_t n = 1; n < e.through; ++n) {
      const double prev = std::abs(rows[n].x[0] / rows[n - 1].x[0]);
      const double cur = std::abs(rows[n + 1].x[0] / rows[n].x[0]);
      nondecreasing = nondecreasing && cur >= prev;
    }
    const double ratio = std::abs(rows[e.ratio_at + 1].x[0] / rows[e.ratio_at].x[0]);
    add(r, "ratio-to-one", nondecreasing && std::abs(ratio - e.ratio_value) <= e.tol,
        "x_" + std::to_string(e.ratio_at + 1) + "/x_" + std::to_string(e.ratio_at) + " = " +
            fmt(ratio) + ", ratios nondecreasing: " + (nondecreasing ? "yes" : "no"));
  }

  void operator()(const ExpectStepGap& e) const {
    for (std::size_t n = 1; n <= e.K; ++n) {
      const Point x = Point::basis(e.K, n - 1);
      const double step = distance(x, f.a.apply(x));
      const double dist = norm(x);
      const double expected = 1.0 / static_cast<double>(n);
      add(r, "e_" + std::to_string(n),
          std::abs(step - expected) <= e.tol && dist == 1.0 && f.a.fixes(Point::zeros(e.K)),
          "step " + fmt(step) + " vs 1/n = " + fmt(expected) + ", distance " + fmt(dist));
    }
  }

  void operator()(const ExpectConvergence& e) const {
    for (const FixtureRun& run : r.runs) {
      const std::string tag = "(" + fmt(run.params.gamma) + "," + fmt(run.params.mu) + "," +
                              fmt(run.params.lambda) + ")";
      const double res = run.trace.final_residual();
      add(r, "converges " + tag,
          run.trace.reason == TerminationReason::ResidualMet && res < e.residual_tol,
          std::string(to_string(run.trace.reason)) + " after " +
              std::to_string(run.trace.iterations) + " steps, residual " + fmt(res));
    }
  }
};

}  // namespace

bool FixtureResult::pass() const {
  return !checks.empty() &&
         std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
}

std::vector<Point> grid_1d(double half_width, double step) {
  // k / (1/step) reproduces decimal grids such as 0.3 exactly where k * step does not.
  const double inv = std::round(1.0 / step);
  const bool decimal = std::abs(inv * step - 1.0) < 1e-12;
  const auto kmax = static_cast<long>(std::floor(half_width / step + 1e-9));
  std::vector<Point> out;
  for (long k = -kmax; k <= kmax; ++k) {
    out.push_back(Point{decimal ? static_cast<double>(k) / inv : static_cast<double>(k) * step});
  }
  return out;
}

std::vector<Point> grid_2d(double half_width, double step) {
  const std::vector<Point> axis = grid_1d(half_width, step);
  std::vector<Point> out;
  out.reserve(axis.size() * axis.size());
  for (const Point& u : axis) {
    for (const Point& v : axis) out.push_back(Point{u[0], v[0]});
  }
  return out;
}

Cutter make_separator_cutter() {
  return Cutter(CustomCutter{
      .name = "separator",
      .dim = 1,
      .map = [](const Point& x) { return Point{separator_map(x[0])}; },
      .in_fixed_set = [](const Point& x) { return x[0] <= 0.0 || x[0] == 1.0; },
      .witnesses = {Point{1.0}, Point{0.0}},
  });
}

Fixture fixture_separator_not_cutter() {
  const Cutter t = make_separator_cutter();
  ExpectNotCutter e{.x = Point{0.5}, .z = Point{1.0}, .violation = 0.5};
  e.xs = grid_1d(5.0, 0.1);
  for (const Point& x : e.xs) {
    if (x[0] <= 0.0 || x[0] == 1.0) e.zs.push_back(x);
  }
  return Fixture{
      .name = "separator_not_cutter",
      .description = "identity on (-inf,0], 0 on (0,1), 1 on [1,inf): fixes 1 but T(0.5) = 0 "
                     "does not separate 0.5 from it",
      .a = t,
      .b = t,
      .runs = {{1.0, 1.0, 1.0}},
      .mode = ParamMode::Strict,
      .x0 = Point{0.5},
      .stop = {},
      .expected = std::move(e),
  };
}

Fixture fixture_eg1_nonexpansivity() {
  const Cutter p = Cutter::subgradient(make_piecewise_eg1());
  return Fixture{
      .name = "eg1_nonexpansivity",
      .description = "subgradient projector of |x| (x <= 1), 2x - 1 (x > 1): P(0.9) = 0, "
                     "P(1.1) = 0.5, yet strongly quasinonexpansive",
      .a = p,
      .b = p,
      .runs = {{1.0, 1.0, 1.0}},
      .mode = ParamMode::Strict,
      .x0 = Point{1.1},
      .stop = {},
      .expected =
          ExpectNonexpansiveViolation{
              .x = Point{0.9},
              .y = Point{1.1},
              .px = Point{0.0},
              .py = Point{0.5},
              .xs = grid_1d(5.0, 0.1),
              .fixed = {Point{0.0}},
              .gammas = {0.1, 0.5, 1.0, 1.5, 1.9},
          },
  };
}

// With gamma = 0 the subgradient projector of |x| sends x to 0, the
// reflection sends it to -x, and the second reflection returns x.
Fixture fixture_fixedpoints_abs() {
  const Cutter p = Cutter::subgradient(make_abs());
  std::vector<Point> grid = grid_1d(5.0, 0.1);
  std::vector<Point> off;
  for (const Point& x : grid) {
    if (x[0] != 0.0) off.push_back(x);
  }
  return Fixture{
      .name = "fixedpoints_abs",
      .description = "f = g = |x| with (0,0,lambda): every real is fixed, P_f x = 0 always",
      .a = p,
      .b = p,
      .runs = {{0.0, 0.0, 0.5}, {0.0, 0.0, 1.0}},
      .mode = ParamMode::Permissive,
      .x0 = Point{1.0},
      .stop = {.max_iter = 20},
      .expected =
          ExpectFixedPoints{
              .grid = std::move(grid),
              .tol = kMachineTol,
              .image_in_intersection = true,
              .image_grid = std::move(off),
              .images = {{Point{1.0}, Point{0.0}}, {Point{-2.5}, Point{0.0}}},
          },
  };
}

// For |x| > |y| the projector drops the first coordinate: (x, y) -> (0, y);
// the reflection is (-x, y), whose projection is again (0, y), and the
// second reflection restores (x, y).
Fixture fixture_fixedpoints_maxabs() {
  const Cutter p = Cutter::subgradient(make_maxabs2());
  std::vector<Point> grid;
  std::vector<Point> off_axes;
  for (const Point& x : grid_2d(5.0, 0.1)) {
    if (std::abs(x[0]) == std::abs(x[1])) continue;
    if (x[0] != 0.0 && x[1] != 0.0) off_axes.push_back(x);
    grid.push_back(x);
  }
  return Fixture{
      .name = "fixedpoints_maxabs",
      .description = "f = g = max{|x|,|y|} with (0,0,1/2): every point with |x| != |y| is "
                     "fixed and P_f(x,y) leaves A cap B = {0}",
      .a = p,
      .b = p,
      .runs = {{0.0, 0.0, 0.5}},
      .mode = ParamMode::Permissive,
      .x0 = Point{2.0, 1.0},
      .stop = {.max_iter = 20},
      .expected =
          ExpectFixedPoints{
              .grid = std::move(grid),
              .tol = kMachineTol,
              .image_in_intersection = false,
              .image_grid = std::move(off_axes),
              .images = {{Point{2.0, 1.0}, Point{0.0, 1.0}}},
          },
  };
}

Fixture fixture_sublinear() {
  const Cutter p = make_sublinear_cutter();
  return Fixture{
      .name = "sublinear",
      .description = "cutter for {0} mapping 1/n to 1/(n+1); with (1,1,1) from x0 = 1 the "
                     "iterates are 1/(2n+1)",
      .a = p,
      .b = p,
      .runs = {{1.0, 1.0, 1.0}},
      .mode = ParamMode::Strict,
      .x0 = Point{1.0},
      .stop = {.max_iter = 60},
      .expected =
          ExpectExactIterates{
              .closed_form = [](std::size_t n) { return 1.0 / (2.0 * static_cast<double>(n) + 1.0); },
              .through = 50,
              .tol = 1e-12,
              .ratio_at = 49,
              .ratio_value = 99.0 / 101.0,
          },
  };
}

Fixture fixture_phis_truncated(std::size_t K) {
  if (K < 1) throw Error(ErrorCode::InvalidArgument, "phis_truncated needs K >= 1");
  const Cutter p = Cutter::subgradient(make_phis_truncated(K));
  return Fixture{
      .name = "phis_truncated",
      .description = "f = max_k phi_k(x_k) on R^" + std::to_string(K) +
                     ": the cutter step at e_n is 1/n while d(e_n, {0}) = 1",
      .a = p,
      .b = p,
      .runs = {{1.0, 1.0, 1.0}},
      .mode = ParamMode::Strict,
      .x0 = Point::basis(K, K - 1),
      .stop = {},
      .expected = ExpectStepGap{.K = K, .tol = kMachineTol},
  };
}

// The figure's functions are not given; two overlapping unit disks through
// their distance functions stand in for them.
Fixture fixture_figure_comparison() {
  const Cutter a = Cutter::subgradient(make_distance(make_ball(Point{0.0, 0.0}, 1.0)));
  const Cutter b = Cutter::subgradient(make_distance(make_ball(Point{1.9, 0.3}, 1.0)));
  return Fixture{
      .name = "figure_comparison",
      .description = "two overlapping disks from one start: (0.1,0.1,0.5) against (1,1,1)",
      .a = a,
      .b = b,
      .runs = {{0.1, 0.1, 0.5}, {1.0, 1.0, 1.0}},
      .mode = ParamMode::Strict,
      .x0 = Point{-1.5, 2.5},
      .stop = {.max_iter = 100000, .residual_tol = 1e-10},
      .expected = ExpectConvergence{.residual_tol = 1e-8},
  };
}

std::vector<std::string> fixture_names() {
  return {"separator_not_cutter", "eg1_nonexpansivity", "fixedpoints_abs", "fixedpoints_maxabs",
          "sublinear",            "phis_truncated",     "figure_comparison"};
}

Fixture make_fixture(const std::string& name) {
  if (name == "separator_not_cutter") return fixture_separator_not_cutter();
  if (name == "eg1_nonexpansivity") return fixture_eg1_nonexpansivity();
  if (name == "fixedpoints_abs") return fixture_fixedpoints_abs();
  if (name == "fixedpoints_maxabs") return fixture_fixedpoints_maxabs();
  if (name == "sublinear") return fixture_sublinear();
  if (name == "phis_truncated") return fixture_phis_truncated();
  if (name == "figure_comparison") return fixture_figure_comparison();
  std::string valid;
  for (const auto& n : fixture_names()) valid += (valid.empty() ? "" : ", ") + n;
  throw Error(ErrorCode::UnknownName, "unknown fixture '" + name + "' (valid: " + valid + ")");
}

FixtureResult run_fixture(const Fixture& fixture, std::optional<ParamMode> mode) {
  const ParamMode m = mode.value_or(fixture.mode);
  std::vector<OperatorParams> params;
  for (const ParamTriple& t : fixture.runs) params.emplace_back(t.gamma, t.mu, t.lambda, m);

  FixtureResult result{.fixture = fixture.name};
  for (std::size_t i = 0; i < params.size(); ++i) {
    result.runs.push_back({fixture.runs[i], solve(fixture.a, fixture.b, params[i], fixture.x0,
                                                  fixture.stop)});
  }
  std::visit(Checker{fixture, params, result}, fixture.expected);
  return result;
}

}  // namespace relaxcut
