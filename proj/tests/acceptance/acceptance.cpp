// Acceptance gate: one PASS/FAIL line per criterion, with its runtime limit.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "relaxcut/diagnostics.hpp"
#include "relaxcut/gallery.hpp"
#include "relaxcut/instances.hpp"
#include "relaxcut/productspace.hpp"
#include "relaxcut/random.hpp"
#include "relaxcut/solver.hpp"
#include "relaxcut/trace_io.hpp"

using namespace relaxcut;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double v) { return format_double(v); }

std::string failed_checks(const FixtureResult& r) {
  std::string out;
  for (const FixtureCheck& c : r.checks) {
    if (!c.pass) out += "; failed " + c.name + ": " + c.detail;
  }
  return out;
}

// 1. run-fixture sublinear: x_n = 1/(2n+1) for n = 1..50 within 1e-12, and
//    x_{n+1}/x_n > 0.95 for every n >= 10 on the recorded trace.
Outcome criterion_sublinear() {
  const std::string path = "acceptance_sublinear.csv";
  std::ostringstream log;
  cli::CommonOptions opts;
  opts.out = path;
  const int code = cli::cmd_run_fixture("sublinear", opts, log, log);
  std::ifstream in(path);
  const std::vector<TraceRow> rows = read_trace_csv(in);

  double worst = 0.0;
  bool complete = rows.size() > 50;
  for (std::size_t n = 1; n <= 50 && n < rows.size(); ++n) {
    worst = std::max(worst, std::abs(rows[n].x[0] - 1.0 / (2.0 * n + 1.0)));
  }
  const bool closed_form = complete && worst <= 1e-12;

  double ratio_at_10 = 0.0;
  std::size_t first_above = 0;
  bool ratio_ok = rows.size() > 11;
  for (std::size_t n = 10; n + 1 < rows.size(); ++n) {
    const double ratio = rows[n + 1].x[0] / rows[n].x[0];
    if (n == 10) ratio_at_10 = ratio;
    if (ratio > 0.95) {
      if (first_above == 0) first_above = n;
    } else {
      ratio_ok = false;
    }
  }
  Outcome o;
  o.pass = code == 0 && closed_form && ratio_ok;
  o.detail = "x_n = 1/(2n+1) for n = 1..50: " + std::string(closed_form ? "yes" : "no") +
             " (worst error " + fmt(worst) + "); x_11/x_10 = " + fmt(ratio_at_10) +
             (ratio_ok ? "" : " <= 0.95") + ", first n with ratio > 0.95 is " +
             std::to_string(first_above);
  return o;
}

// 2. Both strong-quasinonexpansivity inequalities over 10^4 seeded samples.
Outcome criterion_sqne() {
  constexpr std::size_t kSamples = 10000;
  const double gammas[] = {0.1, 0.5, 1.0, 1.5, 1.9};
  Rng rng(20240601);
  std::size_t failures = 0;
  double worst = 0.0;
  for (std::size_t i = 0; i < kSamples; ++i) {
    const std::size_t dim = 1 + rng.below(10);
    const PrimitiveSet s = random_set(rng, dim);
    const Point x = 5.0 * rng.gaussian_point(dim);
    const Point y = sample_in_set(rng, s);
    const double g = gammas[i % 5];
    const AuditReport r = sqne_audit(Cutter::exact(s), g, std::span(&x, 1), std::span(&y, 1));
    for (const InequalityResult& c : r.checks) worst = std::min(worst, c.worst_slack);
    if (!r.pass()) ++failures;
  }
  Outcome o;
  o.pass = failures == 0 && worst >= -1e-9;
  o.detail = std::to_string(kSamples) + " samples, " + std::to_string(failures) +
             " failures, worst scaled slack " + fmt(worst);
  return o;
}

// 3. Fejer monotonicity and residual convergence on 100 planted instances in R^10.
Outcome criterion_fejer() {
  Rng rng(20240602);
  StopRule stop;
  stop.max_iter = 100000;
  stop.residual_tol = 1e-8;
  TraceOptions keep_all;
  keep_all.cap = stop.max_iter + 1;
  std::size_t runs = 0;
  std::size_t bad_fejer = 0;
  std::size_t bad_residual = 0;
  double worst_violation = 0.0;
  std::size_t most_iterations = 0;
  for (int inst_i = 0; inst_i < 100; ++inst_i) {
    const PlantedInstance inst = planted_pair(rng, 10);
    const Cutter a = Cutter::exact(inst.set_a);
    const Cutter b = Cutter::exact(inst.set_b);
    const Point x0 = inst.planted + 5.0 * rng.gaussian_point(10);
    const std::vector<Point> refs{inst.planted};
    for (double g : {0.5, 1.0, 1.5}) {
      for (double m : {0.5, 1.0, 1.5}) {
        for (double l : {0.5, 1.0}) {
          const IterationTrace t = solve(a, b, OperatorParams(g, m, l), x0, stop, keep_all);
          const FejerReport f = fejer_check(t, refs);
          ++runs;
          worst_violation = std::max(worst_violation, f.max_violation);
          most_iterations = std::max(most_iterations, t.iterations);
          if (f.max_violation > 1e-9) ++bad_fejer;
          if (t.reason != TerminationReason::ResidualMet || !(t.final_residual() <= 1e-8)) {
            ++bad_residual;
          }
        }
      }
    }
  }
  Outcome o;
  o.pass = bad_fejer == 0 && bad_residual == 0;
  o.detail = std::to_string(runs) + " runs, max Fejer violation " + fmt(worst_violation) + ", " +
             std::to_string(bad_fejer) + " non-monotone, " + std::to_string(bad_residual) +
             " not ResidualMet, most iterations " + std::to_string(most_iterations);
  return o;
}

// 4. eg1: |P(0.9) - P(1.1)| = 0.5 > 0.2 while the SQNE audit passes.
Outcome criterion_eg1() {
  const Fixture f = fixture_eg1_nonexpansivity();
  const FixtureResult r = run_fixture(f);
  const double gap = std::abs(f.a.apply(Point{0.9})[0] - f.a.apply(Point{1.1})[0]);
  Outcome o;
  o.pass = r.pass() && gap == 0.5;
  o.detail = "|P(0.9) - P(1.1)| = " + fmt(gap) + ", |0.9 - 1.1| = " + fmt(std::abs(0.9 - 1.1)) +
             ", " + std::to_string(r.checks.size()) + " fixture checks" + failed_checks(r);
  return o;
}

// 5. Spurious fixed points of the (0, 0, 1/2) operator for |x| and max{|x|, |y|}.
Outcome criterion_fixed_points() {
  const FixtureResult abs = run_fixture(fixture_fixedpoints_abs());
  const FixtureResult maxabs = run_fixture(fixture_fixedpoints_maxabs());
  bool any_residual_met = false;
  for (const FixtureResult* r : {&abs, &maxabs}) {
    for (const FixtureRun& run : r->runs) {
      any_residual_met |= run.trace.reason == TerminationReason::ResidualMet;
    }
  }
  const Fixture mf = fixture_fixedpoints_maxabs();
  const Point image = mf.a.apply(Point{2.0, 1.0});
  const bool image_outside = !(mf.a.fixes(image) && mf.b.fixes(image));
  Outcome o;
  o.pass = abs.pass() && maxabs.pass() && !any_residual_met && image == (Point{0.0, 1.0}) &&
           image_outside;
  o.detail = std::to_string(abs.checks.size() + maxabs.checks.size()) +
             " fixture checks, P(2,1) = " + image.to_string() +
             (image_outside ? " outside" : " inside") + " A cap B" + failed_checks(abs) +
             failed_checks(maxabs);
  return o;
}

// 6. Truncated phis with K = 10: step 1/n at e_n against distance 1.
Outcome criterion_phis() {
  const FixtureResult r = run_fixture(fixture_phis_truncated(10));
  const Fixture f = fixture_phis_truncated(10);
  double worst = 0.0;
  for (std::size_t n = 1; n <= 10; ++n) {
    const Point e = Point::basis(10, n - 1);
    const double step = distance(e, f.a.apply(e));
    worst = std::max({worst, std::abs(step - 1.0 / static_cast<double>(n)),
                      std::abs(norm(e) - 1.0)});
  }
  Outcome o;
  o.pass = r.pass() && worst <= 4.0 * std::numeric_limits<double>::epsilon();
  o.detail = "n = 1..10, worst |step - 1/n| " + fmt(worst) + failed_checks(r);
  return o;
}

// 7. Five unit balls in R^3 through the product space, two parameter cells,
//    both diagonal flavors.
Outcome criterion_product() {
  Rng rng(20240607);
  const Point planted = rng.gaussian_point(3);
  std::vector<Cutter> balls;
  std::vector<PrimitiveSet> sets;
  for (int i = 0; i < 5; ++i) {
    const Point center = planted + rng.uniform(0.9, 0.999) * rng.unit_vector(3);
    sets.push_back(make_ball(center, 1.0));
    balls.push_back(Cutter::exact(sets.back()));
  }
  std::vector<Point> start;
  for (int i = 0; i < 5; ++i) start.push_back(planted + 6.0 * rng.gaussian_point(3));
  const Point x0 = stack_blocks(start);

  std::size_t converged = 0;
  double worst_infeasibility = 0.0;
  double worst_spread = 0.0;
  std::string reasons;
  for (DiagonalFlavor flavor : {DiagonalFlavor::Exact, DiagonalFlavor::Subgradient}) {
    const ProductProblem p = lift(balls, 3, flavor);
    for (double v : {1.0, 0.5}) {
      const IterationTrace t = solve(p.lifted_a, p.lifted_b, OperatorParams(v, v, v), x0);
      const Point m = block_mean(t.final_point(), 3);
      for (std::size_t i = 0; i < 5; ++i) {
        worst_spread = std::max(worst_spread, distance(block(t.final_point(), 3, i), m));
        worst_infeasibility = std::max(worst_infeasibility, distance_to(sets[i], m));
      }
      if (t.reason == TerminationReason::ResidualMet) ++converged;
      reasons += (reasons.empty() ? "" : ", ") + std::string(to_string(t.reason)) + " in " +
                 std::to_string(t.iterations);
    }
  }
  Outcome o;
  o.pass = converged == 4 && worst_infeasibility <= 1e-6 && worst_spread <= 1e-6;
  o.detail = "runs: " + reasons + "; worst distance to a ball " + fmt(worst_infeasibility) +
             ", worst block spread " + fmt(worst_spread);
  return o;
}

// 8. Figure comparison: two trace files, both ResidualMet, CSV round-trips.
Outcome criterion_figure() {
  std::ostringstream log;
  cli::CommonOptions opts;
  opts.out = "acceptance_figure.csv";
  const int code = cli::cmd_run_fixture("figure_comparison", opts, log, log);
  const FixtureResult r = run_fixture(fixture_figure_comparison());
  bool files = true;
  bool round_trip = true;
  std::string iterations;
  for (std::size_t k = 0; k < r.runs.size(); ++k) {
    const std::string path = "acceptance_figure_" + std::to_string(k + 1) + ".csv";
    if (!std::filesystem::exists(path)) {
      files = false;
      continue;
    }
    std::ifstream in(path);
    const std::vector<TraceRow> rows = read_trace_csv(in);
    const IterationTrace& t = r.runs[k].trace;
    round_trip &= rows.size() == t.rows.size();
    for (std::size_t i = 0; round_trip && i < rows.size(); ++i) {
      round_trip &= rows[i].n == t.rows[i].n && rows[i].x == t.rows[i].x &&
                    rows[i].residual_a == t.rows[i].residual_a &&
                    rows[i].residual_b == t.rows[i].residual_b;
    }
    std::ostringstream again;
    IterationTrace reread;
    reread.rows = rows;
    write_trace_csv(again, reread);
    std::ifstream original(path);
    std::ostringstream bytes;
    bytes << original.rdbuf();
    round_trip &= again.str() == bytes.str();
    iterations += (iterations.empty() ? "" : " and ") + std::to_string(t.iterations);
  }
  Outcome o;
  o.pass = code == 0 && r.runs.size() == 2 && files && round_trip && r.pass();
  o.detail = "two traces (" + iterations + " steps), files written: " +
             (files ? "yes" : "no") + ", CSV round-trip: " + (round_trip ? "yes" : "no") +
             failed_checks(r);
  return o;
}

struct Criterion {
  int id;
  const char* title;
  double limit_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "sublinear iterates", 1.0, criterion_sublinear},
      {2, "strong quasinonexpansivity audit", 10.0, criterion_sqne},
      {3, "Fejer monotonicity and convergence", 60.0, criterion_fejer},
      {4, "loss of nonexpansivity", 1.0, criterion_eg1},
      {5, "spurious fixed points", 5.0, criterion_fixed_points},
      {6, "step length against distance", 1.0, criterion_phis},
      {7, "product space", 10.0, criterion_product},
      {8, "figure comparison traces", 5.0, criterion_figure},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds < c.limit_seconds;
    const bool pass = o.pass && in_time;
    if (!pass) ++failures;
    std::printf("criterion %d %s: %s (%.3f s, limit %.0f s%s) %s\n", c.id, c.title,
                pass ? "PASS" : "FAIL", seconds, c.limit_seconds, in_time ? "" : ", too slow",
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
