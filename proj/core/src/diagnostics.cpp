#include "relaxcut/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "relaxcut/error.hpp"

namespace relaxcut {
namespace {

struct PairOutcome {
  double slack;  // (rhs - lhs) / scale
  std::size_t index;
};

// Evaluates `eval(i)` for i in [0, count) on a small pool of threads and
// returns the minimum slack, ties resolved to the smallest index, so the
// result does not depend on scheduling.
template <class Eval>
PairOutcome min_over_pairs(std::size_t count, Eval eval) {
  PairOutcome best{std::numeric_limits<double>::infinity(), 0};
  if (count == 0) return best;
  constexpr std::size_t kMinPerThread = 4096;
  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = std::min(hw, (count + kMinPerThread - 1) / kMinPerThread);

  auto scan = [&](std::size_t lo, std::size_t hi) {
    PairOutcome local{std::numeric_limits<double>::infinity(), lo};
    for (std::size_t i = lo; i < hi; ++i) {
      const double s = eval(i);
      if (s < local.slack || std::isnan(s)) {
        local = {std::isnan(s) ? -std::numeric_limits<double>::infinity() : s, i};
      }
    }
    return local;
  };

  if (workers <= 1) return scan(0, count);

  std::vector<PairOutcome> partial(workers);
  {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (count + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t lo = w * chunk;
      const std::size_t hi = std::min(count, lo + chunk);
      pool.emplace_back([&, w, lo, hi] { partial[w] = scan(lo, hi); });
    }
  }
  for (const PairOutcome& p : partial) {
    if (p.slack < best.slack || (p.slack == best.slack && p.index < best.index)) best = p;
  }
  return best;
}

double square_scale(const Point& x, const Point& y) {
  return std::max({1.0, squared_norm(x), squared_norm(y)});
}

double plain_scale(const Point& x, const Point& y) { return std::max({1.0, norm(x), norm(y)}); }

std::vector<Point> images(const Cutter& c, std::span<const Point> xs) {
  std::vector<Point> out;
  out.reserve(xs.size());
  for (const Point& x : xs) out.push_back(c.apply(x));
  return out;
}

template <class Eval>
InequalityResult run_pairs(std::string name, std::span<const Point> xs,
                           std::span<const Point> ys, Eval eval) {
  const std::size_t count = xs.size() * ys.size();
  const PairOutcome worst =
      min_over_pairs(count, [&](std::size_t i) { return eval(i / ys.size(), i % ys.size()); });
  InequalityResult r{.name = std::move(name), .pairs = count};
  if (count == 0) return r;
  r.worst_slack = worst.slack + 0.0;  // no "-0" in reports
  r.pass = worst.slack >= -kInequalitySlack;
  r.worst_x = xs[worst.index / ys.size()];
  r.worst_y = ys[worst.index % ys.size()];
  return r;
}

}  // namespace

bool AuditReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
}

const InequalityResult& AuditReport::check(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return c;
  }
  throw Error(ErrorCode::UnknownName, "no check named '" + name + "' in report");
}

AuditReport sqne_audit(const Cutter& cutter, double gamma, std::span<const Point> xs,
                       std::span<const Point> ys) {
  validate_relaxation(gamma, ParamMode::Strict, "gamma");
  const std::vector<Point> px = images(cutter, xs);
  std::vector<Point> rx;
  rx.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) rx.push_back(relax_from_image(xs[i], px[i], gamma));

  AuditReport report;
  report.checks.push_back(run_pairs("sqne-i", xs, ys, [&](std::size_t i, std::size_t j) {
    const double lhs = squared_distance(rx[i], ys[j]);
    const double rhs =
        gamma * (gamma - 2.0) * squared_distance(xs[i], px[i]) + squared_distance(xs[i], ys[j]);
    return (rhs - lhs) / square_scale(xs[i], ys[j]);
  }));
  const double rho = gamma / (2.0 - gamma);
  report.checks.push_back(run_pairs("sqne-ii", xs, ys, [&](std::size_t i, std::size_t j) {
    const double lhs = squared_distance(rx[i], ys[j]);
    const double rhs = squared_distance(xs[i], ys[j]) - rho * squared_distance(rx[i], xs[i]);
    return (rhs - lhs) / square_scale(xs[i], ys[j]);
  }));
  return report;
}

InequalityResult cutter_audit(const Cutter& cutter, std::span<const Point> xs,
                              std::span<const Point> zs) {
  const std::vector<Point> px = images(cutter, xs);
  return run_pairs("cutter", xs, zs, [&](std::size_t i, std::size_t j) {
    const Point u = xs[i] - px[i];
    const Point v = zs[j] - px[i];
    return -dot(u, v) / std::max(1.0, norm(u) * norm(v));
  });
}

InequalityResult firmly_nonexpansive_audit(const Cutter& cutter, std::span<const Point> xs,
                                           std::span<const Point> ys) {
  const std::vector<Point> px = images(cutter, xs);
  const std::vector<Point> py = images(cutter, ys);
  return run_pairs("firmly-nonexpansive", xs, ys, [&](std::size_t i, std::size_t j) {
    const double lhs = squared_distance(px[i], py[j]) +
                       squared_distance(xs[i] - px[i], ys[j] - py[j]);
    return (squared_distance(xs[i], ys[j]) - lhs) / square_scale(xs[i], ys[j]);
  });
}

InequalityResult nonexpansive_audit(const Cutter& cutter, std::span<const Point> xs,
                                    std::span<const Point> ys) {
  const std::vector<Point> px = images(cutter, xs);
  const std::vector<Point> py = images(cutter, ys);
  return run_pairs("nonexpansive", xs, ys, [&](std::size_t i, std::size_t j) {
    return (distance(xs[i], ys[j]) - distance(px[i], py[j])) / plain_scale(xs[i], ys[j]);
  });
}

AuditReport averaged_operator_audit(const Cutter& a, const Cutter& b, double gamma, double mu,
                                    double lambda, std::span<const Point> xs,
                                    std::span<const Point> refs) {
  validate_relaxation(gamma, ParamMode::Permissive, "gamma");
  validate_relaxation(mu, ParamMode::Permissive, "mu");
  if (!(lambda > 0.0 && lambda <= 1.0)) {
    throw Error(ErrorCode::ParamOutOfRange, "lambda must lie in (0, 1]");
  }
  std::vector<StepRecord> steps;
  steps.reserve(xs.size());
  for (const Point& x : xs) steps.push_back(averaged_step(a, b, gamma, mu, lambda, x));

  AuditReport report;
  report.checks.push_back(
      run_pairs("quasinonexpansive", xs, refs, [&](std::size_t i, std::size_t j) {
        return (distance(xs[i], refs[j]) - distance(steps[i].next, refs[j])) /
               plain_scale(xs[i], refs[j]);
      }));
  report.checks.push_back(run_pairs("theta-bound", xs, refs, [&](std::size_t i, std::size_t j) {
    const double lhs = squared_distance(steps[i].next, refs[j]);
    const double rhs = lambda * theta(steps[i]) + squared_distance(xs[i], refs[j]);
    return (rhs - lhs) / square_scale(xs[i], refs[j]);
  }));
  return report;
}

FejerReport fejer_check(const IterationTrace& trace, std::span<const Point> refs) {
  if (refs.empty()) {
    throw Error(ErrorCode::EmptyReferenceSet, "fejer_check needs at least one reference point");
  }
  FejerReport report;
  report.reference_points.assign(refs.begin(), refs.end());

  double scale = 1.0;
  for (const Point& r : refs) scale = std::max(scale, norm(r));
  for (const TraceRow& row : trace.rows) scale = std::max(scale, norm(row.x));
  report.tolerance = kInequalitySlack * scale;

  report.max_violation = trace.rows.size() < 2 ? 0.0 : -std::numeric_limits<double>::infinity();
  for (std::size_t n = 0; n + 1 < trace.rows.size(); ++n) {
    for (const Point& ref : refs) {
      const double v = distance(trace.rows[n + 1].x, ref) - distance(trace.rows[n].x, ref);
      if (v > report.max_violation) {
        report.max_violation = v;
        report.worst_step = trace.rows[n].n;
      }
    }
  }
  report.monotone = report.max_violation <= report.tolerance;
  return report;
}

}  // namespace relaxcut
