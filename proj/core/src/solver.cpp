#include "relaxcut/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "relaxcut/error.hpp"

namespace relaxcut {
namespace {

struct StepParams {
  double gamma;
  double mu;
  double lambda;
};

class TraceRecorder {
 public:
  explicit TraceRecorder(const TraceOptions& opts) : opts_(opts) {}

  void offer(TraceRow row, bool final_row) {
    if (trace_.rows.size() < opts_.cap || final_row || row.n >= next_keep_) {
      if (trace_.rows.size() >= opts_.cap) {
        const double grown = std::ceil(static_cast<double>(row.n) * opts_.growth);
        next_keep_ = std::max(row.n + 1, static_cast<std::size_t>(grown));
      }
      trace_.rows.push_back(std::move(row));
    }
  }

  IterationTrace& trace() { return trace_; }

 private:
  TraceOptions opts_;
  IterationTrace trace_;
  std::size_t next_keep_ = 0;
};

template <class ParamsAt>
IterationTrace iterate(const Cutter& a, const Cutter& b, ParamsAt params_at, const Point& x0,
                       const StopRule& stop, const TraceOptions& opts) {
  stop.validate();
  require_dim(x0, a.dim(), "initial point (set A)");
  require_dim(x0, b.dim(), "initial point (set B)");
  if (!x0.all_finite()) throw Error(ErrorCode::NonFinite, "initial point");

  TraceRecorder rec(opts);
  Point x = x0;
  std::size_t still_steps = 0;

  for (std::size_t n = 0;; ++n) {
    const StepParams p = params_at(n);
    StepRecord step;
    try {
      step = averaged_step(a, b, p.gamma, p.mu, p.lambda, x);
    } catch (const Error& e) {
      constexpr double nan = std::numeric_limits<double>::quiet_NaN();
      rec.offer(TraceRow{.n = n,
                         .x = x,
                         .residual_a = nan,
                         .residual_b = nan,
                         .theta = nan,
                         .step_norm = nan,
                         .gamma = p.gamma,
                         .mu = p.mu,
                         .lambda = p.lambda},
                true);
      rec.trace().reason = TerminationReason::Error;
      rec.trace().error = e.what();
      rec.trace().iterations = n;
      return std::move(rec.trace());
    }

    TraceRow row{.n = n,
                 .x = x,
                 .residual_a = residual_a(step),
                 .residual_b = residual_b(step),
                 .theta = theta(step),
                 .step_norm = distance(step.next, x),
                 .gamma = p.gamma,
                 .mu = p.mu,
                 .lambda = p.lambda};
    rec.trace().theta_sum += row.theta;

    auto finish = [&](TerminationReason reason, std::string error = {}) {
      rec.offer(std::move(row), true);
      rec.trace().reason = reason;
      rec.trace().error = std::move(error);
      rec.trace().iterations = n;
      return std::move(rec.trace());
    };

    if (!step.next.all_finite()) {
      return finish(TerminationReason::Error,
                    "iterate became non-finite at step " + std::to_string(n));
    }
    if (std::max(row.residual_a, row.residual_b) <= stop.residual_tol) {
      return finish(TerminationReason::ResidualMet);
    }
    const bool still = stop.stagnation_tol > 0.0 ? row.step_norm <= stop.stagnation_tol
                                                 : row.step_norm == 0.0;
    still_steps = still ? still_steps + 1 : 0;
    if (still_steps >= 3) return finish(TerminationReason::Stagnated);
    if (n >= stop.max_iter) return finish(TerminationReason::MaxIter);

    rec.offer(std::move(row), false);
    x = std::move(step.next);
  }
}

}  // namespace

void StopRule::validate() const {
  if (max_iter == 0) throw Error(ErrorCode::InvalidArgument, "max_iter must be positive");
  if (!(residual_tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "residual_tol must be > 0");
  if (!(stagnation_tol >= 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "stagnation_tol must be >= 0");
  }
}

std::string_view to_string(TerminationReason reason) {
  switch (reason) {
    case TerminationReason::ResidualMet: return "ResidualMet";
    case TerminationReason::MaxIter: return "MaxIter";
    case TerminationReason::Stagnated: return "Stagnated";
    case TerminationReason::Error: return "Error";
  }
  return "Error";
}

double IterationTrace::final_residual() const {
  return std::max(rows.back().residual_a, rows.back().residual_b);
}

IterationTrace solve(const Cutter& a, const Cutter& b, const OperatorParams& params,
                     const Point& x0, const StopRule& stop, const TraceOptions& opts) {
  const StepParams p{params.gamma(), params.mu(), params.lambda()};
  return iterate(a, b, [p](std::size_t) { return p; }, x0, stop, opts);
}

IterationTrace varying_params_solve(const Cutter& a, const Cutter& b, const ParamSequence& gammas,
                                    const ParamSequence& mus, double lambda, const Point& x0,
                                    const StopRule& stop, double floor, const TraceOptions& opts) {
  if (!gammas || !mus) throw Error(ErrorCode::InvalidArgument, "parameter sequence missing");
  if (!(lambda > 0.0 && lambda <= 1.0)) {
    throw Error(ErrorCode::ParamOutOfRange, "lambda must lie in (0, 1]");
  }
  if (!(floor > 0.0)) throw Error(ErrorCode::InvalidArgument, "floor must be positive");
  double running_min = std::numeric_limits<double>::infinity();
  auto params_at = [&](std::size_t n) {
    const double g = gammas(n);
    const double m = mus(n);
    validate_relaxation(g, ParamMode::Strict, "gamma_n");
    validate_relaxation(m, ParamMode::Strict, "mu_n");
    running_min = std::min({running_min, g * (2.0 - g), m * (2.0 - m)});
    if (running_min < floor) {
      throw Error(ErrorCode::ParamFloorViolated,
                  "at step " + std::to_string(n) + " min gamma_n(2-gamma_n), mu_n(2-mu_n) = " +
                      std::to_string(running_min) + " fell below the floor " +
                      std::to_string(floor));
    }
    return StepParams{g, m, lambda};
  };
  return iterate(a, b, params_at, x0, stop, opts);
}

}  // namespace relaxcut
