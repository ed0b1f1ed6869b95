#include "relaxcut/operators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "relaxcut/error.hpp"
#include "relaxcut/trace_io.hpp"

namespace relaxcut {

std::string_view to_string(ParamMode mode) {
  return mode == ParamMode::Strict ? "strict" : "permissive";
}

void validate_relaxation(double gamma, ParamMode mode, const char* which) {
  const bool lower_ok = mode == ParamMode::Strict ? gamma > 0.0 : gamma >= 0.0;
  if (!(lower_ok && gamma < 2.0)) {
    throw Error(ErrorCode::GammaOutOfRange,
                std::string(which) + " = " + format_double(gamma) + " is outside " +
                    (mode == ParamMode::Strict ? "(0, 2) (strict mode)" : "[0, 2) (permissive mode)"));
  }
}

OperatorParams::OperatorParams(double gamma, double mu, double lambda, ParamMode mode)
    : gamma_(gamma), mu_(mu), lambda_(lambda), mode_(mode) {
  validate_relaxation(gamma, mode, "gamma");
  validate_relaxation(mu, mode, "mu");
  if (!(lambda > 0.0 && lambda <= 1.0)) {
    throw Error(ErrorCode::ParamOutOfRange,
                "lambda = " + format_double(lambda) + " is outside (0, 1]");
  }
}

std::string_view to_string(MethodName name) {
  switch (name) {
    case MethodName::AlternatingProjections: return "alternating-projections";
    case MethodName::DouglasRachford: return "douglas-rachford";
    case MethodName::PeacemanRachford: return "peaceman-rachford";
    case MethodName::RRR: return "relaxed-reflect-reflect";
    case MethodName::Generic: return "generic";
  }
  return "generic";
}

MethodName classify_params(const OperatorParams& p) {
  if (p.gamma() == 1.0 && p.mu() == 1.0 && p.lambda() == 1.0) {
    return MethodName::AlternatingProjections;
  }
  if (p.gamma() == 0.0 && p.mu() == 0.0) {
    if (p.lambda() == 0.5) return MethodName::DouglasRachford;
    if (p.lambda() == 1.0) return MethodName::PeacemanRachford;
    return MethodName::RRR;
  }
  return MethodName::Generic;
}

Point relax_from_image(const Point& x, const Point& image, double gamma) {
  require_same_dim(x, image, "relax");
  if (gamma == 1.0) return image;
  const double w = 2.0 - gamma;
  Point r = x;
  for (std::size_t i = 0; i < x.dim(); ++i) r[i] = x[i] + w * (image[i] - x[i]);
  return r;
}

Point relax(const Cutter& cutter, double gamma, const Point& x) {
  validate_relaxation(gamma, ParamMode::Permissive, "gamma");
  return relax_from_image(x, cutter.apply(x), gamma);
}

StepRecord averaged_step(const Cutter& a, const Cutter& b, double gamma, double mu,
                         double lambda, const Point& x) {
  require_dim(x, a.dim(), "averaged_step (set A)");
  require_dim(x, b.dim(), "averaged_step (set B)");
  StepRecord r{.x = x,
               .proj_a = a.apply(x),
               .relaxed_a = {},
               .proj_b = {},
               .relaxed_ba = {},
               .next = {},
               .gamma = gamma,
               .mu = mu,
               .lambda = lambda};
  r.relaxed_a = relax_from_image(x, r.proj_a, gamma);
  r.proj_b = b.apply(r.relaxed_a);
  r.relaxed_ba = relax_from_image(r.relaxed_a, r.proj_b, mu);
  if (lambda == 1.0) {
    r.next = r.relaxed_ba;
  } else {
    r.next = x;
    for (std::size_t i = 0; i < x.dim(); ++i) {
      r.next[i] = lambda * r.relaxed_ba[i] + (1.0 - lambda) * x[i];
    }
  }
  return r;
}

StepRecord averaged_step(const Cutter& a, const Cutter& b, const OperatorParams& params,
                         const Point& x) {
  return averaged_step(a, b, params.gamma(), params.mu(), params.lambda(), x);
}

double theta(const StepRecord& r) {
  return r.mu * (r.mu - 2.0) * squared_distance(r.proj_b, r.relaxed_a) +
         r.gamma * (r.gamma - 2.0) * squared_distance(r.x, r.proj_a);
}

double residual_a(const StepRecord& r) { return distance(r.x, r.proj_a); }

double residual_b(const StepRecord& r) { return distance(r.x, r.proj_b); }

double borwein_li_tam_gamma(double eta) {
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw Error(ErrorCode::EtaNonpositive, "eta must be positive and finite");
  }
  return 2.0 * (eta + 1.0) / (2.0 * eta + 1.0);
}

double psi(double gamma) { return std::min(gamma, 2.0 - gamma); }

}  // namespace relaxcut
