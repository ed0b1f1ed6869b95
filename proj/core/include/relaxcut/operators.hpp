#pragma once

#include <string_view>

#include "relaxcut/cutter.hpp"
#include "relaxcut/point.hpp"

namespace relaxcut {

/// Strict: gamma, mu in (0, 2), the range with convergence guarantees.
/// Permissive: gamma, mu in [0, 2), admitting the reflection cases that can
/// stall at infeasible fixed points. Permissive mode must be asked for.
enum class ParamMode { Strict, Permissive };

std::string_view to_string(ParamMode mode);

/// Relaxation parameters (gamma, mu) and averaging weight lambda of
///   T = lambda * (R_B^mu o R_A^gamma) + (1 - lambda) Id.
class OperatorParams {
 public:
  OperatorParams(double gamma, double mu, double lambda, ParamMode mode = ParamMode::Strict);

  double gamma() const noexcept { return gamma_; }
  double mu() const noexcept { return mu_; }
  double lambda() const noexcept { return lambda_; }
  ParamMode mode() const noexcept { return mode_; }

  friend bool operator==(const OperatorParams&, const OperatorParams&) = default;

 private:
  double gamma_;
  double mu_;
  double lambda_;
  ParamMode mode_;
};

/// Throws GammaOutOfRange unless gamma lies in the relaxation range of `mode`.
void validate_relaxation(double gamma, ParamMode mode, const char* which);

enum class MethodName { AlternatingProjections, DouglasRachford, PeacemanRachford, RRR, Generic };

std::string_view to_string(MethodName name);

/// Labels the parameter cells that coincide with classical methods.
MethodName classify_params(const OperatorParams& params);

/// x + (2 - gamma)(Px - x). gamma = 1 gives Px, gamma = 0 the reflection 2Px - x.
/// Throws GammaOutOfRange for gamma outside [0, 2).
Point relax(const Cutter& cutter, double gamma, const Point& x);

/// The same formula applied to an already evaluated cutter image.
Point relax_from_image(const Point& x, const Point& image, double gamma);

/// One application of T together with every intermediate point.
struct StepRecord {
  Point x;
  Point proj_a;       // P_A x
  Point relaxed_a;    // R_A^gamma x
  Point proj_b;       // P_B R_A^gamma x
  Point relaxed_ba;   // R_B^mu R_A^gamma x
  Point next;         // T x
  double gamma = 1.0;
  double mu = 1.0;
  double lambda = 1.0;
};

StepRecord averaged_step(const Cutter& a, const Cutter& b, const OperatorParams& params,
                         const Point& x);

/// Step with explicit (gamma, mu, lambda), already validated by the caller.
StepRecord averaged_step(const Cutter& a, const Cutter& b, double gamma, double mu,
                         double lambda, const Point& x);

/// theta(x) = mu(mu-2)||P_B R_A x - R_A x||^2 + gamma(gamma-2)||x - P_A x||^2.
/// Nonpositive whenever gamma, mu lie in [0, 2].
double theta(const StepRecord& record);

/// ||x - P_A x||
double residual_a(const StepRecord& record);
/// ||x - P_B R_A^gamma x||
double residual_b(const StepRecord& record);

/// gamma = 2(eta + 1)/(2 eta + 1), for which R^gamma = Id/(2eta+1) + (2eta/(2eta+1)) P.
double borwein_li_tam_gamma(double eta);

/// min{gamma, 2 - gamma}; satisfies psi(psi - 2) = gamma(gamma - 2).
double psi(double gamma);

}  // namespace relaxcut
