#include "relaxcut/convex_function.hpp"

#include <cmath>

#include "relaxcut/error.hpp"

namespace relaxcut {

ConvexFunction::ConvexFunction(std::string name, std::size_t dim, ValueFn value,
                               SubgradientFn subgradient, bool convex)
    : name_(std::move(name)),
      dim_(dim),
      value_(std::move(value)),
      subgradient_(std::move(subgradient)),
      convex_(convex) {
  if (dim_ == 0) throw Error(ErrorCode::InvalidArgument, "function dimension must be positive");
  if (!value_ || !subgradient_) {
    throw Error(ErrorCode::InvalidArgument, "function '" + name_ + "' is missing an oracle");
  }
}

double ConvexFunction::value(const Point& x) const {
  require_dim(x, dim_, name_.c_str());
  return value_(x);
}

Point ConvexFunction::subgradient(const Point& x) const {
  require_dim(x, dim_, name_.c_str());
  Point s = subgradient_(x);
  require_dim(s, dim_, "subgradient selection");
  return s;
}

Point subgradient_project(const ConvexFunction& f, const Point& x) {
  const double fx = f.value(x);
  if (!(fx > 0.0)) {
    if (std::isnan(fx)) throw Error(ErrorCode::NonFinite, f.name() + " evaluated to NaN");
    return x;
  }
  const Point s = f.subgradient(x);
  const double ss = squared_norm(s);
  if (ss == 0.0) {
    throw Error(ErrorCode::ZeroSubgradient,
                f.name() + " is positive at " + x.to_string() +
                    " with a zero subgradient; its sublevel set is empty");
  }
  const double t = fx / ss;
  Point p = x;
  for (std::size_t i = 0; i < x.dim(); ++i) p[i] = x[i] - t * s[i];
  return p;
}

}  // namespace relaxcut
