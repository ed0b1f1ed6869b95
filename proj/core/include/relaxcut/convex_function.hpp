#pragma once

#include <cstddef>
#include <functional>
#include <string>

#include "relaxcut/point.hpp"

namespace relaxcut {

/// A real-valued function on R^dim together with one fixed selection of its
/// subdifferential. The selection is deterministic, so subgradient cutters
/// built from it produce reproducible traces.
class ConvexFunction {
 public:
  using ValueFn = std::function<double(const Point&)>;
  using SubgradientFn = std::function<Point(const Point&)>;

  ConvexFunction(std::string name, std::size_t dim, ValueFn value, SubgradientFn subgradient,
                 bool convex = true);

  const std::string& name() const noexcept { return name_; }
  std::size_t dim() const noexcept { return dim_; }
  /// False only for catalog entries that are knowingly nonconvex demos.
  bool convex() const noexcept { return convex_; }

  double value(const Point& x) const;
  Point subgradient(const Point& x) const;

 private:
  std::string name_;
  std::size_t dim_;
  ValueFn value_;
  SubgradientFn subgradient_;
  bool convex_;
};

/// The subgradient projector of f:
///   x - f(x)/||s(x)||^2 s(x)   if f(x) > 0,
///   x                          otherwise.
/// Throws ZeroSubgradient when f(x) > 0 and s(x) = 0, which certifies that
/// the sublevel set {f <= 0} is empty.
Point subgradient_project(const ConvexFunction& f, const Point& x);

}  // namespace relaxcut
