#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "relaxcut/convex_function.hpp"
#include "relaxcut/point.hpp"
#include "relaxcut/sets.hpp"

namespace relaxcut {

struct ExactCutter {
  PrimitiveSet set;
};

struct SubgradientCutter {
  ConvexFunction f;
};

/// A table-driven cutter. `in_fixed_set` is the declared membership test for
/// Fix P; `witnesses` lists representative fixed points that samplers cannot
/// be expected to hit by chance (isolated points, for instance).
struct CustomCutter {
  std::string name;
  std::size_t dim = 1;
  std::function<Point(const Point&)> map;
  std::function<bool(const Point&)> in_fixed_set;
  std::vector<Point> witnesses;
};

enum class CutterKind { Exact, Subgradient, Custom };

/// A map x -> P(x) meant to satisfy <x - Px, z - Px> <= 0 for every z in
/// Fix P. Exact projectors and subgradient projectors satisfy this by
/// construction; custom maps are taken on trust and can be audited.
///
/// Cutters are immutable values. apply() is safe to call concurrently.
class Cutter {
 public:
  using Variant = std::variant<ExactCutter, SubgradientCutter, CustomCutter>;

  Cutter(ExactCutter c) : impl_(std::move(c)) {}
  Cutter(SubgradientCutter c) : impl_(std::move(c)) {}
  Cutter(CustomCutter c);

  static Cutter exact(PrimitiveSet set) { return Cutter(ExactCutter{std::move(set)}); }
  static Cutter subgradient(ConvexFunction f) { return Cutter(SubgradientCutter{std::move(f)}); }

  CutterKind kind() const noexcept { return static_cast<CutterKind>(impl_.index()); }
  std::size_t dim() const;
  std::string describe() const;

  Point apply(const Point& x) const;
  /// Membership in the fixed set, with the same slack convention as contains().
  bool fixes(const Point& x, double tol = 1e-9) const;

  const Variant& variant() const noexcept { return impl_; }

 private:
  Variant impl_;
};

}  // namespace relaxcut
