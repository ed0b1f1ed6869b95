#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "relaxcut/cutter.hpp"
#include "relaxcut/point.hpp"
#include "relaxcut/random.hpp"
#include "relaxcut/sets.hpp"

namespace relaxcut {

enum class SetFamily { Halfspace, Hyperplane, Ball, Box };

/// A random primitive set of the given family in R^dim.
PrimitiveSet random_set(Rng& rng, std::size_t dim, SetFamily family);

/// A random set from any family.
PrimitiveSet random_set(Rng& rng, std::size_t dim);

/// A point of `set`: either a projected Gaussian point or, for balls and
/// boxes, an interior point, chosen at random.
Point sample_in_set(Rng& rng, const PrimitiveSet& set, double spread = 3.0);

/// A random set from {halfspace, ball, box} that contains `planted` with
/// margin at least 0.1, so planted + 0.1 * unit ball lies inside it.
PrimitiveSet random_set_containing(Rng& rng, const Point& planted);

/// Two-set feasibility instance with a known common point.
struct PlantedInstance {
  PrimitiveSet set_a;
  PrimitiveSet set_b;
  Point planted;
  Point x0;
  /// Linear-regularity constant when one is provable for the instance
  /// (identical sets give 1); empty otherwise.
  std::optional<double> kappa;

  Cutter cutter_a() const { return Cutter::exact(set_a); }
  Cutter cutter_b() const { return Cutter::exact(set_b); }
};

/// Sets from {halfspace, ball, box} through a common planted point in
/// [-1, 1]^dim; x0 is the planted point plus a Gaussian offset of scale `spread`.
PlantedInstance planted_pair(Rng& rng, std::size_t dim, double spread = 5.0);

/// A = B, for which {A, B} is 1-linearly regular everywhere.
PlantedInstance planted_identical_pair(Rng& rng, std::size_t dim, double spread = 5.0);

}  // namespace relaxcut
