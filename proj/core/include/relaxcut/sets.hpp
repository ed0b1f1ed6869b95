#pragma once

#include <cstddef>
#include <string>
#include <variant>

#include "relaxcut/point.hpp"

namespace relaxcut {

/// { x : <normal, x> <= offset }
struct Halfspace {
  Point normal;
  double offset = 0.0;
};

/// { x : <normal, x> == offset }
struct Hyperplane {
  Point normal;
  double offset = 0.0;
};

struct Ball {
  Point center;
  double radius = 0.0;
};

struct Box {
  Point lower;
  Point upper;
};

/// The agreement subspace { (u_1, ..., u_N) : u_1 = ... = u_N } of (R^blockDim)^N,
/// stored as one flat vector with block i occupying [i*blockDim, (i+1)*blockDim).
struct AffineDiagonal {
  std::size_t block_dim = 1;
  std::size_t blocks = 1;
};

struct Singleton {
  Point point;
};

/// Closed convex sets with a closed-form Euclidean projection.
///
/// Build them through the make_* functions below; those reject degenerate
/// data (zero normals, inverted boxes, negative radii) so that every
/// PrimitiveSet in circulation is nonempty and well-formed.
using PrimitiveSet = std::variant<Halfspace, Hyperplane, Ball, Box, AffineDiagonal, Singleton>;

PrimitiveSet make_halfspace(Point normal, double offset);
PrimitiveSet make_hyperplane(Point normal, double offset);
PrimitiveSet make_ball(Point center, double radius);
PrimitiveSet make_box(Point lower, Point upper);
PrimitiveSet make_affine_diagonal(std::size_t block_dim, std::size_t blocks);
PrimitiveSet make_singleton(Point point);

std::size_t ambient_dim(const PrimitiveSet& set);
std::string describe(const PrimitiveSet& set);

/// Membership with an absolute slack of tol * max(1, ||x||).
bool contains(const PrimitiveSet& set, const Point& x, double tol = 1e-9);

/// Metric projection argmin_{s in S} ||s - x||. Returns x unchanged when x
/// already satisfies the set's defining inequalities exactly.
Point project_exact(const PrimitiveSet& set, const Point& x);

/// Euclidean distance from x to the set.
double distance_to(const PrimitiveSet& set, const Point& x);

}  // namespace relaxcut
