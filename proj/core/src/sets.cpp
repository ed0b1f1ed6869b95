#include "relaxcut/sets.hpp"

#include <algorithm>
#include <cmath>

#include "relaxcut/error.hpp"

namespace relaxcut {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_nonzero_normal(const Point& normal, const char* what) {
  if (!(squared_norm(normal) > 0.0)) {
    throw Error(ErrorCode::DegenerateSet, std::string(what) + " normal must have positive norm");
  }
}

// x - ((<a,x> - b) / ||a||^2) a
Point shift_onto_plane(const Point& normal, double offset, const Point& x) {
  const double t = (dot(normal, x) - offset) / squared_norm(normal);
  Point p = x;
  for (std::size_t i = 0; i < x.dim(); ++i) p[i] = x[i] - t * normal[i];
  return p;
}

Point diagonal_mean(const AffineDiagonal& d, const Point& x) {
  Point p = x;
  const double inv = 1.0 / static_cast<double>(d.blocks);
  for (std::size_t j = 0; j < d.block_dim; ++j) {
    double s = 0.0;
    // fixed summation order: block 0, 1, ..., N-1
    for (std::size_t b = 0; b < d.blocks; ++b) s += x[b * d.block_dim + j];
    const double mean = s * inv;
    for (std::size_t b = 0; b < d.blocks; ++b) p[b * d.block_dim + j] = mean;
  }
  return p;
}

}  // namespace

PrimitiveSet make_halfspace(Point normal, double offset) {
  require_nonzero_normal(normal, "halfspace");
  if (!std::isfinite(offset)) throw Error(ErrorCode::NonFinite, "halfspace offset");
  return Halfspace{std::move(normal), offset};
}

PrimitiveSet make_hyperplane(Point normal, double offset) {
  require_nonzero_normal(normal, "hyperplane");
  if (!std::isfinite(offset)) throw Error(ErrorCode::NonFinite, "hyperplane offset");
  return Hyperplane{std::move(normal), offset};
}

PrimitiveSet make_ball(Point center, double radius) {
  if (!(radius >= 0.0) || !std::isfinite(radius)) {
    throw Error(ErrorCode::DegenerateSet, "ball radius must be finite and >= 0");
  }
  return Ball{std::move(center), radius};
}

PrimitiveSet make_box(Point lower, Point upper) {
  require_same_dim(lower, upper, "box bounds");
  for (std::size_t i = 0; i < lower.dim(); ++i) {
    if (lower[i] > upper[i]) {
      throw Error(ErrorCode::DegenerateSet,
                  "box lower bound exceeds upper bound at coordinate " + std::to_string(i));
    }
  }
  return Box{std::move(lower), std::move(upper)};
}

PrimitiveSet make_affine_diagonal(std::size_t block_dim, std::size_t blocks) {
  if (block_dim == 0 || blocks == 0) {
    throw Error(ErrorCode::DegenerateSet, "diagonal needs positive block size and count");
  }
  return AffineDiagonal{block_dim, blocks};
}

PrimitiveSet make_singleton(Point point) { return Singleton{std::move(point)}; }

std::size_t ambient_dim(const PrimitiveSet& set) {
  return std::visit(Overloaded{
                        [](const Halfspace& h) { return h.normal.dim(); },
                        [](const Hyperplane& h) { return h.normal.dim(); },
                        [](const Ball& b) { return b.center.dim(); },
                        [](const Box& b) { return b.lower.dim(); },
                        [](const AffineDiagonal& d) { return d.block_dim * d.blocks; },
                        [](const Singleton& s) { return s.point.dim(); },
                    },
                    set);
}

std::string describe(const PrimitiveSet& set) {
  return std::visit(
      Overloaded{
          [](const Halfspace& h) {
            return "halfspace{normal=" + h.normal.to_string() + ", offset=" +
                   std::to_string(h.offset) + "}";
          },
          [](const Hyperplane& h) {
            return "hyperplane{normal=" + h.normal.to_string() + ", offset=" +
                   std::to_string(h.offset) + "}";
          },
          [](const Ball& b) {
            return "ball{center=" + b.center.to_string() + ", radius=" + std::to_string(b.radius) +
                   "}";
          },
          [](const Box& b) {
            return "box{lower=" + b.lower.to_string() + ", upper=" + b.upper.to_string() + "}";
          },
          [](const AffineDiagonal& d) {
            return "diagonal{block_dim=" + std::to_string(d.block_dim) +
                   ", blocks=" + std::to_string(d.blocks) + "}";
          },
          [](const Singleton& s) { return "singleton{" + s.point.to_string() + "}"; },
      },
      set);
}

bool contains(const PrimitiveSet& set, const Point& x, double tol) {
  require_dim(x, ambient_dim(set), "contains");
  const double slack = tol * std::max(1.0, norm(x));
  return std::visit(
      Overloaded{
          [&](const Halfspace& h) { return dot(h.normal, x) - h.offset <= slack * norm(h.normal); },
          [&](const Hyperplane& h) {
            return std::abs(dot(h.normal, x) - h.offset) <= slack * norm(h.normal);
          },
          [&](const Ball& b) { return distance(x, b.center) <= b.radius + slack; },
          [&](const Box& b) {
            for (std::size_t i = 0; i < x.dim(); ++i) {
              if (x[i] < b.lower[i] - slack || x[i] > b.upper[i] + slack) return false;
            }
            return true;
          },
          [&](const AffineDiagonal& d) { return distance(x, diagonal_mean(d, x)) <= slack; },
          [&](const Singleton& s) { return distance(x, s.point) <= slack; },
      },
      set);
}

Point project_exact(const PrimitiveSet& set, const Point& x) {
  require_dim(x, ambient_dim(set), "project_exact");
  return std::visit(
      Overloaded{
          [&](const Halfspace& h) {
            if (dot(h.normal, x) <= h.offset) return x;
            return shift_onto_plane(h.normal, h.offset, x);
          },
          [&](const Hyperplane& h) {
            if (dot(h.normal, x) == h.offset) return x;
            return shift_onto_plane(h.normal, h.offset, x);
          },
          [&](const Ball& b) {
            const double d = distance(x, b.center);
            if (d <= b.radius) return x;
            Point p = x;
            for (std::size_t i = 0; i < x.dim(); ++i) {
              p[i] = b.center[i] + b.radius * (x[i] - b.center[i]) / d;
            }
            return p;
          },
          [&](const Box& b) {
            Point p = x;
            for (std::size_t i = 0; i < x.dim(); ++i) p[i] = std::clamp(x[i], b.lower[i], b.upper[i]);
            return p;
          },
          [&](const AffineDiagonal& d) { return diagonal_mean(d, x); },
          [&](const Singleton& s) { return s.point; },
      },
      set);
}

double distance_to(const PrimitiveSet& set, const Point& x) {
  return distance(x, project_exact(set, x));
}

}  // namespace relaxcut
