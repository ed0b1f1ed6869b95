#include "relaxcut/instances.hpp"

#include <variant>

namespace relaxcut {

PrimitiveSet random_set(Rng& rng, std::size_t dim, SetFamily family) {
  switch (family) {
    case SetFamily::Halfspace:
      return make_halfspace(rng.unit_vector(dim), rng.uniform(-2.0, 2.0));
    case SetFamily::Hyperplane:
      return make_hyperplane(rng.unit_vector(dim), rng.uniform(-2.0, 2.0));
    case SetFamily::Ball:
      return make_ball(rng.point_in_box(dim, -2.0, 2.0), rng.uniform(0.1, 3.0));
    case SetFamily::Box: {
      Point lo = rng.point_in_box(dim, -2.0, 1.0);
      Point hi = lo;
      for (std::size_t i = 0; i < dim; ++i) hi[i] = lo[i] + rng.uniform(0.0, 3.0);
      return make_box(std::move(lo), std::move(hi));
    }
  }
  return make_ball(Point::zeros(dim), 1.0);
}

PrimitiveSet random_set(Rng& rng, std::size_t dim) {
  return random_set(rng, dim, static_cast<SetFamily>(rng.below(4)));
}

Point sample_in_set(Rng& rng, const PrimitiveSet& set, double spread) {
  const std::size_t dim = ambient_dim(set);
  if (rng.uniform() < 0.5) {
    if (const auto* b = std::get_if<Ball>(&set)) {
      return b->center + (b->radius * rng.uniform()) * rng.unit_vector(dim);
    }
    if (const auto* b = std::get_if<Box>(&set)) {
      Point p = b->lower;
      for (std::size_t i = 0; i < dim; ++i) p[i] = rng.uniform(b->lower[i], b->upper[i]);
      return p;
    }
  }
  return project_exact(set, spread * rng.gaussian_point(dim));
}

PrimitiveSet random_set_containing(Rng& rng, const Point& planted) {
  const std::size_t dim = planted.dim();
  const double margin = rng.uniform(0.1, 1.0);
  switch (rng.below(3)) {
    case 0: {
      Point u = rng.unit_vector(dim);
      const double offset = dot(u, planted) + margin;
      return make_halfspace(std::move(u), offset);
    }
    case 1: {
      const double radius = rng.uniform(1.0, 3.0);
      const double shift = (radius - margin) * rng.uniform();
      return make_ball(planted + shift * rng.unit_vector(dim), radius);
    }
    default: {
      Point lo = planted;
      Point hi = planted;
      for (std::size_t i = 0; i < dim; ++i) {
        lo[i] -= margin + rng.uniform(0.0, 2.0);
        hi[i] += margin + rng.uniform(0.0, 2.0);
      }
      return make_box(std::move(lo), std::move(hi));
    }
  }
}

PlantedInstance planted_pair(Rng& rng, std::size_t dim, double spread) {
  Point planted = rng.point_in_box(dim, -1.0, 1.0);
  PrimitiveSet a = random_set_containing(rng, planted);
  PrimitiveSet b = random_set_containing(rng, planted);
  Point x0 = planted + spread * rng.gaussian_point(dim);
  return PlantedInstance{std::move(a), std::move(b), std::move(planted), std::move(x0),
                         std::nullopt};
}

PlantedInstance planted_identical_pair(Rng& rng, std::size_t dim, double spread) {
  Point planted = rng.point_in_box(dim, -1.0, 1.0);
  PrimitiveSet a = random_set_containing(rng, planted);
  Point x0 = planted + spread * rng.gaussian_point(dim);
  return PlantedInstance{a, a, std::move(planted), std::move(x0), 1.0};
}

}  // namespace relaxcut
