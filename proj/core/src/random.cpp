#include "relaxcut/random.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace relaxcut {

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::below(std::uint64_t n) {
  // rejection keeps the result unbiased
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t v;
  do {
    v = engine_();
  } while (v >= limit);
  return v % n;
}

double Rng::normal() {
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Point Rng::point_in_box(std::size_t dim, double lo, double hi) {
  Point p = Point::zeros(dim);
  for (std::size_t i = 0; i < dim; ++i) p[i] = uniform(lo, hi);
  return p;
}

Point Rng::gaussian_point(std::size_t dim) {
  Point p = Point::zeros(dim);
  for (std::size_t i = 0; i < dim; ++i) p[i] = normal();
  return p;
}

Point Rng::unit_vector(std::size_t dim) {
  for (;;) {
    Point p = gaussian_point(dim);
    const double n = norm(p);
    if (n > 1e-12) return (1.0 / n) * p;
  }
}

}  // namespace relaxcut
