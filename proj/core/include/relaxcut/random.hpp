#pragma once

#include <cstdint>
#include <random>

#include "relaxcut/point.hpp"

namespace relaxcut {

/// Seeded random source used by instance generation and audit sampling.
///
/// The engine is MT19937-64 (std::mt19937_64, whose output sequence is fixed
/// by the C++ standard). Standard distributions are implementation-defined,
/// so uniform variates are formed from the top 53 bits of each draw and
/// normals from Box-Muller; the same seed gives the same samples on every
/// conforming toolchain.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1).
  double uniform();
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);
  double normal();

  Point point_in_box(std::size_t dim, double lo, double hi);
  Point gaussian_point(std::size_t dim);
  Point unit_vector(std::size_t dim);

 private:
  std::mt19937_64 engine_;
};

}  // namespace relaxcut
