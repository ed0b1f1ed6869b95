#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "relaxcut/convex_function.hpp"
#include "relaxcut/cutter.hpp"
#include "relaxcut/point.hpp"

namespace relaxcut {

/// How the agreement set B = {u_1 = ... = u_N} is handled.
///   Exact:       metric projection, every block replaced by the block mean.
///   Subgradient: subgradient projector of G(x) = sum_i ||x_i - mean||^2.
enum class DiagonalFlavor { Exact, Subgradient };

/// An N-set problem in R^d recast as a two-set problem in R^(N*d).
///
/// Stacked points are flat Points of dimension N * block_dim; block i holds
/// coordinates [i * block_dim, (i + 1) * block_dim).
struct ProductProblem {
  std::size_t block_dim = 0;
  std::size_t blocks = 0;
  std::vector<Cutter> components;
  Cutter lifted_a;  // blockwise cutter for Omega_1 x ... x Omega_N
  Cutter lifted_b;  // cutter for the agreement subspace
};

/// Lifts N >= 2 component cutters sharing block_dim.
ProductProblem lift(std::vector<Cutter> cutters, std::size_t block_dim,
                    DiagonalFlavor flavor = DiagonalFlavor::Exact);

/// Lifts N >= 2 functions: A = lev F via the subgradient projector of F
/// (see make_F), B via `flavor`.
ProductProblem lift_functions(const std::vector<ConvexFunction>& fs,
                              DiagonalFlavor flavor = DiagonalFlavor::Subgradient);

/// F(x_1..x_N) = sum_i max{f_i(x_i), 0}. Its selection stacks s_i(x_i) on
/// blocks with f_i(x_i) > 0 and zeros elsewhere.
ConvexFunction make_F(const std::vector<ConvexFunction>& fs);

/// G(x_1..x_N) = sum_i ||x_i - (1/N) sum_j x_j||^2 with gradient 2(x_i - mean).
ConvexFunction make_G(std::size_t block_dim, std::size_t blocks);

Point stack_blocks(std::span<const Point> blocks);
Point block(const Point& stacked, std::size_t block_dim, std::size_t index);

/// Mean of the blocks, summed in block order.
Point block_mean(const Point& stacked, std::size_t block_dim);

}  // namespace relaxcut
