#include "relaxcut/productspace.hpp"

#include <algorithm>
#include <memory>

#include "relaxcut/error.hpp"
#include "relaxcut/sets.hpp"

namespace relaxcut {
namespace {

void require_blocks(std::size_t n) {
  if (n < 2) {
    throw Error(ErrorCode::FewerThanTwoBlocks,
                "the product formulation needs at least two components, got " + std::to_string(n));
  }
}

Cutter diagonal_cutter(std::size_t block_dim, std::size_t blocks, DiagonalFlavor flavor) {
  if (flavor == DiagonalFlavor::Exact) {
    return Cutter::exact(make_affine_diagonal(block_dim, blocks));
  }
  return Cutter::subgradient(make_G(block_dim, blocks));
}

}  // namespace

Point stack_blocks(std::span<const Point> blocks) {
  if (blocks.empty()) throw Error(ErrorCode::InvalidArgument, "no blocks to stack");
  const std::size_t d = blocks.front().dim();
  Point out = Point::zeros(d * blocks.size());
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    require_dim(blocks[b], d, "stack_blocks");
    std::copy(blocks[b].begin(), blocks[b].end(), out.coords().begin() + b * d);
  }
  return out;
}

Point block(const Point& stacked, std::size_t block_dim, std::size_t index) {
  if (block_dim == 0 || (index + 1) * block_dim > stacked.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "block index out of range");
  }
  Point out = Point::zeros(block_dim);
  std::copy_n(stacked.coords().begin() + index * block_dim, block_dim, out.coords().begin());
  return out;
}

Point block_mean(const Point& stacked, std::size_t block_dim) {
  if (block_dim == 0 || stacked.dim() % block_dim != 0) {
    throw Error(ErrorCode::DimensionMismatch, "stacked point is not a whole number of blocks");
  }
  const std::size_t n = stacked.dim() / block_dim;
  Point mean = Point::zeros(block_dim);
  for (std::size_t j = 0; j < block_dim; ++j) {
    double s = 0.0;
    for (std::size_t b = 0; b < n; ++b) s += stacked[b * block_dim + j];
    mean[j] = s * (1.0 / static_cast<double>(n));
  }
  return mean;
}

ProductProblem lift(std::vector<Cutter> cutters, std::size_t block_dim, DiagonalFlavor flavor) {
  require_blocks(cutters.size());
  for (const Cutter& c : cutters) {
    if (c.dim() != block_dim) {
      throw Error(ErrorCode::DimensionMismatch,
                  "component cutter '" + c.describe() + "' has dimension " +
                      std::to_string(c.dim()) + ", expected " + std::to_string(block_dim));
    }
  }
  const std::size_t n = cutters.size();
  auto shared = std::make_shared<const std::vector<Cutter>>(cutters);

  CustomCutter blockwise{
      .name = "product of " + std::to_string(n) + " components",
      .dim = n * block_dim,
      .map =
          [shared, block_dim](const Point& x) {
            Point out = x;
            for (std::size_t b = 0; b < shared->size(); ++b) {
              const Point image = (*shared)[b].apply(block(x, block_dim, b));
              std::copy(image.begin(), image.end(), out.coords().begin() + b * block_dim);
            }
            return out;
          },
      .in_fixed_set =
          [shared, block_dim](const Point& x) {
            for (std::size_t b = 0; b < shared->size(); ++b) {
              if (!(*shared)[b].fixes(block(x, block_dim, b))) return false;
            }
            return true;
          },
      .witnesses = {},
  };

  return ProductProblem{
      .block_dim = block_dim,
      .blocks = n,
      .components = std::move(cutters),
      .lifted_a = Cutter(std::move(blockwise)),
      .lifted_b = diagonal_cutter(block_dim, n, flavor),
  };
}

ProductProblem lift_functions(const std::vector<ConvexFunction>& fs, DiagonalFlavor flavor) {
  require_blocks(fs.size());
  const std::size_t d = fs.front().dim();
  std::vector<Cutter> components;
  for (const ConvexFunction& f : fs) components.push_back(Cutter::subgradient(f));
  return ProductProblem{
      .block_dim = d,
      .blocks = fs.size(),
      .components = std::move(components),
      .lifted_a = Cutter::subgradient(make_F(fs)),
      .lifted_b = diagonal_cutter(d, fs.size(), flavor),
  };
}

ConvexFunction make_F(const std::vector<ConvexFunction>& fs) {
  require_blocks(fs.size());
  const std::size_t d = fs.front().dim();
  for (const ConvexFunction& f : fs) {
    if (f.dim() != d) {
      throw Error(ErrorCode::DimensionMismatch, "make_F: component '" + f.name() +
                                                    "' has dimension " + std::to_string(f.dim()));
    }
  }
  const bool convex = std::all_of(fs.begin(), fs.end(), [](const auto& f) { return f.convex(); });
  auto shared = std::make_shared<const std::vector<ConvexFunction>>(fs);
  return ConvexFunction(
      "F", d * fs.size(),
      [shared, d](const Point& x) {
        double total = 0.0;
        for (std::size_t i = 0; i < shared->size(); ++i) {
          total += std::max((*shared)[i].value(block(x, d, i)), 0.0);
        }
        return total;
      },
      [shared, d](const Point& x) {
        Point s = Point::zeros(x.dim());
        for (std::size_t i = 0; i < shared->size(); ++i) {
          const Point xi = block(x, d, i);
          if (!((*shared)[i].value(xi) > 0.0)) continue;
          const Point si = (*shared)[i].subgradient(xi);
          std::copy(si.begin(), si.end(), s.coords().begin() + i * d);
        }
        return s;
      },
      convex);
}

ConvexFunction make_G(std::size_t block_dim, std::size_t blocks) {
  require_blocks(blocks);
  if (block_dim == 0) throw Error(ErrorCode::InvalidArgument, "block_dim must be positive");
  return ConvexFunction(
      "G", block_dim * blocks,
      [block_dim, blocks](const Point& x) {
        const Point mean = block_mean(x, block_dim);
        double total = 0.0;
        for (std::size_t b = 0; b < blocks; ++b) {
          for (std::size_t j = 0; j < block_dim; ++j) {
            const double diff = x[b * block_dim + j] - mean[j];
            total += diff * diff;
          }
        }
        return total;
      },
      [block_dim, blocks](const Point& x) {
        const Point mean = block_mean(x, block_dim);
        Point g = x;
        for (std::size_t b = 0; b < blocks; ++b) {
          for (std::size_t j = 0; j < block_dim; ++j) {
            g[b * block_dim + j] = 2.0 * (x[b * block_dim + j] - mean[j]);
          }
        }
        return g;
      });
}

}  // namespace relaxcut
