#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "relaxcut/error.hpp"
#include "relaxcut/functions.hpp"
#include "relaxcut/instances.hpp"
#include "relaxcut/productspace.hpp"
#include "relaxcut/random.hpp"
#include "relaxcut/solver.hpp"

using namespace relaxcut;

namespace {

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no relaxcut::Error thrown";
  return ErrorCode::InvalidArgument;
}

// Omega_1 = {x <= 0}, Omega_2 = {x >= -1} in R.
std::vector<Cutter> two_rays() {
  return {Cutter::exact(make_halfspace(Point{1.0}, 0.0)),
          Cutter::exact(make_halfspace(Point{-1.0}, 1.0))};
}

// Independent form: sum over blocks of the squared distance to the block mean.
double squared_distance_to_diag(const Point& x, std::size_t d) {
  const std::size_t n = x.dim() / d;
  std::vector<double> mean(d, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < d; ++k) mean[k] += x[i * d + k] / static_cast<double>(n);
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < d; ++k) s += (x[i * d + k] - mean[k]) * (x[i * d + k] - mean[k]);
  return s;
}

}  // namespace

TEST(Lift, BlockwiseAndDiagonalProjections) {
  const ProductProblem p = lift(two_rays(), 1);
  EXPECT_EQ(p.blocks, 2u);
  EXPECT_EQ(p.lifted_a.apply(Point{3.0, -4.0}), (Point{0.0, -1.0}));
  EXPECT_EQ(p.lifted_b.apply(Point{3.0, -4.0}), (Point{-0.5, -0.5}));
  EXPECT_EQ(p.lifted_a.apply(Point{-0.5, -0.5}), (Point{-0.5, -0.5}));
}

TEST(Lift, OrthantExample) {
  std::vector<Cutter> cs{Cutter::exact(make_halfspace(Point{1.0}, 0.0)),
                         Cutter::exact(make_halfspace(Point{1.0}, 0.0))};
  const ProductProblem p = lift(cs, 1);
  EXPECT_EQ(p.lifted_a.apply(Point{3.0, -4.0}), (Point{0.0, -4.0}));
}

TEST(Lift, Errors) {
  EXPECT_EQ(code_of([] { lift({Cutter::exact(make_ball(Point{0.0}, 1.0))}, 1); }),
            ErrorCode::FewerThanTwoBlocks);
  EXPECT_EQ(code_of([] {
              lift({Cutter::exact(make_ball(Point{0.0}, 1.0)),
                    Cutter::exact(make_ball(Point{0.0, 0.0}, 1.0))},
                   1);
            }),
            ErrorCode::DimensionMismatch);
  EXPECT_EQ(code_of([] { lift_functions({make_abs()}); }), ErrorCode::FewerThanTwoBlocks);
}

TEST(ProductFunctions, FAndGExamples) {
  const ConvexFunction F = make_F({make_abs(), make_abs()});
  EXPECT_EQ(F.value(Point{2.0, -3.0}), 5.0);
  EXPECT_EQ(F.subgradient(Point{2.0, -3.0}), (Point{1.0, -1.0}));
  const ConvexFunction G = make_G(1, 2);
  EXPECT_EQ(G.value(Point{1.0, 3.0}), 2.0);
  EXPECT_EQ(G.subgradient(Point{1.0, 3.0}), (Point{-2.0, 2.0}));
}

TEST(ProductFunctions, BlockHelpers) {
  const std::vector<Point> blocks{Point{1.0, 2.0}, Point{3.0, 4.0}, Point{5.0, 6.0}};
  const Point s = stack_blocks(blocks);
  EXPECT_EQ(s.dim(), 6u);
  EXPECT_EQ(block(s, 2, 1), (Point{3.0, 4.0}));
  EXPECT_EQ(block_mean(s, 2), (Point{3.0, 4.0}));
}

// Invariant: G is the squared distance to the diagonal.
TEST(ProductProperty, GIsSquaredDiagonalDistance) {
  Rng rng(41);
  for (int i = 0; i < 1000; ++i) {
    const std::size_t d = 1 + rng.below(3);
    const std::size_t n = 2 + rng.below(4);
    const Point x = 3.0 * rng.gaussian_point(d * n);
    const double g = make_G(d, n).value(x);
    const double d2 = squared_distance_to_diag(x, d);
    ASSERT_NEAR(g, d2, 1e-12 * std::max(1.0, squared_norm(x)));
  }
}

// Invariant: F(x) <= 0 exactly when every block lies in its level set.
TEST(ProductProperty, LevelSetOfFIsProduct) {
  Rng rng(42);
  const std::vector<ConvexFunction> fs{make_maxabs2(),
                                       make_distance(make_ball(Point{1.0, 0.0}, 0.5))};
  const ConvexFunction F = make_F(fs);
  for (int i = 0; i < 3000; ++i) {
    const Point x = rng.point_in_box(4, -1.6, 1.6);
    const bool all = fs[0].value(block(x, 2, 0)) <= 0.0 && fs[1].value(block(x, 2, 1)) <= 0.0;
    ASSERT_EQ(F.value(x) <= 0.0, all) << x.to_string();
  }
}

// Invariant: a lifted solve lands on the diagonal inside every component.
TEST(ProductProperty, LiftedSolveFindsCommonPoint) {
  Rng rng(43);
  for (int trial = 0; trial < 20; ++trial) {
    const Point planted = rng.gaussian_point(3);
    std::vector<Cutter> cs;
    for (int i = 0; i < 4; ++i) cs.push_back(Cutter::exact(random_set_containing(rng, planted)));
    for (DiagonalFlavor flavor : {DiagonalFlavor::Exact, DiagonalFlavor::Subgradient}) {
      const ProductProblem p = lift(cs, 3, flavor);
      std::vector<Point> x0(4, 4.0 * rng.gaussian_point(3));
      for (auto& b : x0) b += rng.gaussian_point(3);
      StopRule stop;
      stop.residual_tol = 1e-9;
      const IterationTrace t = solve(p.lifted_a, p.lifted_b, OperatorParams(1.0, 1.0, 1.0),
                                     stack_blocks(x0), stop);
      ASSERT_EQ(t.reason, TerminationReason::ResidualMet);
      const Point m = block_mean(t.final_point(), 3);
      for (const Cutter& c : cs) ASSERT_LE(distance(c.apply(m), m), 1e-6);
    }
  }
}

TEST(LiftFunctions, SubgradientFlavorsSolve) {
  const ProductProblem p =
      lift_functions({make_distance(make_ball(Point{0.0, 0.0}, 1.0)),
                      make_distance(make_ball(Point{1.5, 0.0}, 1.0))});
  const IterationTrace t =
      solve(p.lifted_a, p.lifted_b, OperatorParams(1.0, 1.0, 1.0), Point{3.0, 3.0, -2.0, 1.0});
  ASSERT_EQ(t.reason, TerminationReason::ResidualMet);
  const Point m = block_mean(t.final_point(), 2);
  EXPECT_LE(norm(m), 1.0 + 1e-6);
  EXPECT_LE(distance(m, Point{1.5, 0.0}), 1.0 + 1e-6);
}
