#include <string>

#include <gtest/gtest.h>

#include "relaxcut/error.hpp"
#include "relaxcut/functions.hpp"
#include "relaxcut/gallery.hpp"
#include "relaxcut/operators.hpp"

using namespace relaxcut;

class EveryFixture : public ::testing::TestWithParam<std::string> {};

TEST_P(EveryFixture, ChecksPass) {
  const FixtureResult r = run_fixture(make_fixture(GetParam()));
  for (const FixtureCheck& c : r.checks) EXPECT_TRUE(c.pass) << c.name << ": " << c.detail;
  EXPECT_FALSE(r.checks.empty());
  EXPECT_TRUE(r.pass());
}

INSTANTIATE_TEST_SUITE_P(Gallery, EveryFixture, ::testing::ValuesIn(fixture_names()),
                         [](const auto& info) { return info.param; });

TEST(Gallery, UnknownFixtureListsNames) {
  try {
    make_fixture("nope");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownName);
    EXPECT_NE(std::string(e.what()).find("figure_comparison"), std::string::npos);
  }
}

TEST(Gallery, PermissiveFixturesRejectStrictMode) {
  for (const std::string& name : fixture_names()) {
    const Fixture f = make_fixture(name);
    if (f.mode != ParamMode::Permissive) continue;
    try {
      run_fixture(f, ParamMode::Strict);
      FAIL() << name;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::GammaOutOfRange) << name;
    }
  }
}

TEST(Gallery, PhisNeedsPositiveK) {
  try {
    fixture_phis_truncated(0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidArgument);
  }
  EXPECT_TRUE(run_fixture(fixture_phis_truncated(3)).pass());
}

TEST(Separator, FixedSetAndImages) {
  const Cutter c = make_separator_cutter();
  EXPECT_EQ(c.apply(Point{-1.0}), Point{-1.0});
  EXPECT_EQ(c.apply(Point{2.0}), Point{1.0});
  EXPECT_EQ(c.apply(Point{0.5}), Point{0.0});
  EXPECT_TRUE(c.fixes(Point{1.0}));
  EXPECT_FALSE(c.fixes(Point{0.5}));
}

TEST(Eg1, NonexpansiveAwayFromTheKink) {
  const Cutter c = Cutter::subgradient(make_piecewise_eg1());
  const double gap = distance(c.apply(Point{0.2}), c.apply(Point{0.8}));
  EXPECT_LE(gap, 0.6);
  EXPECT_GT(distance(c.apply(Point{0.9}), c.apply(Point{1.1})), 0.2);
}

TEST(FixedpointsAbs, ReflectionPairFixesEveryPoint) {
  const Cutter c = Cutter::subgradient(make_abs());
  for (double x : {-2.5, -1.0, 0.3, 4.0}) {
    const StepRecord s = averaged_step(c, c, 0.0, 0.0, 0.5, Point{x});
    EXPECT_EQ(s.next, Point{x});
    EXPECT_EQ(s.proj_a, Point{0.0});
  }
}

TEST(Sublinear, OriginStaysPut) {
  Fixture f = fixture_sublinear();
  const IterationTrace t = solve(f.a, f.b, OperatorParams(1.0, 1.0, 1.0), Point{0.0}, f.stop);
  EXPECT_EQ(t.reason, TerminationReason::ResidualMet);
  EXPECT_EQ(t.final_point(), Point{0.0});
}

TEST(FigureComparison, ParameterChoicesDiffer) {
  const FixtureResult r = run_fixture(fixture_figure_comparison());
  ASSERT_EQ(r.runs.size(), 2u);
  EXPECT_NE(r.runs[0].trace.iterations, r.runs[1].trace.iterations);
  EXPECT_NE(r.runs[0].trace.final_point(), r.runs[1].trace.final_point());
}

TEST(Grid, DecimalStepsAreExact) {
  const auto g = grid_1d(1.0, 0.1);
  ASSERT_EQ(g.size(), 21u);
  EXPECT_EQ(g[0], Point{-1.0});
  EXPECT_EQ(g[13], Point{0.3});
  EXPECT_EQ(grid_2d(1.0, 0.5).size(), 25u);
}
