#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>

#include <gtest/gtest.h>

#include "relaxcut/error.hpp"
#include "relaxcut/instances.hpp"
#include "relaxcut/random.hpp"
#include "relaxcut/solver.hpp"
#include "relaxcut/trace_io.hpp"

using namespace relaxcut;

namespace {

bool same_double(double a, double b) {
  return (std::isnan(a) && std::isnan(b)) ||
         std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

IterationTrace planted_trace(std::uint64_t seed) {
  Rng rng(seed);
  const PlantedInstance inst = planted_pair(rng, 3);
  return solve(Cutter::exact(inst.set_a), Cutter::exact(inst.set_b),
               OperatorParams(1.3, 0.7, 0.9), 4.0 * rng.gaussian_point(3));
}

}  // namespace

TEST(FormatDouble, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(-2.5), "-2.5");
  EXPECT_EQ(format_double(1e-300), "1e-300");
  EXPECT_EQ(format_double(std::numeric_limits<double>::quiet_NaN()), "nan");
  EXPECT_EQ(format_double(-std::numeric_limits<double>::infinity()), "-inf");
  EXPECT_EQ(parse_double("0.1"), 0.1);
  EXPECT_TRUE(std::isnan(parse_double("nan")));
}

TEST(ParseDouble, RejectsPartialInput) {
  for (const char* bad : {"", "1.0x", "abc", " 1", "1,2"}) {
    try {
      parse_double(bad);
      FAIL() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::InvalidArgument);
    }
  }
}

// Invariant: formatting and parsing is the identity on doubles.
TEST(FormatDoubleProperty, BitExactRoundTrip) {
  Rng rng(61);
  for (int i = 0; i < 20000; ++i) {
    const double v = std::bit_cast<double>(rng.next_u64());
    ASSERT_TRUE(same_double(parse_double(format_double(v)), v)) << format_double(v);
  }
}

TEST(TraceCsv, HeaderAndColumns) {
  IterationTrace t;
  t.rows.push_back(TraceRow{.n = 0, .x = Point{1.0, 2.0}, .residual_a = 0.5});
  std::ostringstream os;
  write_trace_csv(os, t);
  EXPECT_EQ(os.str(), "n,x0,x1,residualA,residualB,theta,stepNorm\n0,1,2,0.5,0,0,0\n");
}

TEST(TraceJsonl, RowShape) {
  IterationTrace t;
  t.rows.push_back(TraceRow{.n = 3,
                            .x = Point{0.25},
                            .residual_a = std::numeric_limits<double>::quiet_NaN(),
                            .gamma = 0.5});
  std::ostringstream os;
  write_trace_jsonl(os, t);
  EXPECT_EQ(os.str(),
            "{\"n\":3,\"x\":[0.25],\"residualA\":null,\"residualB\":0,\"theta\":0,"
            "\"stepNorm\":0,\"gamma\":0.5,\"mu\":1,\"lambda\":1}\n");
}

// Invariant: CSV and JSONL writers round-trip every recorded field bit-exactly.
TEST(TraceProperty, RoundTripsBitExact) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const IterationTrace t = planted_trace(seed);
    std::stringstream csv;
    write_trace(csv, t, TraceFormat::Csv);
    std::stringstream jsonl;
    write_trace(jsonl, t, TraceFormat::Jsonl);
    const auto rc = read_trace_csv(csv);
    const auto rj = read_trace_jsonl(jsonl);
    ASSERT_EQ(rc.size(), t.rows.size());
    ASSERT_EQ(rj.size(), t.rows.size());
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      const TraceRow& r = t.rows[i];
      for (const TraceRow* q : {&rc[i], &rj[i]}) {
        ASSERT_EQ(q->n, r.n);
        ASSERT_EQ(q->x, r.x);
        ASSERT_TRUE(same_double(q->residual_a, r.residual_a));
        ASSERT_TRUE(same_double(q->residual_b, r.residual_b));
        ASSERT_TRUE(same_double(q->theta, r.theta));
        ASSERT_TRUE(same_double(q->step_norm, r.step_norm));
      }
      ASSERT_EQ(rj[i].gamma, r.gamma);
      ASSERT_EQ(rj[i].mu, r.mu);
      ASSERT_EQ(rj[i].lambda, r.lambda);
    }
  }
}

TEST(TraceRead, NanSurvivesBothFormats) {
  IterationTrace t;
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  t.rows.push_back(TraceRow{.n = 0, .x = Point{1.0}, .residual_a = nan, .theta = nan});
  std::stringstream csv;
  write_trace_csv(csv, t);
  std::stringstream jsonl;
  write_trace_jsonl(jsonl, t);
  EXPECT_TRUE(std::isnan(read_trace_csv(csv)[0].residual_a));
  EXPECT_TRUE(std::isnan(read_trace_jsonl(jsonl)[0].theta));
}

TEST(TraceRead, MalformedInputIsReported) {
  auto code = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::UnknownName;
  };
  std::istringstream empty("");
  EXPECT_EQ(code([&] { read_trace_csv(empty); }), ErrorCode::InvalidArgument);
  std::istringstream bad_header("a,b,c\n");
  EXPECT_EQ(code([&] { read_trace_csv(bad_header); }), ErrorCode::InvalidArgument);
  std::istringstream short_row("n,x0,residualA,residualB,theta,stepNorm\n0,1,2\n");
  EXPECT_EQ(code([&] { read_trace_csv(short_row); }), ErrorCode::InvalidArgument);
  std::istringstream bad_json("{\"n\":0,\"x\":[1]\n");
  EXPECT_EQ(code([&] { read_trace_jsonl(bad_json); }), ErrorCode::InvalidArgument);
  std::istringstream missing("{\"n\":0,\"x\":[1]}\n");
  EXPECT_EQ(code([&] { read_trace_jsonl(missing); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code([] { parse_trace_format("xml"); }), ErrorCode::InvalidArgument);
}
