#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "commands.hpp"
#include "config.hpp"

using namespace relaxcut;
using namespace relaxcut::cli;

namespace {

const std::string kConfigDir = RELAXCUT_CONFIG_DIR;

std::string config_path(const std::string& name) { return kConfigDir + "/" + name; }

std::string config_error(const std::string& text) {
  try {
    resolve(parse_config(text));
  } catch (const ConfigError& e) {
    return e.what();
  }
  ADD_FAILURE() << "config accepted:\n" << text;
  return {};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::filesystem::path temp_file(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "relaxcut_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

const char* kBallPair = R"(a:
  kind: exact
  set: {type: ball, center: [0, 0], radius: 1}
b:
  kind: exact
  set: {type: ball, center: [1.5, 0], radius: 1}
params: {gamma: 1.5, mu: 0.5, lambda: 0.8}
x0: [3, 4]
)";

}  // namespace

TEST(Config, ParsesShippedConfigs) {
  for (const char* name : {"halfspace_pair.yaml", "disks.yaml", "product_balls.yaml",
                           "varying.yaml", "fixedpoints.yaml", "separator.yaml"}) {
    const ProblemConfig c = load_config(config_path(name));
    EXPECT_NO_THROW(resolve(c, ParamMode::Permissive)) << name;
  }
}

// Invariant: serialize then parse returns an equal config.
TEST(ConfigProperty, SerializeRoundTrips) {
  for (const char* name : {"halfspace_pair.yaml", "disks.yaml", "product_balls.yaml",
                           "varying.yaml", "fixedpoints.yaml", "separator.yaml"}) {
    const ProblemConfig c = load_config(config_path(name));
    const ProblemConfig back = parse_config(serialize_config(c));
    EXPECT_EQ(back, c) << name << "\n" << serialize_config(c);
  }
  const ProblemConfig c = parse_config(kBallPair);
  EXPECT_EQ(parse_config(serialize_config(c)), c);
}

TEST(Config, ErrorsNameLineAndField) {
  const std::string msg = config_error(R"(a:
  kind: exact
  set: {type: ball, center: [0, 0], radius: oops}
b:
  kind: exact
  set: {type: ball, center: [1, 0], radius: 1}
params: {gamma: 1, mu: 1, lambda: 1}
x0: [0, 0]
)");
  EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
  EXPECT_NE(msg.find("a.set.radius"), std::string::npos) << msg;
}

TEST(Config, UnknownKeysAndNamesListValidChoices) {
  const std::string key = config_error(std::string(kBallPair) + "colour: red\n");
  EXPECT_NE(key.find("colour"), std::string::npos) << key;
  EXPECT_NE(key.find("params"), std::string::npos) << key;

  const std::string fn = config_error(R"(a:
  kind: subgradient
  function: {name: cosh}
b:
  kind: exact
  set: {type: ball, center: [0], radius: 1}
params: {gamma: 1, mu: 1, lambda: 1}
x0: [0]
)");
  EXPECT_NE(fn.find("cosh"), std::string::npos) << fn;
  EXPECT_NE(fn.find("maxabs2"), std::string::npos) << fn;

  const std::string fx = config_error("fixture: nothing\n");
  EXPECT_NE(fx.find("sublinear"), std::string::npos) << fx;
}

TEST(Config, StrictModeRejectsReflections) {
  std::string text = kBallPair;
  text.replace(text.find("gamma: 1.5"), 10, "gamma: 0");
  const std::string msg = config_error(text);
  EXPECT_NE(msg.find("params"), std::string::npos) << msg;
  EXPECT_NO_THROW(resolve(parse_config(text), ParamMode::Permissive));
  EXPECT_THROW(resolve(load_config(config_path("fixedpoints.yaml")), ParamMode::Strict),
               ConfigError);
}

TEST(Config, StructuralRules) {
  EXPECT_THROW(parse_config("fixture: sublinear\n" + std::string(kBallPair)), ConfigError);
  EXPECT_THROW(parse_config("a: {kind: exact, set: {type: ball, center: [0], radius: 1}}\n"),
               ConfigError);
  EXPECT_THROW(parse_config(""), ConfigError);
  EXPECT_THROW(parse_config("a: [1, 2\n"), ConfigError);
  EXPECT_THROW(load_config(config_path("missing.yaml")), ConfigError);
}

TEST(Config, ProductStartMayBeOneBlock) {
  const ResolvedProblem p = resolve(load_config(config_path("product_balls.yaml")));
  ASSERT_TRUE(p.product.has_value());
  EXPECT_EQ(p.x0.dim(), p.product->block_dim * p.product->blocks);
}

TEST(Grid, ParsesAxesInAnyOrder) {
  const SweepGrid g = parse_grid("mu=0.5,1;gamma=1.5;lambda=1,0.5");
  EXPECT_EQ(g.gamma, (std::vector<double>{1.5}));
  EXPECT_EQ(g.mu, (std::vector<double>{0.5, 1.0}));
  EXPECT_EQ(g.lambda, (std::vector<double>{1.0, 0.5}));
  EXPECT_THROW(parse_grid(""), ConfigError);
  EXPECT_THROW(parse_grid("gamma="), ConfigError);
  EXPECT_THROW(parse_grid("delta=1"), ConfigError);
  EXPECT_THROW(parse_grid("gamma=1;gamma=2"), ConfigError);
}

TEST(ExitCodes, FollowTerminationReason) {
  EXPECT_EQ(exit_code(TerminationReason::ResidualMet), 0);
  EXPECT_EQ(exit_code(TerminationReason::MaxIter), 2);
  EXPECT_EQ(exit_code(TerminationReason::Stagnated), 3);
  EXPECT_EQ(exit_code(TerminationReason::Error), 4);
}

TEST(Commands, SolveIsDeterministic) {
  std::ostringstream out1;
  std::ostringstream out2;
  std::ostringstream err;
  EXPECT_EQ(cmd_solve(config_path("disks.yaml"), {}, out1, err), 0);
  EXPECT_EQ(cmd_solve(config_path("disks.yaml"), {}, out2, err), 0);
  EXPECT_FALSE(out1.str().empty());
  EXPECT_EQ(out1.str(), out2.str());

  CommonOptions jsonl;
  jsonl.format = TraceFormat::Jsonl;
  const auto f1 = temp_file("disks_a.jsonl");
  const auto f2 = temp_file("disks_b.jsonl");
  jsonl.out = f1.string();
  cmd_solve(config_path("disks.yaml"), jsonl, out1, err);
  jsonl.out = f2.string();
  cmd_solve(config_path("disks.yaml"), jsonl, out1, err);
  EXPECT_EQ(slurp(f1), slurp(f2));
  EXPECT_FALSE(slurp(f1).empty());
}

TEST(Commands, SolveExitCodes) {
  std::ostringstream out;
  std::ostringstream err;
  EXPECT_EQ(cmd_solve(config_path("halfspace_pair.yaml"), {}, out, err), 0);
  EXPECT_EQ(cmd_solve(config_path("fixedpoints.yaml"), {}, out, err), 3);
  CommonOptions strict;
  strict.mode = ParamMode::Strict;
  EXPECT_THROW(cmd_solve(config_path("fixedpoints.yaml"), strict, out, err), ConfigError);
}

TEST(Commands, SweepIndependentOfWorkerCount) {
  const std::string grid = "gamma=0.5,1,1.5;mu=0.5,1,1.5;lambda=0.5,1";
  std::ostringstream one;
  std::ostringstream many;
  std::ostringstream err;
  EXPECT_EQ(cmd_sweep(config_path("disks.yaml"), grid, 1, {}, one, err), 0);
  EXPECT_EQ(cmd_sweep(config_path("disks.yaml"), grid, 4, {}, many, err), 0);
  EXPECT_EQ(one.str(), many.str());
  std::istringstream lines(one.str());
  std::string line;
  std::size_t n = 0;
  while (std::getline(lines, line)) ++n;
  EXPECT_EQ(n, 19u);
  EXPECT_NE(one.str().find("1,1,1,alternating-projections"), std::string::npos) << one.str();
}

TEST(Commands, AuditPassesAndFails) {
  std::ostringstream out;
  std::ostringstream err;
  EXPECT_EQ(cmd_audit(config_path("disks.yaml"), 400, 3, {}, out, err), 0) << out.str();
  std::ostringstream bad;
  EXPECT_EQ(cmd_audit(config_path("separator.yaml"), 400, 3, {}, bad, err), 5);
  EXPECT_NE(bad.str().find("FAIL"), std::string::npos) << bad.str();
  EXPECT_THROW(cmd_audit(config_path("disks.yaml"), 0, 3, {}, out, err), ConfigError);
}

TEST(Commands, RunFixtureWritesOneFilePerRun) {
  std::ostringstream out;
  std::ostringstream err;
  CommonOptions opts;
  const auto stem = temp_file("figure.csv");
  opts.out = stem.string();
  EXPECT_EQ(cmd_run_fixture("figure_comparison", opts, out, err), 0) << out.str();
  EXPECT_TRUE(std::filesystem::exists(temp_file("figure_1.csv")));
  EXPECT_TRUE(std::filesystem::exists(temp_file("figure_2.csv")));
  EXPECT_EQ(cmd_run_fixture("sublinear", {}, out, err), 0);
}

TEST(Commands, ListNamesEverything) {
  std::ostringstream out;
  EXPECT_EQ(cmd_list(out), 0);
  for (const char* name : {"phis_truncated", "ellipse_residual", "separator", "ball"}) {
    EXPECT_NE(out.str().find(name), std::string::npos) << name;
  }
}
