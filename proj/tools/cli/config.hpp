#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "relaxcut/cutter.hpp"
#include "relaxcut/gallery.hpp"
#include "relaxcut/operators.hpp"
#include "relaxcut/productspace.hpp"
#include "relaxcut/solver.hpp"
#include "relaxcut/trace_io.hpp"

namespace relaxcut::cli {

/// Malformed or invalid configuration. The message names the line and the
/// dotted field path when they are known.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SetSpec {
  std::string type;  // halfspace | hyperplane | ball | box | singleton | diagonal
  std::vector<double> normal;
  double offset = 0.0;
  std::vector<double> center;
  double radius = 0.0;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<double> point;
  std::size_t block_dim = 0;
  std::size_t blocks = 0;

  friend bool operator==(const SetSpec&, const SetSpec&) = default;
};

struct FunctionSpec {
  std::string name;
  std::map<std::string, double> args;
  std::optional<SetSpec> set;
  bool allow_nonconvex = false;

  friend bool operator==(const FunctionSpec&, const FunctionSpec&) = default;
};

struct CutterSpec {
  std::string kind;  // exact | subgradient | custom
  std::optional<SetSpec> set;
  std::optional<FunctionSpec> function;
  std::string custom;  // sublinear | separator

  friend bool operator==(const CutterSpec&, const CutterSpec&) = default;
};

/// gamma and mu hold one value (constant) or several (cycled per step).
struct ParamSpec {
  std::vector<double> gamma{1.0};
  std::vector<double> mu{1.0};
  double lambda = 1.0;
  double floor = 1e-3;

  bool varying() const { return gamma.size() > 1 || mu.size() > 1; }
  friend bool operator==(const ParamSpec&, const ParamSpec&) = default;
};

struct ProductSpec {
  std::vector<CutterSpec> components;
  std::string lifted_b = "exact";  // exact | subgradient

  friend bool operator==(const ProductSpec&, const ProductSpec&) = default;
};

struct OutputSpec {
  std::string path;
  std::string format = "csv";

  friend bool operator==(const OutputSpec&, const OutputSpec&) = default;
};

/// A problem file. Either `fixture` names a gallery fixture (whose cutters,
/// mode, parameters, start and stop rule are the defaults), or `a` and `b`
/// are given, or `product` lists the component cutters of an N-set problem.
struct ProblemConfig {
  std::string fixture;
  std::optional<ParamMode> mode;
  std::optional<CutterSpec> a;
  std::optional<CutterSpec> b;
  std::optional<ProductSpec> product;
  std::optional<ParamSpec> params;
  std::optional<std::vector<double>> x0;
  std::optional<StopRule> stop;
  OutputSpec output;
  std::optional<std::uint64_t> seed;

  friend bool operator==(const ProblemConfig&, const ProblemConfig&) = default;
};

ProblemConfig parse_config(const std::string& text);
ProblemConfig load_config(const std::string& path);
std::string serialize_config(const ProblemConfig& config);

/// A config turned into library objects, validated against its mode.
struct ResolvedProblem {
  Cutter a;
  Cutter b;
  ParamMode mode = ParamMode::Strict;
  ParamSpec params;
  Point x0;
  StopRule stop;
  std::optional<ProductProblem> product;
};

/// Builds cutters and validates every parameter against the mode; `mode`
/// overrides the config's own. Errors are reported as ConfigError.
ResolvedProblem resolve(const ProblemConfig& config, std::optional<ParamMode> mode = std::nullopt);

Cutter build_cutter(const CutterSpec& spec, const std::string& field);
PrimitiveSet build_set(const SetSpec& spec, const std::string& field);

std::vector<std::string> custom_cutter_names();

ParamMode parse_mode(const std::string& text);

}  // namespace relaxcut::cli
