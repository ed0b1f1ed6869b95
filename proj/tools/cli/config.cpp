#include "config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "relaxcut/error.hpp"
#include "relaxcut/functions.hpp"

namespace relaxcut::cli {
namespace {

const std::vector<std::string> kSetTypes = {"halfspace", "hyperplane", "ball",
                                            "box",       "singleton",  "diagonal"};

std::string join(const std::vector<std::string>& xs) {
  std::string out;
  for (const auto& x : xs) out += (out.empty() ? "" : ", ") + x;
  return out;
}

std::string at(const YAML::Node& node, const std::string& field) {
  std::string out = "field '" + field + "'";
  const YAML::Mark mark = node.Mark();
  if (mark.line >= 0) out = "line " + std::to_string(mark.line + 1) + ", " + out;
  return out;
}

[[noreturn]] void fail(const YAML::Node& node, const std::string& field, const std::string& what) {
  throw ConfigError(at(node, field) + ": " + what);
}

std::string child(const std::string& parent, const std::string& key) {
  return parent.empty() ? key : parent + "." + key;
}

void require_map(const YAML::Node& node, const std::string& field) {
  if (!node.IsMap()) fail(node, field, "expected a mapping");
}

void check_keys(const YAML::Node& node, const std::string& field,
                const std::vector<std::string>& allowed) {
  require_map(node, field);
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      fail(kv.first, child(field, key), "unknown key (valid: " + join(allowed) + ")");
    }
  }
}

std::string get_string(const YAML::Node& node, const std::string& field) {
  if (!node.IsScalar()) fail(node, field, "expected a scalar");
  return node.Scalar();
}

double get_double(const YAML::Node& node, const std::string& field) {
  const std::string text = get_string(node, field);
  try {
    return parse_double(text);
  } catch (const Error&) {
    try {
      return node.as<double>();
    } catch (const YAML::Exception&) {
      fail(node, field, "expected a number, got '" + text + "'");
    }
  }
}

std::uint64_t get_u64(const YAML::Node& node, const std::string& field) {
  const std::string text = get_string(node, field);
  try {
    std::size_t used = 0;
    if (!text.empty() && text.front() == '-') throw std::invalid_argument("negative");
    const unsigned long long v = std::stoull(text, &used, 0);
    if (used != text.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    fail(node, field, "expected a nonnegative integer, got '" + text + "'");
  }
}

bool get_bool(const YAML::Node& node, const std::string& field) {
  try {
    return node.as<bool>();
  } catch (const YAML::Exception&) {
    fail(node, field, "expected true or false");
  }
}

std::vector<double> get_vector(const YAML::Node& node, const std::string& field,
                               bool allow_scalar = false) {
  if (allow_scalar && node.IsScalar()) return {get_double(node, field)};
  if (!node.IsSequence() || node.size() == 0) fail(node, field, "expected a nonempty list");
  std::vector<double> out;
  for (std::size_t i = 0; i < node.size(); ++i) {
    out.push_back(get_double(node[i], field + "[" + std::to_string(i) + "]"));
  }
  return out;
}

YAML::Node required(const YAML::Node& node, const std::string& key, const std::string& field) {
  const YAML::Node v = node[key];
  if (!v) fail(node, child(field, key), "required");
  return v;
}

SetSpec parse_set(const YAML::Node& node, const std::string& field) {
  require_map(node, field);
  SetSpec s;
  s.type = get_string(required(node, "type", field), child(field, "type"));
  auto vec = [&](const char* key) {
    return get_vector(required(node, key, field), child(field, key));
  };
  auto num = [&](const char* key) {
    return get_double(required(node, key, field), child(field, key));
  };
  if (s.type == "halfspace" || s.type == "hyperplane") {
    check_keys(node, field, {"type", "normal", "offset"});
    s.normal = vec("normal");
    s.offset = num("offset");
  } else if (s.type == "ball") {
    check_keys(node, field, {"type", "center", "radius"});
    s.center = vec("center");
    s.radius = num("radius");
  } else if (s.type == "box") {
    check_keys(node, field, {"type", "lower", "upper"});
    s.lower = vec("lower");
    s.upper = vec("upper");
  } else if (s.type == "singleton") {
    check_keys(node, field, {"type", "point"});
    s.point = vec("point");
  } else if (s.type == "diagonal") {
    check_keys(node, field, {"type", "block_dim", "blocks"});
    s.block_dim = get_u64(required(node, "block_dim", field), child(field, "block_dim"));
    s.blocks = get_u64(required(node, "blocks", field), child(field, "blocks"));
  } else {
    fail(node["type"], child(field, "type"),
         "unknown set type '" + s.type + "' (valid: " + join(kSetTypes) + ")");
  }
  return s;
}

FunctionSpec parse_function(const YAML::Node& node, const std::string& field) {
  check_keys(node, field, {"name", "args", "set", "allow_nonconvex"});
  FunctionSpec f;
  f.name = get_string(required(node, "name", field), child(field, "name"));
  const auto names = function_catalog_names();
  if (std::find(names.begin(), names.end(), f.name) == names.end()) {
    fail(node["name"], child(field, "name"),
         "unknown function '" + f.name + "' (valid: " + join(names) + ")");
  }
  if (const YAML::Node args = node["args"]) {
    require_map(args, child(field, "args"));
    for (const auto& kv : args) {
      const auto key = kv.first.as<std::string>();
      f.args[key] = get_double(kv.second, child(child(field, "args"), key));
    }
  }
  if (const YAML::Node set = node["set"]) f.set = parse_set(set, child(field, "set"));
  if (const YAML::Node flag = node["allow_nonconvex"]) {
    f.allow_nonconvex = get_bool(flag, child(field, "allow_nonconvex"));
  }
  return f;
}

CutterSpec parse_cutter(const YAML::Node& node, const std::string& field) {
  require_map(node, field);
  CutterSpec c;
  c.kind = get_string(required(node, "kind", field), child(field, "kind"));
  if (c.kind == "exact") {
    check_keys(node, field, {"kind", "set"});
    c.set = parse_set(required(node, "set", field), child(field, "set"));
  } else if (c.kind == "subgradient") {
    check_keys(node, field, {"kind", "function"});
    c.function = parse_function(required(node, "function", field), child(field, "function"));
  } else if (c.kind == "custom") {
    check_keys(node, field, {"kind", "name"});
    c.custom = get_string(required(node, "name", field), child(field, "name"));
    const auto names = custom_cutter_names();
    if (std::find(names.begin(), names.end(), c.custom) == names.end()) {
      fail(node["name"], child(field, "name"),
           "unknown custom cutter '" + c.custom + "' (valid: " + join(names) + ")");
    }
  } else {
    fail(node["kind"], child(field, "kind"),
         "unknown cutter kind '" + c.kind + "' (valid: exact, subgradient, custom)");
  }
  return c;
}

ParamSpec parse_params(const YAML::Node& node, const std::string& field) {
  check_keys(node, field, {"gamma", "mu", "lambda", "floor"});
  ParamSpec p;
  p.gamma = get_vector(required(node, "gamma", field), child(field, "gamma"), true);
  p.mu = get_vector(required(node, "mu", field), child(field, "mu"), true);
  p.lambda = get_double(required(node, "lambda", field), child(field, "lambda"));
  if (const YAML::Node f = node["floor"]) p.floor = get_double(f, child(field, "floor"));
  return p;
}

StopRule parse_stop(const YAML::Node& node, const std::string& field) {
  check_keys(node, field, {"max_iter", "residual_tol", "stagnation_tol"});
  StopRule s;
  if (const YAML::Node v = node["max_iter"]) s.max_iter = get_u64(v, child(field, "max_iter"));
  if (const YAML::Node v = node["residual_tol"]) {
    s.residual_tol = get_double(v, child(field, "residual_tol"));
  }
  if (const YAML::Node v = node["stagnation_tol"]) {
    s.stagnation_tol = get_double(v, child(field, "stagnation_tol"));
  }
  try {
    s.validate();
  } catch (const Error& e) {
    fail(node, field, e.what());
  }
  return s;
}

ProductSpec parse_product(const YAML::Node& node, const std::string& field) {
  check_keys(node, field, {"components", "lifted_b"});
  ProductSpec p;
  const YAML::Node comps = required(node, "components", field);
  if (!comps.IsSequence()) fail(comps, child(field, "components"), "expected a list");
  for (std::size_t i = 0; i < comps.size(); ++i) {
    p.components.push_back(
        parse_cutter(comps[i], child(field, "components") + "[" + std::to_string(i) + "]"));
  }
  if (p.components.size() < 2) fail(comps, child(field, "components"), "need at least 2");
  if (const YAML::Node v = node["lifted_b"]) {
    p.lifted_b = get_string(v, child(field, "lifted_b"));
    if (p.lifted_b != "exact" && p.lifted_b != "subgradient") {
      fail(v, child(field, "lifted_b"), "expected exact or subgradient");
    }
  }
  return p;
}

// Emitter helpers. Numbers are written as shortest round-trip decimals.
void emit_number(YAML::Emitter& out, double v) { out << format_double(v); }

void emit_vector(YAML::Emitter& out, const std::vector<double>& v) {
  out << YAML::Flow << YAML::BeginSeq;
  for (double x : v) emit_number(out, x);
  out << YAML::EndSeq;
}

void emit_set(YAML::Emitter& out, const SetSpec& s) {
  out << YAML::BeginMap << YAML::Key << "type" << YAML::Value << s.type;
  if (s.type == "halfspace" || s.type == "hyperplane") {
    out << YAML::Key << "normal" << YAML::Value;
    emit_vector(out, s.normal);
    out << YAML::Key << "offset" << YAML::Value;
    emit_number(out, s.offset);
  } else if (s.type == "ball") {
    out << YAML::Key << "center" << YAML::Value;
    emit_vector(out, s.center);
    out << YAML::Key << "radius" << YAML::Value;
    emit_number(out, s.radius);
  } else if (s.type == "box") {
    out << YAML::Key << "lower" << YAML::Value;
    emit_vector(out, s.lower);
    out << YAML::Key << "upper" << YAML::Value;
    emit_vector(out, s.upper);
  } else if (s.type == "singleton") {
    out << YAML::Key << "point" << YAML::Value;
    emit_vector(out, s.point);
  } else if (s.type == "diagonal") {
    out << YAML::Key << "block_dim" << YAML::Value << s.block_dim;
    out << YAML::Key << "blocks" << YAML::Value << s.blocks;
  }
  out << YAML::EndMap;
}

void emit_cutter(YAML::Emitter& out, const CutterSpec& c) {
  out << YAML::BeginMap << YAML::Key << "kind" << YAML::Value << c.kind;
  if (c.set) {
    out << YAML::Key << "set" << YAML::Value;
    emit_set(out, *c.set);
  }
  if (c.function) {
    const FunctionSpec& f = *c.function;
    out << YAML::Key << "function" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "name" << YAML::Value << f.name;
    if (!f.args.empty()) {
      out << YAML::Key << "args" << YAML::Value << YAML::BeginMap;
      for (const auto& [k, v] : f.args) {
        out << YAML::Key << k << YAML::Value;
        emit_number(out, v);
      }
      out << YAML::EndMap;
    }
    if (f.set) {
      out << YAML::Key << "set" << YAML::Value;
      emit_set(out, *f.set);
    }
    if (f.allow_nonconvex) out << YAML::Key << "allow_nonconvex" << YAML::Value << true;
    out << YAML::EndMap;
  }
  if (c.kind == "custom") out << YAML::Key << "name" << YAML::Value << c.custom;
  out << YAML::EndMap;
}

template <class F>
auto config_guard(const std::string& field, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw ConfigError("field '" + field + "': " + e.what());
  }
}

Point to_point(const std::vector<double>& v, const std::string& field) {
  return config_guard(field, [&] { return Point(v); });
}

}  // namespace

ParamMode parse_mode(const std::string& text) {
  if (text == "strict") return ParamMode::Strict;
  if (text == "permissive") return ParamMode::Permissive;
  throw ConfigError("unknown mode '" + text + "' (valid: strict, permissive)");
}

std::vector<std::string> custom_cutter_names() { return {"sublinear", "separator"}; }

ProblemConfig parse_config(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ConfigError("line " + std::to_string(e.mark.line + 1) + ": " + e.msg);
  }
  if (!root || root.IsNull()) throw ConfigError("empty configuration");
  check_keys(root, "",
             {"fixture", "mode", "a", "b", "product", "params", "x0", "stop", "output", "seed"});

  ProblemConfig c;
  if (const YAML::Node v = root["fixture"]) {
    c.fixture = get_string(v, "fixture");
    const auto names = fixture_names();
    if (std::find(names.begin(), names.end(), c.fixture) == names.end()) {
      fail(v, "fixture", "unknown fixture '" + c.fixture + "' (valid: " + join(names) + ")");
    }
  }
  if (const YAML::Node v = root["mode"]) {
    try {
      c.mode = parse_mode(get_string(v, "mode"));
    } catch (const ConfigError& e) {
      fail(v, "mode", e.what());
    }
  }
  if (const YAML::Node v = root["a"]) c.a = parse_cutter(v, "a");
  if (const YAML::Node v = root["b"]) c.b = parse_cutter(v, "b");
  if (const YAML::Node v = root["product"]) c.product = parse_product(v, "product");
  if (const YAML::Node v = root["params"]) c.params = parse_params(v, "params");
  if (const YAML::Node v = root["x0"]) c.x0 = get_vector(v, "x0");
  if (const YAML::Node v = root["stop"]) c.stop = parse_stop(v, "stop");
  if (const YAML::Node v = root["output"]) {
    check_keys(v, "output", {"path", "format"});
    if (const YAML::Node p = v["path"]) c.output.path = get_string(p, "output.path");
    if (const YAML::Node f = v["format"]) {
      c.output.format = get_string(f, "output.format");
      if (c.output.format != "csv" && c.output.format != "jsonl") {
        fail(f, "output.format", "expected csv or jsonl");
      }
    }
  }
  if (const YAML::Node v = root["seed"]) c.seed = get_u64(v, "seed");

  const bool pair = c.a || c.b;
  if (!c.fixture.empty() && (pair || c.product)) {
    throw ConfigError("field 'fixture': cannot be combined with 'a', 'b' or 'product'");
  }
  if (c.product && pair) {
    throw ConfigError("field 'product': cannot be combined with 'a' or 'b'");
  }
  if (c.fixture.empty() && !c.product) {
    if (!c.a) fail(root, "a", "required");
    if (!c.b) fail(root, "b", "required");
  }
  if (c.fixture.empty()) {
    if (!c.params) fail(root, "params", "required");
    if (!c.x0) fail(root, "x0", "required");
  }
  return c;
}

ProblemConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const ProblemConfig& c) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  if (!c.fixture.empty()) out << YAML::Key << "fixture" << YAML::Value << c.fixture;
  if (c.mode) out << YAML::Key << "mode" << YAML::Value << std::string(to_string(*c.mode));
  if (c.a) {
    out << YAML::Key << "a" << YAML::Value;
    emit_cutter(out, *c.a);
  }
  if (c.b) {
    out << YAML::Key << "b" << YAML::Value;
    emit_cutter(out, *c.b);
  }
  if (c.product) {
    out << YAML::Key << "product" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "components" << YAML::Value << YAML::BeginSeq;
    for (const auto& comp : c.product->components) emit_cutter(out, comp);
    out << YAML::EndSeq;
    out << YAML::Key << "lifted_b" << YAML::Value << c.product->lifted_b;
    out << YAML::EndMap;
  }
  if (c.params) {
    out << YAML::Key << "params" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "gamma" << YAML::Value;
    emit_vector(out, c.params->gamma);
    out << YAML::Key << "mu" << YAML::Value;
    emit_vector(out, c.params->mu);
    out << YAML::Key << "lambda" << YAML::Value;
    emit_number(out, c.params->lambda);
    out << YAML::Key << "floor" << YAML::Value;
    emit_number(out, c.params->floor);
    out << YAML::EndMap;
  }
  if (c.x0) {
    out << YAML::Key << "x0" << YAML::Value;
    emit_vector(out, *c.x0);
  }
  if (c.stop) {
    out << YAML::Key << "stop" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "max_iter" << YAML::Value << c.stop->max_iter;
    out << YAML::Key << "residual_tol" << YAML::Value;
    emit_number(out, c.stop->residual_tol);
    out << YAML::Key << "stagnation_tol" << YAML::Value;
    emit_number(out, c.stop->stagnation_tol);
    out << YAML::EndMap;
  }
  out << YAML::Key << "output" << YAML::Value << YAML::BeginMap;
  if (!c.output.path.empty()) out << YAML::Key << "path" << YAML::Value << c.output.path;
  out << YAML::Key << "format" << YAML::Value << c.output.format << YAML::EndMap;
  if (c.seed) out << YAML::Key << "seed" << YAML::Value << *c.seed;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

PrimitiveSet build_set(const SetSpec& s, const std::string& field) {
  return config_guard(field, [&]() -> PrimitiveSet {
    if (s.type == "halfspace") return make_halfspace(to_point(s.normal, field), s.offset);
    if (s.type == "hyperplane") return make_hyperplane(to_point(s.normal, field), s.offset);
    if (s.type == "ball") return make_ball(to_point(s.center, field), s.radius);
    if (s.type == "box") return make_box(to_point(s.lower, field), to_point(s.upper, field));
    if (s.type == "singleton") return make_singleton(to_point(s.point, field));
    if (s.type == "diagonal") return make_affine_diagonal(s.block_dim, s.blocks);
    throw ConfigError("field '" + field + "': unknown set type '" + s.type + "'");
  });
}

Cutter build_cutter(const CutterSpec& spec, const std::string& field) {
  if (spec.kind == "exact") return Cutter::exact(build_set(*spec.set, field + ".set"));
  if (spec.kind == "subgradient") {
    const FunctionSpec& f = *spec.function;
    FunctionArgs args{.scalars = f.args, .allow_nonconvex = f.allow_nonconvex};
    if (f.set) args.set = build_set(*f.set, field + ".function.set");
    return config_guard(field + ".function",
                        [&] { return Cutter::subgradient(build_function(f.name, args)); });
  }
  if (spec.custom == "sublinear") return make_sublinear_cutter();
  if (spec.custom == "separator") return make_separator_cutter();
  throw ConfigError("field '" + field + "': unknown custom cutter '" + spec.custom + "'");
}

ResolvedProblem resolve(const ProblemConfig& c, std::optional<ParamMode> mode_override) {
  std::optional<Fixture> fixture;
  if (!c.fixture.empty()) {
    fixture = config_guard("fixture", [&] { return make_fixture(c.fixture); });
  }
  const ParamMode mode =
      mode_override.value_or(c.mode.value_or(fixture ? fixture->mode : ParamMode::Strict));

  ParamSpec params;
  if (c.params) {
    params = *c.params;
  } else {
    const ParamTriple& t = fixture->runs.front();
    params = ParamSpec{.gamma = {t.gamma}, .mu = {t.mu}, .lambda = t.lambda};
  }
  config_guard("params", [&] {
    if (params.varying()) {
      if (!(params.floor > 0.0)) throw Error(ErrorCode::InvalidArgument, "floor must be > 0");
      for (double g : params.gamma) validate_relaxation(g, ParamMode::Strict, "gamma");
      for (double m : params.mu) validate_relaxation(m, ParamMode::Strict, "mu");
      for (const auto* seq : {&params.gamma, &params.mu}) {
        for (double v : *seq) {
          if (v * (2.0 - v) < params.floor) {
            throw Error(ErrorCode::ParamFloorViolated,
                        "value " + format_double(v) + " has v(2 - v) below the floor " +
                            format_double(params.floor));
          }
        }
      }
    }
    (void)OperatorParams(params.gamma.front(), params.mu.front(), params.lambda, mode);
  });

  std::optional<ProductProblem> product;
  std::optional<Cutter> a;
  std::optional<Cutter> b;
  if (fixture) {
    a = fixture->a;
    b = fixture->b;
  } else if (c.product) {
    std::vector<Cutter> comps;
    for (std::size_t i = 0; i < c.product->components.size(); ++i) {
      comps.push_back(build_cutter(c.product->components[i],
                                   "product.components[" + std::to_string(i) + "]"));
    }
    const std::size_t bd = comps.front().dim();
    const DiagonalFlavor flavor =
        c.product->lifted_b == "exact" ? DiagonalFlavor::Exact : DiagonalFlavor::Subgradient;
    product = config_guard("product", [&] { return lift(comps, bd, flavor); });
    a = product->lifted_a;
    b = product->lifted_b;
  } else {
    a = build_cutter(*c.a, "a");
    b = build_cutter(*c.b, "b");
  }

  Point x0 = c.x0 ? to_point(*c.x0, "x0") : fixture->x0;
  if (product && x0.dim() == product->block_dim) {
    std::vector<Point> copies(product->blocks, x0);
    x0 = stack_blocks(copies);
  }
  config_guard("x0", [&] {
    require_dim(x0, a->dim(), "x0 against set A");
    require_dim(x0, b->dim(), "x0 against set B");
  });

  StopRule stop = c.stop.value_or(fixture ? fixture->stop : StopRule{});
  return ResolvedProblem{*a, *b, mode, params, std::move(x0), stop, std::move(product)};
}

}  // namespace relaxcut::cli
