#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "relaxcut/diagnostics.hpp"
#include "relaxcut/error.hpp"
#include "relaxcut/functions.hpp"
#include "relaxcut/instances.hpp"
#include "relaxcut/random.hpp"

namespace relaxcut::cli {
namespace {

const std::vector<double> kAuditGammas = {0.1, 0.5, 1.0, 1.5, 1.9};

std::string fmt(double v) { return format_double(v); }

std::string params_label(double g, double m, double l) {
  return "(" + fmt(g) + ", " + fmt(m) + ", " + fmt(l) + ")";
}

TraceFormat pick_format(const CommonOptions& opts, const std::string& fallback) {
  return opts.format.value_or(parse_trace_format(fallback));
}

void write_file(const std::string& path, const IterationTrace& trace, TraceFormat format) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write '" + path + "'");
  write_trace(f, trace, format);
}

// "dir/name.csv", 2 -> "dir/name_2.csv"
std::string numbered_path(const std::string& path, std::size_t index) {
  const auto slash = path.find_last_of('/');
  const auto dot = path.find_last_of('.');
  const bool has_ext = dot != std::string::npos && (slash == std::string::npos || dot > slash);
  const std::string stem = has_ext ? path.substr(0, dot) : path;
  const std::string ext = has_ext ? path.substr(dot) : "";
  return stem + "_" + std::to_string(index) + ext;
}

void print_summary(std::ostream& err, const IterationTrace& t) {
  const TraceRow& r = t.final_row();
  err << "termination: " << to_string(t.reason) << "\n"
      << "iterations: " << t.iterations << "\n"
      << "residualA: " << fmt(r.residual_a) << "\n"
      << "residualB: " << fmt(r.residual_b) << "\n"
      << "final x: " << r.x.to_string() << "\n";
  if (!t.error.empty()) err << "error: " << t.error << "\n";
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (item.empty()) continue;
    try {
      out.push_back(parse_double(item));
    } catch (const Error&) {
      throw ConfigError("grid axis '" + key + "': not a number: '" + item + "'");
    }
  }
  if (out.empty()) throw ConfigError("grid axis '" + key + "' has no values");
  return out;
}

// Points of Fix P gathered from witnesses, exact-set samples, or by pushing
// random points through the cutter until they land in its fixed set.
std::vector<Point> sample_fixed_points(const Cutter& c, Rng& rng, std::size_t count,
                                       double radius) {
  std::vector<Point> out;
  if (const auto* custom = std::get_if<CustomCutter>(&c.variant())) {
    out = custom->witnesses;
  }
  if (const auto* exact = std::get_if<ExactCutter>(&c.variant())) {
    while (out.size() < count) out.push_back(sample_in_set(rng, exact->set, radius));
    return out;
  }
  for (std::size_t attempt = 0; out.size() < count && attempt < 20 * count; ++attempt) {
    Point z = rng.point_in_box(c.dim(), -radius, radius);
    for (int k = 0; k < 50 && !c.fixes(z); ++k) z = c.apply(z);
    if (c.fixes(z)) out.push_back(std::move(z));
  }
  return out;
}

void report_line(std::ostream& out, const std::string& label, const InequalityResult& r) {
  out << (r.pass ? "PASS " : "FAIL ") << label << ": pairs=" << r.pairs
      << " worst_slack=" << fmt(r.worst_slack);
  if (!r.pass && r.worst_x) {
    out << " at x=" << r.worst_x->to_string() << " y=" << r.worst_y->to_string();
  }
  out << "\n";
}

}  // namespace

int exit_code(TerminationReason reason) {
  switch (reason) {
    case TerminationReason::ResidualMet: return kExitResidualMet;
    case TerminationReason::MaxIter: return kExitMaxIter;
    case TerminationReason::Stagnated: return kExitStagnated;
    case TerminationReason::Error: return kExitError;
  }
  return kExitError;
}

SweepGrid parse_grid(const std::string& text) {
  SweepGrid g;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ';')) {
    if (part.find_first_not_of(" \t") == std::string::npos) continue;
    const auto eq = part.find('=');
    if (eq == std::string::npos) throw ConfigError("grid entry '" + part + "' lacks '='");
    std::string key = part.substr(0, eq);
    key.erase(0, key.find_first_not_of(" \t"));
    key.erase(key.find_last_not_of(" \t") + 1);
    std::vector<double>* axis = key == "gamma"    ? &g.gamma
                                : key == "mu"     ? &g.mu
                                : key == "lambda" ? &g.lambda
                                                  : nullptr;
    if (!axis) throw ConfigError("unknown grid axis '" + key + "' (valid: gamma, mu, lambda)");
    if (!axis->empty()) throw ConfigError("grid axis '" + key + "' given twice");
    *axis = parse_list(key, part.substr(eq + 1));
  }
  if (g.gamma.empty() && g.mu.empty() && g.lambda.empty()) throw ConfigError("empty grid");
  return g;
}

IterationTrace run_problem(const ResolvedProblem& p) {
  const ParamSpec& s = p.params;
  if (s.varying()) {
    const auto gammas = s.gamma;
    const auto mus = s.mu;
    return varying_params_solve(
        p.a, p.b, [gammas](std::size_t n) { return gammas[n % gammas.size()]; },
        [mus](std::size_t n) { return mus[n % mus.size()]; }, s.lambda, p.x0, p.stop, s.floor);
  }
  return solve(p.a, p.b, OperatorParams(s.gamma.front(), s.mu.front(), s.lambda, p.mode), p.x0,
               p.stop);
}

int cmd_solve(const std::string& config_path, const CommonOptions& opts, std::ostream& out,
              std::ostream& err) {
  const ProblemConfig config = load_config(config_path);
  const ResolvedProblem problem = resolve(config, opts.mode);
  const TraceFormat format = pick_format(opts, config.output.format);
  const std::string path = opts.out.value_or(config.output.path);

  const IterationTrace trace = run_problem(problem);
  if (path.empty() || path == "-") {
    write_trace(out, trace, format);
  } else {
    write_file(path, trace, format);
  }
  if (!problem.params.varying()) {
    err << "method: "
        << to_string(classify_params(OperatorParams(problem.params.gamma.front(),
                                                    problem.params.mu.front(),
                                                    problem.params.lambda, problem.mode)))
        << "\n";
  }
  print_summary(err, trace);
  if (problem.product) {
    err << "block mean: "
        << block_mean(trace.final_point(), problem.product->block_dim).to_string() << "\n";
  }
  return exit_code(trace.reason);
}

int cmd_sweep(const std::string& config_path, const std::string& grid_text, std::size_t jobs,
              const CommonOptions& opts, std::ostream& out, std::ostream& err) {
  const ProblemConfig config = load_config(config_path);
  const SweepGrid grid = parse_grid(grid_text);
  const ResolvedProblem base = resolve(config, opts.mode);
  if (base.params.varying() && (grid.gamma.empty() || grid.mu.empty())) {
    throw ConfigError("sweep over a config with parameter sequences must set both gamma and mu");
  }
  const auto axis = [](const std::vector<double>& g, double fallback) {
    return g.empty() ? std::vector<double>{fallback} : g;
  };
  const auto gs = axis(grid.gamma, base.params.gamma.front());
  const auto ms = axis(grid.mu, base.params.mu.front());
  const auto ls = axis(grid.lambda, base.params.lambda);

  std::vector<OperatorParams> cells;
  for (double g : gs) {
    for (double m : ms) {
      for (double l : ls) {
        try {
          cells.emplace_back(g, m, l, base.mode);
        } catch (const Error& e) {
          throw ConfigError("grid cell " + params_label(g, m, l) + ": " + e.what());
        }
      }
    }
  }

  std::vector<IterationTrace> traces(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      traces[i] = solve(base.a, base.b, cells[i], base.x0, base.stop);
    }
  };
  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = std::clamp<std::size_t>(jobs == 0 ? hw : jobs, 1, cells.size());
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }

  std::ofstream file;
  const std::string path = opts.out.value_or("");
  if (!path.empty() && path != "-") {
    file.open(path, std::ios::binary);
    if (!file) throw ConfigError("cannot write '" + path + "'");
  }
  std::ostream& dest = file.is_open() ? static_cast<std::ostream&>(file) : out;
  dest << "gamma,mu,lambda,method,iterations,residualA,residualB,terminationReason\n";
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const OperatorParams& p = cells[i];
    const TraceRow& r = traces[i].final_row();
    dest << fmt(p.gamma()) << ',' << fmt(p.mu()) << ',' << fmt(p.lambda()) << ','
         << to_string(classify_params(p)) << ',' << traces[i].iterations << ','
         << fmt(r.residual_a) << ',' << fmt(r.residual_b) << ',' << to_string(traces[i].reason)
         << '\n';
  }
  err << cells.size() << " cells on " << workers << " worker(s)\n";
  return kExitResidualMet;
}

int cmd_audit(const std::string& config_path, std::size_t samples, std::uint64_t seed,
              const CommonOptions& opts, std::ostream& out, std::ostream& err) {
  if (samples == 0) throw ConfigError("--samples must be positive");
  const ProblemConfig config = load_config(config_path);
  const ResolvedProblem problem = resolve(config, opts.mode);

  // --samples counts (x, y) pairs; the audits take the product of two lists
  // of ceil(sqrt(samples)) points each. The start point is always among the xs.
  const auto side =
      static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(samples))));
  const double radius = std::max(5.0, 2.0 * norm(problem.x0));
  Rng rng(seed);
  std::vector<Point> xs{problem.x0};
  for (std::size_t i = 1; i < side; ++i) {
    xs.push_back(i % 2 == 0 ? rng.point_in_box(problem.x0.dim(), -radius, radius)
                            : problem.x0 + 2.0 * rng.gaussian_point(problem.x0.dim()));
  }
  const std::vector<Point> zs_a = sample_fixed_points(problem.a, rng, side, radius);
  const std::vector<Point> zs_b = sample_fixed_points(problem.b, rng, side, radius);

  out << "audit seed=" << seed << " samples=" << samples << " (" << side << " x " << side
      << ")\n";
  bool pass = true;
  const auto side_audit = [&](const char* label, const Cutter& c, const std::vector<Point>& zs) {
    if (zs.empty()) {
      out << "SKIP " << label << ": no sampled fixed points\n";
      return;
    }
    const InequalityResult cut = cutter_audit(c, xs, zs);
    report_line(out, std::string(label) + " cutter", cut);
    pass = pass && cut.pass;
    for (double g : kAuditGammas) {
      const AuditReport r = sqne_audit(c, g, xs, zs);
      for (const auto& check : r.checks) {
        report_line(out, std::string(label) + " " + check.name + " gamma=" + fmt(g), check);
      }
      pass = pass && r.pass();
    }
  };
  side_audit("A", problem.a, zs_a);
  side_audit("B", problem.b, zs_b);

  if (!problem.params.varying()) {
    std::vector<Point> refs;
    for (const Point& z : zs_a) {
      if (problem.b.fixes(z)) refs.push_back(z);
    }
    for (const Point& z : zs_b) {
      if (problem.a.fixes(z)) refs.push_back(z);
    }
    if (refs.empty()) {
      out << "SKIP T: no sampled points of A cap B\n";
    } else {
      const ParamSpec& s = problem.params;
      const AuditReport r = averaged_operator_audit(problem.a, problem.b, s.gamma.front(),
                                                    s.mu.front(), s.lambda, xs, refs);
      for (const auto& check : r.checks) {
        report_line(out, "T " + check.name + " " +
                             params_label(s.gamma.front(), s.mu.front(), s.lambda),
                    check);
      }
      pass = pass && r.pass();
    }
  }
  out << (pass ? "audit passed" : "audit FAILED") << "\n";
  err.flush();
  return pass ? kExitResidualMet : kExitCheckFailed;
}

int cmd_run_fixture(const std::string& name, const CommonOptions& opts, std::ostream& out,
                    std::ostream& err) {
  const Fixture fixture = [&] {
    try {
      return make_fixture(name);
    } catch (const Error& e) {
      throw ConfigError(e.what());
    }
  }();
  const FixtureResult result = [&] {
    try {
      return run_fixture(fixture, opts.mode);
    } catch (const Error& e) {
      throw ConfigError("fixture '" + name + "': " + e.what());
    }
  }();
  const TraceFormat format = opts.format.value_or(TraceFormat::Csv);

  for (std::size_t i = 0; i < result.runs.size(); ++i) {
    const FixtureRun& run = result.runs[i];
    if (opts.out && *opts.out != "-") {
      const std::string path =
          result.runs.size() == 1 ? *opts.out : numbered_path(*opts.out, i + 1);
      write_file(path, run.trace, format);
      err << "trace " << params_label(run.params.gamma, run.params.mu, run.params.lambda)
          << " -> " << path << "\n";
    } else {
      write_trace(out, run.trace, format);
    }
  }
  err << "fixture " << fixture.name << ": " << fixture.description << "\n";
  for (const FixtureRun& run : result.runs) {
    err << "run " << params_label(run.params.gamma, run.params.mu, run.params.lambda) << ": "
        << to_string(run.trace.reason) << " after " << run.trace.iterations << " steps\n";
  }
  for (const FixtureCheck& c : result.checks) {
    err << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n";
  }
  return result.pass() ? kExitResidualMet : kExitCheckFailed;
}

int cmd_list(std::ostream& out) {
  out << "fixtures:\n";
  for (const auto& n : fixture_names()) out << "  " << n << "\n";
  out << "functions:\n";
  for (const auto& e : function_catalog()) out << "  " << e.name << "  " << e.summary << "\n";
  out << "custom cutters:\n";
  for (const auto& n : custom_cutter_names()) out << "  " << n << "\n";
  out << "set types:\n  halfspace hyperplane ball box singleton diagonal\n";
  return kExitResidualMet;
}

}  // namespace relaxcut::cli
