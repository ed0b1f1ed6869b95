#include "relaxcut/trace_io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "relaxcut/error.hpp"

namespace relaxcut {
namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(sep, start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

// "-0" would read back as the integer 0, so negative zero keeps a fraction.
std::string json_number(double v) {
  if (!std::isfinite(v)) return "null";
  if (v == 0.0 && std::signbit(v)) return "-0.0";
  return format_double(v);
}

double json_double(const nlohmann::json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

}  // namespace

TraceFormat parse_trace_format(std::string_view name) {
  if (name == "csv") return TraceFormat::Csv;
  if (name == "jsonl") return TraceFormat::Jsonl;
  throw Error(ErrorCode::InvalidArgument,
              "unknown trace format '" + std::string(name) + "' (valid: csv, jsonl)");
}

std::string_view to_string(TraceFormat format) {
  return format == TraceFormat::Csv ? "csv" : "jsonl";
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
  if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (text == "inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw Error(ErrorCode::InvalidArgument, "not a number: '" + std::string(text) + "'");
  }
  return v;
}

void write_trace_csv(std::ostream& os, const IterationTrace& trace) {
  const std::size_t dim = trace.rows.empty() ? 0 : trace.rows.front().x.dim();
  os << "n";
  for (std::size_t i = 0; i < dim; ++i) os << ",x" << i;
  os << ",residualA,residualB,theta,stepNorm\n";
  for (const TraceRow& r : trace.rows) {
    os << r.n;
    for (double v : r.x) os << ',' << format_double(v);
    os << ',' << format_double(r.residual_a) << ',' << format_double(r.residual_b) << ','
       << format_double(r.theta) << ',' << format_double(r.step_norm) << '\n';
  }
}

void write_trace_jsonl(std::ostream& os, const IterationTrace& trace) {
  for (const TraceRow& r : trace.rows) {
    os << "{\"n\":" << r.n << ",\"x\":[";
    for (std::size_t i = 0; i < r.x.dim(); ++i) os << (i ? "," : "") << json_number(r.x[i]);
    os << "],\"residualA\":" << json_number(r.residual_a)
       << ",\"residualB\":" << json_number(r.residual_b) << ",\"theta\":" << json_number(r.theta)
       << ",\"stepNorm\":" << json_number(r.step_norm) << ",\"gamma\":" << json_number(r.gamma)
       << ",\"mu\":" << json_number(r.mu) << ",\"lambda\":" << json_number(r.lambda) << "}\n";
  }
}

void write_trace(std::ostream& os, const IterationTrace& trace, TraceFormat format) {
  if (format == TraceFormat::Csv) {
    write_trace_csv(os, trace);
  } else {
    write_trace_jsonl(os, trace);
  }
}

std::vector<TraceRow> read_trace_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw Error(ErrorCode::InvalidArgument, "empty CSV trace");
  const auto header = split(line, ',');
  if (header.size() < 6 || header.front() != "n" || header.back() != "stepNorm") {
    throw Error(ErrorCode::InvalidArgument, "unexpected CSV trace header: " + line);
  }
  const std::size_t dim = header.size() - 5;
  std::vector<TraceRow> rows;
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != header.size()) {
      throw Error(ErrorCode::InvalidArgument,
                  "CSV trace line " + std::to_string(line_no) + " has " +
                      std::to_string(fields.size()) + " fields, expected " +
                      std::to_string(header.size()));
    }
    TraceRow r;
    r.n = static_cast<std::size_t>(parse_double(fields[0]));
    std::vector<double> coords(dim);
    for (std::size_t i = 0; i < dim; ++i) coords[i] = parse_double(fields[1 + i]);
    r.x = Point::zeros(dim);
    std::copy(coords.begin(), coords.end(), r.x.coords().begin());
    r.residual_a = parse_double(fields[dim + 1]);
    r.residual_b = parse_double(fields[dim + 2]);
    r.theta = parse_double(fields[dim + 3]);
    r.step_norm = parse_double(fields[dim + 4]);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<TraceRow> read_trace_jsonl(std::istream& is) {
  std::vector<TraceRow> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      TraceRow r;
      r.n = j.at("n").get<std::size_t>();
      const auto& xs = j.at("x");
      r.x = Point::zeros(xs.size());
      for (std::size_t i = 0; i < xs.size(); ++i) r.x[i] = json_double(xs[i]);
      r.residual_a = json_double(j.at("residualA"));
      r.residual_b = json_double(j.at("residualB"));
      r.theta = json_double(j.at("theta"));
      r.step_norm = json_double(j.at("stepNorm"));
      r.gamma = json_double(j.at("gamma"));
      r.mu = json_double(j.at("mu"));
      r.lambda = json_double(j.at("lambda"));
      rows.push_back(std::move(r));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::InvalidArgument,
                  "JSONL trace line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return rows;
}

}  // namespace relaxcut
