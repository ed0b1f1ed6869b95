#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "relaxcut/solver.hpp"

namespace relaxcut {

enum class TraceFormat { Csv, Jsonl };

TraceFormat parse_trace_format(std::string_view name);
std::string_view to_string(TraceFormat format);

/// Shortest decimal that parses back to the identical double; "nan", "inf"
/// and "-inf" for non-finite values.
std::string format_double(double v);
double parse_double(std::string_view text);

/// CSV: header `n,x0,...,x{d-1},residualA,residualB,theta,stepNorm`, one row per
/// recorded iterate.
void write_trace_csv(std::ostream& os, const IterationTrace& trace);

/// JSONL: one object per recorded iterate with keys n, x, residualA,
/// residualB, theta, stepNorm, gamma, mu, lambda.
void write_trace_jsonl(std::ostream& os, const IterationTrace& trace);

void write_trace(std::ostream& os, const IterationTrace& trace, TraceFormat format);

/// Parsers for the two formats above. Only the rows are recovered; CSV rows
/// carry no per-step parameters, so gamma, mu and lambda keep their defaults.
std::vector<TraceRow> read_trace_csv(std::istream& is);
std::vector<TraceRow> read_trace_jsonl(std::istream& is);

}  // namespace relaxcut
