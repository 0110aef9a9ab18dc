#pragma once

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "grank/core.hpp"
#include "grank/google.hpp"
#include "grank/power.hpp"

namespace grank {

enum class OutputFormat { Json, Csv, Tsv };

inline OutputFormat parse_output_format(std::string_view name) {
  if (name == "json") return OutputFormat::Json;
  if (name == "csv") return OutputFormat::Csv;
  if (name == "tsv") return OutputFormat::Tsv;
  throw input_error("unknown output format '" + std::string(name) + "' (want json|csv|tsv)");
}

/// JSON: one object with scores in node order plus the solver facts.
/// CSV/TSV: `node_id,score` rows sorted by descending score, ties by
/// ascending node id. Floats rendered with 17 significant digits so
/// binary64 values round-trip exactly.
inline void write_rank_result(const RankResult& r, OutputFormat format, std::ostream& out) {
  switch (format) {
    case OutputFormat::Json: {
      out << "{\"scores\":[";
      for (std::size_t i = 0; i < r.x.size(); ++i) {
        if (i) out << ",";
        out << format_double(r.x[i]);
      }
      out << "],\"iterations\":" << r.iterations
          << ",\"converged\":" << (r.converged ? "true" : "false")
          << ",\"final_residual\":" << format_double(r.final_residual) << ",\"estimated_rate\":";
      if (r.estimated_rate)
        out << format_double(*r.estimated_rate);
      else
        out << "null";
      out << "}\n";
      return;
    }
    case OutputFormat::Csv:
    case OutputFormat::Tsv: {
      const char sep = format == OutputFormat::Csv ? ',' : '\t';
      std::vector<std::size_t> order(r.x.size());
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (r.x[a] != r.x[b]) return r.x[a] > r.x[b];
        return a < b;
      });
      for (std::size_t id : order) out << id << sep << format_double(r.x[id]) << "\n";
      return;
    }
  }
}

inline std::string write_rank_result(const RankResult& r, OutputFormat format) {
  std::ostringstream out;
  write_rank_result(r, format, out);
  return out.str();
}

/// Personalization vector file: one nonnegative float per line, blank lines
/// and `#` comments ignored. Entries must sum to 1 (within the stochastic
/// tolerance); that is validated by the PersonalizationVector constructor.
inline PersonalizationVector read_personalization(std::istream& in) {
  std::vector<double> v;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view sv = detail::trim(line);
    if (sv.empty() || sv.front() == '#') continue;
    double t = 0.0;
    auto [ptr, ec] = std::from_chars(sv.data(), sv.data() + sv.size(), t);
    if (ec != std::errc{} || ptr != sv.data() + sv.size())
      throw input_error("personalization file line " + std::to_string(line_no) +
                        ": invalid number '" + std::string(sv) + "'");
    v.push_back(t);
  }
  if (v.empty()) throw input_error("personalization file: no entries");
  return PersonalizationVector(std::move(v));
}

}  // namespace grank
