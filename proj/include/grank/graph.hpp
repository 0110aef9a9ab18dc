#pragma once

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "grank/core.hpp"

namespace grank {

struct Edge {
  std::size_t source = 0;
  std::size_t target = 0;
  double weight = 1.0;
};

/// Weighted directed graph on nodes 0..n-1. Duplicate (source,target) pairs
/// are legal and mean accumulated weight; self loops are legal.
struct DirectedGraph {
  std::size_t n = 0;
  std::vector<Edge> edges;

  void validate() const {
    if (n == 0) throw input_error("graph has no nodes");
    for (const Edge& e : edges) {
      if (e.source >= n || e.target >= n)
        throw input_error("edge (" + std::to_string(e.source) + "," + std::to_string(e.target) +
                          ") references a node outside [0," + std::to_string(n) + ")");
      if (!(e.weight > 0.0) || !std::isfinite(e.weight))
        throw input_error("edge (" + std::to_string(e.source) + "," + std::to_string(e.target) +
                          ") has non-positive weight");
    }
  }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split_fields(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

inline std::size_t parse_node_id(std::string_view tok, std::size_t line_no) {
  if (!tok.empty() && tok.front() == '-')
    throw input_error("line " + std::to_string(line_no) + ": negative node id '" +
                      std::string(tok) + "'");
  std::uint64_t id = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), id);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw input_error("line " + std::to_string(line_no) + ": invalid node id '" +
                      std::string(tok) + "'");
  return static_cast<std::size_t>(id);
}

inline double parse_weight(std::string_view tok, std::size_t line_no) {
  double w = 0.0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), w);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw input_error("line " + std::to_string(line_no) + ": invalid weight '" +
                      std::string(tok) + "'");
  if (!(w > 0.0) || !std::isfinite(w))
    throw input_error("line " + std::to_string(line_no) + ": weight must be positive, got '" +
                      std::string(tok) + "'");
  return w;
}

}  // namespace detail

/// Edge-list grammar: one `source target [weight]` triple per line, fields
/// separated by spaces or tabs, LF or CRLF line ends. `#` starts a comment
/// line; the special comment `# nodes: N` raises the node count above
/// max-id+1 (it never shrinks it). Weight defaults to 1.
inline DirectedGraph parse_edge_list(std::istream& in) {
  DirectedGraph g;
  std::size_t header_n = 0;
  std::size_t max_id_plus1 = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view sv = detail::trim(line);
    if (sv.empty()) continue;
    if (sv.front() == '#') {
      std::string_view body = detail::trim(sv.substr(1));
      constexpr std::string_view kNodes = "nodes:";
      if (body.substr(0, kNodes.size()) == kNodes) {
        std::string_view num = detail::trim(body.substr(kNodes.size()));
        std::uint64_t nval = 0;
        auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), nval);
        if (ec != std::errc{} || ptr != num.data() + num.size())
          throw input_error("line " + std::to_string(line_no) + ": malformed nodes header");
        header_n = std::max<std::size_t>(header_n, nval);
      }
      continue;
    }
    auto fields = detail::split_fields(sv);
    if (fields.size() != 2 && fields.size() != 3)
      throw input_error("line " + std::to_string(line_no) +
                        ": expected 'source target [weight]', got " +
                        std::to_string(fields.size()) + " fields");
    Edge e;
    e.source = detail::parse_node_id(fields[0], line_no);
    e.target = detail::parse_node_id(fields[1], line_no);
    e.weight = fields.size() == 3 ? detail::parse_weight(fields[2], line_no) : 1.0;
    max_id_plus1 = std::max({max_id_plus1, e.source + 1, e.target + 1});
    g.edges.push_back(e);
  }
  g.n = std::max(header_n, max_id_plus1);
  if (g.n == 0) throw input_error("edge list defines no nodes");
  return g;
}

inline DirectedGraph parse_edge_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_edge_list(in);
}

/// Canonical writer: `# nodes: N` header, duplicate edges coalesced, sorted
/// by (source, target), weights rendered round-trip exact.
inline void write_edge_list(const DirectedGraph& g, std::ostream& out) {
  g.validate();
  std::map<std::pair<std::size_t, std::size_t>, double> acc;
  for (const Edge& e : g.edges) acc[{e.source, e.target}] += e.weight;
  out << "# nodes: " << g.n << "\n";
  for (const auto& [key, w] : acc)
    out << key.first << " " << key.second << " " << format_double(w) << "\n";
}

}  // namespace grank
