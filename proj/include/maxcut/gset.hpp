#pragma once

// Gset/rudy text format: a header "n m" followed by m lines "u v w" with
// 1-indexed endpoints and integer weights.

#include <charconv>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "maxcut/error.hpp"
#include "maxcut/graph.hpp"

namespace maxcut {

namespace detail {

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t begin = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > begin) fields.push_back(line.substr(begin, i - begin));
  }
  return fields;
}

inline std::int64_t parse_integer(std::string_view field, std::size_t line, const char* what) {
  std::int64_t value = 0;
  const auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || end != field.data() + field.size()) {
    throw ParseError(line, std::string(what) + " is not an integer: '" + std::string(field) + "'");
  }
  return value;
}

/// Splits text into lines, remembering 1-based line numbers.
class LineReader {
public:
  explicit LineReader(std::string_view text) : text_(text) {}

  bool next(std::string_view& line) {
    if (pos_ >= text_.size()) return false;
    const auto end = text_.find('\n', pos_);
    const auto stop = end == std::string_view::npos ? text_.size() : end;
    line = text_.substr(pos_, stop - pos_);
    pos_ = stop + 1;
    ++number_;
    return true;
  }

  std::size_t number() const noexcept { return number_; }

private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t number_ = 0;
};

}  // namespace detail

/// Parses a Gset file into a 0-indexed graph. Blank lines are ignored;
/// zero-weight edges are accepted and dropped by the Graph constructor.
inline Graph parse_gset(std::string_view text, std::string name = {}) {
  using detail::parse_integer;
  detail::LineReader reader(text);
  std::string_view line;

  std::vector<std::string_view> header;
  while (header.empty()) {
    if (!reader.next(line)) throw ParseError(reader.number() + 1, "missing header 'n m'");
    header = detail::split_fields(line);
  }
  const std::size_t header_line = reader.number();
  if (header.size() != 2) throw ParseError(header_line, "header must be 'n m'");
  const auto n = parse_integer(header[0], header_line, "vertex count");
  const auto m = parse_integer(header[1], header_line, "edge count");
  if (n < 0 || m < 0) throw ParseError(header_line, "negative vertex or edge count");

  std::vector<Edge> edges;
  std::set<std::pair<std::int64_t, std::int64_t>> seen;
  while (reader.next(line)) {
    const auto fields = detail::split_fields(line);
    if (fields.empty()) continue;
    const std::size_t at = reader.number();
    if (fields.size() != 3) throw ParseError(at, "edge line must be 'u v w'");
    auto u = parse_integer(fields[0], at, "endpoint");
    auto v = parse_integer(fields[1], at, "endpoint");
    const auto w = parse_integer(fields[2], at, "weight");
    if (u < 1 || u > n || v < 1 || v > n) throw ParseError(at, "endpoint outside 1.." + std::to_string(n));
    if (u == v) throw ParseError(at, "self-loop on vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
    if (!seen.insert({u, v}).second) {
      throw ParseError(at, "duplicate edge " + std::to_string(u) + " " + std::to_string(v));
    }
    edges.push_back({static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1), w});
  }
  if (static_cast<std::int64_t>(seen.size()) != m) {
    throw StructuralError("header declares " + std::to_string(m) + " edges but " + std::to_string(seen.size()) +
                          " were listed");
  }
  return Graph(static_cast<std::size_t>(n), std::move(edges), std::move(name));
}

/// Canonical form: header, then edges sorted by (u, v), 1-indexed.
inline std::string serialize_gset(const Graph& graph) {
  std::string out = std::to_string(graph.size()) + " " + std::to_string(graph.edge_count()) + "\n";
  for (const auto& e : graph.edges()) {
    out += std::to_string(e.u + 1);
    out += ' ';
    out += std::to_string(e.v + 1);
    out += ' ';
    out += std::to_string(e.w);
    out += '\n';
  }
  return out;
}

/// One line of n characters '0'/'1'.
inline std::string format_assignment(const Assignment& side) {
  std::string out;
  out.reserve(side.size() + 1);
  for (auto s : side) out += s ? '1' : '0';
  out += '\n';
  return out;
}

inline Assignment parse_assignment(std::string_view text) {
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.remove_suffix(1);
  Assignment side;
  side.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') throw ParseError(1, std::string("assignment character '") + c + "' is not 0 or 1");
    side.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return side;
}

}  // namespace maxcut
