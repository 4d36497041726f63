#include "strukt/io.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include "strukt/error.hpp"

namespace strukt {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

bool to_int(std::string_view s, long long& out) {
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && p == s.data() + s.size();
}

}  // namespace

Graph parse_graph(std::string_view text) {
  Graph g;
  bool have_header = false;
  long long n = 0;
  int lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++lineno;
    auto tok = split_ws(line);
    if (tok.empty() || tok[0].front() == '#') continue;
    if (tok[0] == "p") {
      if (have_header) throw ParseError(lineno, "duplicate 'p' line");
      if (tok.size() != 2 || !to_int(tok[1], n) || n < 0) {
        throw ParseError(lineno, "expected 'p <num_vertices>'");
      }
      g = Graph(static_cast<int>(n));
      have_header = true;
    } else if (tok[0] == "e") {
      if (!have_header) throw ParseError(lineno, "edge before 'p' line");
      long long u = 0;
      long long v = 0;
      if (tok.size() != 3 || !to_int(tok[1], u) || !to_int(tok[2], v)) {
        throw ParseError(lineno, "expected 'e <u> <v>'");
      }
      if (u < 0 || v < 0 || u >= n || v >= n) {
        throw ValidationError("line " + std::to_string(lineno) + ": endpoint out of range");
      }
      if (u == v) throw ValidationError("line " + std::to_string(lineno) + ": loop edge");
      g.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
    } else {
      throw ParseError(lineno, "unknown line type '" + std::string(tok[0]) + "'");
    }
  }
  if (!have_header) throw ParseError(0, "missing 'p' line");
  return g;
}

std::string serialize_graph(const Graph& g) {
  const auto& vs = g.vertices();
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (vs[i] != static_cast<Vertex>(i)) {
      throw ValidationError("serialize_graph needs vertex ids 0..n-1; compact the graph first");
    }
  }
  std::ostringstream os;
  os << "p " << vs.size() << '\n';
  for (const Edge& e : g.edges()) os << "e " << e.u << ' ' << e.v << '\n';
  return os.str();
}

std::string read_text(const std::string& path) {
  std::ostringstream os;
  if (path == "-") {
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  os << in.rdbuf();
  return os.str();
}

Graph read_graph(const std::string& path) { return parse_graph(read_text(path)); }

Ordering parse_ordering(std::string_view text) {
  Ordering o;
  std::string buf(text);
  for (char& c : buf) {
    if (c == ',' || c == '\n') c = ' ';
  }
  for (auto tok : split_ws(buf)) {
    long long v = 0;
    if (!to_int(tok, v) || v < 0) throw ParseError(0, "bad vertex '" + std::string(tok) + "' in ordering");
    o.sequence.push_back(static_cast<Vertex>(v));
  }
  return o;
}

std::string format_ordering(const Ordering& o) {
  std::string s;
  for (std::size_t i = 0; i < o.sequence.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(o.sequence[i]);
  }
  return s;
}

}  // namespace strukt
