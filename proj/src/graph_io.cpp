#include "polytree/graph_io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

#include "polytree/errors.hpp"

namespace polytree {
namespace {

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw ParseError("line " + std::to_string(line) + ": " + what);
}

template <class T>
T parse_number(std::string_view s, std::size_t line) {
  s = trim(s);
  T value{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
    fail(line, "expected a number, got '" + std::string(s) + "'");
  return value;
}

// Parses `key=<value>` and returns the value text.
std::string_view keyed_value(std::string_view s, std::string_view key, std::size_t line) {
  s = trim(s);
  if (s.substr(0, key.size()) != key) fail(line, "expected '" + std::string(key) + "'");
  s = trim(s.substr(key.size()));
  if (s.empty() || s.front() != '=') fail(line, "expected '=' after " + std::string(key));
  return s.substr(1);
}

struct RawGraph {
  std::size_t p = 0;
  std::vector<Edge> directed;
  std::vector<UEdge> undirected;
  std::map<Edge, double> betas;
  std::map<Node, double> omegas;
};

RawGraph parse_raw(std::string_view text, bool allow_values) {
  RawGraph g;
  bool have_header = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = std::min(text.find('\n', pos), text.size());
    std::string_view line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;

    if (!have_header) {
      g.p = parse_number<std::size_t>(keyed_value(line, "p", line_no), line_no);
      have_header = true;
      continue;
    }

    std::string_view value_part;
    if (const auto colon = line.find(':'); colon != std::string_view::npos) {
      if (!allow_values) fail(line_no, "unexpected ':' in a graph file");
      value_part = line.substr(colon + 1);
      line = trim(line.substr(0, colon));
    }

    if (line.substr(0, 4) == "node") {
      if (value_part.empty()) fail(line_no, "node line without omega");
      const Node j = parse_number<Node>(line.substr(4), line_no);
      if (j >= g.p) fail(line_no, "node label out of range");
      if (!g.omegas.emplace(j, parse_number<double>(keyed_value(value_part, "omega", line_no), line_no)).second)
        fail(line_no, "duplicate omega for node " + std::to_string(j));
      continue;
    }

    const auto arrow = line.find("->");
    const auto dash = line.find("--");
    if ((arrow == std::string_view::npos) == (dash == std::string_view::npos))
      fail(line_no, "expected 'i -> j' or 'i -- j'");
    const auto op = arrow != std::string_view::npos ? arrow : dash;
    const Node a = parse_number<Node>(line.substr(0, op), line_no);
    const Node b = parse_number<Node>(line.substr(op + 2), line_no);
    if (a >= g.p || b >= g.p) fail(line_no, "node label out of range");
    if (arrow != std::string_view::npos) {
      g.directed.push_back({a, b});
      if (allow_values) {
        if (value_part.empty()) fail(line_no, "SEM edge without beta");
        g.betas[{a, b}] = parse_number<double>(keyed_value(value_part, "beta", line_no), line_no);
      }
    } else {
      if (!value_part.empty()) fail(line_no, "undirected edge cannot carry a value");
      g.undirected.push_back(UEdge::of(a, b));
    }
  }
  if (!have_header) throw ParseError("missing 'p=<count>' header");
  return g;
}

// Converts graph construction errors into parse errors.
template <class F>
auto build(F&& f) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

}  // namespace

std::string format_cpdag(const Cpdag& c) {
  std::ostringstream out;
  out << "p=" << c.size() << '\n';
  for (const Edge& e : c.directed_edges()) out << e.from << " -> " << e.to << '\n';
  for (const UEdge& e : c.undirected_edges()) out << e.a << " -- " << e.b << '\n';
  return out.str();
}

std::string format_dag(const Dag& g) {
  std::ostringstream out;
  out << "p=" << g.size() << '\n';
  for (const Edge& e : g.edges()) out << e.from << " -> " << e.to << '\n';
  return out.str();
}

std::string format_sem(const LinearSem& m) {
  std::ostringstream out;
  out << "p=" << m.size() << '\n';
  const auto edges = m.dag().edges();
  const auto betas = m.edge_betas();
  for (std::size_t k = 0; k < edges.size(); ++k)
    out << edges[k].from << " -> " << edges[k].to << " : beta=" << format_double(betas[k]) << '\n';
  for (Node j = 0; j < m.size(); ++j) out << "node " << j << " : omega=" << format_double(m.omega()[j]) << '\n';
  return out.str();
}

Cpdag parse_cpdag(std::string_view text) {
  RawGraph g = parse_raw(text, false);
  return build([&] { return Cpdag(g.p, std::move(g.directed), std::move(g.undirected)); });
}

Dag parse_dag(std::string_view text) {
  RawGraph g = parse_raw(text, false);
  if (!g.undirected.empty()) throw ParseError("DAG file contains an undirected edge");
  return build([&] { return Dag(g.p, std::move(g.directed)); });
}

LinearSem parse_sem(std::string_view text) {
  RawGraph g = parse_raw(text, true);
  if (!g.undirected.empty()) throw ParseError("SEM file contains an undirected edge");
  if (g.omegas.size() != g.p) throw ParseError("SEM file needs one omega line per node");
  std::vector<WeightedEdge> edges;
  edges.reserve(g.directed.size());
  for (const auto& [e, beta] : g.betas) edges.push_back({e.from, e.to, beta});
  std::vector<double> omega;
  omega.reserve(g.p);
  for (const auto& [node, w] : g.omegas) omega.push_back(w);
  if (edges.size() != g.directed.size()) throw ParseError("duplicate edge in SEM file");
  return build([&] { return LinearSem(g.p, edges, std::move(omega)); });
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failed: " + path.string());
  return buf.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace polytree
