#include "rbw/graph_io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "rbw/error.hpp"
#include "rbw/gadgets.hpp"

namespace rbw {

void write_graph(std::ostream& out, const Graph& g) {
  out << "graph " << g.order() << ' ' << g.size() << '\n';
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
  if (g.has_sides()) {
    for (Vertex v = 0; v < g.order(); ++v) {
      out << "side " << v << ' ' << static_cast<int>(g.side(v)) << '\n';
    }
  }
}

std::string format_graph(const Graph& g) {
  std::ostringstream out;
  write_graph(out, g);
  return out.str();
}

namespace {

[[noreturn]] void bad(int line, const std::string& why) {
  throw Error(ErrorKind::Format, "line " + std::to_string(line) + ": " + why);
}

}  // namespace

Graph read_graph(std::istream& in) {
  std::string line;
  int lineno = 0;
  int n = -1;
  long m = -1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream head(line);
    std::string word;
    head >> word >> n >> m;
    if (word != "graph" || head.fail() || n < 0 || m < 0) bad(lineno, "expected 'graph <n> <m>'");
    break;
  }
  if (n < 0) bad(lineno, "missing header");

  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  std::vector<Side> sides;
  std::vector<char> side_seen;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream row(line);
    if (line.rfind("side", 0) == 0) {
      std::string word;
      long v = -1;
      int s = -1;
      row >> word >> v >> s;
      if (row.fail() || v < 0 || v >= n || (s != 0 && s != 1)) bad(lineno, "expected 'side <v> <0|1>'");
      if (sides.empty()) {
        sides.assign(static_cast<std::size_t>(n), Side::Left);
        side_seen.assign(static_cast<std::size_t>(n), 0);
      }
      sides[static_cast<std::size_t>(v)] = static_cast<Side>(s);
      side_seen[static_cast<std::size_t>(v)] = 1;
      continue;
    }
    long u = -1;
    long v = -1;
    row >> u >> v;
    if (row.fail()) bad(lineno, "expected '<u> <v>'");
    if (!sides.empty()) bad(lineno, "edge after side labels");
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
  }
  if (static_cast<long>(edges.size()) != m) {
    throw Error(ErrorKind::Format, "header announces " + std::to_string(m) + " edges, found " +
                                       std::to_string(edges.size()));
  }
  std::optional<std::vector<Side>> side_table;
  if (!sides.empty()) {
    for (char seen : side_seen) {
      if (!seen) throw Error(ErrorKind::Format, "side labels must cover every vertex");
    }
    side_table = std::move(sides);
  }
  try {
    return Graph(n, std::move(edges), std::move(side_table));
  } catch (const Error& e) {
    throw Error(ErrorKind::Format, e.what());
  }
}

Graph parse_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_graph(in);
}

Graph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Format, "cannot open graph file " + path);
  return read_graph(in);
}

void save_graph(const std::string& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Format, "cannot write " + path);
  write_graph(out, g);
}

Graph resolve_graph(std::string_view spec_or_path) {
  const std::string s(spec_or_path);
  if (std::filesystem::is_regular_file(s)) return load_graph(s);
  return build(parse_spec(s));
}

std::vector<ColoredEdge> read_coloring_lines(std::istream& in) {
  std::vector<ColoredEdge> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream row(line);
    long u = -1;
    long v = -1;
    long long c = -1;
    row >> u >> v >> c;
    if (row.fail() || c < 0) bad(lineno, "expected '<u> <v> <c>' with c >= 0");
    out.push_back({Edge::of(static_cast<Vertex>(u), static_cast<Vertex>(v)), c});
  }
  return out;
}

std::vector<ColoredEdge> load_coloring_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Format, "cannot open coloring file " + path);
  return read_coloring_lines(in);
}

void write_coloring_lines(std::ostream& out, const Graph& g, std::span<const int> colors) {
  for (EdgeId id = 0; id < g.size(); ++id) {
    const auto& e = g.edge(id);
    out << e.u << ' ' << e.v << ' ' << colors[static_cast<std::size_t>(id)] << '\n';
  }
}

}  // namespace rbw
