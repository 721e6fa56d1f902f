#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rbw/graph.hpp"

namespace rbw {

// Graph text format:
//   graph <n> <m>
//   <u> <v>            m lines, u < v, ascending lexicographic
//   side <v> <0|1>     optional, one per vertex
void write_graph(std::ostream& out, const Graph& g);
std::string format_graph(const Graph& g);
Graph read_graph(std::istream& in);
Graph parse_graph(std::string_view text);
Graph load_graph(const std::string& path);
void save_graph(const std::string& path, const Graph& g);

/// Either a gadget spec string or a path to a graph file.
Graph resolve_graph(std::string_view spec_or_path);

// Coloring file format: one `<u> <v> <c>` line per edge.
struct ColoredEdge {
  Edge edge;
  std::int64_t color = 0;
};

std::vector<ColoredEdge> read_coloring_lines(std::istream& in);
std::vector<ColoredEdge> load_coloring_lines(const std::string& path);
/// `colors` is indexed by edge id of `g`.
void write_coloring_lines(std::ostream& out, const Graph& g, std::span<const int> colors);

}  // namespace rbw
