#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rbw/coloring.hpp"
#include "rbw/graph.hpp"

namespace rbw {

// ---- Zero-statement colorings ------------------------------------------------------

/// Component shapes of the random part. Canonical labelings (vertex lists follow them):
///   K2   x1-x2
///   P3   x1-x2-x3
///   P4   x1-x2-x3-x4
///   K13  center y, then leaves x1, x2, x3
enum class Shape { K2, P3, P4, K13 };

Shape parse_shape(const std::string& name);  // K2, P3, P4, K13 (or S3)
std::string to_string(Shape s);
Graph shape_graph(Shape s);

/// Colors from the construction itself (internal edges 1..3, table classes 4..7, fresh
/// colors above) next to the canonical form.
struct ExplicitColoring {
  std::vector<std::int64_t> palette;  // by edge id
  ProperColoring coloring;
};

/// Coloring of K_{L,R} = join(shape_graph(l), shape_graph(r)) with no rainbow K4.
/// Internal edges: K2 -> 1; P3 -> 1,2; P4 -> 1,2,3 along the path; K13 -> y x_i gets i.
/// Cross edges follow the explicit tables for (K13,K13), (K13,P4), (P4,P4), the mirror
/// of (K13,P4) for (P4,K13); K2 and P3 are colored as the first two or three vertices of
/// a P4. Every other cross edge gets its own color, counting up from 8 in edge order.
ExplicitColoring appendix_b_coloring(Shape l, Shape r);

struct Component {
  Shape shape;
  std::vector<Vertex> vertices;  // in canonical labeling order
};

struct ComponentStructure {
  std::vector<Component> left;
  std::vector<Component> right;
};

/// Hands out disjoint color blocks above the reserved internal colors {1, 2, 3}.
class PaletteAllocator {
 public:
  static constexpr std::array<std::int64_t, 3> kReserved{1, 2, 3};

  std::vector<std::int64_t> allocate(std::size_t count);
  std::int64_t next() const { return next_; }
  const std::vector<std::vector<std::int64_t>>& blocks() const { return blocks_; }

 private:
  std::int64_t next_ = 4;
  std::vector<std::vector<std::int64_t>> blocks_;
};

struct ZeroStatementColoring {
  Graph graph;  // seed plus component edges
  ExplicitColoring coloring;
  std::vector<std::vector<std::int64_t>> blocks;  // A_ij, in (i, j) lexicographic order
};

/// Colors seed + components: component edges as in appendix_b_coloring, the edges between
/// the i-th left and j-th right component with block A_ij (the pair's table coloring,
/// renamed in order of first use), then every remaining edge a new color in edge order.
/// `seed` must be K_{floor(n/2), ceil(n/2)} with side labels (ErrorKind::Parameter);
/// components must be vertex-disjoint and inside the named side (ErrorKind::Structure).
ZeroStatementColoring zero_statement_coloring(const Graph& seed, const ComponentStructure& random_part);

/// Reads the components off a sided graph: edges inside a side must form vertex-disjoint
/// K2, P3, P4 or K13 (ErrorKind::Structure otherwise). Components ordered by least vertex.
ComponentStructure derive_components(const Graph& g);

// ---- K5 ---------------------------------------------------------------------------

struct K5Extraction {
  SubgraphCopy k5;  // vertex map into the gadget, pattern Complete(5)
  int t = 0;        // chosen leaf y_t, 2..5
};

/// Gadget is build(TildeK35): x1..x3 = 0..2, y1 = 3 (the star center), y2..y5 = 4..7.
/// Picks the least t with psi(y1 y_t) outside the triangle's colors and returns the K5 on
/// x1, x2, x3, y1, y_t. Throws ErrorKind::GadgetState if the HatK(3,5) part is not rainbow.
K5Extraction extract_rainbow_k5(const Graph& gadget, const ProperColoring& coloring);

struct InterestSet {
  std::vector<Vertex> members;     // N_psi
  std::vector<Vertex> candidates;  // N': star colors avoid the triangle's colors
};

/// Gadget is build(HatK(3, n)). Keeps the vertices of N whose star colors avoid the
/// triangle's, then admits them in index order when their star colors avoid those of all
/// admitted vertices. Throws ErrorKind::GadgetState if the triangle is not rainbow.
InterestSet greedy_interest_set(const Graph& gadget, const ProperColoring& coloring);

// ---- K7 ---------------------------------------------------------------------------

/// Two candidates are compatible when their colors on edges to K_psi are disjoint; with
/// both of interest, a K4 of K_psi plus any triangle on compatible vertices then only
/// repeats a color between a triangle edge and an edge of K_psi or a cross edge.
struct CompatibleSet {
  std::array<std::vector<Vertex>, 4> k4s;  // K_psi, four disjoint rainbow K4
  std::vector<Vertex> interest;            // candidates of interest
  std::vector<Vertex> members;             // C_psi
  std::uint64_t not_of_interest = 0;
  std::uint64_t excluded_incompatible = 0;
  std::uint64_t c0 = 0;  // bound on not_of_interest: 16 * |psi(E(K_psi))|
  std::uint64_t c1 = 0;  // greedy exclusion factor: 1 + 16 * 15
};

/// Finds four vertex-disjoint rainbow K4 among `k_side` (first in enumeration order, with
/// backtracking), then filters `candidates` (each adjacent to all of K_psi) and admits them
/// greedily in the given order. Throws ErrorKind::GadgetState without four such K4.
CompatibleSet greedy_compatible_set(const ProperColoring& coloring, std::span<const Vertex> k_side,
                                    std::span<const Vertex> candidates);

struct RemovalResult {
  std::optional<SubgraphCopy> triangle;  // pattern Complete(3): center, leaf, apex
  bool bounds_hold = false;               // k >= m + 1 and t >= 2m + 1
};

/// Gadget is build(TriangleStar(k, t)); `matchings` are edge-id lists. Deletes them and
/// returns a surviving triangle on some surviving skeleton edge. With the bounds holding a
/// triangle always exists: m matchings miss a skeleton edge, and each matching meets at
/// most two triangles on it. Throws ErrorKind::Parameter for a non-matching list.
RemovalResult matching_removal_triangle(const Graph& gadget, int k, int t,
                                        std::span<const std::vector<EdgeId>> matchings);

std::vector<std::vector<EdgeId>> maximal_matchings(const Graph& g);

struct RemovalSweep {
  std::uint64_t tuples = 0;
  std::uint64_t successes = 0;
};

/// Every ordered m-tuple of maximal matchings of TriangleStar(m + 1, 2m + 1).
RemovalSweep sweep_matching_removal(int m);
RemovalSweep sweep_matching_removal_serial(int m);

/// Layout of the K7 assembly instance:
///   0..15        K_psi: K4 blocks {4i, .., 4i + 3}
///   16..1266     K' = TriangleStar(25, 49), canonical labels shifted by 16
/// with every edge between K_psi and K'. Nothing else.
inline constexpr int kK7Offset = 16;
Graph k7_instance();

/// Random proper coloring of k7_instance() meeting the assembly preconditions: rainbow K4
/// blocks, every cross edge its own color outside psi(E(K_psi)), and K' edges reusing
/// block and cross colors where properness allows.
std::vector<std::int64_t> synthesize_k7_coloring(const Graph& instance, std::uint64_t seed);

struct K7Assembly {
  SubgraphCopy k7;        // pattern Complete(7): block vertices, then triangle vertices
  SubgraphCopy triangle;  // in instance labels
  int block = 0;          // i*, 0-based
  int removed_colors = 0; // colors of psi(E(K_psi)) present on K'
};

/// Deletes K' edges colored from psi(E(K_psi)), takes the triangle matching removal leaves,
/// and joins it to the first block whose cross edges to it avoid its colors. Throws
/// ErrorKind::GadgetState naming the failed stage (layout, blocks, interest, compatibility).
K7Assembly assemble_rainbow_k7(const Graph& instance, const ProperColoring& coloring);

// ---- Odd cycles -------------------------------------------------------------------

/// For an edge xy inside one side of a sided graph, looks for a rainbow C_{2l+1}
/// x, y, a_1, b_1, ..., b_{l-1}, a_l back to x, where the a_i lie on the other side and
/// b_i on the side of x and y, each new edge taking a color not yet on the cycle. Bounded
/// backtracking; nullopt when it finds nothing. The copy is for pattern Cycle(2l+1).
/// Throws ErrorKind::Parameter if x and y lie on different sides or l < 1.
std::optional<SubgraphCopy> greedy_rainbow_odd_cycle(const Graph& perturbed, Edge cross_edge,
                                                     const ProperColoring& coloring, int l);

}  // namespace rbw
