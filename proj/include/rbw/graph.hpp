#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace rbw {

using Vertex = std::int32_t;
using EdgeId = std::int32_t;

/// Unordered vertex pair stored with u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  static Edge of(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }
  bool touches(Vertex x) const { return u == x || v == x; }
  bool meets(const Edge& o) const { return touches(o.u) || touches(o.v); }

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

enum class Side : std::uint8_t { Left = 0, Right = 1 };

/// Simple undirected graph on vertices [0, n) with an optional bipartition tag.
///
/// Immutable once built. Edges are kept in ascending lexicographic order and an
/// edge's id is its index in that order; colorings and copies refer to edges by id.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n) : Graph(n, {}) {}
  /// Throws ErrorKind::Parameter on loops, repeated pairs, out-of-range endpoints or
  /// a side table whose length differs from n.
  Graph(int n, std::vector<Edge> edges, std::optional<std::vector<Side>> sides = std::nullopt);

  int order() const { return n_; }
  int size() const { return static_cast<int>(edges_.size()); }
  bool empty() const { return n_ == 0; }

  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(EdgeId id) const { return edges_[static_cast<std::size_t>(id)]; }

  std::span<const Vertex> neighbors(Vertex v) const;
  /// Edge ids parallel to neighbors(v).
  std::span<const EdgeId> incident(Vertex v) const;
  int degree(Vertex v) const { return static_cast<int>(neighbors(v).size()); }
  int max_degree() const;

  bool adjacent(Vertex a, Vertex b) const;
  std::optional<EdgeId> edge_id(Vertex a, Vertex b) const;

  bool has_sides() const { return sides_.has_value(); }
  const std::optional<std::vector<Side>>& sides() const { return sides_; }
  Side side(Vertex v) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_ && a.sides_ == b.sides_;
  }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::optional<std::vector<Side>> sides_;
  std::vector<std::int32_t> offsets_;
  std::vector<Vertex> adj_;
  std::vector<EdgeId> adj_ids_;
  // Dense adjacency bits for hosts up to kDenseLimit vertices.
  std::vector<std::uint64_t> bits_;
  int words_ = 0;

  static constexpr int kDenseLimit = 2048;
};

/// Graph with the extra edges added (duplicates of existing edges ignored). Sides kept.
Graph add_edges(const Graph& g, std::span<const Edge> extra);
/// Graph with every edge whose id satisfies `drop` removed. Vertex set and sides kept.
Graph remove_edges(const Graph& g, const std::function<bool(EdgeId)>& drop);
/// Subgraph induced by `vertices`, relabelled 0..k-1 in the given order.
Graph induced_subgraph(const Graph& g, std::span<const Vertex> vertices);
/// Disjoint union with all cross edges: `left` keeps labels, `right` shifted by left.order().
Graph join(const Graph& left, const Graph& right);

bool is_matching(const Graph& g, std::span<const EdgeId> ids);
bool is_connected(const Graph& g);

/// An occurrence of a pattern inside a host.
struct SubgraphCopy {
  std::vector<Vertex> vertex_map;  // pattern vertex -> host vertex
  std::vector<EdgeId> edges;       // host edge ids of the image, ascending

  friend bool operator==(const SubgraphCopy&, const SubgraphCopy&) = default;
};

/// Callback returns false to stop the enumeration.
using CopyVisitor = std::function<bool(const SubgraphCopy&)>;

/// Visits one copy per unlabelled occurrence of `pattern` in `host` (vertex maps are
/// deduplicated modulo pattern automorphisms; the lexicographically smallest map of
/// each orbit is reported). Order is deterministic: ascending image of the first
/// pattern vertex in search order, then ascending candidate order.
void for_each_copy(const Graph& host, const Graph& pattern, const CopyVisitor& visit);
std::vector<SubgraphCopy> enumerate_copies(const Graph& host, const Graph& pattern);
/// Same result as enumerate_copies, search split over root images with OpenMP.
std::vector<SubgraphCopy> enumerate_copies_parallel(const Graph& host, const Graph& pattern);
std::uint64_t count_copies(const Graph& host, const Graph& pattern);

/// Number of injective homomorphisms pattern -> host.
std::uint64_t count_injective_homomorphisms(const Graph& host, const Graph& pattern);

/// {u not in xs : u adjacent to every x in xs}; all of V(g) for empty xs.
std::vector<Vertex> common_neighborhood(const Graph& g, std::span<const Vertex> xs);

std::uint64_t automorphism_count(const Graph& g);
/// All automorphisms as vertex permutations; throws Resource beyond `limit`.
std::vector<std::vector<Vertex>> automorphisms(const Graph& g, std::size_t limit = 100000);

}  // namespace rbw
