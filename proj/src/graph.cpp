#include "rbw/graph.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include <omp.h>

#include "rbw/error.hpp"

namespace rbw {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Parameter: return "parameter";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Totality: return "totality";
    case ErrorKind::Properness: return "properness";
    case ErrorKind::Inapplicable: return "inapplicable";
    case ErrorKind::Resource: return "resource";
    case ErrorKind::GadgetState: return "gadget-state";
    case ErrorKind::Structure: return "structure";
    case ErrorKind::Format: return "format";
    case ErrorKind::Degenerate: return "degenerate";
  }
  return "unknown";
}

Graph::Graph(int n, std::vector<Edge> edges, std::optional<std::vector<Side>> sides)
    : n_(n), edges_(std::move(edges)), sides_(std::move(sides)) {
  if (n_ < 0) throw Error(ErrorKind::Parameter, "negative vertex count");
  for (auto& e : edges_) {
    if (e.u == e.v) throw Error(ErrorKind::Parameter, "loop at vertex " + std::to_string(e.u));
    e = Edge::of(e.u, e.v);
    if (e.u < 0 || e.v >= n_) {
      throw Error(ErrorKind::Parameter, "edge " + std::to_string(e.u) + "-" + std::to_string(e.v) +
                                            " outside [0, " + std::to_string(n_) + ")");
    }
  }
  std::sort(edges_.begin(), edges_.end());
  if (auto dup = std::adjacent_find(edges_.begin(), edges_.end()); dup != edges_.end()) {
    throw Error(ErrorKind::Parameter,
                "repeated edge " + std::to_string(dup->u) + "-" + std::to_string(dup->v));
  }
  if (sides_ && static_cast<int>(sides_->size()) != n_) {
    throw Error(ErrorKind::Parameter, "side table must cover every vertex");
  }

  std::vector<std::int32_t> deg(static_cast<std::size_t>(n_), 0);
  for (const auto& e : edges_) {
    ++deg[static_cast<std::size_t>(e.u)];
    ++deg[static_cast<std::size_t>(e.v)];
  }
  offsets_.assign(static_cast<std::size_t>(n_) + 1, 0);
  for (int v = 0; v < n_; ++v) offsets_[v + 1] = offsets_[v] + deg[static_cast<std::size_t>(v)];
  adj_.resize(edges_.size() * 2);
  adj_ids_.resize(edges_.size() * 2);
  std::vector<std::int32_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (EdgeId id = 0; id < static_cast<EdgeId>(edges_.size()); ++id) {
    const auto& e = edges_[static_cast<std::size_t>(id)];
    adj_[fill[e.u]] = e.v;
    adj_ids_[fill[e.u]++] = id;
  }
  for (EdgeId id = 0; id < static_cast<EdgeId>(edges_.size()); ++id) {
    const auto& e = edges_[static_cast<std::size_t>(id)];
    adj_[fill[e.v]] = e.u;
    adj_ids_[fill[e.v]++] = id;
  }
  for (int v = 0; v < n_; ++v) {
    // Second pass appended lower neighbors after higher ones.
    auto b = static_cast<std::ptrdiff_t>(offsets_[v]);
    auto e = static_cast<std::ptrdiff_t>(offsets_[v + 1]);
    std::vector<std::pair<Vertex, EdgeId>> tmp;
    tmp.reserve(static_cast<std::size_t>(e - b));
    for (auto i = b; i < e; ++i) tmp.emplace_back(adj_[i], adj_ids_[i]);
    std::sort(tmp.begin(), tmp.end());
    for (auto i = b; i < e; ++i) {
      adj_[i] = tmp[static_cast<std::size_t>(i - b)].first;
      adj_ids_[i] = tmp[static_cast<std::size_t>(i - b)].second;
    }
  }

  if (n_ <= kDenseLimit) {
    words_ = (n_ + 63) / 64;
    bits_.assign(static_cast<std::size_t>(n_) * static_cast<std::size_t>(words_), 0);
    for (const auto& e : edges_) {
      bits_[static_cast<std::size_t>(e.u) * words_ + e.v / 64] |= std::uint64_t{1} << (e.v % 64);
      bits_[static_cast<std::size_t>(e.v) * words_ + e.u / 64] |= std::uint64_t{1} << (e.u % 64);
    }
  }
}

std::span<const Vertex> Graph::neighbors(Vertex v) const {
  return {adj_.data() + offsets_[v], static_cast<std::size_t>(offsets_[v + 1] - offsets_[v])};
}

std::span<const EdgeId> Graph::incident(Vertex v) const {
  return {adj_ids_.data() + offsets_[v], static_cast<std::size_t>(offsets_[v + 1] - offsets_[v])};
}

int Graph::max_degree() const {
  int best = 0;
  for (int v = 0; v < n_; ++v) best = std::max(best, degree(v));
  return best;
}

bool Graph::adjacent(Vertex a, Vertex b) const {
  if (a < 0 || b < 0 || a >= n_ || b >= n_ || a == b) return false;
  if (!bits_.empty()) {
    return (bits_[static_cast<std::size_t>(a) * words_ + b / 64] >> (b % 64)) & 1U;
  }
  auto nb = neighbors(a);
  return std::binary_search(nb.begin(), nb.end(), b);
}

std::optional<EdgeId> Graph::edge_id(Vertex a, Vertex b) const {
  if (!adjacent(a, b)) return std::nullopt;
  auto nb = neighbors(a);
  auto it = std::lower_bound(nb.begin(), nb.end(), b);
  return incident(a)[static_cast<std::size_t>(it - nb.begin())];
}

Side Graph::side(Vertex v) const {
  if (!sides_) throw Error(ErrorKind::Domain, "graph carries no side labels");
  return (*sides_)[static_cast<std::size_t>(v)];
}

Graph add_edges(const Graph& g, std::span<const Edge> extra) {
  std::set<Edge> all(g.edges().begin(), g.edges().end());
  for (const auto& e : extra) all.insert(Edge::of(e.u, e.v));
  return Graph(g.order(), std::vector<Edge>(all.begin(), all.end()), g.sides());
}

Graph remove_edges(const Graph& g, const std::function<bool(EdgeId)>& drop) {
  std::vector<Edge> kept;
  kept.reserve(static_cast<std::size_t>(g.size()));
  for (EdgeId id = 0; id < g.size(); ++id) {
    if (!drop(id)) kept.push_back(g.edge(id));
  }
  return Graph(g.order(), std::move(kept), g.sides());
}

Graph induced_subgraph(const Graph& g, std::span<const Vertex> vertices) {
  std::vector<Vertex> relabel(static_cast<std::size_t>(g.order()), -1);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    relabel[static_cast<std::size_t>(vertices[i])] = static_cast<Vertex>(i);
  }
  std::vector<Edge> edges;
  for (const auto& e : g.edges()) {
    Vertex a = relabel[static_cast<std::size_t>(e.u)];
    Vertex b = relabel[static_cast<std::size_t>(e.v)];
    if (a >= 0 && b >= 0) edges.push_back(Edge::of(a, b));
  }
  std::optional<std::vector<Side>> sides;
  if (g.has_sides()) {
    sides.emplace();
    for (Vertex v : vertices) sides->push_back(g.side(v));
  }
  return Graph(static_cast<int>(vertices.size()), std::move(edges), std::move(sides));
}

Graph join(const Graph& left, const Graph& right) {
  const int shift = left.order();
  std::vector<Edge> edges(left.edges().begin(), left.edges().end());
  for (const auto& e : right.edges()) edges.push_back({e.u + shift, e.v + shift});
  for (Vertex a = 0; a < left.order(); ++a) {
    for (Vertex b = 0; b < right.order(); ++b) edges.push_back({a, b + shift});
  }
  std::vector<Side> sides(static_cast<std::size_t>(shift), Side::Left);
  sides.resize(static_cast<std::size_t>(shift + right.order()), Side::Right);
  return Graph(shift + right.order(), std::move(edges), std::move(sides));
}

bool is_matching(const Graph& g, std::span<const EdgeId> ids) {
  std::vector<char> seen(static_cast<std::size_t>(g.order()), 0);
  for (EdgeId id : ids) {
    if (id < 0 || id >= g.size()) return false;
    const auto& e = g.edge(id);
    if (seen[static_cast<std::size_t>(e.u)] || seen[static_cast<std::size_t>(e.v)]) return false;
    seen[static_cast<std::size_t>(e.u)] = seen[static_cast<std::size_t>(e.v)] = 1;
  }
  return true;
}

bool is_connected(const Graph& g) {
  if (g.order() == 0) return true;
  std::vector<char> seen(static_cast<std::size_t>(g.order()), 0);
  std::vector<Vertex> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (Vertex w : g.neighbors(v)) {
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == g.order();
}

namespace {

// Backtracking matcher for injective homomorphisms pattern -> host. Pattern vertices are
// placed in a connectivity-first order: highest degree first, then the vertex with the
// most already-placed neighbors (ties by degree, then index).
class Matcher {
 public:
  Matcher(const Graph& host, const Graph& pattern) : host_(host), pattern_(pattern) {
    const int k = pattern.order();
    std::vector<char> placed(static_cast<std::size_t>(k), 0);
    back_.resize(static_cast<std::size_t>(k));
    for (int step = 0; step < k; ++step) {
      int best = -1;
      std::pair<int, int> best_key{-1, -1};
      for (Vertex p = 0; p < k; ++p) {
        if (placed[static_cast<std::size_t>(p)]) continue;
        int links = 0;
        for (Vertex q : pattern.neighbors(p)) links += placed[static_cast<std::size_t>(q)];
        std::pair<int, int> key{links, pattern.degree(p)};
        if (key > best_key) {
          best_key = key;
          best = p;
        }
      }
      placed[static_cast<std::size_t>(best)] = 1;
      order_.push_back(best);
    }
    std::vector<int> position(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) position[static_cast<std::size_t>(order_[i])] = i;
    for (int i = 0; i < k; ++i) {
      for (Vertex q : pattern.neighbors(order_[i])) {
        if (position[static_cast<std::size_t>(q)] < i) back_[static_cast<std::size_t>(i)].push_back(q);
      }
    }
    map_.assign(static_cast<std::size_t>(k), -1);
    used_.assign(static_cast<std::size_t>(host.order()), 0);
  }

  int pattern_order() const { return pattern_.order(); }

  // Candidates for the root position (all host vertices of sufficient degree).
  std::vector<Vertex> roots() const {
    std::vector<Vertex> out;
    if (order_.empty()) return out;
    const int need = pattern_.degree(order_[0]);
    for (Vertex v = 0; v < host_.order(); ++v) {
      if (host_.degree(v) >= need) out.push_back(v);
    }
    return out;
  }

  // Visits every complete map with the root pinned to `root`. Visitor returns false to stop.
  template <typename F>
  bool run_from(Vertex root, F&& visit) {
    map_[static_cast<std::size_t>(order_[0])] = root;
    used_[static_cast<std::size_t>(root)] = 1;
    bool go = extend(1, visit);
    used_[static_cast<std::size_t>(root)] = 0;
    map_[static_cast<std::size_t>(order_[0])] = -1;
    return go;
  }

  template <typename F>
  bool run_all(F&& visit) {
    if (pattern_.order() == 0) return visit(map_);
    if (pattern_.order() > host_.order()) return true;
    for (Vertex root : roots()) {
      if (!run_from(root, visit)) return false;
    }
    return true;
  }

 private:
  template <typename F>
  bool extend(int depth, F& visit) {
    if (depth == pattern_.order()) return visit(map_);
    const Vertex p = order_[static_cast<std::size_t>(depth)];
    const int need = pattern_.degree(p);
    const auto& back = back_[static_cast<std::size_t>(depth)];
    auto try_candidate = [&](Vertex c) -> bool {
      if (used_[static_cast<std::size_t>(c)] || host_.degree(c) < need) return true;
      for (std::size_t j = 1; j < back.size(); ++j) {
        if (!host_.adjacent(c, map_[static_cast<std::size_t>(back[j])])) return true;
      }
      map_[static_cast<std::size_t>(p)] = c;
      used_[static_cast<std::size_t>(c)] = 1;
      bool go = extend(depth + 1, visit);
      used_[static_cast<std::size_t>(c)] = 0;
      map_[static_cast<std::size_t>(p)] = -1;
      return go;
    };
    if (back.empty()) {
      for (Vertex c = 0; c < host_.order(); ++c) {
        if (!try_candidate(c)) return false;
      }
    } else {
      for (Vertex c : host_.neighbors(map_[static_cast<std::size_t>(back[0])])) {
        if (!try_candidate(c)) return false;
      }
    }
    return true;
  }

  const Graph& host_;
  const Graph& pattern_;
  std::vector<Vertex> order_;
  std::vector<std::vector<Vertex>> back_;
  std::vector<Vertex> map_;
  std::vector<char> used_;
};

SubgraphCopy make_copy(const Graph& host, const Graph& pattern, const std::vector<Vertex>& map) {
  SubgraphCopy copy;
  copy.vertex_map = map;
  copy.edges.reserve(static_cast<std::size_t>(pattern.size()));
  for (const auto& e : pattern.edges()) {
    copy.edges.push_back(*host.edge_id(map[static_cast<std::size_t>(e.u)],
                                       map[static_cast<std::size_t>(e.v)]));
  }
  std::sort(copy.edges.begin(), copy.edges.end());
  return copy;
}

constexpr std::size_t kAutomorphismCap = 50000;

// Decides whether a vertex map is the representative of its automorphism orbit.
class OrbitFilter {
 public:
  explicit OrbitFilter(const Graph& pattern) {
    try {
      auts_ = automorphisms(pattern, kAutomorphismCap);
    } catch (const Error&) {
      auts_.clear();
      fallback_ = true;
    }
  }

  bool is_representative(const std::vector<Vertex>& map, const std::vector<EdgeId>& edges) {
    if (fallback_) {
      std::vector<std::int64_t> key(map.begin(), map.end());
      std::sort(key.begin(), key.end());
      key.push_back(-1);
      key.insert(key.end(), edges.begin(), edges.end());
      return seen_.insert(std::move(key)).second;
    }
    const std::size_t k = map.size();
    for (const auto& sigma : auts_) {
      for (std::size_t i = 0; i < k; ++i) {
        Vertex img = map[static_cast<std::size_t>(sigma[i])];
        if (img < map[i]) return false;
        if (img > map[i]) break;
      }
    }
    return true;
  }

  bool needs_edges() const { return fallback_; }

 private:
  std::vector<std::vector<Vertex>> auts_;
  bool fallback_ = false;
  std::set<std::vector<std::int64_t>> seen_;
};

}  // namespace

void for_each_copy(const Graph& host, const Graph& pattern, const CopyVisitor& visit) {
  if (pattern.order() == 0 || pattern.order() > host.order()) return;
  Matcher matcher(host, pattern);
  OrbitFilter filter(pattern);
  matcher.run_all([&](const std::vector<Vertex>& map) {
    SubgraphCopy copy = make_copy(host, pattern, map);
    if (!filter.is_representative(copy.vertex_map, copy.edges)) return true;
    return visit(copy);
  });
}

std::vector<SubgraphCopy> enumerate_copies(const Graph& host, const Graph& pattern) {
  std::vector<SubgraphCopy> out;
  for_each_copy(host, pattern, [&](const SubgraphCopy& c) {
    out.push_back(c);
    return true;
  });
  return out;
}

std::vector<SubgraphCopy> enumerate_copies_parallel(const Graph& host, const Graph& pattern) {
  if (pattern.order() == 0 || pattern.order() > host.order()) return {};
  OrbitFilter probe(pattern);
  if (probe.needs_edges()) return enumerate_copies(host, pattern);
  const std::vector<Vertex> roots = Matcher(host, pattern).roots();
  std::vector<std::vector<SubgraphCopy>> per_root(roots.size());
#pragma omp parallel
  {
    Matcher matcher(host, pattern);
    OrbitFilter filter(pattern);
#pragma omp for schedule(dynamic, 1)
    for (std::size_t i = 0; i < roots.size(); ++i) {
      auto& bucket = per_root[i];
      matcher.run_from(roots[i], [&](const std::vector<Vertex>& map) {
        SubgraphCopy copy = make_copy(host, pattern, map);
        if (filter.is_representative(copy.vertex_map, copy.edges)) bucket.push_back(std::move(copy));
        return true;
      });
    }
  }
  std::vector<SubgraphCopy> out;
  for (auto& bucket : per_root) {
    std::move(bucket.begin(), bucket.end(), std::back_inserter(out));
  }
  return out;
}

std::uint64_t count_copies(const Graph& host, const Graph& pattern) {
  std::uint64_t count = 0;
  for_each_copy(host, pattern, [&](const SubgraphCopy&) {
    ++count;
    return true;
  });
  return count;
}

std::uint64_t count_injective_homomorphisms(const Graph& host, const Graph& pattern) {
  if (pattern.order() > host.order()) return 0;
  std::uint64_t count = 0;
  Matcher(host, pattern).run_all([&](const std::vector<Vertex>&) {
    ++count;
    return true;
  });
  return count;
}

std::vector<Vertex> common_neighborhood(const Graph& g, std::span<const Vertex> xs) {
  std::vector<Vertex> out;
  std::vector<char> in_xs(static_cast<std::size_t>(g.order()), 0);
  for (Vertex x : xs) {
    if (x < 0 || x >= g.order()) throw Error(ErrorKind::Domain, "vertex outside graph");
    in_xs[static_cast<std::size_t>(x)] = 1;
  }
  for (Vertex u = 0; u < g.order(); ++u) {
    if (in_xs[static_cast<std::size_t>(u)]) continue;
    bool all = std::all_of(xs.begin(), xs.end(), [&](Vertex x) { return g.adjacent(u, x); });
    if (all) out.push_back(u);
  }
  return out;
}

std::uint64_t automorphism_count(const Graph& g) {
  // Equal order and size make every injective self-homomorphism an automorphism.
  return count_injective_homomorphisms(g, g);
}

std::vector<std::vector<Vertex>> automorphisms(const Graph& g, std::size_t limit) {
  std::vector<std::vector<Vertex>> out;
  Matcher(g, g).run_all([&](const std::vector<Vertex>& map) {
    if (out.size() >= limit) {
      throw Error(ErrorKind::Resource, "automorphism group larger than " + std::to_string(limit));
    }
    out.push_back(map);
    return true;
  });
  return out;
}

}  // namespace rbw
