#include "rbw/constructions.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

#include "rbw/error.hpp"
#include "rbw/gadgets.hpp"

namespace rbw {

Shape parse_shape(const std::string& name) {
  if (name == "K2") return Shape::K2;
  if (name == "P3") return Shape::P3;
  if (name == "P4") return Shape::P4;
  if (name == "K13" || name == "S3") return Shape::K13;
  throw Error(ErrorKind::Parameter, "unknown component shape '" + name + "' (expected K2, P3, P4 or K13)");
}

std::string to_string(Shape s) {
  switch (s) {
    case Shape::K2: return "K2";
    case Shape::P3: return "P3";
    case Shape::P4: return "P4";
    case Shape::K13: return "K13";
  }
  return "?";
}

Graph shape_graph(Shape s) {
  switch (s) {
    case Shape::K2: return build(GadgetSpec::path(2));
    case Shape::P3: return build(GadgetSpec::path(3));
    case Shape::P4: return build(GadgetSpec::path(4));
    case Shape::K13: return build(GadgetSpec::star(3));
  }
  throw Error(ErrorKind::Parameter, "unknown component shape");
}

namespace {

// Internal colors: paths number their edges 1, 2, 3 from x1; the star gives y x_i color i.
std::int64_t internal_color(Shape s, const Edge& e) {
  return s == Shape::K13 ? e.v : e.u + 1;
}

struct Cell {
  int left;
  int right;
  std::int64_t color;
};

// Cross-edge tables in canonical labels. Star: y = 0, x_i = i. Path: x_i = i - 1.
const std::vector<Cell>& star_star() {
  static const std::vector<Cell> cells{
      {1, 2, 4}, {0, 0, 4}, {2, 3, 4}, {3, 1, 4},  //
      {0, 2, 5}, {3, 0, 5},                        //
      {1, 0, 6}, {0, 3, 6},                        //
      {2, 0, 7}, {0, 1, 7},
  };
  return cells;
}

const std::vector<Cell>& star_path() {
  static const std::vector<Cell> cells{
      {0, 0, 4}, {2, 1, 4},             //
      {0, 3, 5}, {2, 2, 5},             //
      {1, 2, 6}, {0, 1, 6}, {3, 0, 6},  //
      {1, 3, 7}, {0, 2, 7}, {3, 1, 7},
  };
  return cells;
}

const std::vector<Cell>& path_path() {
  static const std::vector<Cell> cells{
      {0, 2, 4}, {1, 3, 4}, {2, 0, 4}, {3, 1, 4},  //
      {0, 1, 5}, {1, 2, 5}, {2, 3, 5},             //
      {1, 0, 6}, {2, 1, 6}, {3, 2, 6},
  };
  return cells;
}

std::vector<Cell> table_for(Shape l, Shape r) {
  const bool star_l = l == Shape::K13;
  const bool star_r = r == Shape::K13;
  if (star_l && star_r) return star_star();
  if (star_l) return star_path();
  if (!star_r) return path_path();
  std::vector<Cell> mirrored;
  for (const auto& c : star_path()) mirrored.push_back({c.right, c.left, c.color});
  return mirrored;
}

}  // namespace

ExplicitColoring appendix_b_coloring(Shape l, Shape r) {
  const Graph left = shape_graph(l);
  const Graph right = shape_graph(r);
  const Graph host = join(left, right);
  const int nl = left.order();
  std::map<std::pair<int, int>, std::int64_t> table;
  for (const auto& c : table_for(l, r)) {
    if (c.left < nl && c.right < right.order()) table[{c.left, c.right}] = c.color;
  }
  std::vector<std::int64_t> palette(static_cast<std::size_t>(host.size()));
  std::int64_t fresh = 8;
  for (EdgeId id = 0; id < host.size(); ++id) {
    const Edge& e = host.edge(id);
    auto& slot = palette[static_cast<std::size_t>(id)];
    if (e.v < nl) {
      slot = internal_color(l, e);
    } else if (e.u >= nl) {
      slot = internal_color(r, Edge{e.u - nl, e.v - nl});
    } else {
      auto it = table.find({e.u, e.v - nl});
      slot = it != table.end() ? it->second : fresh++;
    }
  }
  ProperColoring coloring = check_proper(host, std::span<const std::int64_t>(palette));
  return {std::move(palette), std::move(coloring)};
}

std::vector<std::int64_t> PaletteAllocator::allocate(std::size_t count) {
  std::vector<std::int64_t> block(count);
  for (auto& c : block) c = next_++;
  blocks_.push_back(block);
  return block;
}

namespace {

[[noreturn]] void bad_structure(const std::string& why) { throw Error(ErrorKind::Structure, why); }

void check_seed(const Graph& seed) {
  const int n = seed.order();
  if (n < 2 || !seed.has_sides()) throw Error(ErrorKind::Parameter, "seed must be a sided K_{n/2,n/2}, n >= 2");
  int left = 0;
  for (Vertex v = 0; v < n; ++v) left += seed.side(v) == Side::Left;
  bool ok = left == n / 2 && seed.size() == left * (n - left);
  for (const auto& e : seed.edges()) ok = ok && seed.side(e.u) != seed.side(e.v);
  if (!ok) throw Error(ErrorKind::Parameter, "seed is not K_{floor(n/2),ceil(n/2)} across its side labels");
}

void check_components(const Graph& seed, const std::vector<Component>& comps, Side side, std::vector<char>& used) {
  for (const auto& c : comps) {
    const int need = shape_graph(c.shape).order();
    if (static_cast<int>(c.vertices.size()) != need) {
      bad_structure(to_string(c.shape) + " component needs " + std::to_string(need) + " vertices");
    }
    for (Vertex v : c.vertices) {
      if (v < 0 || v >= seed.order()) bad_structure("component vertex " + std::to_string(v) + " out of range");
      if (seed.side(v) != side) bad_structure("component vertex " + std::to_string(v) + " lies on the other side");
      if (used[static_cast<std::size_t>(v)]) bad_structure("components share vertex " + std::to_string(v));
      used[static_cast<std::size_t>(v)] = 1;
    }
  }
}

}  // namespace

ZeroStatementColoring zero_statement_coloring(const Graph& seed, const ComponentStructure& part) {
  check_seed(seed);
  std::vector<char> used(static_cast<std::size_t>(seed.order()), 0);
  check_components(seed, part.left, Side::Left, used);
  check_components(seed, part.right, Side::Right, used);

  std::vector<Edge> extra;
  for (const auto* side : {&part.left, &part.right}) {
    for (const auto& c : *side) {
      const Graph shape = shape_graph(c.shape);
      for (const auto& e : shape.edges()) {
        extra.push_back(Edge::of(c.vertices[static_cast<std::size_t>(e.u)], c.vertices[static_cast<std::size_t>(e.v)]));
      }
    }
  }
  ZeroStatementColoring out;
  out.graph = add_edges(seed, extra);
  const Graph& g = out.graph;
  std::vector<std::int64_t> palette(static_cast<std::size_t>(g.size()), -1);
  auto paint = [&](Vertex a, Vertex b, std::int64_t color) { palette[static_cast<std::size_t>(*g.edge_id(a, b))] = color; };

  for (const auto* side : {&part.left, &part.right}) {
    for (const auto& c : *side) {
      const Graph shape = shape_graph(c.shape);
      for (const auto& e : shape.edges()) {
        paint(c.vertices[static_cast<std::size_t>(e.u)], c.vertices[static_cast<std::size_t>(e.v)], internal_color(c.shape, e));
      }
    }
  }

  PaletteAllocator allocator;
  for (const auto& lc : part.left) {
    for (const auto& rc : part.right) {
      const ExplicitColoring pair = appendix_b_coloring(lc.shape, rc.shape);
      const Graph& small = pair.coloring.host();
      const int nl = static_cast<int>(lc.vertices.size());
      auto block = allocator.allocate(lc.vertices.size() * rc.vertices.size());
      std::unordered_map<std::int64_t, std::int64_t> rename;
      for (EdgeId id = 0; id < small.size(); ++id) {
        const Edge& e = small.edge(id);
        if (e.v < nl || e.u >= nl) continue;
        auto [it, fresh] = rename.try_emplace(pair.palette[static_cast<std::size_t>(id)], 0);
        if (fresh) it->second = block[rename.size() - 1];
        paint(lc.vertices[static_cast<std::size_t>(e.u)], rc.vertices[static_cast<std::size_t>(e.v - nl)], it->second);
      }
    }
  }
  out.blocks = allocator.blocks();

  std::int64_t fresh = allocator.next();
  for (auto& c : palette) {
    if (c < 0) c = fresh++;
  }
  ProperColoring coloring = check_proper(g, std::span<const std::int64_t>(palette));
  out.coloring = {std::move(palette), std::move(coloring)};
  return out;
}

ComponentStructure derive_components(const Graph& g) {
  if (!g.has_sides()) bad_structure("graph carries no side labels");
  const int n = g.order();
  std::vector<std::vector<Vertex>> inner(static_cast<std::size_t>(n));
  for (const auto& e : g.edges()) {
    if (g.side(e.u) != g.side(e.v)) continue;
    inner[static_cast<std::size_t>(e.u)].push_back(e.v);
    inner[static_cast<std::size_t>(e.v)].push_back(e.u);
  }
  ComponentStructure out;
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (Vertex start = 0; start < n; ++start) {
    if (seen[static_cast<std::size_t>(start)] || inner[static_cast<std::size_t>(start)].empty()) continue;
    std::vector<Vertex> verts{start};
    seen[static_cast<std::size_t>(start)] = 1;
    for (std::size_t i = 0; i < verts.size(); ++i) {
      for (Vertex w : inner[static_cast<std::size_t>(verts[i])]) {
        if (!seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = 1;
          verts.push_back(w);
        }
      }
    }
    std::sort(verts.begin(), verts.end());
    auto deg = [&](Vertex v) { return inner[static_cast<std::size_t>(v)].size(); };
    std::size_t edges = 0;
    for (Vertex v : verts) edges += deg(v);
    edges /= 2;
    Component c;
    const auto hub = std::find_if(verts.begin(), verts.end(), [&](Vertex v) { return deg(v) == 3; });
    if (verts.size() == 2 && edges == 1) {
      c = {Shape::K2, verts};
    } else if (verts.size() == 4 && edges == 3 && hub != verts.end()) {
      c.shape = Shape::K13;
      c.vertices.push_back(*hub);
      for (Vertex v : verts) {
        if (v != *hub) c.vertices.push_back(v);
      }
    } else if ((verts.size() == 3 && edges == 2) || (verts.size() == 4 && edges == 3)) {
      c.shape = verts.size() == 3 ? Shape::P3 : Shape::P4;
      Vertex prev = -1;
      Vertex cur = *std::find_if(verts.begin(), verts.end(), [&](Vertex v) { return deg(v) == 1; });
      while (cur >= 0) {
        c.vertices.push_back(cur);
        Vertex next = -1;
        for (Vertex w : inner[static_cast<std::size_t>(cur)]) {
          if (w != prev) next = w;
        }
        prev = cur;
        cur = next;
      }
    } else {
      bad_structure("component at vertex " + std::to_string(start) + " is not K2, P3, P4 or K13");
    }
    (g.side(start) == Side::Left ? out.left : out.right).push_back(std::move(c));
  }
  return out;
}

namespace {

bool all_distinct(std::vector<int> colors) {
  std::sort(colors.begin(), colors.end());
  return std::adjacent_find(colors.begin(), colors.end()) == colors.end();
}

int color_of(const ProperColoring& coloring, Vertex a, Vertex b) {
  const auto id = coloring.host().edge_id(a, b);
  if (!id) throw Error(ErrorKind::GadgetState, "missing edge " + std::to_string(a) + "-" + std::to_string(b));
  return coloring.color(*id);
}

SubgraphCopy clique_copy(const Graph& host, std::vector<Vertex> vertices) {
  SubgraphCopy copy;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices.size(); ++j) copy.edges.push_back(*host.edge_id(vertices[i], vertices[j]));
  }
  std::sort(copy.edges.begin(), copy.edges.end());
  copy.vertex_map = std::move(vertices);
  return copy;
}

void require_host(const ProperColoring& coloring, const Graph& gadget) {
  if (!(coloring.host() == gadget)) throw Error(ErrorKind::Domain, "coloring belongs to a different graph");
}

}  // namespace

K5Extraction extract_rainbow_k5(const Graph& gadget, const ProperColoring& coloring) {
  if (!(gadget == build(GadgetSpec::tilde_k35()))) throw Error(ErrorKind::Parameter, "gadget is not Ktilde35");
  require_host(coloring, gadget);
  std::vector<int> hat;
  const Graph hat_graph = build(GadgetSpec::hat_k(3, 5));
  for (const auto& e : hat_graph.edges()) hat.push_back(color_of(coloring, e.u, e.v));
  if (!all_distinct(hat)) throw Error(ErrorKind::GadgetState, "the HatK(3,5) part is not rainbow");
  const std::vector<int> triangle{color_of(coloring, 0, 1), color_of(coloring, 0, 2), color_of(coloring, 1, 2)};
  constexpr Vertex y1 = 3;
  for (int t = 2; t <= 5; ++t) {
    const Vertex yt = y1 + t - 1;
    const int c = color_of(coloring, y1, yt);
    if (std::find(triangle.begin(), triangle.end(), c) != triangle.end()) continue;
    K5Extraction out{clique_copy(gadget, {0, 1, 2, y1, yt}), t};
    if (!is_rainbow(coloring, out.k5)) throw std::logic_error("extracted K5 is not rainbow");
    return out;
  }
  throw std::logic_error("four distinct star colors cannot all lie on the triangle");
}

InterestSet greedy_interest_set(const Graph& gadget, const ProperColoring& coloring) {
  const int n = gadget.order() - 3;
  if (n < 4 || !(gadget == build(GadgetSpec::hat_k(3, n)))) throw Error(ErrorKind::Parameter, "gadget is not HatK(3,n)");
  require_host(coloring, gadget);
  const std::vector<int> triangle{color_of(coloring, 0, 1), color_of(coloring, 0, 2), color_of(coloring, 1, 2)};
  if (!all_distinct(triangle)) throw Error(ErrorKind::GadgetState, "triangle is not rainbow");
  InterestSet out;
  std::unordered_set<int> taken;
  for (Vertex u = 3; u < gadget.order(); ++u) {
    const std::array<int, 3> star{color_of(coloring, 0, u), color_of(coloring, 1, u), color_of(coloring, 2, u)};
    const bool clear = std::none_of(star.begin(), star.end(), [&](int c) {
      return std::find(triangle.begin(), triangle.end(), c) != triangle.end();
    });
    if (!clear) continue;
    out.candidates.push_back(u);
    if (std::any_of(star.begin(), star.end(), [&](int c) { return taken.count(c) > 0; })) continue;
    out.members.push_back(u);
    taken.insert(star.begin(), star.end());
  }
  return out;
}

namespace {

bool pick_disjoint(const std::vector<std::vector<Vertex>>& k4s, std::size_t from, std::vector<char>& used,
                   std::vector<std::size_t>& chosen) {
  if (chosen.size() == 4) return true;
  for (std::size_t i = from; i < k4s.size(); ++i) {
    const auto& q = k4s[i];
    if (std::any_of(q.begin(), q.end(), [&](Vertex v) { return used[static_cast<std::size_t>(v)]; })) continue;
    for (Vertex v : q) used[static_cast<std::size_t>(v)] = 1;
    chosen.push_back(i);
    if (pick_disjoint(k4s, i + 1, used, chosen)) return true;
    chosen.pop_back();
    for (Vertex v : q) used[static_cast<std::size_t>(v)] = 0;
  }
  return false;
}

}  // namespace

CompatibleSet greedy_compatible_set(const ProperColoring& coloring, std::span<const Vertex> k_side,
                                    std::span<const Vertex> candidates) {
  const Graph& g = coloring.host();
  for (Vertex v : k_side) {
    if (v < 0 || v >= g.order()) throw Error(ErrorKind::Domain, "K-side vertex outside the graph");
  }
  const Graph side = induced_subgraph(g, k_side);
  std::vector<std::vector<Vertex>> rainbow;
  for_each_copy(side, build(GadgetSpec::complete(4)), [&](const SubgraphCopy& c) {
    std::vector<Vertex> q;
    for (Vertex v : c.vertex_map) q.push_back(k_side[static_cast<std::size_t>(v)]);
    std::vector<int> colors;
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = i + 1; j < 4; ++j) colors.push_back(color_of(coloring, q[i], q[j]));
    }
    if (all_distinct(colors)) rainbow.push_back(std::move(q));
    return true;
  });
  std::vector<char> used(static_cast<std::size_t>(g.order()), 0);
  std::vector<std::size_t> chosen;
  if (!pick_disjoint(rainbow, 0, used, chosen)) {
    throw Error(ErrorKind::GadgetState, "fewer than four vertex-disjoint rainbow K4 on the K side");
  }
  CompatibleSet out;
  std::unordered_set<int> k_colors;
  std::vector<Vertex> k_vertices;
  for (std::size_t b = 0; b < 4; ++b) {
    out.k4s[b] = rainbow[chosen[b]];
    const auto& q = out.k4s[b];
    for (std::size_t i = 0; i < 4; ++i) {
      k_vertices.push_back(q[i]);
      for (std::size_t j = i + 1; j < 4; ++j) k_colors.insert(color_of(coloring, q[i], q[j]));
    }
  }
  out.c0 = 16 * k_colors.size();
  out.c1 = 1 + 16 * 15;

  std::unordered_set<int> taken;
  for (Vertex u : candidates) {
    if (u < 0 || u >= g.order() || used[static_cast<std::size_t>(u)]) {
      throw Error(ErrorKind::Domain, "candidate " + std::to_string(u) + " is outside N");
    }
    std::vector<int> colors;
    for (Vertex x : k_vertices) {
      if (!g.adjacent(u, x)) {
        throw Error(ErrorKind::Domain, "candidate " + std::to_string(u) + " misses K_psi vertex " + std::to_string(x));
      }
      colors.push_back(color_of(coloring, u, x));
    }
    if (std::any_of(colors.begin(), colors.end(), [&](int c) { return k_colors.count(c) > 0; })) {
      ++out.not_of_interest;
      continue;
    }
    out.interest.push_back(u);
    if (std::any_of(colors.begin(), colors.end(), [&](int c) { return taken.count(c) > 0; })) {
      ++out.excluded_incompatible;
      continue;
    }
    out.members.push_back(u);
    taken.insert(colors.begin(), colors.end());
  }
  return out;
}

namespace {

// Triangles of TriangleStar(k, t) are exactly {0, i, apex}; the first one whose three
// edges all survive, scanning skeleton edges in order.
template <typename Removed>
std::optional<std::array<Vertex, 3>> surviving_triangle(int k, int t, Removed&& removed) {
  for (Vertex i = 1; i <= k; ++i) {
    if (removed(0, i)) continue;
    for (int j = 0; j < t; ++j) {
      const Vertex apex = 1 + k + (i - 1) * t + j;
      if (!removed(0, apex) && !removed(i, apex)) return std::array<Vertex, 3>{0, i, apex};
    }
  }
  return std::nullopt;
}

}  // namespace

RemovalResult matching_removal_triangle(const Graph& gadget, int k, int t,
                                        std::span<const std::vector<EdgeId>> matchings) {
  if (!(gadget == build(GadgetSpec::triangle_star(k, t)))) {
    throw Error(ErrorKind::Parameter, "gadget is not TriangleStar(" + std::to_string(k) + "," + std::to_string(t) + ")");
  }
  std::vector<char> removed(static_cast<std::size_t>(gadget.size()), 0);
  for (const auto& m : matchings) {
    for (EdgeId id : m) {
      if (id < 0 || id >= gadget.size()) throw Error(ErrorKind::Parameter, "matching edge id out of range");
    }
    if (!is_matching(gadget, m)) throw Error(ErrorKind::Parameter, "listed edge set is not a matching");
    for (EdgeId id : m) removed[static_cast<std::size_t>(id)] = 1;
  }
  const int count = static_cast<int>(matchings.size());
  RemovalResult out;
  out.bounds_hold = k >= count + 1 && t >= 2 * count + 1;
  const auto found = surviving_triangle(k, t, [&](Vertex a, Vertex b) {
    return removed[static_cast<std::size_t>(*gadget.edge_id(a, b))] != 0;
  });
  if (found) {
    out.triangle = clique_copy(gadget, {(*found)[0], (*found)[1], (*found)[2]});
  } else if (out.bounds_hold) {
    throw std::logic_error("matching removal destroyed every triangle within the bounds");
  }
  return out;
}

std::vector<std::vector<EdgeId>> maximal_matchings(const Graph& g) {
  const int n = g.order();
  std::vector<char> matched(static_cast<std::size_t>(n), 0);
  std::vector<char> skipped(static_cast<std::size_t>(n), 0);
  std::vector<EdgeId> current;
  std::vector<std::vector<EdgeId>> out;
  auto rec = [&](auto&& self, Vertex v) -> void {
    while (v < n && matched[static_cast<std::size_t>(v)]) ++v;
    if (v == n) {
      for (const auto& e : g.edges()) {
        if (!matched[static_cast<std::size_t>(e.u)] && !matched[static_cast<std::size_t>(e.v)]) return;
      }
      auto sorted = current;
      std::sort(sorted.begin(), sorted.end());
      out.push_back(std::move(sorted));
      return;
    }
    auto nb = g.neighbors(v);
    auto ids = g.incident(v);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      const Vertex w = nb[i];
      if (w < v || matched[static_cast<std::size_t>(w)]) continue;
      matched[static_cast<std::size_t>(v)] = matched[static_cast<std::size_t>(w)] = 1;
      current.push_back(ids[i]);
      self(self, v + 1);
      current.pop_back();
      matched[static_cast<std::size_t>(v)] = matched[static_cast<std::size_t>(w)] = 0;
    }
    // Leaving v exposed is only maximal if no earlier exposed vertex is a neighbor.
    for (Vertex w : nb) {
      if (w < v && skipped[static_cast<std::size_t>(w)]) return;
    }
    skipped[static_cast<std::size_t>(v)] = 1;
    self(self, v + 1);
    skipped[static_cast<std::size_t>(v)] = 0;
  };
  rec(rec, 0);
  return out;
}

namespace {

struct SweepSetup {
  int k = 0;
  int t = 0;
  Graph gadget;
  std::vector<std::uint64_t> masks;
};

SweepSetup sweep_setup(int m) {
  if (m < 0) throw Error(ErrorKind::Parameter, "negative matching count");
  SweepSetup s;
  s.k = m + 1;
  s.t = 2 * m + 1;
  s.gadget = build(GadgetSpec::triangle_star(s.k, s.t));
  if (s.gadget.size() > 64) throw Error(ErrorKind::Resource, "exhaustive sweep needs at most 64 gadget edges");
  for (const auto& matching : maximal_matchings(s.gadget)) {
    std::uint64_t mask = 0;
    for (EdgeId id : matching) mask |= std::uint64_t{1} << id;
    s.masks.push_back(mask);
  }
  return s;
}

std::uint64_t tuple_count(std::size_t base, int m) {
  std::uint64_t total = 1;
  for (int i = 0; i < m; ++i) total *= base;
  return total;
}

bool tuple_survives(const SweepSetup& s, int m, std::uint64_t index) {
  std::uint64_t removed = 0;
  for (int i = 0; i < m; ++i) {
    removed |= s.masks[index % s.masks.size()];
    index /= s.masks.size();
  }
  return surviving_triangle(s.k, s.t, [&](Vertex a, Vertex b) {
           return (removed >> *s.gadget.edge_id(a, b) & 1U) != 0;
         }).has_value();
}

}  // namespace

RemovalSweep sweep_matching_removal_serial(int m) {
  const SweepSetup s = sweep_setup(m);
  RemovalSweep out;
  out.tuples = tuple_count(s.masks.size(), m);
  for (std::uint64_t i = 0; i < out.tuples; ++i) out.successes += tuple_survives(s, m, i);
  return out;
}

RemovalSweep sweep_matching_removal(int m) {
  const SweepSetup s = sweep_setup(m);
  RemovalSweep out;
  out.tuples = tuple_count(s.masks.size(), m);
  const auto total = static_cast<std::int64_t>(out.tuples);
  std::uint64_t successes = 0;
#pragma omp parallel for schedule(static) reduction(+ : successes)
  for (std::int64_t i = 0; i < total; ++i) successes += tuple_survives(s, m, static_cast<std::uint64_t>(i));
  out.successes = successes;
  return out;
}

namespace {

constexpr int kStarLeaves = 25;
constexpr int kStarTriangles = 49;

}  // namespace

Graph k7_instance() {
  const Graph star = build(GadgetSpec::triangle_star(kStarLeaves, kStarTriangles));
  std::vector<Edge> edges;
  for (int b = 0; b < 4; ++b) {
    for (int i = 0; i < 4; ++i) {
      for (int j = i + 1; j < 4; ++j) edges.push_back({4 * b + i, 4 * b + j});
    }
  }
  for (Vertex x = 0; x < kK7Offset; ++x) {
    for (Vertex u = 0; u < star.order(); ++u) edges.push_back({x, kK7Offset + u});
  }
  for (const auto& e : star.edges()) edges.push_back({kK7Offset + e.u, kK7Offset + e.v});
  return Graph(kK7Offset + star.order(), std::move(edges));
}

std::vector<std::int64_t> synthesize_k7_coloring(const Graph& instance, std::uint64_t seed) {
  if (!(instance == k7_instance())) throw Error(ErrorKind::Parameter, "instance is not the K7 assembly layout");
  std::mt19937_64 rng(seed);
  std::vector<std::int64_t> palette(static_cast<std::size_t>(instance.size()), -1);
  std::vector<std::unordered_set<std::int64_t>> at(static_cast<std::size_t>(instance.order()));
  auto paint = [&](EdgeId id, std::int64_t c) {
    palette[static_cast<std::size_t>(id)] = c;
    at[static_cast<std::size_t>(instance.edge(id).u)].insert(c);
    at[static_cast<std::size_t>(instance.edge(id).v)].insert(c);
  };

  // Blocks: six distinct colors each out of ten, so blocks share colors.
  std::vector<std::int64_t> block_colors;
  for (int b = 0; b < 4; ++b) {
    std::vector<std::int64_t> pool(10);
    std::iota(pool.begin(), pool.end(), 0);
    std::shuffle(pool.begin(), pool.end(), rng);
    int next = 0;
    for (int i = 0; i < 4; ++i) {
      for (int j = i + 1; j < 4; ++j) {
        paint(*instance.edge_id(4 * b + i, 4 * b + j), pool[static_cast<std::size_t>(next)]);
        block_colors.push_back(pool[static_cast<std::size_t>(next++)]);
      }
    }
  }
  std::int64_t fresh = 100;
  for (EdgeId id = 0; id < instance.size(); ++id) {
    if (instance.edge(id).u < kK7Offset && instance.edge(id).v >= kK7Offset) paint(id, fresh++);
  }

  std::vector<EdgeId> star_edges;
  for (EdgeId id = 0; id < instance.size(); ++id) {
    if (instance.edge(id).u >= kK7Offset) star_edges.push_back(id);
  }
  std::shuffle(star_edges.begin(), star_edges.end(), rng);
  std::uniform_int_distribution<int> mode(0, 2);
  std::uniform_int_distribution<Vertex> k_vertex(0, kK7Offset - 1);
  for (EdgeId id : star_edges) {
    const Edge e = instance.edge(id);
    std::int64_t c = -1;
    switch (mode(rng)) {
      case 0: c = block_colors[std::uniform_int_distribution<std::size_t>(0, block_colors.size() - 1)(rng)]; break;
      case 1: {
        // A cross color at a K' neighbor of an endpoint, the kind that clashes with triangles.
        const Vertex end = std::uniform_int_distribution<int>(0, 1)(rng) ? e.u : e.v;
        std::vector<Vertex> near;
        for (Vertex w : instance.neighbors(end)) {
          if (w >= kK7Offset && w != e.u && w != e.v) near.push_back(w);
        }
        if (near.empty()) break;
        const Vertex w = near[std::uniform_int_distribution<std::size_t>(0, near.size() - 1)(rng)];
        c = palette[static_cast<std::size_t>(*instance.edge_id(k_vertex(rng), w))];
        break;
      }
      default: break;
    }
    if (c < 0 || at[static_cast<std::size_t>(e.u)].count(c) || at[static_cast<std::size_t>(e.v)].count(c)) c = fresh++;
    paint(id, c);
  }
  return palette;
}

K7Assembly assemble_rainbow_k7(const Graph& instance, const ProperColoring& coloring) {
  require_host(coloring, instance);
  const Graph star = build(GadgetSpec::triangle_star(kStarLeaves, kStarTriangles));
  auto stage = [](const std::string& name, const std::string& why) {
    return Error(ErrorKind::GadgetState, name + " stage: " + why);
  };
  if (instance.order() != kK7Offset + star.order()) throw stage("layout", "wrong vertex count");
  auto need = [&](Vertex a, Vertex b) {
    if (!instance.adjacent(a, b)) {
      throw stage("layout", "missing edge " + std::to_string(a) + "-" + std::to_string(b));
    }
  };
  for (const auto& e : star.edges()) need(kK7Offset + e.u, kK7Offset + e.v);
  for (Vertex x = 0; x < kK7Offset; ++x) {
    for (Vertex u = kK7Offset; u < instance.order(); ++u) need(x, u);
  }

  std::array<std::vector<int>, 4> block_colors;
  std::unordered_set<int> k_colors;
  for (int b = 0; b < 4; ++b) {
    for (int i = 0; i < 4; ++i) {
      for (int j = i + 1; j < 4; ++j) {
        need(4 * b + i, 4 * b + j);
        block_colors[static_cast<std::size_t>(b)].push_back(color_of(coloring, 4 * b + i, 4 * b + j));
      }
    }
    if (!all_distinct(block_colors[static_cast<std::size_t>(b)])) {
      throw stage("blocks", "K4 block " + std::to_string(b) + " is not rainbow");
    }
    k_colors.insert(block_colors[static_cast<std::size_t>(b)].begin(), block_colors[static_cast<std::size_t>(b)].end());
  }

  std::unordered_map<int, Vertex> owner;
  for (Vertex u = kK7Offset; u < instance.order(); ++u) {
    for (Vertex x = 0; x < kK7Offset; ++x) {
      const int c = color_of(coloring, u, x);
      if (k_colors.count(c)) throw stage("interest", "vertex " + std::to_string(u) + " repeats a K_psi color");
      auto [it, fresh] = owner.try_emplace(c, u);
      if (!fresh && it->second != u) {
        throw stage("compatibility", "vertices " + std::to_string(it->second) + " and " + std::to_string(u) +
                                         " share a color towards K_psi");
      }
    }
  }

  K7Assembly out;
  std::unordered_set<int> removed_colors;
  const auto found = surviving_triangle(kStarLeaves, kStarTriangles, [&](Vertex a, Vertex b) {
    const int c = color_of(coloring, kK7Offset + a, kK7Offset + b);
    if (!k_colors.count(c)) return false;
    removed_colors.insert(c);
    return true;
  });
  if (!found) throw stage("matching removal", "no triangle survives");
  for (EdgeId id = 0; id < instance.size(); ++id) {
    if (instance.edge(id).u >= kK7Offset && k_colors.count(coloring.color(id))) removed_colors.insert(coloring.color(id));
  }
  out.removed_colors = static_cast<int>(removed_colors.size());
  const std::vector<Vertex> tri{kK7Offset + (*found)[0], kK7Offset + (*found)[1], kK7Offset + (*found)[2]};
  out.triangle = clique_copy(instance, tri);
  const std::vector<int> tri_colors{color_of(coloring, tri[0], tri[1]), color_of(coloring, tri[0], tri[2]),
                                    color_of(coloring, tri[1], tri[2])};
  for (int b = 0; b < 4; ++b) {
    bool clean = true;
    for (int i = 0; i < 4 && clean; ++i) {
      for (Vertex u : tri) {
        const int c = color_of(coloring, 4 * b + i, u);
        if (std::find(tri_colors.begin(), tri_colors.end(), c) != tri_colors.end()) clean = false;
      }
    }
    if (!clean) continue;
    out.block = b;
    out.k7 = clique_copy(instance, {4 * b, 4 * b + 1, 4 * b + 2, 4 * b + 3, tri[0], tri[1], tri[2]});
    if (!is_rainbow(coloring, out.k7)) throw std::logic_error("assembled K7 is not rainbow");
    return out;
  }
  throw stage("block selection", "every block clashes with the triangle");
}

std::optional<SubgraphCopy> greedy_rainbow_odd_cycle(const Graph& perturbed, Edge cross_edge,
                                                     const ProperColoring& coloring, int l) {
  require_host(coloring, perturbed);
  if (l < 1) throw Error(ErrorKind::Parameter, "odd cycle needs l >= 1");
  const Vertex x = cross_edge.u;
  const Vertex y = cross_edge.v;
  const auto xy = perturbed.edge_id(x, y);
  if (!xy) throw Error(ErrorKind::Domain, "edge " + std::to_string(x) + "-" + std::to_string(y) + " is not in the graph");
  const Side home = perturbed.side(x);
  if (perturbed.side(y) != home) throw Error(ErrorKind::Parameter, "edge endpoints lie on different sides");

  constexpr std::uint64_t kNodeLimit = 1'000'000;
  std::uint64_t nodes = 0;
  const int extra = 2 * l - 1;  // a_1, b_1, ..., a_l
  std::vector<Vertex> path{x, y};
  std::vector<int> colors{coloring.color(*xy)};
  std::vector<char> on_path(static_cast<std::size_t>(perturbed.order()), 0);
  on_path[static_cast<std::size_t>(x)] = on_path[static_cast<std::size_t>(y)] = 1;
  auto fresh_color = [&](int c) { return std::find(colors.begin(), colors.end(), c) == colors.end(); };

  auto rec = [&](auto&& self, int step) -> bool {
    if (++nodes > kNodeLimit) return false;
    const Vertex last = path.back();
    const bool other_side = step % 2 == 0;
    const bool closing = step == extra - 1;
    auto nb = perturbed.neighbors(last);
    auto ids = perturbed.incident(last);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      const Vertex w = nb[i];
      if (on_path[static_cast<std::size_t>(w)] || (perturbed.side(w) != home) != other_side) continue;
      const int c = coloring.color(ids[i]);
      if (!fresh_color(c)) continue;
      if (closing) {
        const auto back = perturbed.edge_id(w, x);
        if (!back || coloring.color(*back) == c || !fresh_color(coloring.color(*back))) continue;
        path.push_back(w);
        return true;
      }
      path.push_back(w);
      colors.push_back(c);
      on_path[static_cast<std::size_t>(w)] = 1;
      if (self(self, step + 1)) return true;
      on_path[static_cast<std::size_t>(w)] = 0;
      colors.pop_back();
      path.pop_back();
      if (nodes > kNodeLimit) return false;
    }
    return false;
  };
  if (!rec(rec, 0)) return std::nullopt;

  SubgraphCopy copy;
  copy.vertex_map = path;
  for (std::size_t i = 0; i < path.size(); ++i) {
    copy.edges.push_back(*perturbed.edge_id(path[i], path[(i + 1) % path.size()]));
  }
  std::sort(copy.edges.begin(), copy.edges.end());
  if (!is_rainbow(coloring, copy)) throw std::logic_error("odd cycle search returned a non-rainbow cycle");
  return copy;
}

}  // namespace rbw
