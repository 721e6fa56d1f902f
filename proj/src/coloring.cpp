#include "rbw/coloring.hpp"

#include <algorithm>
#include <unordered_map>

#include "rbw/error.hpp"
#include "rbw/gadgets.hpp"

namespace rbw {

std::vector<std::vector<EdgeId>> ProperColoring::classes() const {
  std::vector<std::vector<EdgeId>> out(static_cast<std::size_t>(num_colors_));
  for (EdgeId id = 0; id < static_cast<EdgeId>(colors_.size()); ++id) {
    out[static_cast<std::size_t>(colors_[static_cast<std::size_t>(id)])].push_back(id);
  }
  return out;
}

ProperColoring check_proper(std::shared_ptr<const Graph> host, std::span<const std::int64_t> colors) {
  const Graph& g = *host;
  if (static_cast<int>(colors.size()) != g.size()) {
    throw Error(ErrorKind::Totality, "coloring covers " + std::to_string(colors.size()) + " of " +
                                         std::to_string(g.size()) + " edges");
  }
  ProperColoring out;
  out.colors_.resize(colors.size());
  std::unordered_map<std::int64_t, int> rename;
  for (std::size_t id = 0; id < colors.size(); ++id) {
    auto [it, fresh] = rename.try_emplace(colors[id], static_cast<int>(rename.size()));
    out.colors_[id] = it->second;
  }
  // stamp[c] = 1 + last vertex seen with color c
  std::vector<Vertex> stamp(rename.size(), 0);
  for (Vertex v = 0; v < g.order(); ++v) {
    for (EdgeId id : g.incident(v)) {
      auto& seen = stamp[static_cast<std::size_t>(out.colors_[static_cast<std::size_t>(id)])];
      if (seen == v + 1) {
        throw Error(ErrorKind::Properness, "color " + std::to_string(colors[static_cast<std::size_t>(id)]) +
                                               " used twice at vertex " + std::to_string(v));
      }
      seen = v + 1;
    }
  }
  out.num_colors_ = static_cast<int>(rename.size());
  out.host_ = std::move(host);
  return out;
}

ProperColoring check_proper(const Graph& host, std::span<const std::int64_t> colors) {
  return check_proper(std::make_shared<const Graph>(host), colors);
}

ProperColoring check_proper(const Graph& host, std::span<const int> colors) {
  std::vector<std::int64_t> wide(colors.begin(), colors.end());
  return check_proper(host, std::span<const std::int64_t>(wide));
}

ProperColoring check_proper(const Graph& host, std::span<const ColoredEdge> assignment) {
  std::vector<std::int64_t> colors(static_cast<std::size_t>(host.size()), -1);
  for (const auto& item : assignment) {
    auto id = host.edge_id(item.edge.u, item.edge.v);
    if (!id) {
      throw Error(ErrorKind::Domain, "edge " + std::to_string(item.edge.u) + "-" + std::to_string(item.edge.v) +
                                         " is not in the host");
    }
    auto& slot = colors[static_cast<std::size_t>(*id)];
    if (slot >= 0) {
      throw Error(ErrorKind::Format, "edge " + std::to_string(item.edge.u) + "-" + std::to_string(item.edge.v) +
                                         " colored twice");
    }
    slot = item.color;
  }
  for (EdgeId id = 0; id < host.size(); ++id) {
    if (colors[static_cast<std::size_t>(id)] < 0) {
      const auto& e = host.edge(id);
      throw Error(ErrorKind::Totality, "edge " + std::to_string(e.u) + "-" + std::to_string(e.v) + " has no color");
    }
  }
  return check_proper(host, std::span<const std::int64_t>(colors));
}

namespace {

void require_in_host(const ProperColoring& coloring, const SubgraphCopy& copy) {
  const Graph& g = coloring.host();
  for (Vertex v : copy.vertex_map) {
    if (v < 0 || v >= g.order()) throw Error(ErrorKind::Domain, "copy vertex outside the host");
  }
  for (EdgeId id : copy.edges) {
    if (id < 0 || id >= g.size()) throw Error(ErrorKind::Domain, "copy edge outside the host");
  }
}

bool distinct_colors(const ProperColoring& coloring, std::span<const EdgeId> edges) {
  std::vector<int> seen;
  seen.reserve(edges.size());
  for (EdgeId id : edges) seen.push_back(coloring.color(id));
  std::sort(seen.begin(), seen.end());
  return std::adjacent_find(seen.begin(), seen.end()) == seen.end();
}

}  // namespace

bool is_rainbow(const ProperColoring& coloring, const SubgraphCopy& copy) {
  require_in_host(coloring, copy);
  return distinct_colors(coloring, copy.edges);
}

bool clash(const ProperColoring& coloring, const SubgraphCopy& a, const SubgraphCopy& b) {
  require_in_host(coloring, a);
  require_in_host(coloring, b);
  for (EdgeId x : a.edges) {
    for (EdgeId y : b.edges) {
      if (coloring.color(x) == coloring.color(y)) return true;
    }
  }
  return false;
}

RainbowReport rainbow_census(const ProperColoring& coloring, const Graph& pattern, std::size_t witness_cap) {
  RainbowReport report;
  for_each_copy(coloring.host(), pattern, [&](const SubgraphCopy& c) {
    ++report.total_copies;
    if (distinct_colors(coloring, c.edges)) {
      ++report.rainbow_copies;
      if (report.witnesses.size() < witness_cap) report.witnesses.push_back(c);
    } else {
      ++report.non_rainbow_copies;
    }
    return true;
  });
  return report;
}

RainbowReport rainbow_census_parallel(const ProperColoring& coloring, const Graph& pattern, std::size_t witness_cap) {
  const auto copies = enumerate_copies_parallel(coloring.host(), pattern);
  std::vector<char> rainbow(copies.size(), 0);
  const auto count = static_cast<std::int64_t>(copies.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < count; ++i) {
    rainbow[static_cast<std::size_t>(i)] = distinct_colors(coloring, copies[static_cast<std::size_t>(i)].edges);
  }
  RainbowReport report;
  report.total_copies = copies.size();
  for (std::size_t i = 0; i < copies.size(); ++i) {
    if (!rainbow[i]) continue;
    ++report.rainbow_copies;
    if (report.witnesses.size() < witness_cap) report.witnesses.push_back(copies[i]);
  }
  report.non_rainbow_copies = report.total_copies - report.rainbow_copies;
  return report;
}

namespace {

bool has_independent_pair(const Graph& g) {
  for (EdgeId a = 0; a < g.size(); ++a) {
    for (EdgeId b = a + 1; b < g.size(); ++b) {
      if (!g.edge(a).meets(g.edge(b))) return true;
    }
  }
  return false;
}

}  // namespace

std::uint64_t extension_bound(const Graph& g, const Graph& pattern) {
  if (!has_independent_pair(pattern)) throw Error(ErrorKind::Inapplicable, "pattern has no two independent edges");
  if (!has_independent_pair(g)) throw Error(ErrorKind::Inapplicable, "host has no two independent edges");
  std::unordered_map<std::uint64_t, std::uint64_t> through;
  for_each_copy(g, pattern, [&](const SubgraphCopy& c) {
    for (std::size_t i = 0; i < c.edges.size(); ++i) {
      for (std::size_t j = i + 1; j < c.edges.size(); ++j) {
        if (g.edge(c.edges[i]).meets(g.edge(c.edges[j]))) continue;
        const auto key = static_cast<std::uint64_t>(c.edges[i]) << 32 | static_cast<std::uint32_t>(c.edges[j]);
        ++through[key];
      }
    }
    return true;
  });
  std::uint64_t best = 0;
  for (const auto& [key, count] : through) best = std::max(best, count);
  return static_cast<std::uint64_t>(g.size()) * static_cast<std::uint64_t>(g.order()) * best;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t out = 1;
  for (int i = 1; i <= k; ++i) out = out * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return out;
}

namespace {

void check_bipartite_params(int r, int s, int n) {
  if (r < 1 || s < 2 || n < r || s > n) {
    throw Error(ErrorKind::Parameter, "need s >= 2, n >= r >= 1 and s <= n");
  }
}

// Calls visit(subset) for every s-subset of {first, ..., first + n - 1}, in lexicographic order.
template <typename Visit>
void for_each_subset(int first, int n, int s, Visit&& visit) {
  std::vector<Vertex> pick(static_cast<std::size_t>(s));
  for (int i = 0; i < s; ++i) pick[static_cast<std::size_t>(i)] = first + i;
  while (true) {
    visit(std::span<const Vertex>(pick));
    int i = s - 1;
    while (i >= 0 && pick[static_cast<std::size_t>(i)] == first + n - s + i) --i;
    if (i < 0) return;
    ++pick[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < s; ++j) pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
  }
}

std::vector<EdgeId> bipartite_edges(const Graph& g, int r, std::span<const Vertex> part) {
  std::vector<EdgeId> ids;
  for (Vertex x = 0; x < r; ++x) {
    for (Vertex y : part) ids.push_back(*g.edge_id(x, y));
  }
  return ids;
}

}  // namespace

CountWithBound count_non_rainbow_bipartite(int r, int s, int n, const ProperColoring& coloring) {
  check_bipartite_params(r, s, n);
  const Graph& g = coloring.host();
  if (!(g == build(GadgetSpec::complete_bipartite(r, n)))) {
    throw Error(ErrorKind::Domain, "coloring host is not the canonical K_{r,n}");
  }
  CountWithBound out;
  for_each_subset(r, n, s, [&](std::span<const Vertex> part) {
    if (!distinct_colors(coloring, bipartite_edges(g, r, part))) ++out.count;
  });
  out.bound = static_cast<std::uint64_t>(r) * static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(r - 1) *
              binomial(n - 2, s - 2);
  return out;
}

CountWithBound count_incompatible_hat(int r, int s, int n, const ProperColoring& coloring) {
  check_bipartite_params(r, s, n);
  const Graph& g = coloring.host();
  if (!(g == build(GadgetSpec::hat_k(r, n)))) throw Error(ErrorKind::Domain, "coloring host is not HatK(r,n)");
  std::vector<int> clique_colors;
  for (Vertex a = 0; a < r; ++a) {
    for (Vertex b = a + 1; b < r; ++b) clique_colors.push_back(coloring.color(*g.edge_id(a, b)));
  }
  std::sort(clique_colors.begin(), clique_colors.end());
  if (std::adjacent_find(clique_colors.begin(), clique_colors.end()) != clique_colors.end()) {
    throw Error(ErrorKind::GadgetState, "clique side is not rainbow");
  }
  CountWithBound out;
  for_each_subset(r, n, s, [&](std::span<const Vertex> part) {
    const auto ids = bipartite_edges(g, r, part);
    bool ok = distinct_colors(coloring, ids);
    for (std::size_t i = 0; ok && i < ids.size(); ++i) {
      ok = !std::binary_search(clique_colors.begin(), clique_colors.end(), coloring.color(ids[i]));
    }
    if (!ok) ++out.count;
  });
  out.bound = static_cast<std::uint64_t>(r) * static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(r - 1) *
                  binomial(n - 2, s - 2) +
              clique_colors.size() * binomial(n, s - 1);
  return out;
}

std::uint64_t copies_through(const Graph& g, const Graph& pattern, const Anchor& anchor) {
  std::uint64_t count = 0;
  if (const auto* v = std::get_if<Vertex>(&anchor)) {
    if (*v < 0 || *v >= g.order()) throw Error(ErrorKind::Domain, "anchor vertex outside the graph");
    for_each_copy(g, pattern, [&](const SubgraphCopy& c) {
      count += std::find(c.vertex_map.begin(), c.vertex_map.end(), *v) != c.vertex_map.end();
      return true;
    });
    return count;
  }
  const Edge& e = std::get<Edge>(anchor);
  const auto id = g.edge_id(e.u, e.v);
  if (!id) throw Error(ErrorKind::Domain, "anchor edge not in the graph");
  for_each_copy(g, pattern, [&](const SubgraphCopy& c) {
    count += std::binary_search(c.edges.begin(), c.edges.end(), *id);
    return true;
  });
  return count;
}

}  // namespace rbw
