#include "rbw/arrow.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <bitset>
#include <chrono>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "rbw/error.hpp"

namespace rbw {

const char* to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::Arrowed: return "arrowed";
    case Verdict::NotArrowed: return "not-arrowed";
    case Verdict::Indeterminate: return "indeterminate";
  }
  return "?";
}

namespace {

using Clock = std::chrono::steady_clock;
using VertexSet = std::bitset<kMaxSearchVertices>;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

bool is_triangle(const Graph& h) { return h.order() == 3 && h.size() == 3; }

// Colors every edge of g with its own color.
ProperColoring rainbow_everything(const Graph& g) {
  std::vector<std::int64_t> colors(static_cast<std::size_t>(g.size()));
  std::iota(colors.begin(), colors.end(), 0);
  return check_proper(g, std::span<const std::int64_t>(colors));
}

void verify_witness(const ProperColoring& witness, const Graph& h) {
  if (rainbow_census(witness, h, 1).rainbow_copies != 0) {
    throw std::logic_error("solver produced a witness with a rainbow copy");
  }
}

struct Instance {
  const Graph* g = nullptr;
  std::vector<std::vector<EdgeId>> copy_edges;
  std::vector<std::vector<std::pair<EdgeId, EdgeId>>> copy_pairs;  // independent pairs per copy
  std::vector<int> local;  // host vertex -> index among vertices of copy edges, or -1
  bool forced_rainbow = false;  // some copy has no independent pair
};

Instance prepare(const Graph& g, const Graph& h) {
  Instance inst;
  inst.g = &g;
  for_each_copy(g, h, [&](const SubgraphCopy& c) {
    inst.copy_edges.push_back(c.edges);
    return true;
  });
  inst.local.assign(static_cast<std::size_t>(g.order()), -1);
  int next = 0;
  for (const auto& edges : inst.copy_edges) {
    std::vector<std::pair<EdgeId, EdgeId>> pairs;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      for (Vertex v : {g.edge(edges[i]).u, g.edge(edges[i]).v}) {
        if (inst.local[static_cast<std::size_t>(v)] < 0) inst.local[static_cast<std::size_t>(v)] = next++;
      }
      for (std::size_t j = i + 1; j < edges.size(); ++j) {
        if (!g.edge(edges[i]).meets(g.edge(edges[j]))) pairs.emplace_back(edges[i], edges[j]);
      }
    }
    if (pairs.empty()) inst.forced_rainbow = true;
    inst.copy_pairs.push_back(std::move(pairs));
  }
  if (next > kMaxSearchVertices) {
    throw Error(ErrorKind::Resource, "copies of the pattern span " + std::to_string(next) +
                                         " vertices; the search handles at most " + std::to_string(kMaxSearchVertices));
  }
  return inst;
}

enum class Outcome { Found, Exhausted, OutOfBudget, Cancelled };

struct Shared {
  Budget budget;
  Clock::time_point start = Clock::now();
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<std::uint64_t> prunes{0};
  std::atomic<bool> out_of_budget{false};
  std::atomic<int> best_found{std::numeric_limits<int>::max()};
};

// A coloring has no rainbow copy iff every copy has an independent pair of equal color.
// The search picks such a pair per copy and merges the two edges' classes; classes must
// stay matchings. Branches on one copy are disjoint: the i-th option also forbids the
// earlier options from ever being merged. Any surviving state where every copy holds a
// merged pair is a witness (classes become colors, other edges get their own color).
class Search {
 public:
  Search(const Instance& inst, Shared& shared, int index = 0)
      : inst_(inst),
        shared_(shared),
        index_(index),
        parent_(static_cast<std::size_t>(inst.g->size())),
        size_(static_cast<std::size_t>(inst.g->size()), 1),
        verts_(static_cast<std::size_t>(inst.g->size())) {
    std::iota(parent_.begin(), parent_.end(), 0);
    for (EdgeId e = 0; e < inst.g->size(); ++e) {
      const int u = inst.local[static_cast<std::size_t>(inst.g->edge(e).u)];
      const int v = inst.local[static_cast<std::size_t>(inst.g->edge(e).v)];
      if (u >= 0 && v >= 0) {
        verts_[static_cast<std::size_t>(e)].set(static_cast<std::size_t>(u));
        verts_[static_cast<std::size_t>(e)].set(static_cast<std::size_t>(v));
      }
    }
  }

  ~Search() { flush(); }

  void replay(const std::vector<int>& prefix) {
    for (int choice : prefix) {
      const int k = pick_copy();
      if (k < 0) return;  // prefix ended at a witness
      enter(k, choice);
    }
  }

  Outcome run() { return dfs(); }

  // Choice sequences of length `depth` (or shorter ones ending at a witness) that survive
  // propagation, in search order.
  Outcome collect(std::size_t depth, std::vector<std::vector<int>>& prefixes) {
    std::vector<int> current;
    return collect_rec(depth, current, prefixes);
  }

  // Colors by edge id: one color per class, in order of first edge.
  std::vector<std::int64_t> coloring() {
    std::vector<std::int64_t> out(parent_.size());
    std::vector<std::int64_t> id(parent_.size(), -1);
    std::int64_t next = 0;
    for (std::size_t e = 0; e < parent_.size(); ++e) {
      auto& slot = id[static_cast<std::size_t>(find(static_cast<EdgeId>(e)))];
      if (slot < 0) slot = next++;
      out[e] = slot;
    }
    return out;
  }

 private:
  struct Undo {
    EdgeId child = -1;  // -1: only forbidden pairs were pushed
    VertexSet old_verts;
    std::size_t forbidden_size = 0;
  };

  EdgeId find(EdgeId e) const {
    while (parent_[static_cast<std::size_t>(e)] != e) e = parent_[static_cast<std::size_t>(e)];
    return e;
  }

  bool forbidden(EdgeId ra, EdgeId rb) const {
    for (const auto& [x, y] : forbidden_) {
      const EdgeId fx = find(x);
      const EdgeId fy = find(y);
      if ((fx == ra && fy == rb) || (fx == rb && fy == ra)) return true;
    }
    return false;
  }

  bool mergeable(EdgeId a, EdgeId b) const {
    const EdgeId ra = find(a);
    const EdgeId rb = find(b);
    if (ra == rb) return true;
    return (verts_[static_cast<std::size_t>(ra)] & verts_[static_cast<std::size_t>(rb)]).none() && !forbidden(ra, rb);
  }

  bool satisfied(int k) const {
    for (const auto& [a, b] : inst_.copy_pairs[static_cast<std::size_t>(k)]) {
      if (find(a) == find(b)) return true;
    }
    return false;
  }

  // Unsatisfied copy with the fewest mergeable options (lowest index on ties); -1 when
  // every copy is satisfied, -2 when some copy has no option left.
  int pick_copy() const {
    int best = -1;
    std::size_t best_options = 0;
    for (std::size_t k = 0; k < inst_.copy_pairs.size(); ++k) {
      if (satisfied(static_cast<int>(k))) continue;
      std::size_t options = 0;
      for (const auto& [a, b] : inst_.copy_pairs[k]) options += mergeable(a, b);
      if (options == 0) return -2;
      if (best < 0 || options < best_options) {
        best = static_cast<int>(k);
        best_options = options;
      }
    }
    return best;
  }

  // Forbids options [0, choice) of copy k and merges option `choice`. Returns false if
  // the merge is impossible (state left for leave()).
  bool enter(int k, int choice) {
    const auto& pairs = inst_.copy_pairs[static_cast<std::size_t>(k)];
    Undo undo;
    undo.forbidden_size = forbidden_.size();
    for (int i = 0; i < choice; ++i) forbidden_.push_back(pairs[static_cast<std::size_t>(i)]);
    const auto [a, b] = pairs[static_cast<std::size_t>(choice)];
    if (!mergeable(a, b)) {
      log_.push_back(undo);
      return false;
    }
    EdgeId ra = find(a);
    EdgeId rb = find(b);
    if (size_[static_cast<std::size_t>(ra)] < size_[static_cast<std::size_t>(rb)]) std::swap(ra, rb);
    undo.child = rb;
    undo.old_verts = verts_[static_cast<std::size_t>(ra)];
    parent_[static_cast<std::size_t>(rb)] = ra;
    size_[static_cast<std::size_t>(ra)] += size_[static_cast<std::size_t>(rb)];
    verts_[static_cast<std::size_t>(ra)] |= verts_[static_cast<std::size_t>(rb)];
    log_.push_back(undo);
    // Forbidden pairs already joined by this merge make the state contradictory.
    for (const auto& [x, y] : forbidden_) {
      if (find(x) == find(y)) return false;
    }
    return true;
  }

  void leave() {
    const Undo undo = log_.back();
    log_.pop_back();
    forbidden_.resize(undo.forbidden_size);
    if (undo.child < 0) return;
    const EdgeId root = parent_[static_cast<std::size_t>(undo.child)];
    parent_[static_cast<std::size_t>(undo.child)] = undo.child;
    size_[static_cast<std::size_t>(root)] -= size_[static_cast<std::size_t>(undo.child)];
    verts_[static_cast<std::size_t>(root)] = undo.old_verts;
  }

  // Returns false when the search must stop.
  bool tick() {
    if (++local_nodes_ < std::min<std::uint64_t>(1024, shared_.budget.max_nodes)) return true;
    flush();
    if (shared_.out_of_budget.load(std::memory_order_relaxed)) return false;
    if (shared_.nodes.load(std::memory_order_relaxed) >= shared_.budget.max_nodes ||
        (shared_.budget.max_seconds > 0 && seconds_since(shared_.start) >= shared_.budget.max_seconds)) {
      shared_.out_of_budget.store(true);
      return false;
    }
    return true;
  }

  void flush() {
    shared_.nodes.fetch_add(local_nodes_, std::memory_order_relaxed);
    shared_.prunes.fetch_add(local_prunes_, std::memory_order_relaxed);
    local_nodes_ = 0;
    local_prunes_ = 0;
  }

  Outcome dfs() {
    if (shared_.best_found.load(std::memory_order_relaxed) < index_) return Outcome::Cancelled;
    const int k = pick_copy();
    if (k == -1) return Outcome::Found;
    if (k == -2) {
      ++local_prunes_;
      return Outcome::Exhausted;
    }
    const auto& pairs = inst_.copy_pairs[static_cast<std::size_t>(k)];
    for (int choice = 0; choice < static_cast<int>(pairs.size()); ++choice) {
      if (!mergeable(pairs[static_cast<std::size_t>(choice)].first, pairs[static_cast<std::size_t>(choice)].second)) {
        continue;
      }
      if (!tick()) return Outcome::OutOfBudget;
      if (enter(k, choice)) {
        const Outcome r = dfs();
        if (r != Outcome::Exhausted) return r;
      } else {
        ++local_prunes_;
      }
      leave();
    }
    return Outcome::Exhausted;
  }

  Outcome collect_rec(std::size_t depth, std::vector<int>& current, std::vector<std::vector<int>>& out) {
    const int k = pick_copy();
    if (k == -2) return Outcome::Exhausted;
    if (k == -1 || current.size() == depth) {
      out.push_back(current);
      return Outcome::Exhausted;
    }
    const auto& pairs = inst_.copy_pairs[static_cast<std::size_t>(k)];
    for (int choice = 0; choice < static_cast<int>(pairs.size()); ++choice) {
      if (!mergeable(pairs[static_cast<std::size_t>(choice)].first, pairs[static_cast<std::size_t>(choice)].second)) {
        continue;
      }
      if (!tick()) return Outcome::OutOfBudget;
      if (enter(k, choice)) {
        current.push_back(choice);
        const Outcome r = collect_rec(depth, current, out);
        current.pop_back();
        if (r != Outcome::Exhausted) return r;
      }
      leave();
    }
    return Outcome::Exhausted;
  }

  const Instance& inst_;
  Shared& shared_;
  int index_;
  std::vector<EdgeId> parent_;
  std::vector<int> size_;
  std::vector<VertexSet> verts_;
  std::vector<std::pair<EdgeId, EdgeId>> forbidden_;
  std::vector<Undo> log_;
  std::uint64_t local_nodes_ = 0;
  std::uint64_t local_prunes_ = 0;
};

ProperColoring witness_from(const Instance& inst, Search& search) {
  const auto colors = search.coloring();
  return check_proper(*inst.g, std::span<const std::int64_t>(colors));
}

std::string describe(const Instance& inst, Verdict v) {
  const std::string space = "repeat-pair selections for " + std::to_string(inst.copy_edges.size()) +
                            " copies (color classes kept as matchings)";
  switch (v) {
    case Verdict::Arrowed: return "exhausted " + space;
    case Verdict::NotArrowed: return "witness found among " + space;
    case Verdict::Indeterminate: return "budget exhausted while searching " + space;
  }
  return space;
}

// Verdicts that need no search. Returns nullopt when a search is required.
std::optional<ArrowVerdict> trivial(const Graph& g, const Graph& h, const Instance& inst) {
  ArrowVerdict out;
  out.stats.copies = inst.copy_edges.size();
  if (inst.copy_edges.empty()) {
    out.verdict = Verdict::NotArrowed;
    out.witness = rainbow_everything(g);
    out.stats.descriptor = "no copy of the pattern";
    return out;
  }
  if (inst.forced_rainbow) {
    out.verdict = Verdict::Arrowed;
    out.stats.descriptor = "a copy has pairwise adjacent edges and is rainbow under every proper coloring";
    return out;
  }
  (void)h;
  return std::nullopt;
}

void finish(ArrowVerdict& out, const Instance& inst, const Shared& shared, const Graph& h) {
  out.stats.nodes = shared.nodes.load();
  out.stats.prunes = shared.prunes.load();
  out.stats.seconds = seconds_since(shared.start);
  out.stats.copies = inst.copy_edges.size();
  std::size_t edges = 0;
  for (const auto& c : inst.copy_edges) edges += c.size();
  out.stats.search_edges = static_cast<int>(edges);
  out.stats.descriptor = describe(inst, out.verdict);
  if (out.witness) verify_witness(*out.witness, h);
}

void require_pattern(const Graph& h) {
  if (h.order() == 0) throw Error(ErrorKind::Parameter, "empty pattern");
}

}  // namespace

std::optional<ArrowVerdict> decide_arrow_fast_paths(const Graph& g, const Graph& h) {
  if (!is_triangle(h)) return std::nullopt;
  ArrowVerdict out;
  out.stats.copies = count_copies(g, h);
  if (out.stats.copies > 0) {
    out.verdict = Verdict::Arrowed;
    out.stats.descriptor = "triangle present; triangles are rainbow under every proper coloring";
  } else {
    out.verdict = Verdict::NotArrowed;
    out.witness = rainbow_everything(g);
    out.stats.descriptor = "triangle-free host";
  }
  return out;
}

ArrowVerdict decide_arrow_serial(const Graph& g, const Graph& h, const Budget& budget) {
  require_pattern(h);
  const auto start = Clock::now();
  const Instance inst = prepare(g, h);
  if (auto t = trivial(g, h, inst)) {
    t->stats.seconds = seconds_since(start);
    return *t;
  }
  Shared shared;
  shared.budget = budget;
  shared.start = start;
  ArrowVerdict out;
  {
    Search search(inst, shared);
    switch (search.run()) {
      case Outcome::Found:
        out.verdict = Verdict::NotArrowed;
        out.witness = witness_from(inst, search);
        break;
      case Outcome::Exhausted: out.verdict = Verdict::Arrowed; break;
      default: out.verdict = Verdict::Indeterminate; break;
    }
  }
  finish(out, inst, shared, h);
  return out;
}

ArrowVerdict decide_arrow(const Graph& g, const Graph& h, const Budget& budget, int threads) {
  require_pattern(h);
  const auto start = Clock::now();
  const Instance inst = prepare(g, h);
  if (auto t = trivial(g, h, inst)) {
    t->stats.seconds = seconds_since(start);
    return *t;
  }
  const int workers = threads > 0 ? threads : omp_get_max_threads();
  Shared shared;
  shared.budget = budget;
  shared.start = start;
  ArrowVerdict out;

  // Deepen the split until there is enough work per worker.
  std::vector<std::vector<int>> prefixes{{}};
  constexpr std::size_t max_depth = 12;
  std::size_t depth = 0;
  bool split_out_of_budget = false;
  while (workers > 1 && prefixes.size() < static_cast<std::size_t>(8 * workers) && depth < max_depth) {
    std::vector<std::vector<int>> next;
    Search probe(inst, shared);
    const Outcome r = probe.collect(depth + 1, next);
    if (r == Outcome::OutOfBudget) {
      split_out_of_budget = true;
      break;
    }
    prefixes = std::move(next);
    ++depth;
  }

  if (!split_out_of_budget) {
    const auto count = static_cast<int>(prefixes.size());
    std::vector<Outcome> results(prefixes.size(), Outcome::Exhausted);
    std::vector<std::optional<ProperColoring>> found(prefixes.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
    for (int i = 0; i < count; ++i) {
      if (shared.best_found.load() < i || shared.out_of_budget.load()) {
        results[static_cast<std::size_t>(i)] = Outcome::Cancelled;
        continue;
      }
      Search search(inst, shared, i);
      search.replay(prefixes[static_cast<std::size_t>(i)]);
      const Outcome r = search.run();
      results[static_cast<std::size_t>(i)] = r;
      if (r == Outcome::Found) {
        found[static_cast<std::size_t>(i)] = witness_from(inst, search);
        int seen = shared.best_found.load();
        while (i < seen && !shared.best_found.compare_exchange_weak(seen, i)) {
        }
      }
    }
    // The serial search reports the first witness in prefix order; that is the one
    // taken here whenever every earlier subproblem was exhausted.
    bool incomplete = false;
    for (int i = 0; i < count && !out.witness; ++i) {
      if (found[static_cast<std::size_t>(i)]) {
        out.witness = std::move(found[static_cast<std::size_t>(i)]);
      } else if (results[static_cast<std::size_t>(i)] != Outcome::Exhausted) {
        incomplete = true;
      }
    }
    out.verdict = out.witness ? Verdict::NotArrowed : incomplete ? Verdict::Indeterminate : Verdict::Arrowed;
  }
  out.stats.subproblems = static_cast<int>(prefixes.size());
  finish(out, inst, shared, h);
  return out;
}

namespace {

// Copies of h in g as edge masks, found by trying every edge subset of the right size
// and every vertex bijection, independently of the backtracking matcher.
std::vector<std::uint32_t> oracle_copies(const Graph& g, const Graph& h) {
  std::vector<Vertex> core;
  for (Vertex v = 0; v < h.order(); ++v) {
    if (h.degree(v) > 0) core.push_back(v);
  }
  std::vector<int> index(static_cast<std::size_t>(h.order()), -1);
  for (std::size_t i = 0; i < core.size(); ++i) index[static_cast<std::size_t>(core[i])] = static_cast<int>(i);
  if (core.size() > 9) throw Error(ErrorKind::Resource, "oracle pattern has more than 9 non-isolated vertices");

  std::vector<std::uint32_t> out;
  if (g.order() < h.order()) return out;
  const std::uint32_t full = (std::uint32_t{1} << g.size()) - 1;
  for (std::uint32_t s = 0; s <= full; ++s) {
    if (std::popcount(s) != h.size()) continue;
    std::vector<Vertex> verts;
    for (EdgeId e = 0; e < g.size(); ++e) {
      if (s >> e & 1U) {
        verts.push_back(g.edge(e).u);
        verts.push_back(g.edge(e).v);
      }
    }
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    if (verts.size() != core.size()) continue;
    bool iso = false;
    do {
      bool ok = true;
      for (const auto& e : h.edges()) {
        const Vertex a = verts[static_cast<std::size_t>(index[static_cast<std::size_t>(e.u)])];
        const Vertex b = verts[static_cast<std::size_t>(index[static_cast<std::size_t>(e.v)])];
        const auto id = g.edge_id(a, b);
        if (!id || !(s >> *id & 1U)) {
          ok = false;
          break;
        }
      }
      iso = ok;
    } while (!iso && std::next_permutation(verts.begin(), verts.end()));
    if (iso) out.push_back(s);
    if (h.size() == 0) break;
  }
  return out;
}

}  // namespace

ArrowVerdict brute_force_oracle(const Graph& g, const Graph& h, int max_edges) {
  require_pattern(h);
  if (g.size() > std::min(max_edges, 20)) {
    throw Error(ErrorKind::Resource, "oracle limited to " + std::to_string(max_edges) + " edges");
  }
  const auto start = Clock::now();
  const auto copies = oracle_copies(g, h);
  const int m = g.size();
  std::vector<std::pair<EdgeId, EdgeId>> touching;
  for (EdgeId a = 0; a < m; ++a) {
    for (EdgeId b = a + 1; b < m; ++b) {
      if (g.edge(a).meets(g.edge(b))) touching.emplace_back(a, b);
    }
  }

  ArrowVerdict out;
  out.verdict = Verdict::Arrowed;
  out.stats.copies = copies.size();
  // Restricted growth strings: rgs[i] <= 1 + max(rgs[0..i)).
  std::vector<int> rgs(static_cast<std::size_t>(m), 0);
  std::vector<int> peak(static_cast<std::size_t>(m), 0);
  while (true) {
    ++out.stats.nodes;
    bool proper = true;
    for (const auto& [a, b] : touching) {
      if (rgs[static_cast<std::size_t>(a)] == rgs[static_cast<std::size_t>(b)]) {
        proper = false;
        break;
      }
    }
    if (proper) {
      bool any_rainbow = false;
      for (std::uint32_t mask : copies) {
        std::uint64_t seen = 0;
        bool rainbow = true;
        for (EdgeId e = 0; e < m && rainbow; ++e) {
          if (!(mask >> e & 1U)) continue;
          const auto bit = std::uint64_t{1} << rgs[static_cast<std::size_t>(e)];
          rainbow = !(seen & bit);
          seen |= bit;
        }
        if (rainbow) {
          any_rainbow = true;
          break;
        }
      }
      if (!any_rainbow) {
        out.verdict = Verdict::NotArrowed;
        std::vector<std::int64_t> colors(rgs.begin(), rgs.end());
        out.witness = check_proper(g, std::span<const std::int64_t>(colors));
        break;
      }
    }
    // Next restricted growth string.
    int i = m - 1;
    while (i >= 1 && rgs[static_cast<std::size_t>(i)] == peak[static_cast<std::size_t>(i - 1)] + 1) --i;
    if (i < 1) break;
    ++rgs[static_cast<std::size_t>(i)];
    peak[static_cast<std::size_t>(i)] = std::max(peak[static_cast<std::size_t>(i - 1)], rgs[static_cast<std::size_t>(i)]);
    for (int j = i + 1; j < m; ++j) {
      rgs[static_cast<std::size_t>(j)] = 0;
      peak[static_cast<std::size_t>(j)] = peak[static_cast<std::size_t>(i)];
    }
  }
  out.stats.seconds = seconds_since(start);
  out.stats.descriptor = "enumerated " + std::to_string(out.stats.nodes) + " set partitions of " + std::to_string(m) +
                         " edges";
  return out;
}

}  // namespace rbw
