#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <variant>
#include <vector>

#include "rbw/graph.hpp"
#include "rbw/graph_io.hpp"

namespace rbw {

/// Proper edge coloring in canonical form: colors are 0, 1, 2, ... in order of first
/// use along ascending edge ids, so equal partitions compare equal.
class ProperColoring {
 public:
  const Graph& host() const { return *host_; }
  std::shared_ptr<const Graph> shared_host() const { return host_; }
  int color(EdgeId id) const { return colors_[static_cast<std::size_t>(id)]; }
  std::span<const int> colors() const { return colors_; }
  int num_colors() const { return num_colors_; }
  /// Edge ids of every color class, classes in color order, ids ascending.
  std::vector<std::vector<EdgeId>> classes() const;

  friend bool operator==(const ProperColoring& a, const ProperColoring& b) {
    return *a.host_ == *b.host_ && a.colors_ == b.colors_;
  }

 private:
  friend ProperColoring check_proper(std::shared_ptr<const Graph>, std::span<const std::int64_t>);
  std::shared_ptr<const Graph> host_;
  std::vector<int> colors_;
  int num_colors_ = 0;
};

/// `colors` is indexed by edge id. Throws ErrorKind::Totality when its length differs
/// from e(host), ErrorKind::Properness naming the vertex and color of the first clash.
ProperColoring check_proper(std::shared_ptr<const Graph> host, std::span<const std::int64_t> colors);
ProperColoring check_proper(const Graph& host, std::span<const std::int64_t> colors);
ProperColoring check_proper(const Graph& host, std::span<const int> colors);
/// Edge-keyed form; unknown edges raise ErrorKind::Domain, repeated ones ErrorKind::Format.
ProperColoring check_proper(const Graph& host, std::span<const ColoredEdge> assignment);

/// Throws ErrorKind::Domain when the copy does not lie in the coloring's host.
bool is_rainbow(const ProperColoring& coloring, const SubgraphCopy& copy);
/// True iff the color sets of the two images intersect.
bool clash(const ProperColoring& coloring, const SubgraphCopy& a, const SubgraphCopy& b);

struct RainbowReport {
  std::uint64_t total_copies = 0;
  std::uint64_t rainbow_copies = 0;
  std::uint64_t non_rainbow_copies = 0;
  std::vector<SubgraphCopy> witnesses;  // first rainbow copies in enumeration order
};

inline constexpr std::size_t kDefaultWitnessCap = 16;

RainbowReport rainbow_census(const ProperColoring& coloring, const Graph& pattern,
                             std::size_t witness_cap = kDefaultWitnessCap);
/// Same report, copies enumerated and classified with OpenMP.
RainbowReport rainbow_census_parallel(const ProperColoring& coloring, const Graph& pattern,
                                      std::size_t witness_cap = kDefaultWitnessCap);

/// e(g) * v(g) * max over independent edge pairs {e, f} of g of the number of pattern
/// copies in g containing both. Throws ErrorKind::Inapplicable when g or the pattern
/// lacks two independent edges.
std::uint64_t extension_bound(const Graph& g, const Graph& pattern);

struct CountWithBound {
  std::uint64_t count = 0;
  std::uint64_t bound = 0;
  bool within() const { return count <= bound; }
};

/// Non-rainbow K_{r,s} copies of K_{r,n} (canonical labeling) whose r-class is the
/// r-side, against r * n * (r - 1) * C(n - 2, s - 2).
CountWithBound count_non_rainbow_bipartite(int r, int s, int n, const ProperColoring& coloring);
/// For HatK(r, n) with a rainbow clique K: s-subsets B of the independent side whose
/// K_{r,s} is not compatible with K (non-rainbow, or clashing with K), against the
/// previous bound plus e(K) * C(n, s - 1).
CountWithBound count_incompatible_hat(int r, int s, int n, const ProperColoring& coloring);

using Anchor = std::variant<Vertex, Edge>;
std::uint64_t copies_through(const Graph& g, const Graph& pattern, const Anchor& anchor);

std::uint64_t binomial(int n, int k);

}  // namespace rbw
