#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "rbw/coloring.hpp"
#include "rbw/graph.hpp"

namespace rbw {

struct Budget {
  std::uint64_t max_nodes = 100'000'000;
  double max_seconds = 0;  // <= 0: no time limit
};

enum class Verdict { Arrowed, NotArrowed, Indeterminate };
const char* to_string(Verdict v) noexcept;

struct SearchStats {
  std::uint64_t nodes = 0;
  std::uint64_t prunes = 0;
  double seconds = 0;
  std::uint64_t copies = 0;
  int search_edges = 0;  // edge slots over all copies
  int subproblems = 1;
  std::string descriptor;
};

/// Outcome of deciding g -> h. A witness is present iff the verdict is NotArrowed; it is
/// proper and has no rainbow copy of h (re-verified before being returned).
struct ArrowVerdict {
  Verdict verdict = Verdict::Indeterminate;
  std::optional<ProperColoring> witness;
  SearchStats stats;

  bool arrowed() const { return verdict == Verdict::Arrowed; }
};

/// Decides without search when h is a triangle (every proper coloring makes triangles
/// rainbow, so g -> K3 iff g has one); nullopt otherwise.
std::optional<ArrowVerdict> decide_arrow_fast_paths(const Graph& g, const Graph& h);

/// Exact search. A proper coloring avoids rainbow copies iff each copy has two independent
/// edges of equal color, so the search chooses such a pair per copy (most constrained copy
/// first) and merges the two edges' color classes, which must remain matchings. Sibling
/// branches forbid each other's pairs, so no coloring is reached twice. Exhausting the
/// tree certifies g -> h; a state where every copy has its pair is a witness. Hitting the
/// budget yields Verdict::Indeterminate.
///
/// The tree is split into prefix subproblems run with OpenMP (threads <= 0: runtime
/// default). With the budget not hit, verdict and witness equal decide_arrow_serial's.
/// Throws ErrorKind::Resource when copies of h span more than kMaxSearchVertices vertices.
ArrowVerdict decide_arrow(const Graph& g, const Graph& h, const Budget& budget = {}, int threads = 0);
ArrowVerdict decide_arrow_serial(const Graph& g, const Graph& h, const Budget& budget = {});

inline constexpr int kMaxSearchVertices = 256;

/// Reference verdict by listing every partition of E(g) into matchings, no pruning.
/// Throws ErrorKind::Resource when e(g) > max_edges.
inline constexpr int kOracleMaxEdges = 10;
ArrowVerdict brute_force_oracle(const Graph& g, const Graph& h, int max_edges = kOracleMaxEdges);

}  // namespace rbw
