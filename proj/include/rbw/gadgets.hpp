#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rbw/graph.hpp"

namespace rbw {

/// Description of one graph family member. Canonical labelings produced by build():
///
///   Complete(r)            0..r-1
///   Cycle(l)               i ~ i+1 (mod l)
///   CompleteBipartite(r,s) 0..r-1 Left, r..r+s-1 Right
///   Star(k)                center 0, leaves 1..k
///   Path(k)                0-1-...-(k-1), k vertices
///   HatK(r,n)              0..r-1 clique side (Left), r..r+n-1 independent side (Right)
///   TildeK35               HatK(3,5) plus star from vertex 3 to 4,5,6,7
///   Join(L,R)              L as built, then R shifted by v(L); L Left, R Right
///   TriangleStar(k,t)      center 0, skeleton leaves 1..k, apex of the j-th triangle on
///                          skeleton edge {0,i} is 1 + k + (i-1)*t + j
struct GadgetSpec {
  enum class Kind { Complete, Cycle, CompleteBipartite, Star, Path, HatK, TildeK35, Join, TriangleStar };

  Kind kind = Kind::Complete;
  int a = 0;
  int b = 0;
  std::vector<GadgetSpec> parts;  // Join operands

  static GadgetSpec complete(int r) { return {Kind::Complete, r, 0, {}}; }
  static GadgetSpec cycle(int l) { return {Kind::Cycle, l, 0, {}}; }
  static GadgetSpec complete_bipartite(int r, int s) { return {Kind::CompleteBipartite, r, s, {}}; }
  static GadgetSpec star(int k) { return {Kind::Star, k, 0, {}}; }
  static GadgetSpec path(int k) { return {Kind::Path, k, 0, {}}; }
  static GadgetSpec hat_k(int r, int n) { return {Kind::HatK, r, n, {}}; }
  static GadgetSpec tilde_k35() { return {Kind::TildeK35, 0, 0, {}}; }
  static GadgetSpec join(GadgetSpec l, GadgetSpec r) {
    return {Kind::Join, 0, 0, {std::move(l), std::move(r)}};
  }
  static GadgetSpec triangle_star(int k, int t) { return {Kind::TriangleStar, k, t, {}}; }

  friend bool operator==(const GadgetSpec&, const GadgetSpec&) = default;
};

Graph build(const GadgetSpec& spec);

/// Parses `K4`, `C5`, `Kb(3,5)`, `S3`, `P4`, `Khat(3,5)`, `Ktilde35`, `Kjoin(S3,P4)`,
/// `Kdelta(25,49)`. Throws ErrorKind::Format.
GadgetSpec parse_spec(std::string_view text);
std::string to_string(const GadgetSpec& spec);

/// Vertex and edge counts without building.
int expected_order(const GadgetSpec& spec);
int expected_size(const GadgetSpec& spec);

}  // namespace rbw
