#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "rbw/graph.hpp"

namespace rbw {

using Rational = boost::rational<std::int64_t>;

/// Renders `num/den` (integers too, e.g. `3/1`).
std::string format_rational(const Rational& r);
Rational parse_rational(const std::string& text);

/// Largest order accepted by the exhaustive subset scans below.
inline constexpr int kDensityMaxOrder = 22;

/// Maximum 2-density: max over connected subgraphs F with v(F) >= 3 of
/// (e(F) - 1) / (v(F) - 2). Disconnected F never exceed the best component unless
/// every component is a single edge. Throws ErrorKind::Inapplicable when no such F exists.
Rational m2(const Graph& h);
/// m2 together with the vertex set of the lowest-mask induced subgraph attaining it.
std::pair<Rational, std::vector<Vertex>> m2_argmax(const Graph& h);

/// Maximum density: max over nonempty vertex subsets of e/v.
Rational m1(const Graph& h);

/// Maximum bipartition density: min over (V1, V2) of max(m1(h[V1]), m1(h[V2])),
/// with m1 of an empty part taken as 0.
Rational m_bip2(const Graph& h);

bool strictly_2_balanced(const Graph& h);

struct ThresholdCase {
  enum class Kind { OddCycle, K5, K7, K4, OddComplete, EvenCompleteUpper, EvenLowerBound };
  Kind kind;
  int param = 0;  // l for OddCycle, r for the parameterized complete-graph cases
};

/// Exponent a with threshold (or bound) n^{-a}.
Rational threshold_exponent(const ThresholdCase& c);

struct DensityReport {
  Rational m2;
  Rational m1;
  std::optional<Rational> m_bip2;
  bool strictly_2_balanced = false;
  std::vector<Vertex> argmax_subgraph;
};

DensityReport density_report(const Graph& h, bool with_bipartition);
/// key=value lines.
std::string format_report(const DensityReport& r);

}  // namespace rbw
