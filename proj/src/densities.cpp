#include "rbw/densities.hpp"

#include <bit>
#include <sstream>

#include "rbw/error.hpp"

namespace rbw {

std::string format_rational(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational parse_rational(const std::string& text) {
  try {
    std::size_t slash = text.find('/');
    std::size_t used = 0;
    if (slash == std::string::npos) {
      auto v = std::stoll(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return Rational(v);
    }
    auto num = std::stoll(text.substr(0, slash), &used);
    if (used != slash) throw std::invalid_argument(text);
    const std::string tail = text.substr(slash + 1);
    auto den = std::stoll(tail, &used);
    if (used != tail.size() || den == 0) throw std::invalid_argument(text);
    return Rational(num, den);
  } catch (const std::logic_error&) {
    throw Error(ErrorKind::Format, "not a rational: " + text);
  }
}

namespace {

using Mask = std::uint32_t;

// Neighborhood masks and per-subset edge counts of a small graph.
struct SubsetTable {
  int n = 0;
  std::vector<Mask> nbr;
  std::vector<std::uint16_t> edges;  // e(G[S]) indexed by mask

  explicit SubsetTable(const Graph& g) : n(g.order()) {
    if (n > kDensityMaxOrder) {
      throw Error(ErrorKind::Resource, "density scan supports at most " +
                                           std::to_string(kDensityMaxOrder) + " vertices");
    }
    nbr.assign(static_cast<std::size_t>(n), 0);
    for (const auto& e : g.edges()) {
      nbr[static_cast<std::size_t>(e.u)] |= Mask{1} << e.v;
      nbr[static_cast<std::size_t>(e.v)] |= Mask{1} << e.u;
    }
    const std::size_t total = std::size_t{1} << n;
    edges.assign(total, 0);
    for (std::size_t s = 1; s < total; ++s) {
      const int low = std::countr_zero(static_cast<Mask>(s));
      const Mask rest = static_cast<Mask>(s) & (static_cast<Mask>(s) - 1);
      edges[s] = static_cast<std::uint16_t>(edges[rest] + std::popcount(nbr[static_cast<std::size_t>(low)] & rest));
    }
  }

  bool connected(Mask s) const {
    Mask seen = s & (~s + 1);
    Mask frontier = seen;
    while (frontier) {
      const int v = std::countr_zero(frontier);
      frontier &= frontier - 1;
      const Mask fresh = nbr[static_cast<std::size_t>(v)] & s & ~seen;
      seen |= fresh;
      frontier |= fresh;
    }
    return seen == s;
  }
};

// a/b < c/d with positive denominators.
bool less_ratio(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) { return a * d < c * b; }

}  // namespace

std::pair<Rational, std::vector<Vertex>> m2_argmax(const Graph& h) {
  SubsetTable table(h);
  const std::size_t total = std::size_t{1} << table.n;
  std::int64_t best_num = -1;
  std::int64_t best_den = 1;
  Mask best_mask = 0;
  for (std::size_t s = 1; s < total; ++s) {
    const int v = std::popcount(static_cast<Mask>(s));
    if (v < 3) continue;
    const std::int64_t num = table.edges[s] - 1;
    const std::int64_t den = v - 2;
    if (best_num >= 0 && !less_ratio(best_num, best_den, num, den)) continue;
    if (!table.connected(static_cast<Mask>(s))) continue;
    best_num = num;
    best_den = den;
    best_mask = static_cast<Mask>(s);
  }
  if (best_num < 0) {
    throw Error(ErrorKind::Inapplicable, "maximum 2-density undefined: no connected subgraph on >= 3 vertices");
  }
  std::vector<Vertex> vertices;
  for (int v = 0; v < table.n; ++v) {
    if (best_mask >> v & 1U) vertices.push_back(v);
  }
  return {Rational(best_num, best_den), vertices};
}

Rational m2(const Graph& h) {
  if (h.size() < 2) throw Error(ErrorKind::Inapplicable, "maximum 2-density needs at least 2 edges");
  return m2_argmax(h).first;
}

Rational m1(const Graph& h) {
  if (h.order() == 0) throw Error(ErrorKind::Inapplicable, "maximum density of the empty graph");
  SubsetTable table(h);
  const std::size_t total = std::size_t{1} << table.n;
  std::int64_t num = 0;
  std::int64_t den = 1;
  for (std::size_t s = 1; s < total; ++s) {
    const std::int64_t e = table.edges[s];
    const std::int64_t v = std::popcount(static_cast<Mask>(s));
    if (less_ratio(num, den, e, v)) {
      num = e;
      den = v;
    }
  }
  return Rational(num, den);
}

Rational m_bip2(const Graph& h) {
  if (h.order() == 0) throw Error(ErrorKind::Inapplicable, "maximum bipartition density of the empty graph");
  SubsetTable table(h);
  const std::size_t total = std::size_t{1} << table.n;
  // best[S] = m1(h[S]) as (num, den); 0/1 for the empty set.
  std::vector<std::pair<std::uint16_t, std::uint8_t>> best(total, {0, 1});
  for (std::size_t s = 1; s < total; ++s) {
    std::pair<std::uint16_t, std::uint8_t> top{table.edges[s], static_cast<std::uint8_t>(std::popcount(static_cast<Mask>(s)))};
    for (Mask rest = static_cast<Mask>(s); rest; rest &= rest - 1) {
      const auto& sub = best[s & ~(rest & (~rest + 1))];
      if (less_ratio(top.first, top.second, sub.first, sub.second)) top = sub;
    }
    best[s] = top;
  }
  const Mask all = static_cast<Mask>(total - 1);
  std::int64_t num = -1;
  std::int64_t den = 1;
  for (std::size_t s = 0; s < total; ++s) {
    const auto& a = best[s];
    const auto& b = best[all & ~static_cast<Mask>(s)];
    const auto& worse = less_ratio(a.first, a.second, b.first, b.second) ? b : a;
    if (num < 0 || less_ratio(worse.first, worse.second, num, den)) {
      num = worse.first;
      den = worse.second;
    }
  }
  return Rational(num, den);
}

bool strictly_2_balanced(const Graph& h) {
  // A maximizer inside one component of a disconnected h is a proper subgraph.
  // Otherwise only proper induced connected subgraphs can tie: deleting edges from
  // the whole vertex set strictly lowers (e - 1) / (v - 2).
  const Rational top = m2(h);
  if (!is_connected(h)) return false;
  SubsetTable table(h);
  const Mask all = static_cast<Mask>((std::size_t{1} << table.n) - 1);
  for (Mask s = 1; s < all; ++s) {
    const int v = std::popcount(s);
    if (v < 3) continue;
    if (Rational(table.edges[s] - 1, v - 2) < top) continue;
    if (table.connected(s)) return false;
  }
  return true;
}

Rational threshold_exponent(const ThresholdCase& c) {
  using K = ThresholdCase::Kind;
  auto inverse_m2_complete = [](int r) {
    // 1/m2(K_r) = (r-2) / (C(r,2) - 1)
    return Rational(r - 2, r * (r - 1) / 2 - 1);
  };
  switch (c.kind) {
    case K::OddCycle:
      if (c.param < 1) throw Error(ErrorKind::Parameter, "odd cycle C_{2l+1} needs l >= 1");
      return Rational(2);
    case K::K5: return Rational(1);
    case K::K7: return Rational(7, 15);
    case K::K4: return Rational(5, 4);
    case K::OddComplete:
      if (c.param < 5) throw Error(ErrorKind::Parameter, "odd complete case needs r >= 5");
      return inverse_m2_complete(c.param);
    case K::EvenCompleteUpper:
      if (c.param < 4) throw Error(ErrorKind::Parameter, "even complete upper bound needs r >= 4");
      return Rational(c.param - 2, c.param * (c.param - 1) / 2);
    case K::EvenLowerBound:
      if (c.param < 5) throw Error(ErrorKind::Parameter, "even complete lower bound needs r >= 5");
      return inverse_m2_complete(c.param);
  }
  throw Error(ErrorKind::Parameter, "unknown threshold case");
}

DensityReport density_report(const Graph& h, bool with_bipartition) {
  DensityReport r;
  auto [value, argmax] = m2_argmax(h);
  r.m2 = value;
  r.argmax_subgraph = std::move(argmax);
  r.m1 = m1(h);
  if (with_bipartition) r.m_bip2 = m_bip2(h);
  r.strictly_2_balanced = strictly_2_balanced(h);
  return r;
}

std::string format_report(const DensityReport& r) {
  std::ostringstream out;
  out << "m2=" << format_rational(r.m2) << '\n';
  out << "m1=" << format_rational(r.m1) << '\n';
  if (r.m_bip2) out << "m_bip2=" << format_rational(*r.m_bip2) << '\n';
  out << "strictly_2_balanced=" << (r.strictly_2_balanced ? "true" : "false") << '\n';
  out << "argmax_subgraph=";
  for (std::size_t i = 0; i < r.argmax_subgraph.size(); ++i) {
    out << (i ? "," : "") << r.argmax_subgraph[i];
  }
  out << '\n';
  return out.str();
}

}  // namespace rbw
