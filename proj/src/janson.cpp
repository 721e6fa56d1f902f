#include "rbw/janson.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "rbw/error.hpp"
#include "rbw/gadgets.hpp"

namespace rbw {

void Polynomial::add(int exponent, std::uint64_t coefficient) {
  if (coefficient != 0) terms[exponent] += coefficient;
}

long double Polynomial::operator()(long double p) const {
  long double sum = 0;
  for (const auto& [exponent, coefficient] : terms) {
    sum += static_cast<long double>(coefficient) * std::pow(p, static_cast<long double>(exponent));
  }
  return sum;
}

std::uint64_t Polynomial::at(int exponent) const {
  auto it = terms.find(exponent);
  return it == terms.end() ? 0 : it->second;
}

std::string Polynomial::format() const {
  if (terms.empty()) return "0";
  std::string out;
  for (const auto& [exponent, coefficient] : terms) {
    if (!out.empty()) out += " + ";
    out += std::to_string(coefficient);
    if (exponent == 1) out += "p";
    if (exponent > 1) out += "p^" + std::to_string(exponent);
  }
  return out;
}

namespace {

std::vector<std::uint64_t> copy_masks(const Graph& pattern, int n,
                                      const std::optional<std::vector<std::vector<Vertex>>>& support,
                                      int max_n) {
  if (pattern.order() == 0) throw Error(ErrorKind::Parameter, "empty pattern");
  if (n < 0) throw Error(ErrorKind::Parameter, "negative n");
  const int limit = std::min(max_n, kJansonHardMaxN);
  if (n > limit) {
    throw Error(ErrorKind::Resource, "Janson enumeration over K_" + std::to_string(n) + " exceeds budget n <= " +
                                         std::to_string(limit));
  }
  std::vector<std::uint64_t> supports;
  if (support) {
    for (const auto& member : *support) {
      std::uint64_t bits = 0;
      for (Vertex v : member) {
        if (v < 0 || v >= n) throw Error(ErrorKind::Domain, "support member outside [0, n)");
        bits |= std::uint64_t{1} << v;
      }
      supports.push_back(bits);
    }
    std::sort(supports.begin(), supports.end());
  }
  std::vector<std::uint64_t> masks;
  if (n < pattern.order()) return masks;
  const Graph host = build(GadgetSpec::complete(n));
  for_each_copy(host, pattern, [&](const SubgraphCopy& c) {
    if (support) {
      std::uint64_t bits = 0;
      for (Vertex v : c.vertex_map) bits |= std::uint64_t{1} << v;
      if (!std::binary_search(supports.begin(), supports.end(), bits)) return true;
    }
    std::uint64_t mask = 0;
    for (EdgeId id : c.edges) mask |= std::uint64_t{1} << id;
    masks.push_back(mask);
    return true;
  });
  return masks;
}

// Exponent histogram of the pairs (i, j), j in [0, masks.size()), sharing an edge.
void accumulate_row(const std::vector<std::uint64_t>& masks, std::size_t i, std::vector<std::uint64_t>& hist) {
  for (std::uint64_t other : masks) {
    if (masks[i] & other) ++hist[static_cast<std::size_t>(std::popcount(masks[i] | other))];
  }
}

JansonQuantities assemble(const Graph& pattern, int n, const std::vector<std::uint64_t>& masks,
                          const std::vector<std::uint64_t>& hist) {
  JansonQuantities q;
  q.n = n;
  q.pattern = pattern;
  q.copies = masks.size();
  q.lambda.add(pattern.size(), masks.size());
  for (std::size_t e = 0; e < hist.size(); ++e) q.delta_bar.add(static_cast<int>(e), hist[e]);
  // The diagonal pairs are exactly lambda's terms; what remains counts each unordered pair twice.
  for (const auto& [exponent, coefficient] : q.delta_bar.terms) {
    const std::uint64_t rest = coefficient - q.lambda.at(exponent);
    q.delta.add(exponent, rest / 2);
  }
  return q;
}

}  // namespace

JansonQuantities janson_quantities_serial(const Graph& pattern, int n,
                                          const std::optional<std::vector<std::vector<Vertex>>>& support, int max_n) {
  const auto masks = copy_masks(pattern, n, support, max_n);
  std::vector<std::uint64_t> hist(65, 0);
  for (std::size_t i = 0; i < masks.size(); ++i) accumulate_row(masks, i, hist);
  return assemble(pattern, n, masks, hist);
}

JansonQuantities janson_quantities(const Graph& pattern, int n,
                                   const std::optional<std::vector<std::vector<Vertex>>>& support, int max_n) {
  const auto masks = copy_masks(pattern, n, support, max_n);
  std::vector<std::uint64_t> hist(65, 0);
  const auto rows = static_cast<std::int64_t>(masks.size());
#pragma omp parallel
  {
    std::vector<std::uint64_t> local(65, 0);
#pragma omp for schedule(dynamic, 16) nowait
    for (std::int64_t i = 0; i < rows; ++i) accumulate_row(masks, static_cast<std::size_t>(i), local);
#pragma omp critical
    for (std::size_t e = 0; e < hist.size(); ++e) hist[e] += local[e];
  }
  return assemble(pattern, n, masks, hist);
}

JansonBounds janson_bounds(const JansonQuantities& q, const Rational& p, const Rational& t) {
  if (p <= 0 || p > 1) throw Error(ErrorKind::Parameter, "p must lie in (0, 1]");
  const long double pv = static_cast<long double>(p.numerator()) / static_cast<long double>(p.denominator());
  const long double lambda = q.lambda(pv);
  JansonBounds b;
  if (lambda == 0) return b;
  const long double tv = static_cast<long double>(t.numerator()) / static_cast<long double>(t.denominator());
  // Relative slack absorbs rounding when t is lambda(p) supplied as a rational.
  if (t <= 0 || tv > lambda * (1 + 1e-15L)) throw Error(ErrorKind::Parameter, "t must lie in (0, lambda(p)]");
  const long double delta_bar = q.delta_bar(pv);
  const long double delta = q.delta(pv);
  b.lower_tail_exponent = -tv * tv / (2 * delta_bar);
  b.nonexistence_1_exponent = -lambda + delta;
  b.nonexistence_2_exponent = -lambda * lambda / (lambda + 2 * delta);
  b.lower_tail = std::min(1.0L, std::exp(b.lower_tail_exponent));
  b.nonexistence_1 = std::min(1.0L, std::exp(b.nonexistence_1_exponent));
  b.nonexistence_2 = std::min(1.0L, std::exp(b.nonexistence_2_exponent));
  return b;
}

}  // namespace rbw
