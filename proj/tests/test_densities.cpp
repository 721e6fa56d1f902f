#include <doctest.h>

#include <random>

#include "rbw/densities.hpp"
#include "rbw/error.hpp"
#include "rbw/gadgets.hpp"
#include "support/oracles.hpp"

using namespace rbw;

namespace {

std::vector<Vertex> members(const Graph& g, unsigned mask) {
  std::vector<Vertex> s;
  for (Vertex v = 0; v < g.order(); ++v) {
    if (mask >> v & 1U) s.push_back(v);
  }
  return s;
}

Rational brute_m2(const Graph& g) {
  Rational best(-1);
  for (unsigned mask = 1; mask < (1U << g.order()); ++mask) {
    const auto s = members(g, mask);
    if (s.size() < 3 || !oracle::connected_within(g, s)) continue;
    best = std::max(best, Rational(oracle::edges_within(g, s) - 1, static_cast<std::int64_t>(s.size()) - 2));
  }
  return best;
}

Rational brute_m1(const Graph& g) {
  Rational best(0);
  for (unsigned mask = 1; mask < (1U << g.order()); ++mask) {
    const auto s = members(g, mask);
    best = std::max(best, Rational(oracle::edges_within(g, s), static_cast<std::int64_t>(s.size())));
  }
  return best;
}

Rational brute_m1_within(const Graph& g, unsigned part) {
  Rational best(0);
  for (unsigned mask = part; mask; mask = (mask - 1) & part) {
    const auto s = members(g, mask);
    best = std::max(best, Rational(oracle::edges_within(g, s), static_cast<std::int64_t>(s.size())));
  }
  return best;
}

Rational brute_mbip(const Graph& g) {
  const unsigned all = (1U << g.order()) - 1;
  Rational best(1000);
  for (unsigned part = 0; part <= all; ++part) {
    best = std::min(best, std::max(brute_m1_within(g, part), brute_m1_within(g, all & ~part)));
  }
  return best;
}

Graph named(const char* s) { return build(parse_spec(s)); }

}  // namespace

TEST_CASE("known density values") {
  CHECK(m2(named("K4")) == Rational(5, 2));
  CHECK(m2(named("K3")) == Rational(2));
  CHECK(m2(named("C5")) == Rational(4, 3));
  CHECK(m1(named("S3")) == Rational(3, 4));
  CHECK(m1(named("S4")) == Rational(4, 5));
  CHECK(m_bip2(named("Kjoin(S3,S4)")) == Rational(4, 5));
  CHECK(m1(named("K4")) == Rational(3, 2));
}

TEST_CASE("densities agree with subset enumeration on random graphs") {
  std::mt19937_64 rng(11);
  int checked = 0;
  for (int round = 0; round < 150; ++round) {
    const int n = 3 + static_cast<int>(rng() % 6);
    const Graph g = oracle::random_graph(n, 0.55, rng);
    if (g.size() < 2) continue;
    CAPTURE(round);
    const Rational expect = brute_m2(g);
    if (expect < 0) {
      CHECK_THROWS_AS(m2(g), Error);
      continue;
    }
    CHECK(m2(g) == expect);
    CHECK(m1(g) == brute_m1(g));
    if (n <= 7) CHECK(m_bip2(g) == brute_mbip(g));
    ++checked;
  }
  CHECK(checked > 100);
}

TEST_CASE("argmax subgraph attains m2") {
  const Graph g = named("Khat(3,4)");
  auto [value, s] = m2_argmax(g);
  CHECK(value == m2(g));
  CHECK(Rational(oracle::edges_within(g, s) - 1, static_cast<std::int64_t>(s.size()) - 2) == value);
}

TEST_CASE("strictly 2-balanced") {
  CHECK(strictly_2_balanced(named("K4")));
  CHECK(strictly_2_balanced(named("C5")));
  CHECK(strictly_2_balanced(named("K3")));
  CHECK_FALSE(strictly_2_balanced(named("P4")));
  CHECK(strictly_2_balanced(named("Khat(3,4)")));
  CHECK_FALSE(strictly_2_balanced(Graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}})));
}

TEST_CASE("inapplicable inputs") {
  CHECK_THROWS_AS(m2(Graph(2, {{0, 1}})), Error);
  CHECK_THROWS_AS(m2(Graph(4, {{0, 1}, {2, 3}})), Error);
  CHECK_THROWS_AS(m1(Graph(0)), Error);
  try {
    m2(Graph(23, {{0, 1}, {1, 2}}));
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Resource);
  }
}

TEST_CASE("threshold exponents") {
  using K = ThresholdCase::Kind;
  CHECK(threshold_exponent({K::OddCycle, 1}) == Rational(2));
  CHECK(threshold_exponent({K::OddCycle, 4}) == Rational(2));
  CHECK(threshold_exponent({K::K5, 0}) == Rational(1));
  CHECK(threshold_exponent({K::K7, 0}) == Rational(7, 15));
  CHECK(threshold_exponent({K::K4, 0}) == Rational(5, 4));
  for (int r = 5; r <= 12; ++r) {
    const std::int64_t pairs = r * (r - 1) / 2;
    CHECK(threshold_exponent({K::EvenCompleteUpper, r}) == Rational(r - 2, pairs));
    CHECK(threshold_exponent({K::OddComplete, r}) == 1 / m2(build(GadgetSpec::complete(r))));
  }
  CHECK_THROWS_AS(threshold_exponent({K::OddCycle, 0}), Error);
  CHECK_THROWS_AS(threshold_exponent({K::OddComplete, 3}), Error);
}

TEST_CASE("rational text") {
  CHECK(format_rational(Rational(10, 4)) == "5/2");
  CHECK(format_rational(Rational(3)) == "3/1");
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK(parse_rational("7") == Rational(7));
  for (const char* bad : {"", "1/0", "x", "1/2/3", "3."}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_rational(bad), Error);
  }
}

TEST_CASE("report text") {
  const auto text = format_report(density_report(named("K4"), true));
  CHECK(text == "m2=5/2\nm1=3/2\nm_bip2=1/2\nstrictly_2_balanced=true\nargmax_subgraph=0,1,2,3\n");
}
