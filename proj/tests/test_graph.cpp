#include <doctest.h>

#include <random>
#include <sstream>

#include "rbw/error.hpp"
#include "rbw/gadgets.hpp"
#include "rbw/graph.hpp"
#include "rbw/graph_io.hpp"
#include "support/oracles.hpp"

using namespace rbw;

namespace {

Graph petersen() {
  std::vector<Edge> e;
  for (int i = 0; i < 5; ++i) {
    e.push_back(Edge::of(i, (i + 1) % 5));
    e.push_back(Edge::of(5 + i, 5 + (i + 2) % 5));
    e.push_back({i, 5 + i});
  }
  return Graph(10, e);
}

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::Parameter;
}

}  // namespace

TEST_CASE("edges are normalized and sorted, ids follow the order") {
  Graph g(4, {{3, 1}, {0, 2}, {1, 0}});
  REQUIRE(g.size() == 3);
  CHECK(g.edge(0) == Edge{0, 1});
  CHECK(g.edge(1) == Edge{0, 2});
  CHECK(g.edge(2) == Edge{1, 3});
  CHECK(g.edge_id(3, 1) == 2);
  CHECK(g.edge_id(1, 3) == 2);
  CHECK_FALSE(g.edge_id(2, 3).has_value());
  CHECK(g.degree(1) == 2);
  CHECK(g.max_degree() == 2);
  auto nb = g.neighbors(1);
  CHECK(std::vector<Vertex>(nb.begin(), nb.end()) == std::vector<Vertex>{0, 3});
}

TEST_CASE("invalid graphs are rejected") {
  CHECK(kind_of([] { Graph(3, {{1, 1}}); }) == ErrorKind::Parameter);
  CHECK(kind_of([] { Graph(3, {{0, 1}, {1, 0}}); }) == ErrorKind::Parameter);
  CHECK(kind_of([] { Graph(3, {{0, 3}}); }) == ErrorKind::Parameter);
  CHECK(kind_of([] { Graph(3, {}, std::vector<Side>{Side::Left}); }) == ErrorKind::Parameter);
  CHECK(kind_of([] { Graph(3).side(0); }) == ErrorKind::Domain);
}

TEST_CASE("graph operations") {
  const Graph p3 = build(GadgetSpec::path(3));
  const Graph k2 = build(GadgetSpec::path(2));
  const Graph j = join(p3, k2);
  CHECK(j.order() == 5);
  CHECK(j.size() == 2 + 1 + 6);
  CHECK(j.side(0) == Side::Left);
  CHECK(j.side(4) == Side::Right);
  CHECK(j.adjacent(3, 4));

  const Edge extra[] = {{0, 2}, {0, 1}};
  const Graph c3 = add_edges(p3, extra);
  CHECK(c3.size() == 3);
  const Graph back = remove_edges(c3, [&](EdgeId id) { return c3.edge(id) == Edge{0, 2}; });
  CHECK(back == p3);

  const Vertex pick[] = {4, 0, 3};
  const Graph sub = induced_subgraph(j, pick);
  CHECK(sub.order() == 3);
  CHECK(sub.size() == 3);  // 4-3 and both to 0
  CHECK(sub.side(0) == Side::Right);

  const EdgeId m1[] = {0, 2};
  CHECK_FALSE(is_matching(c3, m1));
  const Graph p4 = build(GadgetSpec::path(4));
  const EdgeId m2[] = {0, 2};
  CHECK(is_matching(p4, m2));
  CHECK(is_connected(p4));
  CHECK_FALSE(is_connected(Graph(3, {{0, 1}})));

  const Vertex xs[] = {0, 1};
  const auto cn = common_neighborhood(build(GadgetSpec::complete(4)), xs);
  CHECK(cn == std::vector<Vertex>{2, 3});
}

TEST_CASE("automorphism counts match permutation enumeration") {
  for (const char* spec : {"K4", "C5", "S3", "P4", "Kb(2,3)", "Khat(3,4)", "Ktilde35"}) {
    const Graph g = build(parse_spec(spec));
    CAPTURE(spec);
    CHECK(automorphism_count(g) == oracle::automorphisms(g));
  }
  CHECK(automorphism_count(petersen()) == 120);
  CHECK(automorphism_count(build(GadgetSpec::complete(4))) == 24);
  CHECK(automorphism_count(build(GadgetSpec::cycle(5))) == 10);
}

TEST_CASE("copy enumeration agrees with the brute-force oracle on random hosts") {
  std::mt19937_64 rng(7);
  const char* patterns[] = {"K3", "C4", "P3", "S3", "K4", "C5", "P4"};
  for (int round = 0; round < 40; ++round) {
    const Graph host = oracle::random_graph(7, 0.5, rng);
    for (const char* spec : patterns) {
      const Graph h = build(parse_spec(spec));
      CAPTURE(spec);
      const auto expected = oracle::copy_edge_sets(host, h);
      const auto copies = enumerate_copies(host, h);
      REQUIRE(copies.size() == expected.size());
      std::set<std::vector<Edge>> got;
      for (const auto& c : copies) {
        std::vector<Edge> es;
        for (EdgeId id : c.edges) es.push_back(host.edge(id));
        got.insert(es);
        for (const auto& e : h.edges()) {
          CHECK(host.adjacent(c.vertex_map[static_cast<std::size_t>(e.u)], c.vertex_map[static_cast<std::size_t>(e.v)]));
        }
      }
      CHECK(got == expected);
      CHECK(enumerate_copies_parallel(host, h) == copies);
      CHECK(count_injective_homomorphisms(host, h) == oracle::injective_homs(host, h));
    }
  }
}

TEST_CASE("Petersen graph copy counts through anchors") {
  const Graph g = petersen();
  CHECK(count_copies(g, build(GadgetSpec::cycle(5))) == 12);
  CHECK(count_copies(g, build(GadgetSpec::complete(3))) == 0);
}

TEST_CASE("graph text format round trips") {
  const Graph g = build(parse_spec("Kjoin(S3,P4)"));
  const std::string text = format_graph(g);
  CHECK(text.rfind("graph 8 22\n0 1\n", 0) == 0);
  CHECK(parse_graph(text) == g);
  const Graph plain = build(GadgetSpec::cycle(5));
  CHECK(parse_graph(format_graph(plain)) == plain);
}

TEST_CASE("malformed graph text is a format error") {
  CHECK(kind_of([] { parse_graph("graf 2 1\n0 1\n"); }) == ErrorKind::Format);
  CHECK(kind_of([] { parse_graph("graph 2 2\n0 1\n"); }) == ErrorKind::Format);
  CHECK(kind_of([] { parse_graph("graph 2 1\n0 0\n"); }) == ErrorKind::Format);
  CHECK(kind_of([] { parse_graph("graph 2 1\n0 1\nside 0 1\n"); }) == ErrorKind::Format);
  CHECK(kind_of([] { parse_graph("graph 2 1\n0 x\n"); }) == ErrorKind::Format);
}

TEST_CASE("coloring lines") {
  std::istringstream in("0 1 5\n\n1 2 7\n");
  const auto lines = read_coloring_lines(in);
  REQUIRE(lines.size() == 2);
  CHECK(lines[1].edge == Edge{1, 2});
  CHECK(lines[1].color == 7);
  std::istringstream bad("0 1 -1\n");
  CHECK(kind_of([&] { read_coloring_lines(bad); }) == ErrorKind::Format);
}
