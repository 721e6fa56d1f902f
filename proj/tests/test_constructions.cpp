#include <doctest.h>

#include <numeric>
#include <random>

#include "rbw/constructions.hpp"
#include "rbw/error.hpp"
#include "rbw/gadgets.hpp"
#include "support/oracles.hpp"

using namespace rbw;

namespace {

const Shape kShapes[] = {Shape::K2, Shape::P3, Shape::P4, Shape::K13};

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::Parameter;
}

const Graph& k4() {
  static const Graph g = build(GadgetSpec::complete(4));
  return g;
}

std::int64_t raw(const ExplicitColoring& c, Vertex a, Vertex b) {
  return c.palette[static_cast<std::size_t>(*c.coloring.host().edge_id(a, b))];
}

// Random components packed into a half(n) seed: shapes drawn until a side runs out.
ComponentStructure random_structure(int n, std::mt19937_64& rng) {
  ComponentStructure out;
  const int left = n / 2;
  for (int side = 0; side < 2; ++side) {
    std::vector<Vertex> pool;
    for (Vertex v = side ? left : 0; v < (side ? n : left); ++v) pool.push_back(v);
    std::shuffle(pool.begin(), pool.end(), rng);
    std::size_t next = 0;
    while (true) {
      const Shape s = kShapes[rng() % 4];
      const auto need = static_cast<std::size_t>(shape_graph(s).order());
      if (rng() % 5 == 0) {
        next += 1;  // leave a vertex uncovered
        continue;
      }
      if (next + need > pool.size()) break;
      Component c{s, std::vector<Vertex>(pool.begin() + static_cast<std::ptrdiff_t>(next),
                                         pool.begin() + static_cast<std::ptrdiff_t>(next + need))};
      (side ? out.right : out.left).push_back(c);
      next += need;
    }
  }
  return out;
}

Graph half_seed(int n) {
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n / 2; ++u) {
    for (Vertex v = n / 2; v < n; ++v) edges.push_back({u, v});
  }
  std::vector<Side> sides(static_cast<std::size_t>(n / 2), Side::Left);
  sides.resize(static_cast<std::size_t>(n), Side::Right);
  return Graph(n, edges, sides);
}

}  // namespace

TEST_CASE("explicit table colorings avoid rainbow K4") {
  for (Shape l : kShapes) {
    for (Shape r : kShapes) {
      CAPTURE(to_string(l));
      CAPTURE(to_string(r));
      const auto c = appendix_b_coloring(l, r);
      CHECK(c.coloring.host() == join(shape_graph(l), shape_graph(r)));
      const auto census = rainbow_census(c.coloring, k4());
      CHECK(census.rainbow_copies == 0);
      CHECK(oracle::rainbow_copies(c.coloring.host(), k4(), c.palette) == 0);
    }
  }
}

TEST_CASE("table entries") {
  // Star-star: y = 0, x_i = i on each side; right side shifted by 4.
  const auto ss = appendix_b_coloring(Shape::K13, Shape::K13);
  CHECK(raw(ss, 0, 4) == 4);
  CHECK(raw(ss, 1, 6) == 4);
  CHECK(raw(ss, 0, 6) == 5);
  CHECK(raw(ss, 2, 4) == 7);
  CHECK(raw(ss, 0, 1) == 1);
  CHECK(raw(ss, 4, 7) == 3);
  CHECK(raw(ss, 1, 5) >= 8);
  // Path-path: x_i = i - 1.
  const auto pp = appendix_b_coloring(Shape::P4, Shape::P4);
  CHECK(raw(pp, 0, 6) == 4);
  CHECK(raw(pp, 2, 7) == 5);
  CHECK(raw(pp, 3, 6) == 6);
  CHECK(raw(pp, 1, 2) == 2);
  // Star-path and its mirror.
  const auto sp = appendix_b_coloring(Shape::K13, Shape::P4);
  const auto ps = appendix_b_coloring(Shape::P4, Shape::K13);
  CHECK(raw(sp, 1, 4 + 3) == 7);
  CHECK(raw(ps, 3, 4 + 1) == 7);
  CHECK(raw(sp, 3, 4 + 0) == 6);
  CHECK(raw(ps, 0, 4 + 3) == 6);
}

TEST_CASE("zero-statement colorings on random structures") {
  std::mt19937_64 rng(17);
  for (int round = 0; round < 25; ++round) {
    const int n = 8 + static_cast<int>(rng() % 17);
    CAPTURE(n);
    const Graph seed = half_seed(n);
    const auto parts = random_structure(n, rng);
    const auto z = zero_statement_coloring(seed, parts);
    CHECK(rainbow_census_parallel(z.coloring.coloring, k4()).rainbow_copies == 0);
    CHECK(z.blocks.size() == parts.left.size() * parts.right.size());
    std::set<std::int64_t> used;
    for (const auto& b : z.blocks) {
      for (auto c : b) {
        CHECK(c >= 4);
        CHECK(used.insert(c).second);
      }
    }
    const auto back = derive_components(z.graph);
    REQUIRE(back.left.size() == parts.left.size());
    REQUIRE(back.right.size() == parts.right.size());
  }
}

TEST_CASE("derived components use canonical vertex order") {
  std::vector<Edge> extra{{2, 0}, {0, 1}, {8, 6}, {6, 9}, {6, 7}};
  const Graph g = add_edges(half_seed(10), extra);
  const auto parts = derive_components(g);
  REQUIRE(parts.left.size() == 1);
  CHECK(parts.left[0].shape == Shape::P3);
  CHECK(parts.left[0].vertices == std::vector<Vertex>{1, 0, 2});
  REQUIRE(parts.right.size() == 1);
  CHECK(parts.right[0].shape == Shape::K13);
  CHECK(parts.right[0].vertices == std::vector<Vertex>{6, 7, 8, 9});

  std::vector<Edge> triangle{{0, 1}, {1, 2}, {0, 2}};
  CHECK(kind_of([&] { derive_components(add_edges(half_seed(10), triangle)); }) == ErrorKind::Structure);
}

TEST_CASE("zero-statement input validation") {
  const Graph seed = half_seed(8);
  ComponentStructure overlap{{{Shape::K2, {0, 1}}, {Shape::K2, {1, 2}}}, {}};
  CHECK(kind_of([&] { zero_statement_coloring(seed, overlap); }) == ErrorKind::Structure);
  ComponentStructure wrong_side{{{Shape::K2, {0, 5}}}, {}};
  CHECK(kind_of([&] { zero_statement_coloring(seed, wrong_side); }) == ErrorKind::Structure);
  ComponentStructure short_star{{{Shape::K13, {0, 1, 2}}}, {}};
  CHECK(kind_of([&] { zero_statement_coloring(seed, short_star); }) == ErrorKind::Structure);
  CHECK(kind_of([&] { zero_statement_coloring(build(GadgetSpec::complete(4)), {}); }) == ErrorKind::Parameter);
  CHECK(kind_of([&] { parse_shape("K5"); }) == ErrorKind::Parameter);
}

TEST_CASE("K5 extraction") {
  const Graph g = build(GadgetSpec::tilde_k35());
  std::mt19937_64 rng(2);
  for (int round = 0; round < 100; ++round) {
    std::vector<std::int64_t> colors(static_cast<std::size_t>(g.size()), -1);
    std::vector<std::int64_t> pool(30);
    std::iota(pool.begin(), pool.end(), 0);
    std::shuffle(pool.begin(), pool.end(), rng);
    std::size_t next = 0;
    for (EdgeId id = 0; id < g.size(); ++id) {
      if (g.edge(id).u < 3) colors[static_cast<std::size_t>(id)] = pool[next++];
    }
    // star edges y1 y_t: distinct, reusing colors not at y1 or y_t
    std::set<std::int64_t> at_y1;
    for (Vertex x = 0; x < 3; ++x) at_y1.insert(colors[static_cast<std::size_t>(*g.edge_id(x, 3))]);
    for (Vertex y = 4; y <= 7; ++y) {
      std::set<std::int64_t> bad = at_y1;
      for (Vertex x = 0; x < 3; ++x) bad.insert(colors[static_cast<std::size_t>(*g.edge_id(x, y))]);
      std::int64_t c = 0;
      do {
        c = static_cast<std::int64_t>(rng() % 20);
      } while (bad.count(c));
      colors[static_cast<std::size_t>(*g.edge_id(3, y))] = c;
      at_y1.insert(c);
    }
    const ProperColoring pc = check_proper(g, std::span<const std::int64_t>(colors));
    const auto r = extract_rainbow_k5(g, pc);
    CHECK(is_rainbow(pc, r.k5));
    CHECK(r.k5.edges.size() == 10);
  }
  std::vector<std::int64_t> repeat(static_cast<std::size_t>(g.size()));
  // HatK(3,5) part with x1 y1 and x2 y2 sharing a color
  for (EdgeId id = 0; id < g.size(); ++id) repeat[static_cast<std::size_t>(id)] = id + 100;
  repeat[static_cast<std::size_t>(*g.edge_id(1, 4))] = repeat[static_cast<std::size_t>(*g.edge_id(0, 3))];
  const ProperColoring pc = check_proper(g, std::span<const std::int64_t>(repeat));
  CHECK(kind_of([&] { extract_rainbow_k5(g, pc); }) == ErrorKind::GadgetState);
  CHECK(kind_of([&] { extract_rainbow_k5(build(GadgetSpec::hat_k(3, 5)), pc); }) == ErrorKind::Parameter);
}

TEST_CASE("interest set size and rainbow 5-subsets") {
  std::mt19937_64 rng(4);
  for (int round = 0; round < 100; ++round) {
    const int n = 4 + static_cast<int>(rng() % 9);
    const Graph g = build(GadgetSpec::hat_k(3, n));
    const auto colors = oracle::random_proper_coloring(g, 8, rng);
    const ProperColoring pc = check_proper(g, std::span<const std::int64_t>(colors));
    const auto r = greedy_interest_set(g, pc);
    CHECK(r.candidates.size() >= static_cast<std::size_t>(n - 3));
    CHECK(7 * r.members.size() >= r.candidates.size());
    std::set<int> seen;
    for (Vertex u : r.members) {
      for (Vertex x = 0; x < 3; ++x) CHECK(seen.insert(pc.color(*g.edge_id(x, u))).second);
    }
  }
}

TEST_CASE("maximal matchings match subset enumeration") {
  for (const char* spec : {"P4", "C5", "K4", "Kdelta(2,3)", "S3"}) {
    CAPTURE(spec);
    const Graph g = build(parse_spec(spec));
    std::set<std::vector<EdgeId>> expect;
    for (unsigned mask = 0; mask < (1U << g.size()); ++mask) {
      std::vector<EdgeId> ids;
      for (EdgeId id = 0; id < g.size(); ++id) {
        if (mask >> id & 1U) ids.push_back(id);
      }
      if (!is_matching(g, ids)) continue;
      bool maximal = true;
      for (EdgeId id = 0; id < g.size() && maximal; ++id) {
        if (mask >> id & 1U) continue;
        auto more = ids;
        more.push_back(id);
        if (is_matching(g, more)) maximal = false;
      }
      if (maximal) expect.insert(ids);
    }
    const auto got = maximal_matchings(g);
    CHECK(std::set<std::vector<EdgeId>>(got.begin(), got.end()) == expect);
    CHECK(got.size() == expect.size());
  }
}

TEST_CASE("matching removal") {
  const auto one = sweep_matching_removal(1);
  CHECK(one.tuples > 0);
  CHECK(one.successes == one.tuples);
  const auto serial = sweep_matching_removal_serial(1);
  CHECK(serial.tuples == one.tuples);
  CHECK(serial.successes == one.successes);

  const Graph g = build(GadgetSpec::triangle_star(2, 3));
  const std::vector<std::vector<EdgeId>> none;
  const auto r = matching_removal_triangle(g, 2, 3, none);
  REQUIRE(r.triangle.has_value());
  CHECK(r.triangle->vertex_map == std::vector<Vertex>{0, 1, 3});
  const std::vector<std::vector<EdgeId>> not_matching{{*g.edge_id(0, 1), *g.edge_id(0, 2)}};
  CHECK(kind_of([&] { matching_removal_triangle(g, 2, 3, not_matching); }) == ErrorKind::Parameter);
  CHECK(kind_of([&] { matching_removal_triangle(g, 3, 3, none); }) == ErrorKind::Parameter);

  // Outside the bounds a triangle can be destroyed: k = 1, one matching on the skeleton edge.
  const Graph tiny = build(GadgetSpec::triangle_star(1, 1));
  const std::vector<std::vector<EdgeId>> skeleton{{*tiny.edge_id(0, 1)}};
  const auto gone = matching_removal_triangle(tiny, 1, 1, skeleton);
  CHECK_FALSE(gone.bounds_hold);
  CHECK_FALSE(gone.triangle.has_value());
}

TEST_CASE("K7 assembly on synthetic colorings") {
  const Graph inst = k7_instance();
  CHECK(inst.order() == 16 + 1251);
  CHECK(inst.size() == 24 + 16 * 1251 + 2475);
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto palette = synthesize_k7_coloring(inst, seed);
    const ProperColoring pc = check_proper(inst, std::span<const std::int64_t>(palette));
    const auto r = assemble_rainbow_k7(inst, pc);
    CHECK(is_rainbow(pc, r.k7));
    CHECK(r.k7.edges.size() == 21);
    CHECK(r.removed_colors <= 24);
  }
  auto broken = synthesize_k7_coloring(inst, 9);
  broken[static_cast<std::size_t>(*inst.edge_id(0, 1))] = broken[static_cast<std::size_t>(*inst.edge_id(2, 3))];
  const ProperColoring pc = check_proper(inst, std::span<const std::int64_t>(broken));
  try {
    assemble_rainbow_k7(inst, pc);
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::GadgetState);
    CHECK(std::string(e.what()).find("blocks") != std::string::npos);
  }
}

TEST_CASE("rainbow odd cycles through an edge inside a side") {
  const Graph g = add_edges(half_seed(10), std::vector<Edge>{{0, 1}});
  std::vector<std::int64_t> distinct(static_cast<std::size_t>(g.size()));
  std::iota(distinct.begin(), distinct.end(), 0);
  const ProperColoring pc = check_proper(g, std::span<const std::int64_t>(distinct));
  for (int l = 1; l <= 4; ++l) {
    CAPTURE(l);
    const auto c = greedy_rainbow_odd_cycle(g, {0, 1}, pc, l);
    REQUIRE(c.has_value());
    CHECK(c->vertex_map.size() == static_cast<std::size_t>(2 * l + 1));
    CHECK(c->edges.size() == static_cast<std::size_t>(2 * l + 1));
    CHECK(is_rainbow(pc, *c));
    for (std::size_t i = 0; i < c->vertex_map.size(); ++i) {
      CHECK(g.adjacent(c->vertex_map[i], c->vertex_map[(i + 1) % c->vertex_map.size()]));
    }
  }
  // Needs l other-side vertices and l + 1 same-side ones: 5 of each side allow l <= 4.
  CHECK_FALSE(greedy_rainbow_odd_cycle(g, {0, 1}, pc, 5).has_value());
  CHECK(kind_of([&] { greedy_rainbow_odd_cycle(g, {0, 5}, pc, 1); }) == ErrorKind::Parameter);
  CHECK(kind_of([&] { greedy_rainbow_odd_cycle(g, {0, 2}, pc, 1); }) == ErrorKind::Domain);
}
