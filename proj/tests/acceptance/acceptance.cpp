// One line per acceptance criterion; exit status 1 if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <bit>
#include <numeric>
#include <random>
#include <string>

#include "rbw/arrow.hpp"
#include "rbw/coloring.hpp"
#include "rbw/constructions.hpp"
#include "rbw/densities.hpp"
#include "rbw/error.hpp"
#include "rbw/gadgets.hpp"
#include "rbw/janson.hpp"
#include "rbw/perturbation.hpp"
#include "support/oracles.hpp"

using namespace rbw;

namespace {

// Pinned tolerances.
constexpr double kGadgetSeconds = 1.0;
constexpr double kDensitySeconds = 1.0;
constexpr double kSolverSecondsPerInstance = 300.0;
constexpr std::uint64_t kSolverNodeBudget = 100'000'000;
constexpr double kSigmas = 3.0;
constexpr int kCalibrationTrials = 10'000;

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

Graph named(const std::string& s) { return build(parse_spec(s)); }

const Shape kShapes[] = {Shape::K2, Shape::P3, Shape::P4, Shape::K13};

Outcome gadget_exactness() {
  const auto t0 = Clock::now();
  const Graph g = build(GadgetSpec::triangle_star(25, 49));
  const double s = seconds_since(t0);
  const bool ok = g.order() == 1251 && g.size() == 2475 && s < kGadgetSeconds;
  return {ok, "TriangleStar(25,49): " + std::to_string(g.order()) + " vertices, " + std::to_string(g.size()) +
                  " edges in " + std::to_string(s) + " s"};
}

Outcome density_exactness() {
  const auto t0 = Clock::now();
  using K = ThresholdCase::Kind;
  bool ok = m1(named("S3")) == Rational(3, 4) && m1(named("S4")) == Rational(4, 5) &&
            m_bip2(named("Kjoin(S3,S4)")) == Rational(4, 5) && m2(named("K4")) == Rational(5, 2);
  ok = ok && threshold_exponent({K::OddCycle, 1}) == Rational(2) && threshold_exponent({K::OddCycle, 3}) == Rational(2);
  ok = ok && threshold_exponent({K::K5, 0}) == Rational(1);
  ok = ok && threshold_exponent({K::K7, 0}) == Rational(7, 15);
  ok = ok && threshold_exponent({K::K4, 0}) == Rational(5, 4);
  for (int r = 4; r <= 12; ++r) {
    ok = ok && threshold_exponent({K::EvenCompleteUpper, r}) == Rational(r - 2, r * (r - 1) / 2);
  }
  const double s = seconds_since(t0);
  ok = ok && s < kDensitySeconds;
  return {ok, "m1(K13)=3/4, m1(K14)=4/5, m_bip2(K_{K13,K14})=4/5, m2(K4)=5/2, exponents 2, 1, 7/15, 5/4, (r-2)/C(r,2) in " +
                  std::to_string(s) + " s"};
}

Outcome solver_verdicts() {
  Budget budget;
  budget.max_nodes = kSolverNodeBudget;
  const Graph k4 = named("K4");
  int good = 0;
  int total = 0;
  double worst = 0;
  std::string failures;
  auto check = [&](const Graph& g, const std::string& name, Verdict expect) {
    ++total;
    const auto t0 = Clock::now();
    const auto v = decide_arrow(g, k4, budget);
    const double s = seconds_since(t0);
    worst = std::max(worst, s);
    bool ok = v.verdict == expect && s < kSolverSecondsPerInstance;
    if (ok && expect == Verdict::NotArrowed) {
      ok = v.witness && v.witness->host() == g && rainbow_census(*v.witness, k4).rainbow_copies == 0;
    }
    if (ok) {
      ++good;
    } else {
      failures += " " + name + "=" + to_string(v.verdict);
    }
  };
  check(named("Khat(3,4)"), "Khat(3,4)", Verdict::Arrowed);
  check(named("Kjoin(S3,S4)"), "K_{K13,K14}", Verdict::Arrowed);
  for (Shape l : kShapes) {
    for (Shape r : kShapes) {
      check(join(shape_graph(l), shape_graph(r)), "K_{" + to_string(l) + "," + to_string(r) + "}", Verdict::NotArrowed);
    }
  }
  return {good == total, std::to_string(good) + "/" + std::to_string(total) + " verdicts (worst " +
                             std::to_string(worst) + " s)" + failures};
}

Outcome oracle_equivalence() {
  const char* patterns[] = {"K3", "C4", "C5", "K4"};
  std::uint64_t agree = 0;
  std::uint64_t total = 0;
  auto compare = [&](const Graph& g, const Graph& h) {
    ++total;
    const auto fast = decide_arrow(g, h);
    const auto slow = brute_force_oracle(g, h, 10);
    bool ok = fast.verdict == slow.verdict && fast.verdict != Verdict::Indeterminate;
    if (ok && fast.witness) ok = rainbow_census(*fast.witness, h).rainbow_copies == 0;
    agree += ok;
  };
  const auto graphs = oracle::connected_graphs_up_to(7);
  for (const auto& g : graphs) {
    for (const char* p : patterns) compare(g, named(p));
  }
  const std::uint64_t exhaustive = total;
  std::mt19937_64 rng(2024);
  int random_done = 0;
  while (random_done < 500) {
    const int n = 4 + static_cast<int>(rng() % 4);
    const Graph g = oracle::random_graph(n, 0.3 + 0.4 * static_cast<double>(rng() % 100) / 100, rng);
    if (g.size() == 0 || g.size() > 10) continue;
    compare(g, named(patterns[rng() % 4]));
    ++random_done;
  }
  return {agree == total, std::to_string(agree) + "/" + std::to_string(total) + " agree (" +
                              std::to_string(graphs.size()) + " connected graphs x 4 patterns = " +
                              std::to_string(exhaustive) + ", plus 500 random)"};
}

Graph half_seed(int n) { return seed_graph(SeedSpec::half(n), 0); }

ComponentStructure random_structure(int n, std::mt19937_64& rng) {
  ComponentStructure out;
  const int left = n / 2;
  for (int side = 0; side < 2; ++side) {
    std::vector<Vertex> pool;
    for (Vertex v = side ? left : 0; v < (side ? n : left); ++v) pool.push_back(v);
    std::shuffle(pool.begin(), pool.end(), rng);
    std::size_t next = 0;
    while (true) {
      if (rng() % 6 == 0) {
        ++next;
        continue;
      }
      const Shape s = kShapes[rng() % 4];
      const auto need = static_cast<std::size_t>(shape_graph(s).order());
      if (next + need > pool.size()) break;
      (side ? out.right : out.left)
          .push_back({s, std::vector<Vertex>(pool.begin() + static_cast<std::ptrdiff_t>(next),
                                             pool.begin() + static_cast<std::ptrdiff_t>(next + need))});
      next += need;
    }
  }
  return out;
}

Outcome appendix_b() {
  const Graph k4 = named("K4");
  int tables = 0;
  for (Shape l : kShapes) {
    for (Shape r : kShapes) {
      try {
        const auto c = appendix_b_coloring(l, r);
        tables += rainbow_census(c.coloring, k4).rainbow_copies == 0;
      } catch (const Error&) {
      }
    }
  }
  std::mt19937_64 rng(99);
  int zero = 0;
  for (int i = 0; i < 100; ++i) {
    const int n = 4 + static_cast<int>(rng() % 37);
    try {
      const auto z = zero_statement_coloring(half_seed(n), random_structure(n, rng));
      zero += rainbow_census_parallel(z.coloring.coloring, k4).rainbow_copies == 0;
    } catch (const Error&) {
    }
  }
  return {tables == 16 && zero == 100,
          std::to_string(tables) + "/16 shape pairs, " + std::to_string(zero) + "/100 zero-statement colorings, no rainbow K4"};
}

std::vector<EdgeId> random_maximal_matching(const Graph& g, std::mt19937_64& rng) {
  std::vector<EdgeId> order(static_cast<std::size_t>(g.size()));
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<char> used(static_cast<std::size_t>(g.order()), 0);
  std::vector<EdgeId> m;
  for (EdgeId id : order) {
    const Edge e = g.edge(id);
    if (used[static_cast<std::size_t>(e.u)] || used[static_cast<std::size_t>(e.v)]) continue;
    if (rng() % 3 == 0) continue;  // not always maximal
    used[static_cast<std::size_t>(e.u)] = used[static_cast<std::size_t>(e.v)] = 1;
    m.push_back(id);
  }
  return m;
}

Outcome matching_removal() {
  const auto s1 = sweep_matching_removal(1);
  const auto s2 = sweep_matching_removal(2);
  const Graph g = build(GadgetSpec::triangle_star(25, 49));
  std::mt19937_64 rng(7);
  int verified = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<std::vector<EdgeId>> ms;
    for (int i = 0; i < 24; ++i) ms.push_back(random_maximal_matching(g, rng));
    const auto r = matching_removal_triangle(g, 25, 49, ms);
    if (!r.triangle || !r.bounds_hold) continue;
    std::set<EdgeId> removed;
    for (const auto& m : ms) removed.insert(m.begin(), m.end());
    const auto& vm = r.triangle->vertex_map;
    bool ok = vm.size() == 3 && r.triangle->edges.size() == 3;
    for (std::size_t i = 0; ok && i < 3; ++i) {
      const auto id = g.edge_id(vm[i], vm[(i + 1) % 3]);
      ok = id && !removed.count(*id);
    }
    verified += ok;
  }
  const bool ok = s1.successes == s1.tuples && s2.successes == s2.tuples && verified == 1000;
  return {ok, "m=1: " + std::to_string(s1.successes) + "/" + std::to_string(s1.tuples) + ", m=2: " +
                  std::to_string(s2.successes) + "/" + std::to_string(s2.tuples) + " tuples; " +
                  std::to_string(verified) + "/1000 random 24-matching trials"};
}

Outcome extraction() {
  const Graph g = build(GadgetSpec::tilde_k35());
  std::mt19937_64 rng(31);
  int k5_ok = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<std::int64_t> colors(static_cast<std::size_t>(g.size()), -1);
    std::vector<std::int64_t> pool(24);
    std::iota(pool.begin(), pool.end(), 0);
    std::shuffle(pool.begin(), pool.end(), rng);
    std::size_t next = 0;
    for (EdgeId id = 0; id < g.size(); ++id) {
      if (g.edge(id).u < 3) colors[static_cast<std::size_t>(id)] = pool[next++];
    }
    std::set<std::int64_t> at_center;
    for (Vertex x = 0; x < 3; ++x) at_center.insert(colors[static_cast<std::size_t>(*g.edge_id(x, 3))]);
    for (Vertex y = 4; y <= 7; ++y) {
      std::set<std::int64_t> banned = at_center;
      for (Vertex x = 0; x < 3; ++x) banned.insert(colors[static_cast<std::size_t>(*g.edge_id(x, y))]);
      std::int64_t c = 0;
      do {
        c = static_cast<std::int64_t>(rng() % 22);
      } while (banned.count(c));
      colors[static_cast<std::size_t>(*g.edge_id(3, y))] = c;
      at_center.insert(c);
    }
    try {
      const ProperColoring pc = check_proper(g, std::span<const std::int64_t>(colors));
      const auto r = extract_rainbow_k5(g, pc);
      k5_ok += is_rainbow(pc, r.k5) && r.k5.edges.size() == 10;
    } catch (const std::exception&) {
    }
  }
  const Graph inst = k7_instance();
  int k7_ok = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    try {
      const auto palette = synthesize_k7_coloring(inst, seed);
      const ProperColoring pc = check_proper(inst, std::span<const std::int64_t>(palette));
      const auto r = assemble_rainbow_k7(inst, pc);
      k7_ok += is_rainbow(pc, r.k7) && r.k7.edges.size() == 21;
    } catch (const std::exception&) {
    }
  }
  return {k5_ok == 1000 && k7_ok == 100,
          std::to_string(k5_ok) + "/1000 rainbow K5, " + std::to_string(k7_ok) + "/100 rainbow K7"};
}

Outcome greedy_bound() {
  std::mt19937_64 rng(8);
  int good = 0;
  std::uint64_t subsets = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 4 + static_cast<int>(rng() % 9);
    const Graph g = build(GadgetSpec::hat_k(3, n));
    const auto colors = oracle::random_proper_coloring(g, 6 + static_cast<int>(rng() % 8), rng);
    const ProperColoring pc = check_proper(g, std::span<const std::int64_t>(colors));
    const auto r = greedy_interest_set(g, pc);
    bool ok = 7 * static_cast<int>(r.members.size()) >= n - 3;
    const int k = static_cast<int>(r.members.size());
    for (unsigned mask = 0; ok && mask < (1U << k); ++mask) {
      if (std::popcount(mask) != 5) continue;
      ++subsets;
      SubgraphCopy copy;
      copy.vertex_map = {0, 1, 2};
      for (int i = 0; i < k; ++i) {
        if (mask >> i & 1U) copy.vertex_map.push_back(r.members[static_cast<std::size_t>(i)]);
      }
      for (std::size_t a = 0; a < copy.vertex_map.size(); ++a) {
        for (std::size_t b = a + 1; b < copy.vertex_map.size(); ++b) {
          if (a >= 3 && b >= 3) continue;
          copy.edges.push_back(*g.edge_id(copy.vertex_map[a], copy.vertex_map[b]));
        }
      }
      std::sort(copy.edges.begin(), copy.edges.end());
      ok = copy.edges.size() == 18 && is_rainbow(pc, copy);
    }
    good += ok;
  }
  return {good == 1000, std::to_string(good) + "/1000 instances meet |N_psi| >= (|N|-3)/7 (" + std::to_string(subsets) +
                            " rainbow 5-subsets checked)"};
}

Outcome simulator() {
  ExperimentConfig c;
  c.seed = SeedSpec::half(4);
  c.pattern = "K3";
  c.trials = kCalibrationTrials;
  c.rng_seed = 20240601;
  bool ok = true;
  std::string detail;
  for (double p : {0.1, 0.3, 0.5}) {
    const auto r = estimate_arrow_probability(c, p);
    const double exact = 1 - (1 - p) * (1 - p);
    const double sigma = std::sqrt(exact * (1 - exact) / r.decided());
    const bool within = std::abs(r.estimate - exact) <= kSigmas * sigma;
    ok = ok && within;
    char buf[96];
    std::snprintf(buf, sizeof buf, "p=%.1f est %.4f vs %.4f; ", p, r.estimate, exact);
    detail += buf;
  }
  c.trials = 1000;
  ok = ok && estimate_arrow_probability(c, 0).estimate == 0 && estimate_arrow_probability(c, 1).estimate == 1;
  c.seed = SeedSpec::half(6);
  const std::vector<double> grid{0, 0.02, 0.05, 0.1, 0.2, 0.35, 0.5, 1};
  const auto records = threshold_sweep(c, grid);
  bool monotone = true;
  for (std::size_t g = 1; g < records.size(); ++g) {
    for (std::size_t i = 0; i < records[g].outcomes.size(); ++i) {
      monotone = monotone && static_cast<int>(records[g].outcomes[i]) >= static_cast<int>(records[g - 1].outcomes[i]);
    }
  }
  ok = ok && monotone;
  return {ok, detail + "p=0 -> 0, p=1 -> 1; CRN sweep " + (monotone ? "monotone" : "NOT monotone") + " per trial"};
}

Outcome janson() {
  bool ok = true;
  const Graph k3 = named("K3");
  for (int n = 3; n <= 6; ++n) {
    const auto q = janson_quantities(k3, n);
    const auto sets = oracle::copy_edge_sets(build(GadgetSpec::complete(n)), k3);
    const std::vector<std::vector<Edge>> copies(sets.begin(), sets.end());
    std::map<int, std::uint64_t> hist;
    for (const auto& a : copies) {
      for (const auto& b : copies) {
        std::vector<Edge> common;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
        if (!common.empty()) ++hist[static_cast<int>(a.size() + b.size() - common.size())];
      }
    }
    ok = ok && q.lambda.terms == std::map<int, std::uint64_t>{{3, copies.size()}} && q.delta_bar.terms == hist;
    const auto b = janson_bounds(q, Rational(1), Rational(static_cast<std::int64_t>(q.copies)));
    for (long double v : {b.lower_tail, b.nonexistence_1, b.nonexistence_2}) ok = ok && std::isfinite(static_cast<double>(v)) && v >= 0 && v <= 1;
  }
  return {ok, "K3 in K_n, n = 3..6: lambda and delta_bar coefficient-wise equal to the double loop; bounds at p=1 in [0, 1]"};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {"gadget exactness", gadget_exactness},   {"density exactness", density_exactness},
      {"solver gadget verdicts", solver_verdicts}, {"oracle equivalence", oracle_equivalence},
      {"explicit K4-free colorings", appendix_b}, {"matching-removal robustness", matching_removal},
      {"extraction correctness", extraction},   {"greedy bound", greedy_bound},
      {"simulator calibration", simulator},     {"Janson quantities", janson},
  };
  int failed = 0;
  int index = 0;
  for (const auto& c : criteria) {
    ++index;
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("[%s] %2d %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", index, c.name, o.detail.c_str(),
                seconds_since(t0));
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}
