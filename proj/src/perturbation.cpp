#include "rbw/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <omp.h>

#include <json.hpp>

#include "rbw/error.hpp"
#include "rbw/gadgets.hpp"
#include "rbw/graph_io.hpp"

namespace rbw {

SeedSpec parse_seed_spec(const std::string& text) {
  auto bad = [&] { return Error(ErrorKind::Format, "seed spec '" + text + "' (expected half:<n>, dense:<n>:<d> or file:<path>)"); };
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw bad();
  const std::string kind = text.substr(0, colon);
  const std::string rest = text.substr(colon + 1);
  try {
    std::size_t used = 0;
    if (kind == "file" && !rest.empty()) return SeedSpec::file(rest);
    if (kind == "half") {
      const int n = std::stoi(rest, &used);
      if (used != rest.size()) throw bad();
      return SeedSpec::half(n);
    }
    if (kind == "dense") {
      const auto second = rest.find(':');
      if (second == std::string::npos) throw bad();
      const int n = std::stoi(rest.substr(0, second), &used);
      if (used != second) throw bad();
      const std::string tail = rest.substr(second + 1);
      const double d = std::stod(tail, &used);
      if (used != tail.size()) throw bad();
      return SeedSpec::dense(n, d);
    }
  } catch (const std::logic_error&) {
    throw bad();
  }
  throw bad();
}

std::string to_string(const SeedSpec& s) {
  switch (s.kind) {
    case SeedSpec::Kind::Half: return "half:" + std::to_string(s.n);
    case SeedSpec::Kind::Dense: {
      nlohmann::json d = s.d;
      return "dense:" + std::to_string(s.n) + ":" + d.dump();
    }
    case SeedSpec::Kind::File: return "file:" + s.path;
  }
  return "?";
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::mt19937_64 substream(std::uint64_t master, std::uint64_t index) {
  return std::mt19937_64(splitmix64(master + (index + 1) * 0x9e3779b97f4a7c15ULL));
}

namespace {

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::vector<Side> half_sides(int n) {
  std::vector<Side> sides(static_cast<std::size_t>(n / 2), Side::Left);
  sides.resize(static_cast<std::size_t>(n), Side::Right);
  return sides;
}

}  // namespace

Graph seed_graph(const SeedSpec& s, std::uint64_t rng_seed) {
  switch (s.kind) {
    case SeedSpec::Kind::File: return load_graph(s.path);
    case SeedSpec::Kind::Half: {
      if (s.n < 2) throw Error(ErrorKind::Parameter, "seed needs n >= 2");
      const int left = s.n / 2;
      std::vector<Edge> edges;
      for (Vertex u = 0; u < left; ++u) {
        for (Vertex v = left; v < s.n; ++v) edges.push_back({u, v});
      }
      return Graph(s.n, std::move(edges), half_sides(s.n));
    }
    case SeedSpec::Kind::Dense: {
      if (s.n < 2) throw Error(ErrorKind::Parameter, "seed needs n >= 2");
      if (!(s.d > 0 && s.d <= 1)) throw Error(ErrorKind::Parameter, "seed density must lie in (0, 1]");
      auto rng = substream(rng_seed, kSeedStream);
      const int left = s.n / 2;
      std::vector<Edge> edges;
      for (Vertex u = 0; u < left; ++u) {
        for (Vertex v = left; v < s.n; ++v) {
          if (unit(rng) < s.d) edges.push_back({u, v});
        }
      }
      return Graph(s.n, std::move(edges), half_sides(s.n));
    }
  }
  throw Error(ErrorKind::Parameter, "unknown seed kind");
}

std::vector<double> pair_uniforms(int n, std::mt19937_64& rng) {
  std::vector<double> out(static_cast<std::size_t>(n) * static_cast<std::size_t>(n > 0 ? n - 1 : 0) / 2);
  for (auto& u : out) u = unit(rng);
  return out;
}

Graph perturb(const Graph& seed, double p, std::span<const double> uniforms) {
  if (!(p >= 0 && p <= 1)) throw Error(ErrorKind::Parameter, "p must lie in [0, 1]");
  const int n = seed.order();
  if (uniforms.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n > 0 ? n - 1 : 0) / 2) {
    throw Error(ErrorKind::Parameter, "need one uniform per vertex pair");
  }
  std::vector<Edge> extra;
  std::size_t k = 0;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v, ++k) {
      if (uniforms[k] < p) extra.push_back({u, v});
    }
  }
  return add_edges(seed, extra);
}

Graph sample_perturbation(const Graph& seed, double p, std::mt19937_64& rng) {
  return perturb(seed, p, pair_uniforms(seed.order(), rng));
}

std::pair<double, double> wilson_interval(int successes, int decided) {
  if (decided <= 0) return {0, 1};
  constexpr double z = 1.959963984540054;
  const double n = decided;
  const double phat = successes / n;
  const double denom = 1 + z * z / n;
  const double center = (phat + z * z / (2 * n)) / denom;
  const double half = z / denom * std::sqrt(phat * (1 - phat) / n + z * z / (4 * n * n));
  return {std::clamp(std::min(center - half, phat), 0.0, 1.0), std::clamp(std::max(center + half, phat), 0.0, 1.0)};
}

namespace {

struct Prepared {
  Graph seed;
  Graph pattern;
};

Prepared prepare(const ExperimentConfig& c) {
  if (c.trials < 1) throw Error(ErrorKind::Parameter, "need at least one trial");
  return {seed_graph(c.seed, c.rng_seed), build(parse_spec(c.pattern))};
}

TrialOutcome run_trial(const Prepared& pre, const ExperimentConfig& c, double p, std::uint64_t master, int trial) {
  auto rng = substream(master, static_cast<std::uint64_t>(trial));
  const Graph g = sample_perturbation(pre.seed, p, rng);
  auto verdict = decide_arrow_fast_paths(g, pre.pattern);
  if (!verdict) verdict = decide_arrow_serial(g, pre.pattern, c.budget);
  switch (verdict->verdict) {
    case Verdict::Arrowed: return TrialOutcome::Success;
    case Verdict::NotArrowed: return TrialOutcome::Failure;
    case Verdict::Indeterminate: break;
  }
  return TrialOutcome::Indeterminate;
}

ExperimentRecord tally(const Prepared& pre, const ExperimentConfig& c, double p, std::vector<TrialOutcome> outcomes) {
  ExperimentRecord r;
  r.seed_spec = to_string(c.seed);
  r.n = pre.seed.order();
  r.p = p;
  r.pattern = c.pattern;
  r.trials = c.trials;
  r.rng_seed = c.rng_seed;
  r.mode = c.common_random_numbers ? "crn" : "independent";
  r.budget_nodes = c.budget.max_nodes;
  r.budget_seconds = c.budget.max_seconds;
  for (auto o : outcomes) {
    r.successes += o == TrialOutcome::Success;
    r.failures += o == TrialOutcome::Failure;
    r.indeterminates += o == TrialOutcome::Indeterminate;
  }
  r.outcomes = std::move(outcomes);
  if (r.decided() == 0) {
    throw Error(ErrorKind::Degenerate, "all " + std::to_string(r.trials) + " trials at p=" + std::to_string(p) +
                                           " hit the solver budget");
  }
  r.estimate = static_cast<double>(r.successes) / r.decided();
  std::tie(r.ci_low, r.ci_high) = wilson_interval(r.successes, r.decided());
  return r;
}

void check_p(double p) {
  if (!(p >= 0 && p <= 1)) throw Error(ErrorKind::Parameter, "p must lie in [0, 1]");
}

ExperimentRecord estimate_with(const Prepared& pre, const ExperimentConfig& c, double p, std::uint64_t master) {
  check_p(p);
  std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(c.trials));
  const int threads = c.threads > 0 ? c.threads : omp_get_max_threads();
  std::string failure;
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (int i = 0; i < c.trials; ++i) {
    try {
      outcomes[static_cast<std::size_t>(i)] = run_trial(pre, c, p, master, i);
    } catch (const std::exception& e) {
#pragma omp critical(rbw_trial_error)
      if (failure.empty()) failure = e.what();
    }
  }
  if (!failure.empty()) throw std::runtime_error(failure);
  return tally(pre, c, p, std::move(outcomes));
}

}  // namespace

ExperimentRecord estimate_arrow_probability(const ExperimentConfig& config, double p) {
  return estimate_with(prepare(config), config, p, config.rng_seed);
}

ExperimentRecord estimate_arrow_probability_serial(const ExperimentConfig& config, double p) {
  check_p(p);
  const Prepared pre = prepare(config);
  std::vector<TrialOutcome> outcomes;
  for (int i = 0; i < config.trials; ++i) outcomes.push_back(run_trial(pre, config, p, config.rng_seed, i));
  return tally(pre, config, p, std::move(outcomes));
}

std::vector<ExperimentRecord> threshold_sweep(const ExperimentConfig& config, std::span<const double> grid) {
  if (!std::is_sorted(grid.begin(), grid.end())) throw Error(ErrorKind::Parameter, "p grid must be ascending");
  const Prepared pre = prepare(config);
  std::vector<ExperimentRecord> out;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const std::uint64_t master = config.common_random_numbers ? config.rng_seed : splitmix64(config.rng_seed ^ (g + 1));
    out.push_back(estimate_with(pre, config, grid[g], master));
  }
  return out;
}

std::string to_json_line(const ExperimentRecord& r) {
  nlohmann::ordered_json j;
  j["seed_spec"] = r.seed_spec;
  j["n"] = r.n;
  j["p"] = r.p;
  j["pattern"] = r.pattern;
  j["trials"] = r.trials;
  j["successes"] = r.successes;
  j["failures"] = r.failures;
  j["indeterminates"] = r.indeterminates;
  j["decided"] = r.decided();
  j["rng_seed"] = r.rng_seed;
  j["mode"] = r.mode;
  j["estimate"] = r.estimate;
  j["ci_low"] = r.ci_low;
  j["ci_high"] = r.ci_high;
  j["budget_nodes"] = r.budget_nodes;
  j["budget_seconds"] = r.budget_seconds;
  return j.dump();
}

void write_jsonl(std::ostream& out, std::span<const ExperimentRecord> records) {
  for (const auto& r : records) out << to_json_line(r) << '\n';
}

void write_csv(std::ostream& out, std::span<const ExperimentRecord> records) {
  out << "p,trials,decided,successes,indeterminates,estimate,ci_low,ci_high\n";
  auto num = [](double x) { return nlohmann::json(x).dump(); };
  for (const auto& r : records) {
    out << num(r.p) << ',' << r.trials << ',' << r.decided() << ',' << r.successes << ',' << r.indeterminates << ','
        << num(r.estimate) << ',' << num(r.ci_low) << ',' << num(r.ci_high) << '\n';
  }
}

}  // namespace rbw
