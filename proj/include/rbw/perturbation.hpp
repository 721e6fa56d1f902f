#pragma once

#include <cstdint>
#include <iosfwd>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "rbw/arrow.hpp"
#include "rbw/graph.hpp"

namespace rbw {

/// Seed graph of a perturbed model. Text forms: `half:<n>`, `dense:<n>:<d>`, `file:<path>`.
struct SeedSpec {
  enum class Kind { Half, Dense, File };
  Kind kind = Kind::Half;
  int n = 0;
  double d = 1;
  std::string path;

  static SeedSpec half(int n) { return {Kind::Half, n, 1, {}}; }
  static SeedSpec dense(int n, double d) { return {Kind::Dense, n, d, {}}; }
  static SeedSpec file(std::string path) { return {Kind::File, 0, 1, std::move(path)}; }
};

SeedSpec parse_seed_spec(const std::string& text);
std::string to_string(const SeedSpec& s);

// Substreams: stream i of master m seeds an mt19937_64 with
// splitmix64(m + (i + 1) * 0x9e3779b97f4a7c15). Trial i of an estimate uses stream i.
std::uint64_t splitmix64(std::uint64_t x);
std::mt19937_64 substream(std::uint64_t master, std::uint64_t index);
/// Stream reserved for sampling a random (dense) seed graph.
inline constexpr std::uint64_t kSeedStream = std::uint64_t{1} << 63;

/// Throws ErrorKind::Parameter on n < 2 or d outside (0, 1], Format on unreadable files.
/// Dense seeds are drawn once from kSeedStream of `rng_seed`.
Graph seed_graph(const SeedSpec& s, std::uint64_t rng_seed);

/// One uniform in [0, 1) per vertex pair, pairs in lexicographic order; a uniform is
/// (x >> 11) * 2^-53 for the next 64-bit draw x.
std::vector<double> pair_uniforms(int n, std::mt19937_64& rng);
/// Seed plus every pair whose uniform is below p; sides kept.
Graph perturb(const Graph& seed, double p, std::span<const double> uniforms);
Graph sample_perturbation(const Graph& seed, double p, std::mt19937_64& rng);

enum class TrialOutcome : std::int8_t { Failure = 0, Success = 1, Indeterminate = 2 };

struct ExperimentConfig {
  SeedSpec seed = SeedSpec::half(4);
  std::string pattern = "K3";  // gadget spec string
  int trials = 100;
  std::uint64_t rng_seed = 1;
  Budget budget;
  int threads = 0;  // <= 0: runtime default
  bool common_random_numbers = true;
};

struct ExperimentRecord {
  std::string seed_spec;
  int n = 0;
  double p = 0;
  std::string pattern;
  int trials = 0;
  int successes = 0;
  int failures = 0;
  int indeterminates = 0;
  std::uint64_t rng_seed = 0;
  std::string mode;  // "crn" or "independent"
  double estimate = 0;
  double ci_low = 0;
  double ci_high = 0;
  std::uint64_t budget_nodes = 0;
  double budget_seconds = 0;
  std::vector<TrialOutcome> outcomes;  // per trial, not serialized

  int decided() const { return successes + failures; }
};

/// Wilson 95% score interval; {0, 1} when decided is 0.
std::pair<double, double> wilson_interval(int successes, int decided);

/// Per trial: sample, then the triangle fast path or an exact decision. Indeterminate
/// trials are left out of the estimate. Throws ErrorKind::Degenerate when no trial is decided.
ExperimentRecord estimate_arrow_probability(const ExperimentConfig& config, double p);
ExperimentRecord estimate_arrow_probability_serial(const ExperimentConfig& config, double p);

/// One record per grid point (ascending). In common-random-numbers mode trial i reuses
/// stream i at every grid point, so outcomes are monotone in p trial by trial; otherwise
/// grid point g draws from master splitmix64(rng_seed ^ (g + 1)).
std::vector<ExperimentRecord> threshold_sweep(const ExperimentConfig& config, std::span<const double> grid);

std::string to_json_line(const ExperimentRecord& r);
void write_jsonl(std::ostream& out, std::span<const ExperimentRecord> records);
/// Columns p,trials,decided,successes,indeterminates,estimate,ci_low,ci_high.
void write_csv(std::ostream& out, std::span<const ExperimentRecord> records);

}  // namespace rbw
