#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rbw/densities.hpp"
#include "rbw/graph.hpp"

namespace rbw {

/// Polynomial in p with nonnegative integer coefficients, keyed by exponent.
struct Polynomial {
  std::map<int, std::uint64_t> terms;

  void add(int exponent, std::uint64_t coefficient);
  long double operator()(long double p) const;
  std::uint64_t at(int exponent) const;
  /// e.g. `4p^3 + 12p^5`; `0` when empty.
  std::string format() const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;
};

/// Exact second-moment quantities of the copy count X_H in G(n, p):
/// lambda = E[X_H]; delta_bar = sum over ordered pairs of copies sharing an edge
/// (the diagonal included) of p^{e(A u B)}; delta = (delta_bar - lambda) / 2.
struct JansonQuantities {
  Polynomial lambda;
  Polynomial delta_bar;
  Polynomial delta;
  int n = 0;
  Graph pattern;
  std::uint64_t copies = 0;
};

inline constexpr int kJansonDefaultMaxN = 9;
/// Edge sets of K_n are held in 64-bit masks.
inline constexpr int kJansonHardMaxN = 11;

/// `support`, when given, keeps only copies whose vertex set equals one of its members.
/// Throws ErrorKind::Resource when n exceeds max_n (itself capped at kJansonHardMaxN).
JansonQuantities janson_quantities(const Graph& pattern, int n,
                                   const std::optional<std::vector<std::vector<Vertex>>>& support = std::nullopt,
                                   int max_n = kJansonDefaultMaxN);
/// Single-threaded reference for the pair enumeration.
JansonQuantities janson_quantities_serial(const Graph& pattern, int n,
                                          const std::optional<std::vector<std::vector<Vertex>>>& support = std::nullopt,
                                          int max_n = kJansonDefaultMaxN);

/// Probability bounds, each min(1, exp(exponent)); the raw exponents are kept since
/// exp(-lambda + delta) exceeds 1 whenever delta > lambda.
struct JansonBounds {
  long double lower_tail = 1;       // exp(-t^2 / (2 delta_bar))
  long double nonexistence_1 = 1;   // exp(-lambda + delta)
  long double nonexistence_2 = 1;   // exp(-lambda^2 / (lambda + 2 delta))
  long double lower_tail_exponent = 0;
  long double nonexistence_1_exponent = 0;
  long double nonexistence_2_exponent = 0;
};

/// Requires 0 < p <= 1 and 0 < t <= lambda(p); all bounds are 1 when lambda vanishes.
JansonBounds janson_bounds(const JansonQuantities& q, const Rational& p, const Rational& t);

}  // namespace rbw
