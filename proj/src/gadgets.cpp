#include "rbw/gadgets.hpp"

#include <cctype>
#include <charconv>

#include "rbw/error.hpp"

namespace rbw {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::Parameter, what);
}

void validate(const GadgetSpec& s) {
  using K = GadgetSpec::Kind;
  switch (s.kind) {
    case K::Complete: require(s.a >= 1, "Complete(r) needs r >= 1"); break;
    case K::Cycle: require(s.a >= 3, "Cycle(l) needs l >= 3"); break;
    case K::CompleteBipartite: require(s.a >= 1 && s.b >= 1, "CompleteBipartite(r,s) needs r,s >= 1"); break;
    case K::Star: require(s.a >= 1, "Star(k) needs k >= 1"); break;
    case K::Path: require(s.a >= 1, "Path(k) needs k >= 1"); break;
    case K::HatK: require(s.a >= 1 && s.b > s.a, "HatK(r,n) needs r >= 1 and n > r"); break;
    case K::TildeK35: break;
    case K::Join:
      require(s.parts.size() == 2, "Join needs two operands");
      validate(s.parts[0]);
      validate(s.parts[1]);
      break;
    case K::TriangleStar: require(s.a >= 1 && s.b >= 1, "TriangleStar(k,t) needs k,t >= 1"); break;
  }
}

void clique(std::vector<Edge>& edges, int first, int count) {
  for (int i = 0; i < count; ++i) {
    for (int j = i + 1; j < count; ++j) edges.push_back({first + i, first + j});
  }
}

Graph hat_k(int r, int n) {
  std::vector<Edge> edges;
  clique(edges, 0, r);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < n; ++j) edges.push_back({i, r + j});
  }
  std::vector<Side> sides(static_cast<std::size_t>(r), Side::Left);
  sides.resize(static_cast<std::size_t>(r + n), Side::Right);
  return Graph(r + n, std::move(edges), std::move(sides));
}

}  // namespace

Graph build(const GadgetSpec& spec) {
  validate(spec);
  using K = GadgetSpec::Kind;
  std::vector<Edge> edges;
  switch (spec.kind) {
    case K::Complete:
      clique(edges, 0, spec.a);
      return Graph(spec.a, std::move(edges));
    case K::Cycle:
      for (int i = 0; i < spec.a; ++i) edges.push_back(Edge::of(i, (i + 1) % spec.a));
      return Graph(spec.a, std::move(edges));
    case K::CompleteBipartite: {
      for (int i = 0; i < spec.a; ++i) {
        for (int j = 0; j < spec.b; ++j) edges.push_back({i, spec.a + j});
      }
      std::vector<Side> sides(static_cast<std::size_t>(spec.a), Side::Left);
      sides.resize(static_cast<std::size_t>(spec.a + spec.b), Side::Right);
      return Graph(spec.a + spec.b, std::move(edges), std::move(sides));
    }
    case K::Star:
      for (int i = 1; i <= spec.a; ++i) edges.push_back({0, i});
      return Graph(spec.a + 1, std::move(edges));
    case K::Path:
      for (int i = 0; i + 1 < spec.a; ++i) edges.push_back({i, i + 1});
      return Graph(spec.a, std::move(edges));
    case K::HatK:
      return hat_k(spec.a, spec.b);
    case K::TildeK35: {
      Graph base = hat_k(3, 5);
      const Edge star[] = {{3, 4}, {3, 5}, {3, 6}, {3, 7}};
      return add_edges(base, star);
    }
    case K::Join:
      return join(build(spec.parts[0]), build(spec.parts[1]));
    case K::TriangleStar: {
      const int k = spec.a;
      const int t = spec.b;
      edges.reserve(static_cast<std::size_t>(k + 2 * k * t));
      for (int i = 1; i <= k; ++i) {
        edges.push_back({0, i});
        for (int j = 0; j < t; ++j) {
          const Vertex apex = 1 + k + (i - 1) * t + j;
          edges.push_back({0, apex});
          edges.push_back({i, apex});
        }
      }
      return Graph(1 + k + k * t, std::move(edges));
    }
  }
  throw Error(ErrorKind::Parameter, "unknown gadget kind");
}

int expected_order(const GadgetSpec& spec) {
  using K = GadgetSpec::Kind;
  switch (spec.kind) {
    case K::Complete:
    case K::Cycle:
    case K::Path: return spec.a;
    case K::CompleteBipartite:
    case K::HatK: return spec.a + spec.b;
    case K::Star: return spec.a + 1;
    case K::TildeK35: return 8;
    case K::Join: return expected_order(spec.parts.at(0)) + expected_order(spec.parts.at(1));
    case K::TriangleStar: return 1 + spec.a + spec.a * spec.b;
  }
  return 0;
}

int expected_size(const GadgetSpec& spec) {
  using K = GadgetSpec::Kind;
  switch (spec.kind) {
    case K::Complete: return spec.a * (spec.a - 1) / 2;
    case K::Cycle: return spec.a;
    case K::Path: return spec.a - 1;
    case K::CompleteBipartite: return spec.a * spec.b;
    case K::HatK: return spec.a * (spec.a - 1) / 2 + spec.a * spec.b;
    case K::Star: return spec.a;
    case K::TildeK35: return 22;
    case K::Join: {
      const auto& l = spec.parts.at(0);
      const auto& r = spec.parts.at(1);
      return expected_size(l) + expected_size(r) + expected_order(l) * expected_order(r);
    }
    case K::TriangleStar: return spec.a + 2 * spec.a * spec.b;
  }
  return 0;
}

namespace {

class SpecParser {
 public:
  explicit SpecParser(std::string_view text) : text_(text) {}

  GadgetSpec parse_all() {
    GadgetSpec spec = parse();
    skip_space();
    if (pos_ != text_.size()) fail("trailing characters");
    return spec;
  }

 private:
  GadgetSpec parse() {
    skip_space();
    if (eat("Ktilde35")) return GadgetSpec::tilde_k35();
    if (eat("Kjoin")) {
      expect('(');
      GadgetSpec l = parse();
      expect(',');
      GadgetSpec r = parse();
      expect(')');
      return GadgetSpec::join(std::move(l), std::move(r));
    }
    if (eat("Khat")) {
      auto [r, n] = pair();
      return GadgetSpec::hat_k(r, n);
    }
    if (eat("Kdelta")) {
      auto [k, t] = pair();
      return GadgetSpec::triangle_star(k, t);
    }
    if (eat("Kb")) {
      auto [r, s] = pair();
      return GadgetSpec::complete_bipartite(r, s);
    }
    if (eat("K")) return GadgetSpec::complete(number());
    if (eat("C")) return GadgetSpec::cycle(number());
    if (eat("S")) return GadgetSpec::star(number());
    if (eat("P")) return GadgetSpec::path(number());
    fail("unknown graph family");
  }

  std::pair<int, int> pair() {
    expect('(');
    int x = number();
    expect(',');
    int y = number();
    expect(')');
    return {x, y};
  }

  int number() {
    skip_space();
    int value = 0;
    auto* first = text_.data() + pos_;
    auto* last = text_.data() + text_.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr == first) fail("expected a number");
    pos_ += static_cast<std::size_t>(ptr - first);
    return value;
  }

  bool eat(std::string_view word) {
    if (text_.substr(pos_).starts_with(word)) {
      pos_ += word.size();
      return true;
    }
    return false;
  }

  void expect(char c) {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorKind::Format, "graph spec '" + std::string(text_) + "' at offset " +
                                       std::to_string(pos_) + ": " + why);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

GadgetSpec parse_spec(std::string_view text) {
  GadgetSpec spec = SpecParser(text).parse_all();
  try {
    validate(spec);
  } catch (const Error& e) {
    throw Error(ErrorKind::Format, e.what());
  }
  return spec;
}

std::string to_string(const GadgetSpec& spec) {
  using K = GadgetSpec::Kind;
  auto two = [&](const char* name) {
    return std::string(name) + "(" + std::to_string(spec.a) + "," + std::to_string(spec.b) + ")";
  };
  switch (spec.kind) {
    case K::Complete: return "K" + std::to_string(spec.a);
    case K::Cycle: return "C" + std::to_string(spec.a);
    case K::CompleteBipartite: return two("Kb");
    case K::Star: return "S" + std::to_string(spec.a);
    case K::Path: return "P" + std::to_string(spec.a);
    case K::HatK: return two("Khat");
    case K::TildeK35: return "Ktilde35";
    case K::Join: return "Kjoin(" + to_string(spec.parts.at(0)) + "," + to_string(spec.parts.at(1)) + ")";
    case K::TriangleStar: return two("Kdelta");
  }
  return "?";
}

}  // namespace rbw
