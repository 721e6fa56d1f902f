#include "rbw/cli.hpp"

#include <omp.h>

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "rbw/arrow.hpp"
#include "rbw/coloring.hpp"
#include "rbw/constructions.hpp"
#include "rbw/densities.hpp"
#include "rbw/error.hpp"
#include "rbw/gadgets.hpp"
#include "rbw/graph_io.hpp"
#include "rbw/janson.hpp"
#include "rbw/perturbation.hpp"

namespace rbw::cli {

namespace {

using nlohmann::ordered_json;

enum class Format { Text, Json, Csv };

struct Common {
  std::string format = "text";
  int threads = 0;
};

Format format_of(const Common& c) {
  if (c.format == "json") return Format::Json;
  if (c.format == "csv") return Format::Csv;
  return Format::Text;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorKind::Format, "cannot write " + path);
  return f;
}

void write_coloring_file(const std::string& path, const Graph& g, std::span<const std::int64_t> palette) {
  auto f = open_out(path);
  for (EdgeId id = 0; id < g.size(); ++id) {
    f << g.edge(id).u << ' ' << g.edge(id).v << ' ' << palette[static_cast<std::size_t>(id)] << '\n';
  }
}

ProperColoring read_coloring(const Graph& g, const std::string& path) {
  const auto lines = load_coloring_lines(path);
  return check_proper(g, std::span<const ColoredEdge>(lines));
}

ordered_json copy_json(const SubgraphCopy& c) { return {{"vertices", c.vertex_map}, {"edges", c.edges}}; }

// Text output: key=value lines, then the resolved config as a JSON line.
void emit(std::ostream& out, Format f, ordered_json record, const ordered_json& config) {
  if (f == Format::Json) {
    record["config"] = config;
    out << record.dump() << '\n';
    return;
  }
  if (f == Format::Csv) {
    std::string header;
    std::string row;
    for (const auto& [k, v] : record.items()) {
      header += (header.empty() ? "" : ",") + k;
      row += (row.empty() ? "" : ",") + (v.is_string() ? v.get<std::string>() : v.dump());
    }
    out << header << '\n' << row << '\n';
    return;
  }
  for (const auto& [k, v] : record.items()) {
    out << k << '=';
    if (v.is_string()) {
      out << v.get<std::string>();
    } else if (v.is_array() && std::all_of(v.begin(), v.end(), [](const auto& x) { return x.is_number(); })) {
      for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i].dump();
    } else {
      out << v.dump();
    }
    out << '\n';
  }
  out << "config=" << config.dump() << '\n';
}

ordered_json budget_json(const Budget& b) { return {{"max_nodes", b.max_nodes}, {"max_seconds", b.max_seconds}}; }

ordered_json report_json(const RainbowReport& r) {
  ordered_json w = ordered_json::array();
  for (const auto& c : r.witnesses) w.push_back(copy_json(c));
  return {{"total_copies", r.total_copies},
          {"rainbow_copies", r.rainbow_copies},
          {"non_rainbow_copies", r.non_rainbow_copies},
          {"witnesses", w}};
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> grid;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      grid.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw Error(ErrorKind::Format, "bad p grid entry '" + item + "'");
    }
  }
  if (grid.empty()) throw Error(ErrorKind::Format, "empty p grid");
  return grid;
}

int exit_code(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::Parameter: return kExitUsage;
    case ErrorKind::Resource: return kExitInternal;
    default: return kExitData;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rainbow arrow toolkit: gadgets, densities, exact arrow decisions, constructions, simulation"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--format", common.format, "report format")->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--threads", common.threads, "OpenMP worker cap (0: runtime default)");

  std::string spec;
  std::string out_path;
  auto* gadget = app.add_subcommand("gadget", "build a gadget and write it in graph text format");
  gadget->add_option("spec", spec, "graph spec, e.g. Kdelta(25,49)")->required();
  gadget->add_option("--out", out_path, "output file (stdout when absent)");

  bool bipartition = false;
  auto* density = app.add_subcommand("density", "density report of a graph");
  density->add_option("graph", spec, "graph spec or file")->required();
  density->add_flag("--bipartition", bipartition, "include the maximum bipartition density");

  std::string graph_arg;
  std::string pattern_arg;
  Budget budget;
  std::string witness_path;
  auto* arrow = app.add_subcommand("arrow", "decide whether every proper coloring has a rainbow copy");
  arrow->add_option("--graph", graph_arg, "host graph spec or file")->required();
  arrow->add_option("--pattern", pattern_arg, "pattern spec")->required();
  arrow->add_option("--budget-nodes", budget.max_nodes, "search node budget");
  arrow->add_option("--budget-secs", budget.max_seconds, "search time budget in seconds (0: none)");
  arrow->add_option("--witness", witness_path, "write the avoiding coloring here");

  std::string coloring_path;
  auto* verify = app.add_subcommand("verify-coloring", "check properness and count rainbow copies");
  verify->add_option("--graph", graph_arg, "graph spec or file")->required();
  verify->add_option("--coloring", coloring_path, "coloring file")->required();
  verify->add_option("--pattern", pattern_arg, "pattern spec")->required();

  std::string what;
  std::string in_path;
  std::string left_shape = "K13";
  std::string right_shape = "P4";
  std::uint64_t rng_seed = 1;
  auto* construct = app.add_subcommand("construct", "run a deterministic coloring construction");
  construct->add_option("--what", what, "construction")
      ->required()
      ->check(CLI::IsMember({"appendixB", "zero-statement", "k5-extract", "k7-assemble"}));
  construct->add_option("--in", in_path, "input graph file (zero-statement: seed plus components)");
  construct->add_option("--coloring", coloring_path, "input coloring file (k5-extract, k7-assemble)");
  construct->add_option("--out", out_path, "output prefix: writes <out>.graph and <out>.coloring");
  construct->add_option("--left", left_shape, "appendixB left shape (K2, P3, P4, K13)");
  construct->add_option("--right", right_shape, "appendixB right shape");
  construct->add_option("--rng-seed", rng_seed, "k7-assemble: synthesize a coloring from this seed");

  ExperimentConfig experiment;
  std::string seed_arg = "half:4";
  double p = 0.5;
  std::string grid_arg;
  std::string jsonl_path;
  bool independent = false;
  auto add_experiment = [&](CLI::App* sub) {
    sub->add_option("--seed-graph", seed_arg, "half:<n>, dense:<n>:<d> or file:<path>");
    sub->add_option("--pattern", experiment.pattern, "pattern spec");
    sub->add_option("--trials", experiment.trials, "trials per grid point");
    sub->add_option("--rng-seed", experiment.rng_seed, "master seed");
    sub->add_option("--budget-nodes", experiment.budget.max_nodes, "per-trial node budget");
    sub->add_option("--budget-secs", experiment.budget.max_seconds, "per-trial time budget (0: none)");
    sub->add_option("--jsonl", jsonl_path, "append-free JSONL record file");
  };
  auto* simulate = app.add_subcommand("simulate", "estimate the arrow probability at one p");
  add_experiment(simulate);
  simulate->add_option("--p", p, "edge probability")->required();
  auto* sweep = app.add_subcommand("sweep", "estimate over an ascending p grid (CSV summary)");
  add_experiment(sweep);
  sweep->add_option("--p-grid", grid_arg, "comma-separated ascending probabilities")->required();
  sweep->add_flag("--independent", independent, "fresh random numbers per grid point");

  int janson_n = 6;
  int max_n = kJansonDefaultMaxN;
  std::string p_text = "1";
  std::string t_text;
  auto* janson = app.add_subcommand("janson", "second-moment quantities of pattern copies in G(n,p)");
  janson->add_option("--pattern", pattern_arg, "pattern spec")->required();
  janson->add_option("--n", janson_n, "number of vertices");
  janson->add_option("--max-n", max_n, "enumeration cap");
  janson->add_option("--p", p_text, "rational p for the bounds");
  janson->add_option("--t", t_text, "rational t for the lower-tail bound (default lambda(p))");

  std::vector<std::string> argv_store{"rbw"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    err << app.help();
    return kExitUsage;
  }

  try {
    if (common.threads > 0) omp_set_num_threads(common.threads);
    const Format fmt = format_of(common);

    if (*gadget) {
      const GadgetSpec s = parse_spec(spec);
      const Graph g = build(s);
      if (!out_path.empty()) {
        save_graph(out_path, g);
        emit(out, fmt, {{"spec", to_string(s)}, {"order", g.order()}, {"size", g.size()}, {"out", out_path}},
             {{"subcommand", "gadget"}, {"spec", spec}, {"out", out_path}});
      } else {
        write_graph(out, g);
      }
      return kExitOk;
    }

    if (*density) {
      const Graph h = resolve_graph(spec);
      const DensityReport r = density_report(h, bipartition);
      ordered_json rec;
      rec["m2"] = format_rational(r.m2);
      rec["m1"] = format_rational(r.m1);
      if (r.m_bip2) rec["m_bip2"] = format_rational(*r.m_bip2);
      rec["strictly_2_balanced"] = r.strictly_2_balanced;
      rec["argmax_subgraph"] = r.argmax_subgraph;
      emit(out, fmt, rec, {{"subcommand", "density"}, {"graph", spec}, {"bipartition", bipartition}});
      return kExitOk;
    }

    if (*arrow) {
      const Graph g = resolve_graph(graph_arg);
      const Graph h = build(parse_spec(pattern_arg));
      auto v = decide_arrow_fast_paths(g, h);
      if (!v) v = decide_arrow(g, h, budget, common.threads);
      if (v->witness && !witness_path.empty()) {
        auto f = open_out(witness_path);
        write_coloring_lines(f, g, v->witness->colors());
      }
      ordered_json rec{{"verdict", to_string(v->verdict)},
                       {"nodes", v->stats.nodes},
                       {"prunes", v->stats.prunes},
                       {"seconds", v->stats.seconds},
                       {"copies", v->stats.copies},
                       {"subproblems", v->stats.subproblems},
                       {"certificate", v->stats.descriptor}};
      if (v->witness) rec["witness_colors"] = v->witness->num_colors();
      emit(out, fmt, rec,
           {{"subcommand", "arrow"}, {"graph", graph_arg}, {"pattern", pattern_arg}, {"budget", budget_json(budget)},
            {"threads", common.threads}, {"witness", witness_path}});
      switch (v->verdict) {
        case Verdict::Arrowed: return 0;
        case Verdict::NotArrowed: return 1;
        case Verdict::Indeterminate: return 2;
      }
    }

    if (*verify) {
      const Graph g = resolve_graph(graph_arg);
      const Graph h = build(parse_spec(pattern_arg));
      const ProperColoring c = read_coloring(g, coloring_path);
      ordered_json rec{{"proper", true}, {"colors", c.num_colors()}};
      rec.update(report_json(rainbow_census(c, h)));
      emit(out, fmt, rec,
           {{"subcommand", "verify-coloring"}, {"graph", graph_arg}, {"coloring", coloring_path}, {"pattern", pattern_arg}});
      return kExitOk;
    }

    if (*construct) {
      const ordered_json config{{"subcommand", "construct"}, {"what", what},        {"in", in_path},
                                {"coloring", coloring_path},  {"out", out_path},    {"left", left_shape},
                                {"right", right_shape},       {"rng_seed", rng_seed}};
      auto save = [&](const Graph& g, std::span<const std::int64_t> palette) {
        if (out_path.empty()) return;
        save_graph(out_path + ".graph", g);
        write_coloring_file(out_path + ".coloring", g, palette);
      };
      const Graph k4 = build(GadgetSpec::complete(4));
      if (what == "appendixB") {
        const auto c = appendix_b_coloring(parse_shape(left_shape), parse_shape(right_shape));
        save(c.coloring.host(), c.palette);
        const auto census = rainbow_census(c.coloring, k4);
        emit(out, fmt,
             {{"graph", "Kjoin(" + to_string(parse_shape(left_shape)) + "," + to_string(parse_shape(right_shape)) + ")"}, {"order", c.coloring.host().order()}, {"size", c.coloring.host().size()},
              {"colors", c.coloring.num_colors()}, {"k4_copies", census.total_copies},
              {"rainbow_k4", census.rainbow_copies}},
             config);
        return kExitOk;
      }
      if (what == "zero-statement") {
        if (in_path.empty()) throw Error(ErrorKind::Parameter, "zero-statement needs --in");
        const Graph input = load_graph(in_path);
        const ComponentStructure parts = derive_components(input);
        const Graph seed = remove_edges(input, [&](EdgeId id) {
          return input.side(input.edge(id).u) == input.side(input.edge(id).v);
        });
        const auto z = zero_statement_coloring(seed, parts);
        save(z.graph, z.coloring.palette);
        const auto census = rainbow_census(z.coloring.coloring, k4);
        emit(out, fmt,
             {{"order", z.graph.order()}, {"size", z.graph.size()}, {"left_components", parts.left.size()},
              {"right_components", parts.right.size()}, {"blocks", z.blocks.size()},
              {"colors", z.coloring.coloring.num_colors()}, {"k4_copies", census.total_copies},
              {"rainbow_k4", census.rainbow_copies}},
             config);
        return kExitOk;
      }
      if (what == "k5-extract") {
        const Graph g = in_path.empty() ? build(GadgetSpec::tilde_k35()) : load_graph(in_path);
        if (coloring_path.empty()) throw Error(ErrorKind::Parameter, "k5-extract needs --coloring");
        const auto r = extract_rainbow_k5(g, read_coloring(g, coloring_path));
        emit(out, fmt, {{"t", r.t}, {"k5_vertices", r.k5.vertex_map}, {"k5_edges", r.k5.edges}}, config);
        return kExitOk;
      }
      const Graph g = in_path.empty() ? k7_instance() : load_graph(in_path);
      std::vector<std::int64_t> palette;
      if (coloring_path.empty()) {
        palette = synthesize_k7_coloring(g, rng_seed);
        save(g, palette);
      }
      const ProperColoring c =
          coloring_path.empty() ? check_proper(g, std::span<const std::int64_t>(palette)) : read_coloring(g, coloring_path);
      const auto r = assemble_rainbow_k7(g, c);
      emit(out, fmt,
           {{"block", r.block}, {"triangle", r.triangle.vertex_map}, {"k7_vertices", r.k7.vertex_map},
            {"removed_colors", r.removed_colors}},
           config);
      return kExitOk;
    }

    if (*simulate || *sweep) {
      experiment.seed = parse_seed_spec(seed_arg);
      experiment.threads = common.threads;
      experiment.common_random_numbers = !independent;
      std::vector<ExperimentRecord> records;
      if (*simulate) {
        records.push_back(estimate_arrow_probability(experiment, p));
      } else {
        const auto grid = parse_grid(grid_arg);
        records = threshold_sweep(experiment, grid);
      }
      if (!jsonl_path.empty()) {
        auto f = open_out(jsonl_path);
        write_jsonl(f, records);
      }
      if (*sweep && fmt != Format::Json) {
        write_csv(out, records);
      } else if (*simulate && fmt == Format::Csv) {
        write_csv(out, records);
      } else if (fmt == Format::Json) {
        write_jsonl(out, records);
      } else {
        const ordered_json rec = ordered_json::parse(to_json_line(records.front()));
        emit(out, fmt, rec, {{"subcommand", "simulate"}, {"seed_graph", seed_arg}, {"threads", common.threads}});
      }
      return kExitOk;
    }

    if (*janson) {
      const Graph h = build(parse_spec(pattern_arg));
      const auto q = janson_quantities(h, janson_n, std::nullopt, max_n);
      const Rational pr = parse_rational(p_text);
      ordered_json rec{{"n", janson_n},
                       {"copies", q.copies},
                       {"lambda", q.lambda.format()},
                       {"delta_bar", q.delta_bar.format()},
                       {"delta", q.delta.format()}};
      if (q.copies > 0) {
        const long double lam = q.lambda(boost::rational_cast<long double>(pr));
        Rational t = t_text.empty() ? Rational(0) : parse_rational(t_text);
        if (t_text.empty()) {
          // lambda(p) is exact for rational p: copies * p^e.
          Rational pe(1);
          for (int i = 0; i < h.size(); ++i) pe *= pr;
          t = pe * static_cast<std::int64_t>(q.copies);
        }
        const auto b = janson_bounds(q, pr, t);
        rec["p"] = format_rational(pr);
        rec["t"] = format_rational(t);
        rec["lambda_at_p"] = static_cast<double>(lam);
        rec["lower_tail"] = static_cast<double>(b.lower_tail);
        rec["nonexistence_1"] = static_cast<double>(b.nonexistence_1);
        rec["nonexistence_2"] = static_cast<double>(b.nonexistence_2);
        rec["lower_tail_exponent"] = static_cast<double>(b.lower_tail_exponent);
        rec["nonexistence_1_exponent"] = static_cast<double>(b.nonexistence_1_exponent);
        rec["nonexistence_2_exponent"] = static_cast<double>(b.nonexistence_2_exponent);
      }
      emit(out, fmt, rec,
           {{"subcommand", "janson"}, {"pattern", pattern_arg}, {"n", janson_n}, {"max_n", max_n}, {"p", p_text},
            {"t", t_text}});
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "rbw: " << e.what() << '\n';
    return exit_code(e);
  } catch (const std::exception& e) {
    err << "rbw: internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitUsage;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace rbw::cli
