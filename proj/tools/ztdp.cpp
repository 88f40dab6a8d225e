// ztdp command-line tool: generate inputs, build and check decompositions,
// count with either evaluator or the brute-force oracles, and benchmark.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <ztdp/ztdp.hpp>

using namespace ztdp;
using nlohmann::json;

namespace {

constexpr const char* report_schema = "ztdp.report/1";

// Inputs are either a graph or a hypergraph file.
struct Input {
  std::optional<Graph> graph;
  std::optional<Hypergraph> hypergraph;
};

Input load_input(const std::string& path) {
  InputKind kind;
  {
    auto in = open_input(path);
    kind = sniff_input(in);
  }
  auto in = open_input(path);
  Input input;
  if (kind == InputKind::graph) input.graph = read_graph(in);
  else input.hypergraph = read_hypergraph(in);
  return input;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

// Uniform double in [0,1) from the top 53 bits; identical on every platform.
double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

Graph random_graph(std::size_t n, double p, std::uint64_t seed, bool connected) {
  std::mt19937_64 rng(seed);
  std::vector<Edge> edges;
  if (connected)
    for (std::size_t v = 1; v < n; ++v)
      edges.push_back({static_cast<Vertex>(rng() % v), static_cast<Vertex>(v)});
  std::set<Edge> have;
  for (auto e : edges) have.insert({std::min(e.u, e.v), std::max(e.u, e.v)});
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (unit(rng) < p && !have.count({u, v})) edges.push_back({u, v});
  return make_graph(n, std::move(edges));
}

Hypergraph random_hypergraph(std::size_t n, std::size_t sets, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::vector<Vertex>> hs;
  for (std::size_t i = 0; i < sets; ++i) {
    std::vector<Vertex> e;
    for (Vertex v = 0; v < n; ++v)
      if (unit(rng) < p) e.push_back(v);
    if (e.empty()) e.push_back(static_cast<Vertex>(rng() % n));
    hs.push_back(std::move(e));
  }
  return Hypergraph(n, std::move(hs));
}

json answer_json(const BigInt& v) { return v.str(); }
json answer_json(const std::vector<BigInt>& vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back(v.str());
  return a;
}

json stats_json(const EvalStats& s, bool timing) {
  json j{{"leaf_evaluations", s.leaf_evaluations},
         {"peak_live_values", s.peak_live_values},
         {"table_entries_peak", s.table_entries_peak},
         {"table_entries_total", s.table_entries_total},
         {"largest_table", s.largest_table}};
  if (timing) j["wall_seconds"] = s.wall_seconds;
  return j;
}

// Grid-specific bounds on the decomposition in use.
json grid_bounds_json(const GridSpec& spec, const DecompositionMetrics& m) {
  const std::size_t d = spec.dimension(), volume = spec.volume(), nm = spec.max_length();
  const std::size_t general = 3 * d * volume / nm;
  json j{{"general_bound", general}, {"general_bound_holds", m.tree_depth_h <= general}};
  bool uniform = std::all_of(spec.lengths().begin(), spec.lengths().end(), [&](auto l) { return l == nm; });
  if (uniform && d >= 2) {
    // (2^d - 1)/(2^{d-1} - 1) · n^{d-1}, exact integer floor
    BigInt num = (BigInt(1) << d) - 1, den = (BigInt(1) << (d - 1)) - 1, power = 1;
    for (std::size_t i = 0; i + 1 < d; ++i) power *= nm;
    BigInt lemma = num * power / den;
    j["lemma_depth_bound"] = lemma.str();
    j["lemma_depth_bound_holds"] = BigInt(m.tree_depth_h) <= lemma;
  }
  return j;
}

struct CountArgs {
  std::string problem, input, engine = "zeta", td_file, modulus;
  unsigned parallel = 1;
  std::optional<std::size_t> l;
  bool dom = false, no_timing = false;
};

template <class Answer>
json run_report(const std::string& problem, const std::string& engine, const CountRun<Answer>& run,
                const std::optional<BigInt>& modulus, const std::optional<GridSpec>& grid, bool timing) {
  json r{{"schema", report_schema},
         {"problem", problem},
         {"engine", engine},
         {"answer", answer_json(run.answer)},
         {"modulus", modulus ? json(modulus->str()) : json(nullptr)},
         {"decomposition", metrics_to_json(run.metrics)},
         {"leaves", run.leaves},
         {"stats", stats_json(run.stats, timing)}};
  const bool holds = path_bound_holds(run.stats.leaf_evaluations, run.leaves, run.metrics.tree_depth_h);
  BigInt limit = BigInt(run.leaves) << static_cast<unsigned>(run.metrics.tree_depth_h);
  json bounds{{"path_bound", {{"leaf_evaluations", run.stats.leaf_evaluations}, {"limit", limit.str()}, {"holds", holds}}}};
  if (grid) bounds["grid"] = grid_bounds_json(*grid, run.metrics);
  r["bounds"] = bounds;
  return r;
}

BigInt reduce_mod(BigInt v, const std::optional<BigInt>& m) {
  if (!m) return v;
  v %= *m;
  if (v < 0) v += *m;
  return v;
}

int cmd_count(const CountArgs& a) {
  Input input = load_input(a.input);
  std::optional<BigInt> modulus;
  if (!a.modulus.empty()) {
    modulus = parse_bigint(a.modulus);
    if (*modulus < 2) throw std::invalid_argument("--modulus must be at least 2");
  }
  const bool graph_in = input.graph.has_value();
  auto need_graph = [&] {
    if (!graph_in) throw CLI::ValidationError("problem '" + a.problem + "' needs a graph input");
    return *input.graph;
  };
  // set cover / packings instances
  auto as_hypergraph = [&]() -> Hypergraph {
    if (a.problem == "domsets" || (a.problem == "setcover" && a.dom)) return closed_neighborhood_hypergraph(need_graph());
    if (a.problem == "setcover" && graph_in)
      throw CLI::ValidationError("setcover on a graph input needs --dom (or use the domsets problem)");
    if (graph_in) return graph_as_hypergraph(*input.graph);
    return *input.hypergraph;
  };
  if (a.problem == "packings" && !a.l) throw CLI::ValidationError("packings needs -l");
  if (a.problem != "packings" && a.l) throw CLI::ValidationError("-l only applies to packings");
  if (a.dom && a.problem != "setcover" && a.problem != "domsets")
    throw CLI::ValidationError("--dom only applies to setcover");

  std::optional<GridSpec> grid = graph_in ? input.graph->grid() : std::nullopt;
  if (a.problem == "domsets" || a.problem == "setcover" || a.problem == "packings") grid.reset();

  if (a.engine == "oracle") {
    if (!a.td_file.empty() || a.parallel != 1)
      throw CLI::ValidationError("--td and --parallel do not apply to the oracle engine");
    json answer;
    if (a.problem == "pm") answer = reduce_mod(bf_perfect_matchings(need_graph()), modulus).str();
    else if (a.problem == "matchpoly") {
      auto counts = bf_matchings_by_size(need_graph());
      for (auto& c : counts) c = reduce_mod(c, modulus);
      answer = answer_json(counts);
    } else if (a.problem == "packings") answer = reduce_mod(bf_l_packings(as_hypergraph(), *a.l), modulus).str();
    else answer = reduce_mod(bf_set_covers(as_hypergraph()), modulus).str();
    json r{{"schema", report_schema}, {"problem", a.problem}, {"engine", "oracle"}, {"answer", answer},
           {"modulus", modulus ? json(modulus->str()) : json(nullptr)}, {"decomposition", nullptr}, {"stats", nullptr},
           {"bounds", nullptr}};
    std::cout << r.dump(2) << '\n';
    return 0;
  }

  CountOptions options;
  if (a.engine == "table") options.engine = EngineKind::table;
  else if (a.engine != "zeta") throw CLI::ValidationError("unknown engine '" + a.engine + "'");
  options.eval.modulus = modulus;
  options.eval.threads = a.parallel;
  options.table = TableDpOptions::from_environment();
  if (!a.td_file.empty()) {
    auto in = open_input(a.td_file);
    options.td = read_td(in).td;
  }

  json report;
  if (a.problem == "pm") {
    report = run_report(a.problem, a.engine, count_perfect_matchings(need_graph(), options), modulus, grid, !a.no_timing);
  } else if (a.problem == "matchpoly") {
    report = run_report(a.problem, a.engine, matching_polynomial(need_graph(), options), modulus, grid, !a.no_timing);
  } else if (a.problem == "setcover" || a.problem == "domsets") {
    report = run_report(a.problem, a.engine, count_set_covers(as_hypergraph(), options), modulus, grid, !a.no_timing);
  } else if (a.problem == "packings") {
    report = run_report(a.problem, a.engine, count_l_packings(as_hypergraph(), *a.l, options), modulus, grid,
                        !a.no_timing);
  } else {
    throw CLI::ValidationError("unknown problem '" + a.problem + "'");
  }
  std::cout << report.dump(2) << '\n';
  return report["bounds"]["path_bound"]["holds"].get<bool>() ? 0 : 3;
}

TreeDecomposition build_td(const Input& input, const std::string& strategy) {
  const std::size_t n = input.graph ? input.graph->vertex_count() : input.hypergraph->universe_size();
  if (strategy == "single-bag") return single_bag_td(n);
  if (strategy == "balanced") return input.graph ? default_decomposition(*input.graph) : default_decomposition(*input.hypergraph);
  if (strategy == "path") {
    if (!input.graph || !input.graph->grid()) throw CLI::ValidationError("the path strategy needs a grid graph");
    return grid_path_decomposition(*input.graph->grid());
  }
  throw CLI::ValidationError("unknown strategy '" + strategy + "'");
}

Hypergraph as_structure(const Input& input) {
  return input.graph ? graph_as_hypergraph(*input.graph) : *input.hypergraph;
}

struct BenchArgs {
  std::size_t d = 2, from = 2, to = 4;
  std::string problems = "pm", engines = "zeta,table", strategy = "balanced", output;
  bool no_timing = false;
};

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

int cmd_bench(const BenchArgs& a) {
  std::ostringstream csv;
  csv << "instance,problem,engine,answer,width,h,leaves,leaf_evaluations,path_bound_ok,peak_live_values,"
         "table_entries_peak,largest_table,table_entries_total,wall_seconds\n";
  bool agree = true;
  for (std::size_t n = a.from; n <= a.to; ++n) {
    GridSpec spec(std::vector<std::size_t>(a.d, n));
    Graph g = grid_graph(spec);
    std::string instance = "G" + std::to_string(a.d) + "(" + std::to_string(n) + ")";
    for (const auto& problem : split(a.problems)) {
      std::optional<std::string> first;
      for (const auto& engine : split(a.engines)) {
        CountOptions options;
        options.engine = engine == "table" ? EngineKind::table : EngineKind::zeta;
        if (engine != "zeta" && engine != "table") throw CLI::ValidationError("bench engines are zeta and table");
        options.td = build_td(Input{g, std::nullopt}, a.strategy);
        options.table = TableDpOptions::from_environment();
        std::string answer;
        EvalStats stats;
        DecompositionMetrics m;
        std::size_t leaves = 0;
        auto take = [&](const auto& run) {
          std::ostringstream s;
          if constexpr (std::is_same_v<std::decay_t<decltype(run.answer)>, BigInt>) s << run.answer;
          else
            for (std::size_t i = 0; i < run.answer.size(); ++i) s << (i ? " " : "") << run.answer[i];
          answer = s.str();
          stats = run.stats;
          m = run.metrics;
          leaves = run.leaves;
        };
        if (problem == "pm") take(count_perfect_matchings(g, options));
        else if (problem == "matchpoly") take(matching_polynomial(g, options));
        else if (problem == "domsets") {
          options.td.reset();
          take(count_dominating_sets(g, options));
        } else throw CLI::ValidationError("bench problems are pm, matchpoly and domsets");
        const bool bound = path_bound_holds(stats.leaf_evaluations, leaves, m.tree_depth_h);
        csv << instance << ',' << problem << ',' << engine << ',' << answer << ',' << m.width << ','
            << m.tree_depth_h << ',' << leaves << ',' << stats.leaf_evaluations << ',' << (bound ? "true" : "false")
            << ',' << stats.peak_live_values << ',' << stats.table_entries_peak << ',' << stats.largest_table << ','
            << stats.table_entries_total << ',';
        if (!a.no_timing) csv << stats.wall_seconds;
        csv << '\n';
        if (!first) first = answer;
        else if (*first != answer) {
          std::cerr << "engines disagree on " << instance << " " << problem << ": " << *first << " vs " << answer
                    << " (" << engine << ")\n";
          agree = false;
        }
        if (engine == "zeta" && !bound) agree = false;
      }
    }
  }
  write_text(a.output, csv.str());
  return agree ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polynomial-space counting over modified nice tree decompositions"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a graph or hypergraph file");
  std::string gen_kind, gen_out;
  std::vector<std::size_t> gen_lengths;
  std::size_t gen_n = 6, gen_sets = 4;
  double gen_p = 0.5;
  std::uint64_t gen_seed = 1;
  bool gen_connected = false;
  gen->add_option("kind", gen_kind, "grid | random | random-hg")->required()->check(CLI::IsMember({"grid", "random", "random-hg"}));
  gen->add_option("lengths", gen_lengths, "grid side lengths");
  gen->add_option("--n", gen_n, "vertex / universe count");
  gen->add_option("--p", gen_p, "edge / membership probability")->check(CLI::Range(0.0, 1.0));
  gen->add_option("--seed", gen_seed, "random seed");
  gen->add_option("--sets", gen_sets, "hyperedge count (random-hg)");
  gen->add_flag("--connected", gen_connected, "add a random spanning tree first (random)");
  gen->add_option("-o,--output", gen_out, "output file (stdout when omitted)");

  // decompose
  auto* dec = app.add_subcommand("decompose", "build a tree decomposition and print its metrics");
  std::string dec_input, dec_strategy = "balanced", dec_out, dec_nice;
  dec->add_option("input", dec_input)->required();
  dec->add_option("--strategy", dec_strategy, "balanced | path | single-bag")
      ->check(CLI::IsMember({"balanced", "path", "single-bag"}));
  dec->add_option("-o,--output", dec_out, "write the decomposition (PACE td format)");
  dec->add_option("--nice", dec_nice, "also write the modified nice decomposition (JSON)");

  // validate
  auto* val = app.add_subcommand("validate", "check a decomposition against an input");
  std::string val_input, val_td;
  val->add_option("input", val_input)->required();
  val->add_option("td", val_td)->required();

  // count
  auto* cnt = app.add_subcommand("count", "count structures and print a JSON run report");
  CountArgs ca;
  std::size_t l_value = 0;
  cnt->add_option("problem", ca.problem, "pm | matchpoly | setcover | domsets | packings")
      ->required()
      ->check(CLI::IsMember({"pm", "matchpoly", "setcover", "domsets", "packings"}));
  cnt->add_option("input", ca.input)->required();
  cnt->add_option("--engine", ca.engine, "zeta | table | oracle")->check(CLI::IsMember({"zeta", "table", "oracle"}));
  cnt->add_option("--modulus", ca.modulus, "reduce modulo this integer (>= 2)");
  cnt->add_option("--td", ca.td_file, "use this decomposition (PACE td format)");
  cnt->add_option("--parallel", ca.parallel, "worker threads for the zeta engine")->check(CLI::PositiveNumber);
  auto* l_opt = cnt->add_option("-l", l_value, "packing size");
  cnt->add_flag("--dom", ca.dom, "count dominating sets of a graph input via closed neighbourhoods");
  cnt->add_flag("--no-timing", ca.no_timing, "omit wall-clock fields from the report");

  // bench
  auto* bench = app.add_subcommand("bench", "grid benchmark, CSV output");
  BenchArgs ba;
  bench->add_option("--d", ba.d, "grid dimension")->check(CLI::PositiveNumber);
  bench->add_option("--from", ba.from, "smallest side length")->check(CLI::PositiveNumber);
  bench->add_option("--to", ba.to, "largest side length")->check(CLI::PositiveNumber);
  bench->add_option("--problems", ba.problems, "comma-separated: pm, matchpoly, domsets");
  bench->add_option("--engines", ba.engines, "comma-separated: zeta, table");
  bench->add_option("--strategy", ba.strategy, "balanced | path | single-bag")
      ->check(CLI::IsMember({"balanced", "path", "single-bag"}));
  bench->add_option("-o,--output", ba.output, "CSV file (stdout when omitted)");
  bench->add_flag("--no-timing", ba.no_timing, "leave the wall_seconds column empty");

  // oracle
  auto* orc = app.add_subcommand("oracle", "brute-force reference values");
  std::string orc_what, orc_input;
  std::size_t orc_l = 0;
  orc->add_option("what", orc_what, "pm | matchpoly | setcover | packings | treedepth")
      ->required()
      ->check(CLI::IsMember({"pm", "matchpoly", "setcover", "packings", "treedepth"}));
  orc->add_option("input", orc_input)->required();
  orc->add_option("-l", orc_l, "packing size");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // help and version requests exit 0; usage errors share code 2
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*gen) {
      std::ostringstream out;
      if (gen_kind == "grid") {
        if (gen_lengths.empty()) throw CLI::ValidationError("gen grid needs side lengths");
        write_graph(out, grid_graph(GridSpec(gen_lengths)));
      } else if (gen_kind == "random") {
        write_graph(out, random_graph(gen_n, gen_p, gen_seed, gen_connected));
      } else {
        if (gen_n == 0) throw CLI::ValidationError("random-hg needs --n >= 1");
        write_hypergraph(out, random_hypergraph(gen_n, gen_sets, gen_p, gen_seed));
      }
      write_text(gen_out, out.str());
      return 0;
    }
    if (*dec) {
      Input input = load_input(dec_input);
      auto td = build_td(input, dec_strategy);
      auto structure = as_structure(input);
      auto report = validate(structure, td);
      if (!report.ok()) throw std::logic_error("constructed decomposition is invalid: " + report.violations.front().describe());
      auto nice = to_modified_nice(td, structure);
      json j{{"schema", "ztdp.decomposition/1"}, {"strategy", dec_strategy}, {"td", metrics_to_json(metrics(td))},
             {"nice", metrics_to_json(metrics(nice))}};
      std::size_t widest = 0;
      for (const auto& b : td.bags()) widest = std::max(widest, b.size());
      j["max_bag_size"] = widest;
      if (input.graph && input.graph->grid()) j["bounds"] = grid_bounds_json(*input.graph->grid(), metrics(td));
      if (!dec_out.empty()) {
        std::ostringstream s;
        write_td(s, td, structure.universe_size());
        write_text(dec_out, s.str());
      }
      if (!dec_nice.empty()) write_text(dec_nice, nice_to_json(nice).dump(1) + "\n");
      std::cout << j.dump(2) << '\n';
      return 0;
    }
    if (*val) {
      Input input = load_input(val_input);
      auto in = open_input(val_td);
      auto td = read_td(in).td;
      auto report = validate(as_structure(input), td);
      json v = json::array();
      for (const auto& violation : report.violations) v.push_back(violation.describe());
      std::cout << json{{"schema", "ztdp.validation/1"}, {"valid", report.ok()}, {"violations", v}}.dump(2) << '\n';
      return report.ok() ? 0 : 1;
    }
    if (*cnt) {
      if (l_opt->count()) ca.l = l_value;
      return cmd_count(ca);
    }
    if (*bench) return cmd_bench(ba);
    if (*orc) {
      Input input = load_input(orc_input);
      json answer;
      auto graph = [&]() -> const Graph& {
        if (!input.graph) throw CLI::ValidationError("'" + orc_what + "' needs a graph input");
        return *input.graph;
      };
      if (orc_what == "pm") answer = bf_perfect_matchings(graph()).str();
      else if (orc_what == "matchpoly") answer = answer_json(bf_matchings_by_size(graph()));
      else if (orc_what == "treedepth") answer = exact_tree_depth(graph());
      else if (orc_what == "setcover") answer = bf_set_covers(as_structure(input)).str();
      else answer = bf_l_packings(as_structure(input), orc_l).str();
      std::cout << json{{"schema", "ztdp.oracle/1"}, {"what", orc_what}, {"answer", answer}}.dump(2) << '\n';
      return 0;
    }
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const OracleBudgetError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const TableGuardError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 5;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
