#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fpg/dp.hpp"
#include "fpg/oracle.hpp"
#include "fpg/treedecomp.hpp"

using json = nlohmann::json;
using namespace fpg;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string graph_id(const std::string& path) {
  return std::filesystem::path(path).filename().string();
}

MultiGraph load_valid_graph(const std::string& path) {
  MultiGraph g = parse_graph(read_file(path));
  auto d = validate(g);
  if (!d.four_regular)
    throw std::runtime_error("'" + path + "': graph is not 4-regular");
  if (!d.connected) throw std::runtime_error("'" + path + "': graph is not connected");
  return g;
}

// decomposition choice: supplied file, exact when small, heuristic otherwise
TreeDecomposition pick_decomposition(const MultiGraph& g, const std::string& td_file) {
  if (!td_file.empty()) {
    TreeDecomposition td = parse_td(read_file(td_file));
    auto d = validate_decomposition(g, td);
    if (!d.valid) throw std::runtime_error("'" + td_file + "': " + d.violation);
    return td;
  }
  if (g.node_count() <= 8) return exact_treewidth(g).second;
  return heuristic_decomposition(g);
}

// run tasks over an index range, optionally on several threads
void for_each_index(size_t count, int jobs, const std::function<void(size_t)>& task) {
  if (jobs <= 1 || count <= 1) {
    for (size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> workers;
  int spawn = std::min<int>(jobs, static_cast<int>(count));
  for (int w = 0; w < spawn; ++w)
    workers.emplace_back([&] {
      while (true) {
        size_t i = next.fetch_add(1);
        if (i >= count) return;
        task(i);
      }
    });
  for (auto& w : workers) w.join();
}

struct CheckArgs {
  std::vector<std::string> graphs;
  std::string td_file;
  std::string property = "trivial";
  std::string strategy = "exhaustive";
  bool verify_oracle = false;
  int jobs = 1;
  bool summary = false;
};

int cmd_check(const CheckArgs& args) {
  PropertySpec spec = parse_property_spec(args.property);
  Strategy strategy;
  if (args.strategy == "exhaustive") strategy = Strategy::exhaustive;
  else if (args.strategy == "dfs") strategy = Strategy::dfs;
  else throw std::runtime_error("unknown strategy '" + args.strategy + "'");
  if (!args.td_file.empty() && args.graphs.size() != 1)
    throw std::runtime_error("--td requires exactly one --graph");

  std::vector<json> records(args.graphs.size());
  std::vector<std::string> errors(args.graphs.size());
  for_each_index(args.graphs.size(), args.jobs, [&](size_t i) {
    const std::string& path = args.graphs[i];
    try {
      MultiGraph g = load_valid_graph(path);
      TreeDecomposition td = pick_decomposition(g, args.td_file);
      NiceDecomposition nd = make_nice(g, td);
      auto prop = make_property(spec);
      auto start = std::chrono::steady_clock::now();
      SolveResult r = solve(g, nd, *prop, strategy);
      auto end = std::chrono::steady_clock::now();
      json rec = {
          {"graph_id", graph_id(path)},
          {"node_count", g.node_count()},
          {"treewidth_used", nd.width()},
          {"admissible", r.admissible},
          {"property", spec.selector()},
          {"strategy", args.strategy},
          {"max_configs", r.stats.max_store_size},
          {"elapsed_ms",
           std::chrono::duration_cast<std::chrono::milliseconds>(end - start).count()},
      };
      if (args.verify_oracle) {
        if (g.node_count() <= 3) {
          bool truth = oracle::admissible(g, spec);
          rec["oracle_agrees"] = (truth == r.admissible);
        } else {
          std::cerr << "note: skipping oracle verification for " << graph_id(path)
                    << " (more than 3 nodes)\n";
        }
      }
      records[i] = std::move(rec);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });

  bool failed = false;
  struct Agg {
    int count = 0;
    long total_ms = 0;
    std::size_t max_configs = 0;
  };
  std::map<std::pair<int, int>, Agg> table;
  for (size_t i = 0; i < records.size(); ++i) {
    if (!errors[i].empty()) {
      std::cerr << "error: " << errors[i] << "\n";
      failed = true;
      continue;
    }
    std::cout << records[i].dump() << "\n";
    if (args.summary) {
      Agg& a = table[{records[i]["node_count"], records[i]["treewidth_used"]}];
      a.count += 1;
      a.total_ms += records[i]["elapsed_ms"].get<long>();
      a.max_configs = std::max(a.max_configs, records[i]["max_configs"].get<std::size_t>());
    }
  }
  if (args.summary) {
    std::cerr << "nodes  tw  graphs  avg_ms  max_configs\n";
    for (const auto& [key, a] : table)
      std::cerr << key.first << "  " << key.second << "  " << a.count << "  "
                << (a.count ? a.total_ms / a.count : 0) << "  " << a.max_configs << "\n";
  }
  return failed ? 1 : 0;
}

int cmd_gen(int nodes, const std::string& out_dir) {
  auto graphs = enumerate_four_regular(nodes);
  std::filesystem::create_directories(out_dir);
  std::map<int, int> hist;
  for (size_t i = 0; i < graphs.size(); ++i) {
    int tw = exact_treewidth(graphs[i]).first;
    ++hist[tw];
    std::ostringstream name;
    name << "graph_n" << nodes << "_" << std::setw(3) << std::setfill('0') << i << ".txt";
    std::filesystem::path path = std::filesystem::path(out_dir) / name.str();
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << serialize_graph(graphs[i]);
    json rec = {{"file", path.string()}, {"node_count", nodes}, {"treewidth", tw}};
    std::cout << rec.dump() << "\n";
  }
  std::cerr << "generated " << graphs.size() << " graphs on " << nodes << " nodes\n";
  for (const auto& [tw, count] : hist) std::cerr << "  treewidth " << tw << ": " << count << "\n";
  return 0;
}

int cmd_oracle(const std::vector<std::string>& paths, const std::string& property,
               int max_nodes, int jobs) {
  PropertySpec spec = parse_property_spec(property);
  oracle::Options opts;
  opts.node_guard = max_nodes;
  std::vector<json> records(paths.size());
  std::vector<std::string> errors(paths.size());
  for_each_index(paths.size(), jobs, [&](size_t i) {
    try {
      MultiGraph g = load_valid_graph(paths[i]);
      auto start = std::chrono::steady_clock::now();
      bool adm = oracle::admissible(g, spec, opts);
      std::uint64_t closed = oracle::count_closed(g, spec, opts);
      auto end = std::chrono::steady_clock::now();
      records[i] = {
          {"graph_id", graph_id(paths[i])},
          {"admissible", adm},
          {"closed_count", closed},
          {"property", spec.selector()},
          {"elapsed_ms",
           std::chrono::duration_cast<std::chrono::milliseconds>(end - start).count()},
      };
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });
  bool failed = false;
  for (size_t i = 0; i < records.size(); ++i) {
    if (!errors[i].empty()) {
      std::cerr << "error: " << errors[i] << "\n";
      failed = true;
      continue;
    }
    std::cout << records[i].dump() << "\n";
  }
  return failed ? 1 : 0;
}

int cmd_treewidth(const std::vector<std::string>& paths, bool exact,
                  const std::string& out_file) {
  if (!out_file.empty() && paths.size() != 1)
    throw std::runtime_error("--out requires exactly one --graph");
  bool failed = false;
  for (const std::string& path : paths) {
    try {
      MultiGraph g = parse_graph(read_file(path));
      TreeDecomposition td;
      if (exact) {
        if (g.node_count() > 8)
          throw std::runtime_error("'" + path + "': exact treewidth is guarded to 8 nodes");
        td = exact_treewidth(g).second;
      } else {
        td = heuristic_decomposition(g);
      }
      std::string td_path = out_file.empty() ? path + ".td" : out_file;
      std::ofstream out(td_path);
      if (!out) throw std::runtime_error("cannot write '" + td_path + "'");
      out << serialize_td(td, g.node_count());
      json rec = {{"graph_id", graph_id(path)},
                  {"node_count", g.node_count()},
                  {"width", width(td)},
                  {"exact", exact},
                  {"td_file", td_path}};
      std::cout << rec.dump() << "\n";
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      failed = true;
    }
  }
  return failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"face pairing graph admissibility"};
  app.require_subcommand(1);

  CheckArgs check_args;
  auto* check = app.add_subcommand(
      "check", "decide whether graphs admit closed 3-manifold triangulations");
  check->add_option("--graph", check_args.graphs, "graph file(s)")->required();
  check->add_option("--td", check_args.td_file, "tree decomposition file (PACE-style)");
  check->add_option("--property", check_args.property,
                    "trivial | one-vertex | max-internal=K");
  check->add_option("--strategy", check_args.strategy, "exhaustive | dfs");
  check->add_flag("--verify-oracle", check_args.verify_oracle,
                  "cross-check against the brute-force oracle (small graphs)");
  check->add_option("--jobs", check_args.jobs, "parallelism across graphs");
  check->add_flag("--summary", check_args.summary, "aggregate table on stderr");

  int gen_nodes = 0;
  std::string gen_out = ".";
  auto* gen = app.add_subcommand("gen", "generate the 4-regular multigraph census");
  gen->add_option("--nodes", gen_nodes, "node count (at most 6)")->required();
  gen->add_option("--out", gen_out, "output directory");

  std::vector<std::string> oracle_graphs;
  std::string oracle_property = "trivial";
  int oracle_max_nodes = 3;
  int oracle_jobs = 1;
  auto* orc = app.add_subcommand("oracle", "brute-force enumeration ground truth");
  orc->add_option("--graph", oracle_graphs, "graph file(s)")->required();
  orc->add_option("--property", oracle_property, "trivial | one-vertex | max-internal=K");
  orc->add_option("--max-nodes", oracle_max_nodes, "node guard (hard ceiling 4)");
  orc->add_option("--jobs", oracle_jobs, "parallelism across graphs");

  std::vector<std::string> tw_graphs;
  bool tw_exact = false;
  std::string tw_out;
  auto* tw = app.add_subcommand("treewidth", "compute tree decompositions");
  tw->add_option("--graph", tw_graphs, "graph file(s)")->required();
  tw->add_flag("--exact", tw_exact, "exact treewidth (at most 8 nodes)");
  tw->add_option("--out", tw_out, "decomposition output file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) return cmd_check(check_args);
    if (gen->parsed()) return cmd_gen(gen_nodes, gen_out);
    if (orc->parsed())
      return cmd_oracle(oracle_graphs, oracle_property, oracle_max_nodes, oracle_jobs);
    if (tw->parsed()) return cmd_treewidth(tw_graphs, tw_exact, tw_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
