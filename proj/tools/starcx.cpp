// starcx: command-line front end for the graph complexity toolkit.
//
// Exit codes: 0 success, 2 usage, 3 data error, 4 budget exhausted.

#include "starcx/automorphism.hpp"
#include "starcx/experiments.hpp"
#include "starcx/graph.hpp"
#include "starcx/ibc.hpp"
#include "starcx/recipe.hpp"
#include "starcx/starbar.hpp"
#include "starcx/svg.hpp"
#include "starcx/walker.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

using namespace starcx;

namespace {

constexpr int kExitData = 3;
constexpr int kExitBudget = 4;

class BudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Writes to the named file, or stdout for "" and "-".
void emit(const std::string& path, const std::function<void(std::ostream&)>& body) {
  if (path.empty() || path == "-") {
    body(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  body(out);
  out.close();
  if (!out) throw std::runtime_error("write to " + path + " failed");
}

std::vector<Graph> load_graphs(const std::vector<std::string>& inline_graphs, const std::string& path) {
  std::vector<Graph> graphs;
  for (const auto& g6 : inline_graphs) graphs.push_back(parse_graph6(g6));
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) graphs.push_back(parse_graph6(line));
    }
  }
  if (graphs.empty()) throw std::invalid_argument("no graphs given (pass graph6 strings or --in FILE)");
  return graphs;
}

struct WalkArgs {
  int n = 0;
  int max_s = 0;
  int threads = 1;
  int shards = 0;
  std::string budget;
  std::string out;
  bool verbose = false;
};

int cmd_walk(const WalkArgs& a) {
  WalkOptions opt;
  opt.threads = a.threads;
  opt.shards = a.shards > 0 ? a.shards : a.threads;
  if (!a.budget.empty()) opt.recipe_budget = Natural(a.budget);
  if (a.verbose) opt.log = [](const std::string& msg) { std::cerr << msg << '\n'; };
  const WalkTable table = enumerate(a.n, a.max_s, opt);
  emit(a.out, [&](std::ostream& os) { write_walk_csv(os, table, a.threads); });
  std::cerr << "classes per star count:";
  for (std::size_t s = 0; s < table.class_counts.size(); ++s) std::cerr << ' ' << table.class_counts[s];
  std::cerr << '\n';
  if (!table.complete) {
    throw BudgetExhausted("recipe budget exhausted: table is NOT complete, it covers star counts 0.." +
                          std::to_string(table.completed_s) + " only");
  }
  return 0;
}

struct ErArgs {
  ErConfig config;
  std::string p_mode = "uniform";
  std::string out;
  bool no_check = false;
};

int cmd_er(ErArgs a) {
  a.config.p_mode = a.p_mode == "fixed" ? PMode::Fixed : PMode::Uniform;
  a.config.check = !a.no_check;
  const auto rows = run_er(a.config);
  emit(a.out, [&](std::ostream& os) { write_er_csv(os, rows); });
  std::size_t exhausted = 0;
  std::size_t failed = 0;
  for (const auto& r : rows) {
    if (r.status == "budget_exhausted") ++exhausted;
    else if (r.status != "ok") ++failed;
  }
  std::cerr << rows.size() << " graphs, " << failed << " invariant failures, " << exhausted
            << " budget exhausted\n";
  return failed > 0 ? kExitData : 0;
}

struct AnalyzeArgs {
  std::string csv;
  std::string x;
  std::string y;
  std::string svg;
  int bins = 0;
  bool identity = false;
};

int cmd_analyze(const AnalyzeArgs& a) {
  const CsvTable table = read_csv_file(a.csv);
  const Columns data = numeric_columns(table, a.x, a.y);
  const Analysis result = analyze(data, a.bins);
  std::cout << format_analysis(result, a.x, a.y);
  if (!a.svg.empty()) {
    emit(a.svg, [&](std::ostream& os) {
      os << scatter_svg(data.x, data.y, result.fit, {a.x, a.y, a.identity});
    });
  }
  return 0;
}

struct TableArgs {
  std::string csv;
  std::string row;
  std::string col;
  std::string out;
  std::string expect;
};

int cmd_table(const TableArgs& a) {
  const CsvTable table = read_csv_file(a.csv);
  const Contingency c = contingency(table, a.row, a.col);
  std::cout << format_contingency(c, a.row, a.col);
  if (!a.out.empty()) emit(a.out, [&](std::ostream& os) { write_contingency_csv(os, c, a.row, a.col); });
  if (!a.expect.empty()) {
    const auto deviations = compare_contingency(c, read_expected_counts(read_csv_file(a.expect)));
    std::cout << "deviations from " << a.expect << ": " << deviations.size() << '\n';
    for (const auto& d : deviations) {
      std::cout << "  (" << d.row << ", " << d.column << ") expected " << d.expected << ", got " << d.actual << '\n';
    }
  }
  return 0;
}

struct GraphArgs {
  std::vector<std::string> graphs;
  std::string in;
};

int cmd_aut(const GraphArgs& a) {
  write_csv_row(std::cout, {"graph6", "n", "aut_order", "log2_aut", "canonical_g6", "search_nodes"});
  for (const Graph& g : load_graphs(a.graphs, a.in)) {
    const AutResult r = canonical(g);
    write_csv_row(std::cout, {write_graph6(g), std::to_string(g.order()), to_string(r.aut_order),
                              format_real(log2_natural(r.aut_order)), write_graph6(r.canonical_graph),
                              std::to_string(r.search_nodes)});
  }
  return 0;
}

int cmd_complexity(const GraphArgs& a) {
  write_csv_row(std::cout, {"graph6", "encoding", "ell", "log2_omega", "bits"});
  for (const Graph& g : load_graphs(a.graphs, a.in)) {
    const Natural aut = canonical(g).aut_order;
    for (const ComplexityValue& c : {complexity_linkstring(g, aut), complexity_edgelist(g, aut)}) {
      write_csv_row(std::cout, {write_graph6(g), std::string(encoding_name(c.encoding)), format_real(c.ell),
                                format_real(c.log2_omega), format_real(c.bits)});
    }
  }
  return 0;
}

struct EvalArgs {
  std::string recipe;
  int n = 0;
  bool bits = false;
};

int cmd_eval(const EvalArgs& a) {
  const Recipe r = parse_recipe(a.recipe, a.n);
  const Graph g = evaluate(r, a.n);
  std::cout << "rpn       " << to_rpn(r) << '\n';
  std::cout << "infix     " << to_infix(r) << '\n';
  std::cout << "operators " << r.star_count() << '\n';
  std::cout << "graph6    " << write_graph6(g) << '\n';
  std::cout << "edges     " << g.edge_count() << '\n';
  if (a.bits) std::cout << "bits      " << serialize_bits(r, a.n) << '\n';
  return 0;
}

int cmd_starbar(const GraphArgs& a) {
  write_csv_row(std::cout, {"graph6", "starbar", "starbar_min_complement", "witness_recipe"});
  for (const Graph& g : load_graphs(a.graphs, a.in)) {
    const StarBound b = star_upper_bound(g);
    const int min_c = std::min(b.value, star_upper_bound(complement(g)).value);
    write_csv_row(std::cout, {write_graph6(g), std::to_string(b.value), std::to_string(min_c),
                              b.witness ? to_rpn(*b.witness) : std::string()});
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph complexity toolkit: automorphism-based complexity, star complexity walks and bounds"};
  app.require_subcommand(1);

  WalkArgs walk;
  auto* walk_cmd = app.add_subcommand("walk", "Enumerate all graphs reachable with at most --max-star operators");
  walk_cmd->add_option("--n", walk.n, "Vertex count")->required()->check(CLI::Range(2, 250));
  walk_cmd->add_option("--max-star", walk.max_s, "Largest operator count")->required()->check(CLI::Range(0, 14));
  walk_cmd->add_option("--threads", walk.threads, "Worker threads")->check(CLI::PositiveNumber);
  walk_cmd->add_option("--shards", walk.shards, "Work shards (default: thread count)")->check(CLI::NonNegativeNumber);
  walk_cmd->add_option("--budget", walk.budget, "Largest number of reduced recipes to evaluate");
  walk_cmd->add_option("--out", walk.out, "Output CSV (default stdout)");
  walk_cmd->add_flag("--verbose", walk.verbose, "Progress on stderr");

  ErArgs er;
  auto* er_cmd = app.add_subcommand("er", "Sample Erdos-Renyi graphs and measure them");
  er_cmd->add_option("--n", er.config.n, "Vertex count")->check(CLI::Range(2, kMaxVertices));
  er_cmd->add_option("--count", er.config.count, "Number of graphs")->check(CLI::NonNegativeNumber);
  er_cmd->add_option("--p-mode", er.p_mode, "fixed or uniform (p drawn per graph)")
      ->check(CLI::IsMember({"fixed", "uniform"}));
  er_cmd->add_option("--p", er.config.p, "Edge probability for --p-mode fixed")->check(CLI::Range(0.0, 1.0));
  er_cmd->add_option("--seed", er.config.seed, "Run seed");
  er_cmd->add_option("--threads", er.config.threads, "Worker threads")->check(CLI::PositiveNumber);
  er_cmd->add_option("--node-budget", er.config.canon.node_budget, "Automorphism search node budget per graph");
  er_cmd->add_flag("--no-check", er.no_check, "Skip complement invariant checks");
  er_cmd->add_option("--out", er.out, "Output CSV (default stdout)");

  AnalyzeArgs an;
  auto* an_cmd = app.add_subcommand("analyze", "Correlation and least squares fit of two CSV columns");
  an_cmd->add_option("csv", an.csv, "Input CSV")->required();
  an_cmd->add_option("x", an.x, "x column")->required();
  an_cmd->add_option("y", an.y, "y column")->required();
  an_cmd->add_option("--svg", an.svg, "Write a scatter plot");
  an_cmd->add_option("--bins", an.bins, "Report binned means of y over this many x bins")
      ->check(CLI::NonNegativeNumber);
  an_cmd->add_flag("--identity", an.identity, "Draw the identity line");

  TableArgs tb;
  auto* tb_cmd = app.add_subcommand("table", "Contingency table of two integer CSV columns");
  tb_cmd->add_option("csv", tb.csv, "Input CSV")->required();
  tb_cmd->add_option("row", tb.row, "Row column")->required();
  tb_cmd->add_option("col", tb.col, "Column column")->required();
  tb_cmd->add_option("--out", tb.out, "Also write the table as CSV");
  tb_cmd->add_option("--expect", tb.expect, "Reference counts CSV (row,column,count); lists differing cells");

  GraphArgs aut;
  auto* aut_cmd = app.add_subcommand("aut", "Automorphism group order and canonical form");
  aut_cmd->add_option("graphs", aut.graphs, "graph6 strings");
  aut_cmd->add_option("--in", aut.in, "File with one graph6 per line");

  GraphArgs cx;
  auto* cx_cmd = app.add_subcommand("complexity", "Information-based complexity in both encodings");
  cx_cmd->add_option("graphs", cx.graphs, "graph6 strings");
  cx_cmd->add_option("--in", cx.in, "File with one graph6 per line");

  EvalArgs ev;
  auto* ev_cmd = app.add_subcommand("eval", "Evaluate a recipe such as \"0 1 & 2 |\"");
  ev_cmd->add_option("recipe", ev.recipe, "Recipe in postfix notation")->required();
  ev_cmd->add_option("--n", ev.n, "Vertex count")->required()->check(CLI::Range(2, kMaxVertices));
  ev_cmd->add_flag("--bits", ev.bits, "Print the bit serialization");

  GraphArgs sb;
  auto* sb_cmd = app.add_subcommand("starbar", "Star complexity upper bound with witness recipe");
  sb_cmd->add_option("graphs", sb.graphs, "graph6 strings");
  sb_cmd->add_option("--in", sb.in, "File with one graph6 per line");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*walk_cmd) return cmd_walk(walk);
    if (*er_cmd) return cmd_er(er);
    if (*an_cmd) return cmd_analyze(an);
    if (*tb_cmd) return cmd_table(tb);
    if (*aut_cmd) return cmd_aut(aut);
    if (*cx_cmd) return cmd_complexity(cx);
    if (*ev_cmd) return cmd_eval(ev);
    if (*sb_cmd) return cmd_starbar(sb);
  } catch (const BudgetExhausted& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBudget;
  } catch (const SearchBudgetExhausted& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return 2;
}
