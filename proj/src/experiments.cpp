#include "starcx/experiments.hpp"

#include "parallel.hpp"
#include "starcx/graph.hpp"
#include "starcx/ibc.hpp"
#include "starcx/natural.hpp"
#include "starcx/rng.hpp"
#include "starcx/starbar.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace starcx {

namespace {

std::string optional_real(const std::optional<double>& v) { return v ? format_real(*v) : std::string(); }

double parse_real(const std::string& cell, const std::string& column, std::size_t row) {
  double v = 0.0;
  const char* end = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(cell.data(), end, v);
  if (ec != std::errc{} || ptr != end || !std::isfinite(v)) {
    throw ParseError("column '" + column + "': not a finite number: '" + cell + "'", row);
  }
  return v;
}

long parse_integer(const std::string& cell, const std::string& column, std::size_t row) {
  const double v = parse_real(cell, column, row);
  if (v != std::floor(v) || std::fabs(v) > 9.0e15) {
    throw ParseError("column '" + column + "': not an integer: '" + cell + "'", row);
  }
  return static_cast<long>(v);
}

}  // namespace

std::vector<std::string> walk_csv_header() {
  return {"canonical_g6", "star", "omega_star", "c_star_bits", "c_linkstring_bits", "starbar", "witness_recipe"};
}

void write_walk_csv(std::ostream& os, const WalkTable& table, int threads) {
  std::vector<std::vector<std::string>> rows(table.records.size());
  detail::parallel_for(static_cast<int>(rows.size()), threads, [&](int i) {
    const WalkRecord& r = table.records[static_cast<std::size_t>(i)];
    const ComplexityValue c = complexity_linkstring(r.canonical);
    const StarBound bound = star_upper_bound(r.canonical);
    rows[static_cast<std::size_t>(i)] = {write_graph6(r.canonical), std::to_string(r.star), to_string(r.omega_star),
                                         format_real(r.c_star_bits),  format_real(c.bits),     std::to_string(bound.value),
                                         to_rpn(r.witness)};
  });
  write_csv_row(os, walk_csv_header());
  for (const auto& row : rows) write_csv_row(os, row);
}

std::uint64_t er_graph_seed(std::uint64_t seed, int id) {
  return SplitMix64(seed + static_cast<std::uint64_t>(id) * 0x9e3779b97f4a7c15ULL).next();
}

double er_probability(const ErConfig& config, int id) {
  if (config.p_mode == PMode::Fixed) return config.p;
  return Xoshiro256(~er_graph_seed(config.seed, id)).next_unit();
}

std::vector<ErRow> run_er(const ErConfig& config) {
  if (config.n < 2 || config.n > kMaxVertices) throw DimensionError("er: n must lie in [2, 1024]");
  if (config.count < 0) throw std::invalid_argument("er: count must be non-negative");
  if (config.p_mode == PMode::Fixed && !(config.p >= 0.0 && config.p <= 1.0)) {
    throw std::domain_error("er: p must lie in [0, 1]");
  }
  std::vector<ErRow> rows(static_cast<std::size_t>(config.count));
  detail::parallel_for(config.count, config.threads, [&](int id) {
    ErRow& row = rows[static_cast<std::size_t>(id)];
    row.id = id;
    row.n = config.n;
    row.seed = er_graph_seed(config.seed, id);
    row.p = er_probability(config, id);
    const Graph g = er_random(config.n, row.p, row.seed);
    const Graph gc = complement(g);
    row.graph6 = write_graph6(g);
    row.edges = g.edge_count();

    const StarBound bound = star_upper_bound(g);
    row.starbar = bound.value;
    row.starbar_min_complement = std::min(bound.value, star_upper_bound(gc).value);

    try {
      const AutResult aut = canonical(g, config.canon);
      row.log2_aut = log2_natural(aut.aut_order);
      const ComplexityValue link = complexity_linkstring(g, aut.aut_order);
      row.c_linkstring_bits = link.bits;
      row.c_edgelist_bits = complexity_edgelist(g, aut.aut_order).bits;
      if (!config.check) return;

      std::vector<std::string> failures;
      const AutResult aut_c = canonical(gc, config.canon);
      if (aut_c.aut_order != aut.aut_order) failures.push_back("complement aut order differs");
      if (complexity_linkstring(gc, aut_c.aut_order).bits != link.bits) {
        failures.push_back("complement C_linkstring differs");
      }
      const double bound_bits = static_cast<double>(pair_count(config.n));
      if (!(link.bits >= 0.0 && link.bits <= bound_bits)) failures.push_back("C_linkstring outside [0, n(n-1)/2]");
      if (!failures.empty()) {
        row.status = "invariant_failed:";
        for (const auto& f : failures) row.status += " " + f + ";";
      }
    } catch (const SearchBudgetExhausted&) {
      row.status = "budget_exhausted";
    }
  });
  return rows;
}

std::vector<std::string> er_csv_header() {
  return {"id",
          "graph6",
          "n",
          "edges",
          "p",
          "seed",
          "log2_aut",
          "c_linkstring_bits",
          "c_edgelist_bits",
          "star",
          "omega_star",
          "c_star_bits",
          "starbar",
          "starbar_min_complement",
          "status"};
}

void write_er_csv(std::ostream& os, const std::vector<ErRow>& rows) {
  write_csv_row(os, er_csv_header());
  for (const ErRow& r : rows) {
    write_csv_row(os, {std::to_string(r.id), r.graph6, std::to_string(r.n), std::to_string(r.edges), format_real(r.p),
                       std::to_string(r.seed), optional_real(r.log2_aut), optional_real(r.c_linkstring_bits),
                       optional_real(r.c_edgelist_bits), "", "", "", std::to_string(r.starbar),
                       std::to_string(r.starbar_min_complement), r.status});
  }
}

Columns numeric_columns(const CsvTable& table, const std::string& x_col, const std::string& y_col) {
  const std::size_t xi = table.column(x_col);
  const std::size_t yi = table.column(y_col);
  Columns out;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    if (row[xi].empty() || row[yi].empty()) {
      ++out.skipped;
      continue;
    }
    out.x.push_back(parse_real(row[xi], x_col, r + 2));
    out.y.push_back(parse_real(row[yi], y_col, r + 2));
  }
  return out;
}

Analysis analyze(const Columns& data, int bins) {
  Analysis a;
  a.fit = fit(data.x, data.y);
  a.skipped = data.skipped;
  if (bins > 0) {
    a.bins = binned_means(data.x, data.y, bins);
    a.monotone = nondecreasing(a.bins);
  }
  return a;
}

std::string format_analysis(const Analysis& a, const std::string& x_col, const std::string& y_col) {
  std::ostringstream os;
  os << "x = " << x_col << ", y = " << y_col << '\n';
  os << "count     " << a.fit.count << '\n';
  if (a.skipped > 0) os << "skipped   " << a.skipped << " rows with empty cells\n";
  os << "pearson   " << format_real(a.fit.rho) << '\n';
  os << "spearman  " << format_real(a.fit.spearman) << '\n';
  os << "slope     " << format_real(a.fit.slope) << '\n';
  os << "intercept " << format_real(a.fit.intercept) << '\n';
  if (!a.bins.empty()) {
    os << "binned means of y over x:\n";
    for (const Bin& b : a.bins) {
      os << "  [" << format_real(b.x_low) << ", " << format_real(b.x_high) << ")  n=" << b.count
         << "  mean=" << format_real(b.mean_y) << '\n';
    }
    os << "monotone nondecreasing: " << (a.monotone ? "yes" : "no") << '\n';
  }
  return os.str();
}

Contingency contingency(const CsvTable& table, const std::string& row_col, const std::string& col_col) {
  Contingency c;
  if (table.header.empty()) return c;
  const std::size_t ri = table.column(row_col);
  const std::size_t ci = table.column(col_col);
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    if (row[ri].empty() || row[ci].empty()) continue;
    c.add(parse_integer(row[ri], row_col, r + 2), parse_integer(row[ci], col_col, r + 2));
  }
  return c;
}

std::string format_contingency(const Contingency& c, const std::string& row_col, const std::string& col_col) {
  std::ostringstream os;
  os << "rows: " << row_col << ", columns: " << col_col << ", total " << c.total << '\n';
  if (c.total == 0) return os.str();
  auto pad = [](const std::string& s, std::size_t w) { return std::string(w > s.size() ? w - s.size() : 0, ' ') + s; };
  constexpr std::size_t w = 6;
  os << pad("", w);
  for (const auto& [col, total] : c.column_totals) os << pad(std::to_string(col), w);
  os << pad("total", w + 2) << '\n';
  for (const auto& [row, total] : c.row_totals) {
    os << pad(std::to_string(row), w);
    for (const auto& [col, unused] : c.column_totals) {
      const std::size_t v = c.at(row, col);
      os << pad(v == 0 ? "." : std::to_string(v), w);
    }
    os << pad(std::to_string(total), w + 2) << '\n';
  }
  os << pad("total", w);
  for (const auto& [col, total] : c.column_totals) os << pad(std::to_string(total), w);
  os << pad(std::to_string(c.total), w + 2) << '\n';
  return os.str();
}

void write_contingency_csv(std::ostream& os, const Contingency& c, const std::string& row_col,
                           const std::string& col_col) {
  write_csv_row(os, {row_col, col_col, "count"});
  for (const auto& [key, count] : c.cells) {
    write_csv_row(os, {std::to_string(key.first), std::to_string(key.second), std::to_string(count)});
  }
  for (const auto& [row, count] : c.row_totals) write_csv_row(os, {std::to_string(row), "total", std::to_string(count)});
  for (const auto& [col, count] : c.column_totals) {
    write_csv_row(os, {"total", std::to_string(col), std::to_string(count)});
  }
  if (c.total > 0) write_csv_row(os, {"total", "total", std::to_string(c.total)});
}

Contingency read_expected_counts(const CsvTable& table) {
  if (table.header.size() < 3) throw ParseError("expected counts need row,column,count columns", 1);
  Contingency c;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    if (row[0] == "total" || row[1] == "total") continue;
    const long a = parse_integer(row[0], table.header[0], r + 2);
    const long b = parse_integer(row[1], table.header[1], r + 2);
    const long k = parse_integer(row[2], table.header[2], r + 2);
    if (k < 0) throw ParseError("negative count", r + 2);
    for (long i = 0; i < k; ++i) c.add(a, b);
  }
  return c;
}

std::vector<CellDeviation> compare_contingency(const Contingency& actual, const Contingency& expected) {
  std::set<std::pair<long, long>> keys;
  for (const auto& [key, count] : actual.cells) keys.insert(key);
  for (const auto& [key, count] : expected.cells) keys.insert(key);
  std::vector<CellDeviation> out;
  for (const auto& key : keys) {
    const std::size_t a = actual.at(key.first, key.second);
    const std::size_t e = expected.at(key.first, key.second);
    if (a != e) out.push_back({key.first, key.second, e, a});
  }
  return out;
}

}  // namespace starcx
