#pragma once

#include "starcx/automorphism.hpp"
#include "starcx/csv.hpp"
#include "starcx/stats.hpp"
#include "starcx/walker.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace starcx {

// ---- walk ----------------------------------------------------------------

std::vector<std::string> walk_csv_header();

/// One CSV row per record, in table order. C_linkstring and the star-bar
/// value are computed on the canonical representative.
void write_walk_csv(std::ostream& os, const WalkTable& table, int threads = 1);

// ---- Erdos-Renyi sampling ------------------------------------------------

enum class PMode { Fixed, Uniform };

struct ErConfig {
  int n = 100;
  int count = 100;
  PMode p_mode = PMode::Uniform;
  double p = 0.5;  // used when p_mode is Fixed
  std::uint64_t seed = 1;
  int threads = 1;
  /// Also canonicalize the complement and check the complexity invariants.
  bool check = true;
  CanonOptions canon;
};

/// Seed of graph `id`: first SplitMix64 output of seed + id * golden gamma.
std::uint64_t er_graph_seed(std::uint64_t seed, int id);
/// Edge probability of graph `id` under the config.
double er_probability(const ErConfig& config, int id);

struct ErRow {
  int id = 0;
  std::string graph6;
  int n = 0;
  std::size_t edges = 0;
  double p = 0.0;
  std::uint64_t seed = 0;
  /// Empty when the automorphism search ran out of budget.
  std::optional<double> log2_aut;
  std::optional<double> c_linkstring_bits;
  std::optional<double> c_edgelist_bits;
  int starbar = 0;
  int starbar_min_complement = 0;
  /// "ok", "budget_exhausted", or "invariant_failed: ..." .
  std::string status = "ok";
};

/// Rows in id order whatever the thread count.
std::vector<ErRow> run_er(const ErConfig& config);

std::vector<std::string> er_csv_header();
void write_er_csv(std::ostream& os, const std::vector<ErRow>& rows);

// ---- analysis ------------------------------------------------------------

/// Numeric column pair from a CSV; rows where either cell is empty are skipped.
struct Columns {
  std::vector<double> x;
  std::vector<double> y;
  std::size_t skipped = 0;
};

Columns numeric_columns(const CsvTable& table, const std::string& x_col, const std::string& y_col);

struct Analysis {
  FitResult fit;
  std::vector<Bin> bins;
  bool monotone = true;
  std::size_t skipped = 0;
};

/// Throws UndefinedCorrelation for a constant column.
Analysis analyze(const Columns& data, int bins);
std::string format_analysis(const Analysis& a, const std::string& x_col, const std::string& y_col);

// ---- contingency tables --------------------------------------------------

Contingency contingency(const CsvTable& table, const std::string& row_col, const std::string& col_col);
std::string format_contingency(const Contingency& c, const std::string& row_col, const std::string& col_col);
/// Long format: row,column,count plus marginal rows tagged "total".
void write_contingency_csv(std::ostream& os, const Contingency& c, const std::string& row_col,
                           const std::string& col_col);

/// Reads a row,column,count CSV (the first three columns) into a table.
Contingency read_expected_counts(const CsvTable& table);

struct CellDeviation {
  long row = 0;
  long column = 0;
  std::size_t expected = 0;
  std::size_t actual = 0;
};

/// Every cell whose counts differ, sorted by (row, column).
std::vector<CellDeviation> compare_contingency(const Contingency& actual, const Contingency& expected);

}  // namespace starcx
