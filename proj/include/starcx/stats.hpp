#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace starcx {

/// A correlation or fit is undefined because one column has zero variance.
class UndefinedCorrelation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct FitResult {
  double rho = 0.0;       // Pearson
  double spearman = 0.0;  // Pearson on average ranks
  double slope = 0.0;     // least squares y = slope * x + intercept
  double intercept = 0.0;
  std::size_t count = 0;
};

double pearson(std::span<const double> x, std::span<const double> y);
/// Average ranks (1-based), ties sharing the mean of their positions.
std::vector<double> ranks(std::span<const double> values);
double spearman(std::span<const double> x, std::span<const double> y);
FitResult fit(std::span<const double> x, std::span<const double> y);

struct Bin {
  double x_low = 0.0;
  double x_high = 0.0;
  double mean_y = 0.0;
  std::size_t count = 0;
};

/// Equal-width bins over the x range; empty bins are dropped.
std::vector<Bin> binned_means(std::span<const double> x, std::span<const double> y, int bins);
bool nondecreasing(const std::vector<Bin>& bins);

/// Sparse two-way table of integer-valued observations.
struct Contingency {
  std::map<std::pair<long, long>, std::size_t> cells;
  std::map<long, std::size_t> row_totals;
  std::map<long, std::size_t> column_totals;
  std::size_t total = 0;

  void add(long row, long column);
  std::size_t at(long row, long column) const;
};

}  // namespace starcx
