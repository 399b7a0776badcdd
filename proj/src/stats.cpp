#include "starcx/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace starcx {

namespace {

void check_pair(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("columns differ in length");
  if (x.size() < 2) throw UndefinedCorrelation("need at least two observations");
}

struct Moments {
  double mean_x = 0.0;
  double mean_y = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
};

// Two-pass centred sums.
Moments moments(std::span<const double> x, std::span<const double> y) {
  Moments m;
  const auto n = static_cast<double>(x.size());
  m.mean_x = std::accumulate(x.begin(), x.end(), 0.0) / n;
  m.mean_y = std::accumulate(y.begin(), y.end(), 0.0) / n;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - m.mean_x;
    const double dy = y[i] - m.mean_y;
    m.sxx += dx * dx;
    m.syy += dy * dy;
    m.sxy += dx * dy;
  }
  return m;
}

bool constant(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [&](double a) { return a == v.front(); });
}

}  // namespace

double pearson(std::span<const double> x, std::span<const double> y) {
  check_pair(x, y);
  if (constant(x) || constant(y)) throw UndefinedCorrelation("undefined correlation: a column has zero variance");
  const Moments m = moments(x, y);
  return std::clamp(m.sxy / std::sqrt(m.sxx * m.syy), -1.0, 1.0);
}

std::vector<double> ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> r(values.size());
  for (std::size_t lo = 0; lo < order.size();) {
    std::size_t hi = lo;
    while (hi < order.size() && values[order[hi]] == values[order[lo]]) ++hi;
    const double avg = (static_cast<double>(lo + 1) + static_cast<double>(hi)) / 2.0;
    for (std::size_t k = lo; k < hi; ++k) r[order[k]] = avg;
    lo = hi;
  }
  return r;
}

double spearman(std::span<const double> x, std::span<const double> y) {
  check_pair(x, y);
  const auto rx = ranks(x);
  const auto ry = ranks(y);
  return pearson(rx, ry);
}

FitResult fit(std::span<const double> x, std::span<const double> y) {
  FitResult f;
  f.rho = pearson(x, y);
  f.spearman = spearman(x, y);
  const Moments m = moments(x, y);
  f.slope = m.sxy / m.sxx;
  f.intercept = m.mean_y - f.slope * m.mean_x;
  f.count = x.size();
  return f;
}

std::vector<Bin> binned_means(std::span<const double> x, std::span<const double> y, int bins) {
  if (bins < 1) throw std::invalid_argument("binned_means: need at least one bin");
  if (x.size() != y.size()) throw std::invalid_argument("columns differ in length");
  if (x.empty()) return {};
  const auto [lo_it, hi_it] = std::minmax_element(x.begin(), x.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  const double width = hi > lo ? (hi - lo) / bins : 1.0;
  std::vector<Bin> out(static_cast<std::size_t>(bins));
  std::vector<double> sums(static_cast<std::size_t>(bins), 0.0);
  for (int b = 0; b < bins; ++b) {
    out[static_cast<std::size_t>(b)].x_low = lo + b * width;
    out[static_cast<std::size_t>(b)].x_high = lo + (b + 1) * width;
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    auto b = static_cast<int>((x[i] - lo) / width);
    b = std::clamp(b, 0, bins - 1);
    sums[static_cast<std::size_t>(b)] += y[i];
    ++out[static_cast<std::size_t>(b)].count;
  }
  std::vector<Bin> kept;
  for (std::size_t b = 0; b < out.size(); ++b) {
    if (out[b].count == 0) continue;
    out[b].mean_y = sums[b] / static_cast<double>(out[b].count);
    kept.push_back(out[b]);
  }
  return kept;
}

bool nondecreasing(const std::vector<Bin>& bins) {
  for (std::size_t b = 1; b < bins.size(); ++b) {
    if (bins[b].mean_y < bins[b - 1].mean_y) return false;
  }
  return true;
}

void Contingency::add(long row, long column) {
  ++cells[{row, column}];
  ++row_totals[row];
  ++column_totals[column];
  ++total;
}

std::size_t Contingency::at(long row, long column) const {
  auto it = cells.find({row, column});
  return it == cells.end() ? 0 : it->second;
}

}  // namespace starcx
