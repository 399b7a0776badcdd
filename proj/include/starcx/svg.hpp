#pragma once

#include "starcx/stats.hpp"

#include <optional>
#include <span>
#include <string>

namespace starcx {

struct ScatterStyle {
  std::string x_label;
  std::string y_label;
  /// Green y = x line over the shared data range.
  bool identity_line = false;
};

/// 800x600 scatter plot: radius-2 points, min/max axis ticks, red least
/// squares line clipped to the x range of the data. Output depends only on
/// the inputs.
std::string scatter_svg(std::span<const double> x, std::span<const double> y, const std::optional<FitResult>& fit,
                        const ScatterStyle& style);

}  // namespace starcx
