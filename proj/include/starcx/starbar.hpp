#pragma once

#include "starcx/graph.hpp"
#include "starcx/recipe.hpp"

#include <algorithm>
#include <optional>
#include <vector>

namespace starcx {

/// One piece of the upper-bound cover.
struct CoverTerm {
  enum class Kind { FullStar, Biclique };

  Kind kind = Kind::FullStar;
  int hub = -1;             // FullStar
  std::vector<int> left;    // Biclique side A
  std::vector<int> right;   // Biclique side B
  int op_cost = 0;          // 0 for a star, |A| + |B| - 1 for a biclique
};

struct StarBound {
  int value = 0;
  /// Recipe with exactly `value` operators evaluating to the input graph.
  /// Absent only for the empty graph on two vertices, which no recipe builds.
  std::optional<Recipe> witness;
  std::vector<CoverTerm> terms;
};

/// Upper bound on star complexity: every full-degree vertex contributes its
/// star, and the remaining edges are covered by bicliques
/// (S_a1 | S_a2 | ...) & (S_b1 | S_b2 | ...). Each step groups vertices by
/// identical uncovered neighbourhood and takes the class whose neighbourhood
/// is largest (smallest vertex id on ties). The witness is always evaluated
/// and checked before returning.
StarBound star_upper_bound(const Graph& g);

/// min(f(g), f(complement(g))).
template <typename Measure>
auto complement_min(const Graph& g, Measure&& f) {
  auto a = f(g);
  auto b = f(complement(g));
  return std::min(a, b);
}

}  // namespace starcx
