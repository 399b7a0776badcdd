#pragma once

#include "starcx/graph.hpp"
#include "starcx/natural.hpp"
#include "starcx/recipe.hpp"

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace starcx {

/// One isomorphism class reached by the walk.
struct WalkRecord {
  Graph canonical;
  /// Minimal operator count over all recipes producing the class.
  int star = 0;
  /// Number of labeled recipes with `star` operators producing the class.
  Natural omega_star;
  /// Lexicographically smallest such recipe (symbol codes, see Symbol::code).
  Recipe witness;
  double c_star_bits = 0.0;
  /// c_star_bits used the s = 0 continuous extension of the code length.
  bool c_star_extended = false;
};

struct WalkTable {
  int n = 0;
  int max_s = 0;
  /// False when the recipe budget stopped the sweep early; the table then
  /// covers only star counts 0..completed_s.
  bool complete = true;
  int completed_s = -1;
  /// Sorted by (star, canonical linkstring).
  std::vector<WalkRecord> records;
  /// class_counts[s] = number of classes whose star count is s.
  std::vector<std::size_t> class_counts;
  /// Symmetry-reduced recipes evaluated at each s.
  std::vector<Natural> recipes_walked;

  const WalkRecord* find(const Graph& canonical_form) const;
};

struct WalkOptions {
  int shards = 1;
  int threads = 1;
  /// Stop before any s whose enumeration would push the running total of
  /// reduced recipes past this budget.
  Natural recipe_budget = Natural(std::numeric_limits<std::uint64_t>::max());
  std::function<void(const std::string&)> log;
};

/// Exhaustive walk over recipes with 0..max_s operators, push indices in
/// first-use order, each reduced recipe standing for n!/(n-u)! labeled ones
/// (u = distinct hubs). Output does not depend on shards or threads.
WalkTable enumerate(int n, int max_s, const WalkOptions& options = {});

/// Reduced recipes with s operators: RGS(s+1, <= n values) * Catalan(s) * 2^s.
Natural enumeration_size(int n, int s);

Natural catalan(int s);
/// Restricted growth strings of the given length using at most max_values values.
Natural restricted_growth_count(int length, int max_values);

/// Code length of the record's star count minus log2 of its multiplicity.
double cstar(const WalkRecord& record, int n);

/// Unreduced oracle: every index sequence in [0, n)^(s+1), classes keyed by
/// brute-force canonical form. Refuses n > 4 or max_s > 3.
WalkTable brute_force_enumerate(int n, int max_s);

}  // namespace starcx
