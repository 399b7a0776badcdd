#pragma once

#include "starcx/graph.hpp"
#include "starcx/natural.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace starcx {

/// Ordered list of disjoint cells covering every vertex. Members of a cell are
/// kept in ascending vertex order; cell order carries meaning.
using Partition = std::vector<std::vector<int>>;

/// The individualization-refinement search hit its node budget. No partial
/// answer is ever returned.
class SearchBudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct AutResult {
  /// canonical_perm[v] is the label vertex v receives in the canonical form.
  std::vector<int> canonical_perm;
  Graph canonical_graph;
  Natural aut_order;
  std::uint64_t search_nodes = 0;
};

struct CanonOptions {
  std::uint64_t node_budget = 10'000'000;
};

/// Coarsest equitable partition refining `initial`. Each split orders the
/// fragments of a cell by ascending neighbour count into the splitter.
Partition color_refine(const Graph& g, const Partition& initial);

/// True when every vertex of each cell has the same number of neighbours in
/// every cell.
bool is_equitable(const Graph& g, const Partition& p);

/// Canonical labeling and exact automorphism group order.
AutResult canonical(const Graph& g, const CanonOptions& options = {});

/// Counts permutations fixing g by exhaustive iteration; refuses n > 8.
Natural brute_force_aut(const Graph& g);

/// Lexicographically smallest linkstring over all n! relabelings; refuses n > 8.
Graph brute_force_canonical(const Graph& g);

}  // namespace starcx
