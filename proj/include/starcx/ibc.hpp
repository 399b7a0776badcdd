#pragma once

#include "starcx/automorphism.hpp"
#include "starcx/graph.hpp"

#include <string_view>

namespace starcx {

enum class Encoding { Linkstring, EdgeList };

std::string_view encoding_name(Encoding e);

/// Information-based complexity of a graph: description length minus the
/// log2 count of equally long descriptions naming the same unlabeled graph.
/// No header term for n is included.
struct ComplexityValue {
  double bits = 0.0;
  double ell = 0.0;
  double log2_omega = 0.0;
  Encoding encoding = Encoding::Linkstring;
};

/// sum_{j=2..k} log2 j, accumulated in long double.
double log2_factorial(int k);

/// log2(n! / |Aut(G)|), evaluated on exact integers.
double log2_relabelings(int n, const Natural& aut_order);

/// ell = n(n-1)/2, omega = n!/|Aut(G)|. Invariant under complement.
ComplexityValue complexity_linkstring(const Graph& g, const CanonOptions& options = {});
ComplexityValue complexity_linkstring(const Graph& g, const Natural& aut_order);

/// ell = 2|E| ceil(log2 n); omega = |E|! 2^|E| n!/|Aut(G)| (edge orders,
/// endpoint orientations and relabelings all give distinct strings).
ComplexityValue complexity_edgelist(const Graph& g, const CanonOptions& options = {});
ComplexityValue complexity_edgelist(const Graph& g, const Natural& aut_order);

}  // namespace starcx
