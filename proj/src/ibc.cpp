#include "starcx/ibc.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace starcx {

std::string_view encoding_name(Encoding e) { return e == Encoding::Linkstring ? "linkstring" : "edgelist"; }

double log2_factorial(int k) {
  if (k < 0) throw std::domain_error("log2_factorial: negative argument");
  // Kahan-compensated sum in extended precision.
  long double sum = 0.0L;
  long double carry = 0.0L;
  for (int j = 2; j <= k; ++j) {
    const long double y = std::log2(static_cast<long double>(j)) - carry;
    const long double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  return static_cast<double>(sum);
}

double log2_relabelings(int n, const Natural& aut_order) {
  const Natural total = factorial(n);
  if (aut_order <= 0 || total % aut_order != 0) {
    throw std::logic_error("automorphism group order does not divide n!");
  }
  return log2_natural(total / aut_order);
}

ComplexityValue complexity_linkstring(const Graph& g, const Natural& aut_order) {
  ComplexityValue c;
  c.encoding = Encoding::Linkstring;
  c.ell = static_cast<double>(g.pairs());
  c.log2_omega = log2_relabelings(g.order(), aut_order);
  c.bits = c.ell - c.log2_omega;
  return c;
}

ComplexityValue complexity_linkstring(const Graph& g, const CanonOptions& options) {
  return complexity_linkstring(g, canonical(g, options).aut_order);
}

ComplexityValue complexity_edgelist(const Graph& g, const Natural& aut_order) {
  const int n = g.order();
  if (n < 2) throw std::domain_error("complexity_edgelist: need n >= 2");
  const auto m = static_cast<int>(g.edge_count());
  const int width = std::bit_width(static_cast<unsigned>(n - 1));  // ceil(log2 n)
  ComplexityValue c;
  c.encoding = Encoding::EdgeList;
  c.ell = 2.0 * m * width;
  c.log2_omega = log2_factorial(m) + m + log2_relabelings(n, aut_order);
  c.bits = c.ell - c.log2_omega;
  return c;
}

ComplexityValue complexity_edgelist(const Graph& g, const CanonOptions& options) {
  return complexity_edgelist(g, canonical(g, options).aut_order);
}

}  // namespace starcx
