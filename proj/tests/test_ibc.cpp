#include "support.hpp"

#include "starcx/ibc.hpp"

#include <doctest.h>

#include <cmath>

using namespace starcx;

TEST_CASE("linkstring complexity of small graphs") {
  const ComplexityValue k3 = complexity_linkstring(Graph::complete(3));
  CHECK(k3.ell == 3.0);
  CHECK(k3.log2_omega == 0.0);
  CHECK(k3.bits == 3.0);

  Graph p3(3);
  p3.set_edge(0, 1);
  p3.set_edge(1, 2);
  CHECK(complexity_linkstring(p3).bits == doctest::Approx(3.0 - std::log2(3.0)).epsilon(1e-12));
}

TEST_CASE("edge-list complexity") {
  Graph e(3);
  e.set_edge(0, 1);
  // ell = 2 * 1 * ceil(log2 3) = 4; omega = 1! * 2 * 3!/2 = 6.
  const ComplexityValue c = complexity_edgelist(e);
  CHECK(c.ell == 4.0);
  CHECK(c.bits == doctest::Approx(4.0 - std::log2(6.0)).epsilon(1e-12));
  CHECK(complexity_edgelist(Graph(5)).bits == 0.0);
  // n = 4 needs exactly two bits per endpoint.
  Graph f(4);
  f.set_edge(0, 1);
  CHECK(complexity_edgelist(f).ell == 4.0);
  Graph g(5);
  g.set_edge(0, 1);
  CHECK(complexity_edgelist(g).ell == 6.0);
}

TEST_CASE("log2 factorial") {
  CHECK(log2_factorial(0) == 0.0);
  CHECK(log2_factorial(1) == 0.0);
  CHECK(log2_factorial(5) == doctest::Approx(std::log2(120.0)).epsilon(1e-14));
  // log2(1000!) from mpmath.
  CHECK(log2_factorial(1000) == doctest::Approx(8529.39800420477).epsilon(1e-13));
}

TEST_CASE("log2_relabelings rejects non-divisors") {
  CHECK(log2_relabelings(4, 24) == 0.0);
  CHECK(log2_relabelings(4, 2) == doctest::Approx(std::log2(12.0)));
  CHECK_THROWS(log2_relabelings(4, 5));
}

TEST_CASE("complexity is complement invariant and bounded") {
  Xoshiro256 rng(31);
  for (int t = 0; t < 200; ++t) {
    const int n = 2 + static_cast<int>(rng.next() % 40);
    const Graph g = testing::random_graph(n, rng);
    const ComplexityValue c = complexity_linkstring(g);
    CHECK(c.bits == complexity_linkstring(complement(g)).bits);
    CHECK(c.bits >= 0.0);
    CHECK(c.bits <= static_cast<double>(pair_count(n)));
  }
  for (int n : {2, 7, 40}) {
    CHECK(complexity_linkstring(Graph(n)).bits == static_cast<double>(pair_count(n)));
    CHECK(complexity_linkstring(Graph::complete(n)).bits == static_cast<double>(pair_count(n)));
  }
  Graph p3(3);
  p3.set_edge(0, 1);
  CHECK(complexity_linkstring(p3).bits < 3.0);
}
