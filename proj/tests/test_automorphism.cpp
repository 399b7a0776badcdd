#include "support.hpp"

#include "starcx/automorphism.hpp"

#include <doctest.h>

using namespace starcx;

namespace {

Graph cycle(int n) {
  Graph g(n);
  for (int i = 0; i < n; ++i) g.set_edge(i, (i + 1) % n);
  return g;
}

Graph path(int n) {
  Graph g(n);
  for (int i = 0; i + 1 < n; ++i) g.set_edge(i, i + 1);
  return g;
}

Partition unit(int n) {
  Partition p(1);
  for (int v = 0; v < n; ++v) p[0].push_back(v);
  return p;
}

}  // namespace

TEST_CASE("color refinement of P4 separates ends from middle") {
  const Partition p = color_refine(path(4), unit(4));
  REQUIRE(p.size() == 2);
  CHECK(p[0] == std::vector<int>{0, 3});
  CHECK(p[1] == std::vector<int>{1, 2});
}

TEST_CASE("refined partitions are equitable and cover every vertex") {
  Xoshiro256 rng(3);
  for (int t = 0; t < 300; ++t) {
    const int n = 1 + static_cast<int>(rng.next() % 40);
    const Graph g = testing::random_graph(n, rng);
    const Partition p = color_refine(g, unit(n));
    CHECK(is_equitable(g, p));
    std::vector<int> seen(static_cast<std::size_t>(n), 0);
    for (const auto& cell : p) {
      for (int v : cell) ++seen[static_cast<std::size_t>(v)];
    }
    CHECK(std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; }));
  }
  CHECK_FALSE(is_equitable(path(4), unit(4)));
}

TEST_CASE("known automorphism group orders") {
  // Values cross-checked with networkx isomorphism counts.
  const std::vector<std::pair<int, int>> petersen{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {0, 5}, {1, 6}, {2, 7},
                                                  {3, 8}, {4, 9}, {5, 7}, {7, 9}, {9, 6}, {6, 8}, {8, 5}};
  Graph k33(6);
  for (int a = 0; a < 3; ++a) {
    for (int b = 3; b < 6; ++b) k33.set_edge(a, b);
  }
  Graph cube(8);
  for (int v = 0; v < 8; ++v) {
    for (int bit = 1; bit < 8; bit <<= 1) {
      if (v < (v ^ bit)) cube.set_edge(v, v ^ bit);
    }
  }
  CHECK(canonical(cycle(5)).aut_order == 10);
  CHECK(canonical(cycle(6)).aut_order == 12);
  CHECK(canonical(Graph(4)).aut_order == 24);
  CHECK(canonical(Graph::from_edges(10, petersen)).aut_order == 120);
  CHECK(canonical(k33).aut_order == 72);
  CHECK(canonical(cube).aut_order == 48);
  CHECK(canonical(path(7)).aut_order == 2);
  CHECK(canonical(Graph(30)).aut_order == factorial(30));
  CHECK(canonical(Graph::complete(25)).aut_order == factorial(25));
  CHECK(canonical(star(12, 5)).aut_order == factorial(11));
}

TEST_CASE("large symmetric graphs stay cheap") {
  CHECK(canonical(Graph(1000)).aut_order == factorial(1000));
  CHECK(canonical(Graph::complete(1000)).aut_order == factorial(1000));
  Graph matching(200);
  for (int v = 0; v < 200; v += 2) matching.set_edge(v, v + 1);
  // 100 disjoint edges: 100! * 2^100.
  CHECK(canonical(matching).aut_order == factorial(100) * (Natural(1) << 100));
}

TEST_CASE("brute-force oracle") {
  CHECK(brute_force_aut(path(3)) == 2);
  Graph k4e = Graph::complete(4);
  k4e.set_edge(0, 1, false);
  CHECK(brute_force_aut(k4e) == 4);
  CHECK(brute_force_aut(cycle(5)) == 10);
  CHECK_THROWS(brute_force_aut(Graph(9)));
}

TEST_CASE("aut order agrees with brute force on random small graphs") {
  Xoshiro256 rng(99);
  for (int t = 0; t < 300; ++t) {
    const int n = 1 + static_cast<int>(rng.next() % 8);
    const Graph g = testing::random_graph(n, rng);
    CHECK(canonical(g).aut_order == brute_force_aut(g));
  }
}

TEST_CASE("canonical form is a labeling-invariant relabeling") {
  Xoshiro256 rng(5);
  for (int t = 0; t < 300; ++t) {
    const int n = 1 + static_cast<int>(rng.next() % 30);
    const Graph g = testing::random_graph(n, rng);
    const AutResult a = canonical(g);
    CHECK(permute(g, a.canonical_perm) == a.canonical_graph);
    const Graph h = permute(g, testing::random_perm(n, rng));
    const AutResult b = canonical(h);
    CHECK(b.canonical_graph == a.canonical_graph);
    CHECK(b.aut_order == a.aut_order);
    CHECK(canonical(complement(g)).aut_order == a.aut_order);
  }
}

TEST_CASE("canonical forms separate exactly the isomorphism classes") {
  Xoshiro256 rng(17);
  for (int t = 0; t < 200; ++t) {
    const int n = 2 + static_cast<int>(rng.next() % 5);
    // Sparse edits of one base graph give many near-isomorphic pairs.
    const Graph a = testing::random_graph(n, rng);
    Graph b = permute(a, testing::random_perm(n, rng));
    if (rng.next() % 2 == 0) {
      const int i = static_cast<int>(rng.next() % static_cast<std::uint64_t>(n));
      const int j = (i + 1) % n;
      b.set_edge(i, j, !b.has_edge(i, j));
    }
    const bool same = canonical(a).canonical_graph == canonical(b).canonical_graph;
    CHECK(same == (brute_force_canonical(a) == brute_force_canonical(b)));
  }
}

TEST_CASE("search budget") {
  const std::vector<std::pair<int, int>> petersen{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {0, 5}, {1, 6}, {2, 7},
                                                  {3, 8}, {4, 9}, {5, 7}, {7, 9}, {9, 6}, {6, 8}, {8, 5}};
  CanonOptions tight;
  tight.node_budget = 1;
  CHECK_THROWS_AS(canonical(Graph::from_edges(10, petersen), tight), SearchBudgetExhausted);
}
