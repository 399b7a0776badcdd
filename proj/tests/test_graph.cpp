#include "support.hpp"

#include "starcx/graph.hpp"
#include "starcx/rng.hpp"

#include <doctest.h>

#include <cmath>

using namespace starcx;

TEST_CASE("pair_index enumerates the upper triangle row by row") {
  for (int n = 2; n <= 40; ++n) {
    std::size_t k = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        CHECK(pair_index(i, j, n) == k);
        CHECK(pair_index(j, i, n) == k);
        ++k;
      }
    }
    CHECK(k == pair_count(n));
  }
}

TEST_CASE("stars") {
  const Graph s = star(10, 3);
  CHECK(s.edge_count() == 9);
  CHECK(s.degree(3) == 9);
  for (int v = 0; v < 10; ++v) {
    if (v != 3) CHECK(s.degree(v) == 1);
  }
  CHECK_THROWS_AS(star(10, 10), std::out_of_range);
}

TEST_CASE("set operations satisfy the Boolean identities") {
  Xoshiro256 rng(7);
  for (int t = 0; t < 200; ++t) {
    const int n = 2 + static_cast<int>(rng.next() % 70);
    const Graph a = testing::random_graph(n, rng);
    const Graph b = testing::random_graph(n, rng);
    CHECK(complement(complement(a)) == a);
    CHECK(graph_union(a, complement(a)) == Graph::complete(n));
    CHECK(graph_intersection(a, complement(a)) == Graph(n));
    CHECK(complement(graph_union(a, b)) == graph_intersection(complement(a), complement(b)));
    CHECK(a.edge_count() + complement(a).edge_count() == pair_count(n));
    CHECK(graph_union(a, b) == graph_union(b, a));
  }
  CHECK_THROWS_AS(graph_union(Graph(3), Graph(4)), DimensionError);
}

TEST_CASE("linkstring order") {
  Graph a(4);
  Graph b(4);
  b.set_edge(2, 3);
  CHECK(a.linkstring() == "000000");
  CHECK(b.linkstring() == "000001");
  CHECK(compare_linkstrings(a, b) < 0);
  a.set_edge(0, 1);
  CHECK(compare_linkstrings(a, b) > 0);
}

TEST_CASE("permute moves vertex v to perm[v]") {
  Graph g(4);
  g.set_edge(0, 1);
  const std::vector<int> perm{2, 3, 0, 1};
  const Graph h = permute(g, perm);
  CHECK(h.has_edge(2, 3));
  CHECK(h.edge_count() == 1);

  Xoshiro256 rng(11);
  for (int t = 0; t < 50; ++t) {
    const int n = 1 + static_cast<int>(rng.next() % 30);
    const Graph x = testing::random_graph(n, rng);
    const auto p = testing::random_perm(n, rng);
    std::vector<int> inv(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) inv[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
    CHECK(permute(permute(x, p), inv) == x);
  }
}

TEST_CASE("graph6 matches reference encodings") {
  // Strings produced by networkx.to_graph6_bytes.
  auto path = [](int n) {
    Graph g(n);
    for (int i = 0; i + 1 < n; ++i) g.set_edge(i, i + 1);
    return g;
  };
  Graph c5 = path(5);
  c5.set_edge(4, 0);
  Graph star7(7);
  for (int v = 1; v < 7; ++v) star7.set_edge(0, v);
  const std::vector<std::pair<int, int>> petersen_edges{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}, {0, 5}, {1, 6}, {2, 7},
                                                        {3, 8}, {4, 9}, {5, 7}, {7, 9}, {9, 6}, {6, 8}, {8, 5}};
  Graph big(70);
  big.set_edge(0, 69);

  CHECK(write_graph6(Graph::complete(3)) == "Bw");
  CHECK(write_graph6(Graph(1)) == "@");
  CHECK(write_graph6(path(4)) == "Ch");
  CHECK(write_graph6(c5) == "Dhc");
  CHECK(write_graph6(Graph::complete(4)) == "C~");
  CHECK(write_graph6(Graph(5)) == "D??");
  CHECK(write_graph6(star7) == "FsaC?");
  CHECK(write_graph6(Graph::from_edges(10, petersen_edges)) == "IheA@GUAo");
  CHECK(write_graph6(big).substr(0, 8) == "~?@E????");
  CHECK(parse_graph6("IheA@GUAo") == Graph::from_edges(10, petersen_edges));
  CHECK(parse_graph6(">>graph6<<Bw") == Graph::complete(3));
  CHECK(parse_graph6(write_graph6(big)) == big);
}

TEST_CASE("graph6 and edge list round trips") {
  Xoshiro256 rng(2024);
  for (int t = 0; t < 1000; ++t) {
    const int n = 1 + static_cast<int>(rng.next() % 100);
    const Graph g = testing::random_graph(n, rng);
    CHECK(parse_graph6(write_graph6(g)) == g);
    CHECK(parse_edge_list(write_edge_list(g)) == g);
  }
  const Graph large = er_random(300, 0.1, 5);
  CHECK(parse_graph6(write_graph6(large)) == large);
}

TEST_CASE("malformed graph6 is rejected") {
  CHECK_THROWS_AS(parse_graph6(""), ParseError);
  CHECK_THROWS_AS(parse_graph6("B"), ParseError);     // missing data byte
  CHECK_THROWS_AS(parse_graph6("Bww"), ParseError);   // trailing byte
  CHECK_THROWS_AS(parse_graph6("B\x7f"), ParseError); // out of range
  CHECK_THROWS_AS(parse_graph6("Bx"), ParseError);    // padding bits set
}

TEST_CASE("malformed edge lists are rejected") {
  CHECK_THROWS_AS(parse_edge_list("3 1\n0 3\n"), ParseError);
  CHECK_THROWS_AS(parse_edge_list("3 1\n1 1\n"), ParseError);
  CHECK_THROWS_AS(parse_edge_list("3 2\n0 1\n"), ParseError);
  CHECK_THROWS_AS(parse_edge_list("3 x\n"), ParseError);
}

TEST_CASE("SplitMix64 and xoshiro256** test vectors") {
  SplitMix64 sm(0);
  CHECK(sm.next() == 0xe220a8397b1dcdafULL);
  CHECK(sm.next() == 0x6e789e6aa1b965f4ULL);
  CHECK(sm.next() == 0x06c45d188009454fULL);
  Xoshiro256 x(42);
  CHECK(x.next() == 0x15780b2e0c2ec716ULL);
  CHECK(x.next() == 0x6104d9866d113a7eULL);
  CHECK(x.next() == 0xae17533239e499a1ULL);
  Xoshiro256 u(1);
  for (int i = 0; i < 1000; ++i) {
    const double d = u.next_unit();
    CHECK((d >= 0.0 && d < 1.0));
  }
}

TEST_CASE("Erdos-Renyi sampler") {
  CHECK(er_random(50, 0.0, 1) == Graph(50));
  CHECK(er_random(50, 1.0, 1) == Graph::complete(50));
  CHECK(er_random(40, 0.3, 9) == er_random(40, 0.3, 9));
  CHECK_THROWS_AS(er_random(10, 1.5, 1), std::domain_error);
  CHECK_THROWS_AS(er_random(10, -0.1, 1), std::domain_error);

  // Mean edge count over 200 seeds: 4950 * 0.5, sd of the mean sqrt(4950/4/200).
  double total = 0.0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) total += static_cast<double>(er_random(100, 0.5, seed).edge_count());
  const double mean = total / 200.0;
  CHECK(std::fabs(mean - 2475.0) < 3.0 * std::sqrt(4950.0 * 0.25 / 200.0));
}
