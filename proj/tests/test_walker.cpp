#include "support.hpp"

#include "starcx/automorphism.hpp"
#include "starcx/walker.hpp"

#include <doctest.h>

#include <cmath>
#include <map>

using namespace starcx;

namespace {

// Walker and oracle use different canonical labelings; key both by the
// brute-force form.
void check_matches_oracle(int n, int max_s) {
  const WalkTable fast = enumerate(n, max_s);
  const WalkTable slow = brute_force_enumerate(n, max_s);
  REQUIRE(fast.complete);
  CHECK(fast.class_counts == slow.class_counts);
  REQUIRE(fast.records.size() == slow.records.size());
  std::map<std::string, const WalkRecord*> oracle;
  for (const auto& r : slow.records) oracle[r.canonical.linkstring()] = &r;
  for (const auto& r : fast.records) {
    const auto it = oracle.find(brute_force_canonical(r.canonical).linkstring());
    REQUIRE(it != oracle.end());
    CHECK(r.star == it->second->star);
    CHECK(r.omega_star == it->second->omega_star);
    CHECK(r.witness == it->second->witness);
    CHECK(r.c_star_bits == doctest::Approx(it->second->c_star_bits).epsilon(1e-12));
  }
}

}  // namespace

TEST_CASE("enumeration sizes") {
  CHECK(catalan(0) == 1);
  CHECK(catalan(8) == 1430);
  CHECK(restricted_growth_count(4, 2) == 8);
  CHECK(restricted_growth_count(9, 22) == 21147);
  CHECK(restricted_growth_count(3, 1) == 1);
  CHECK(enumeration_size(22, 0) == 1);
  CHECK(enumeration_size(22, 1) == 4);
  CHECK(enumeration_size(22, 2) == 40);
  CHECK(enumeration_size(22, 3) == 600);
  CHECK(enumeration_size(22, 8) == Natural(21147) * 1430 * 256);
  CHECK(enumeration_size(3, 3) == Natural(14) * 5 * 8);
}

TEST_CASE("n = 3 walk by hand") {
  const WalkTable t = enumerate(3, 2);
  CHECK(t.class_counts == std::vector<std::size_t>{1, 2, 1});
  REQUIRE(t.records.size() == 4);
  std::map<std::size_t, const WalkRecord*> by_edges;
  for (const auto& r : t.records) by_edges[r.canonical.edge_count()] = &r;
  CHECK(by_edges.at(2)->star == 0);
  CHECK(by_edges.at(2)->omega_star == 3);
  CHECK(by_edges.at(1)->star == 1);
  CHECK(by_edges.at(1)->omega_star == 6);
  CHECK(by_edges.at(3)->star == 1);
  CHECK(by_edges.at(3)->omega_star == 6);
  CHECK(by_edges.at(0)->star == 2);
  CHECK(by_edges.at(0)->omega_star == 12);
  // C* of the single edge: 3 log2 3 + 3 log2 5 - log2 6.
  CHECK(by_edges.at(1)->c_star_bits ==
        doctest::Approx(3 * std::log2(3.0) + 3 * std::log2(5.0) - std::log2(6.0)).epsilon(1e-12));
}

TEST_CASE("walker equals the unreduced oracle") {
  check_matches_oracle(3, 2);
  check_matches_oracle(3, 3);
  check_matches_oracle(4, 3);
  check_matches_oracle(2, 2);
}

TEST_CASE("witnesses evaluate to their class with the minimal operator count") {
  const WalkTable t = enumerate(7, 4);
  for (const auto& r : t.records) {
    CHECK(r.witness.star_count() == r.star);
    CHECK(canonical(evaluate(r.witness, 7)).canonical_graph == r.canonical);
  }
}

TEST_CASE("tables do not depend on shards or threads") {
  const WalkTable base = enumerate(9, 5);
  for (auto [shards, threads] : {std::pair{7, 1}, std::pair{3, 3}, std::pair{16, 4}}) {
    WalkOptions opt;
    opt.shards = shards;
    opt.threads = threads;
    const WalkTable other = enumerate(9, 5, opt);
    REQUIRE(other.records.size() == base.records.size());
    for (std::size_t i = 0; i < base.records.size(); ++i) {
      CHECK(other.records[i].canonical == base.records[i].canonical);
      CHECK(other.records[i].omega_star == base.records[i].omega_star);
      CHECK(other.records[i].witness == base.records[i].witness);
    }
  }
}

TEST_CASE("known star complexities") {
  for (int n : {3, 10, 22}) {
    const WalkTable t = enumerate(n, 2);
    Graph edge(n);
    edge.set_edge(0, 1);
    auto star_of = [&](const Graph& g) {
      const WalkRecord* r = t.find(canonical(g).canonical_graph);
      REQUIRE(r != nullptr);
      return r->star;
    };
    CHECK(star_of(star(n, 0)) == 0);
    CHECK(star_of(edge) == 1);
    CHECK(star_of(Graph(n)) == 2);
  }
  CHECK(enumerate(3, 1).find(canonical(Graph::complete(3)).canonical_graph)->star == 1);
  for (int n = 3; n <= 7; ++n) {
    const WalkTable t = enumerate(n, n - 2);
    const WalkRecord* r = t.find(canonical(Graph::complete(n)).canonical_graph);
    REQUIRE(r != nullptr);
    CHECK(r->star == n - 2);
  }
}

TEST_CASE("22-vertex class counts up to five operators") {
  const WalkTable t = enumerate(22, 5);
  CHECK(t.class_counts == std::vector<std::size_t>{1, 2, 4, 6, 11, 23});
  CHECK(t.records.size() == 47);
}

TEST_CASE("recipe budget yields a table marked incomplete") {
  WalkOptions opt;
  opt.recipe_budget = 700;
  const WalkTable t = enumerate(22, 5, opt);
  CHECK_FALSE(t.complete);
  CHECK(t.completed_s == 3);
  CHECK(t.class_counts.size() == 4);
}

TEST_CASE("argument checks") {
  CHECK_THROWS(enumerate(1, 0));
  CHECK_THROWS(enumerate(5, 6));
  CHECK_THROWS(brute_force_enumerate(5, 2));
}
