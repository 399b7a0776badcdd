#pragma once

#include "starcx/graph.hpp"
#include "starcx/recipe.hpp"
#include "starcx/rng.hpp"

#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

namespace testing {

using starcx::Graph;

inline std::vector<int> random_perm(int n, starcx::Xoshiro256& rng) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    const auto j = static_cast<std::size_t>(rng.next() % static_cast<std::uint64_t>(i + 1));
    std::swap(p[static_cast<std::size_t>(i)], p[j]);
  }
  return p;
}

inline Graph random_graph(int n, starcx::Xoshiro256& rng) {
  const double p = rng.next_unit();
  return starcx::er_random(n, p, rng.next());
}

// Edge-by-edge reference: builds stars with set_edge and combines them with
// has_edge loops, sharing no code with the library evaluator.
inline Graph naive_evaluate(const starcx::Recipe& r, int n) {
  std::vector<std::vector<char>> stack;
  auto at = [n](std::vector<char>& m, int i, int j) -> char& { return m[static_cast<std::size_t>(i * n + j)]; };
  for (const auto& sym : r.symbols()) {
    if (sym.is_push()) {
      std::vector<char> m(static_cast<std::size_t>(n * n), 0);
      for (int v = 0; v < n; ++v) {
        if (v != sym.hub) at(m, sym.hub, v) = at(m, v, sym.hub) = 1;
      }
      stack.push_back(std::move(m));
      continue;
    }
    auto b = std::move(stack.back());
    stack.pop_back();
    auto& a = stack.back();
    for (std::size_t k = 0; k < a.size(); ++k) {
      a[k] = sym.kind == starcx::Symbol::Kind::Intersect ? (a[k] && b[k]) : (a[k] || b[k]);
    }
  }
  if (stack.size() != 1) throw std::logic_error("naive_evaluate: malformed recipe");
  Graph g(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (at(stack.back(), i, j)) g.set_edge(i, j);
    }
  }
  return g;
}

// Uniformly shaped random recipe with s operators over hubs [0, n).
inline starcx::Recipe random_recipe(int n, int s, starcx::Xoshiro256& rng) {
  std::vector<starcx::Symbol> out;
  int pushes = 0;
  int ops = 0;
  int depth = 0;
  while (pushes < s + 1 || ops < s) {
    const bool can_push = pushes < s + 1;
    const bool can_op = depth >= 2 && ops < s;
    if (can_push && (!can_op || rng.next() % 2 == 0)) {
      out.push_back(starcx::Symbol::push(static_cast<int>(rng.next() % static_cast<std::uint64_t>(n))));
      ++pushes;
      ++depth;
    } else {
      out.push_back(rng.next() % 2 == 0 ? starcx::Symbol::intersect() : starcx::Symbol::unite());
      ++ops;
      --depth;
    }
  }
  return starcx::Recipe(std::move(out));
}

}  // namespace testing
