#include "starcx/starbar.hpp"

#include "starcx/rng.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace starcx {

namespace {

class UncoveredEdges {
 public:
  UncoveredEdges(const Graph& g, const std::vector<char>& full)
      : n_(g.order()),
        words_((g.order() + 63) / 64),
        rows_(static_cast<std::size_t>(n_) * static_cast<std::size_t>(words_), 0),
        degree_(static_cast<std::size_t>(n_), 0),
        hash_(static_cast<std::size_t>(n_), 0),
        key_(static_cast<std::size_t>(n_)) {
    SplitMix64 keys(0x5eed);
    for (auto& k : key_) k = keys.next();
    for (auto [i, j] : g.edges()) {
      if (full[static_cast<std::size_t>(i)] || full[static_cast<std::size_t>(j)]) continue;
      link(i, j);
      link(j, i);
    }
  }

  int degree(int v) const { return degree_[static_cast<std::size_t>(v)]; }
  std::uint64_t hash(int v) const { return hash_[static_cast<std::size_t>(v)]; }
  bool any() const {
    return std::any_of(degree_.begin(), degree_.end(), [](int d) { return d > 0; });
  }

  bool same_neighbourhood(int a, int b) const {
    return std::equal(row(a), row(a) + words_, row(b));
  }

  std::vector<int> neighbours(int v) const {
    std::vector<int> out;
    for (int u = 0; u < n_; ++u) {
      if ((row(v)[u >> 6] >> (u & 63)) & 1U) out.push_back(u);
    }
    return out;
  }

  void remove(int a, int b) {
    unlink(a, b);
    unlink(b, a);
  }

 private:
  const std::uint64_t* row(int v) const { return rows_.data() + static_cast<std::size_t>(v) * words_; }
  std::uint64_t* row(int v) { return rows_.data() + static_cast<std::size_t>(v) * words_; }

  void link(int v, int u) {
    row(v)[u >> 6] |= std::uint64_t{1} << (u & 63);
    ++degree_[static_cast<std::size_t>(v)];
    hash_[static_cast<std::size_t>(v)] ^= key_[static_cast<std::size_t>(u)];
  }

  void unlink(int v, int u) {
    row(v)[u >> 6] &= ~(std::uint64_t{1} << (u & 63));
    --degree_[static_cast<std::size_t>(v)];
    hash_[static_cast<std::size_t>(v)] ^= key_[static_cast<std::size_t>(u)];
  }

  int n_;
  int words_;
  std::vector<std::uint64_t> rows_;
  std::vector<int> degree_;
  std::vector<std::uint64_t> hash_;
  std::vector<std::uint64_t> key_;
};

// Vertices with identical non-empty uncovered neighbourhoods, each class sorted
// ascending, classes ordered by smallest member.
std::vector<std::vector<int>> neighbourhood_classes(const UncoveredEdges& uncovered, int n) {
  std::vector<int> active;
  for (int v = 0; v < n; ++v) {
    if (uncovered.degree(v) > 0) active.push_back(v);
  }
  std::sort(active.begin(), active.end(), [&](int a, int b) {
    return uncovered.hash(a) != uncovered.hash(b) ? uncovered.hash(a) < uncovered.hash(b) : a < b;
  });
  std::vector<std::vector<int>> classes;
  for (std::size_t lo = 0; lo < active.size();) {
    std::size_t hi = lo;
    while (hi < active.size() && uncovered.hash(active[hi]) == uncovered.hash(active[lo])) ++hi;
    // Equal hashes almost always mean equal neighbourhoods; split exactly anyway.
    std::vector<std::vector<int>> bucket;
    for (std::size_t k = lo; k < hi; ++k) {
      const int v = active[k];
      auto it = std::find_if(bucket.begin(), bucket.end(),
                             [&](const std::vector<int>& c) { return uncovered.same_neighbourhood(c.front(), v); });
      if (it == bucket.end()) {
        bucket.push_back({v});
      } else {
        it->push_back(v);
      }
    }
    for (auto& c : bucket) classes.push_back(std::move(c));
    lo = hi;
  }
  std::sort(classes.begin(), classes.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return classes;
}

void append_union(std::vector<Symbol>& out, const std::vector<int>& hubs) {
  out.push_back(Symbol::push(hubs.front()));
  for (std::size_t k = 1; k < hubs.size(); ++k) {
    out.push_back(Symbol::push(hubs[k]));
    out.push_back(Symbol::unite());
  }
}

Recipe build_witness(const std::vector<CoverTerm>& terms) {
  std::vector<Symbol> symbols;
  for (std::size_t t = 0; t < terms.size(); ++t) {
    const CoverTerm& term = terms[t];
    if (term.kind == CoverTerm::Kind::FullStar) {
      symbols.push_back(Symbol::push(term.hub));
    } else {
      append_union(symbols, term.left);
      append_union(symbols, term.right);
      symbols.push_back(Symbol::intersect());
    }
    if (t > 0) symbols.push_back(Symbol::unite());
  }
  return Recipe(std::move(symbols));
}

void verify(const StarBound& bound, const Graph& g) {
  if (!bound.witness) return;
  if (bound.witness->star_count() != bound.value) {
    throw std::logic_error("star_upper_bound: witness operator count differs from the bound");
  }
  if (evaluate(*bound.witness, g.order()) != g) {
    throw std::logic_error("star_upper_bound: witness does not evaluate to the input graph");
  }
}

}  // namespace

StarBound star_upper_bound(const Graph& g) {
  const int n = g.order();
  if (n < 2) throw std::domain_error("star_upper_bound: need n >= 2");
  StarBound bound;

  if (g.edge_count() == 0) {
    // S_0 & S_1 & S_2; with two vertices every recipe yields K_2.
    bound.value = 2;
    if (n >= 3) bound.witness = parse_recipe("0 1 & 2 &", n);
    verify(bound, g);
    return bound;
  }

  const std::vector<int> deg = g.degrees();
  std::vector<char> full(static_cast<std::size_t>(n), 0);
  for (int v = 0; v < n; ++v) {
    if (deg[static_cast<std::size_t>(v)] == n - 1) {
      full[static_cast<std::size_t>(v)] = 1;
      bound.terms.push_back(CoverTerm{CoverTerm::Kind::FullStar, v, {}, {}, 0});
    }
  }

  UncoveredEdges uncovered(g, full);
  while (uncovered.any()) {
    const auto classes = neighbourhood_classes(uncovered, n);
    // Widest shared neighbourhood first; classes come in smallest-id order,
    // so the strict comparison keeps the smallest id on ties.
    std::size_t best = 0;
    for (std::size_t c = 1; c < classes.size(); ++c) {
      if (uncovered.degree(classes[c].front()) > uncovered.degree(classes[best].front())) best = c;
    }
    CoverTerm term;
    term.kind = CoverTerm::Kind::Biclique;
    term.left = classes[best];
    term.right = uncovered.neighbours(term.left.front());
    term.op_cost = static_cast<int>(term.left.size() + term.right.size()) - 1;
    for (int a : term.left) {
      for (int b : term.right) uncovered.remove(a, b);
    }
    bound.terms.push_back(std::move(term));
  }

  bound.value = static_cast<int>(bound.terms.size()) - 1;
  for (const auto& term : bound.terms) bound.value += term.op_cost;
  bound.witness = build_witness(bound.terms);
  verify(bound, g);
  return bound;
}

}  // namespace starcx
