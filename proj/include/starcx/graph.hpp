#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace starcx {

inline constexpr int kMaxVertices = 1024;

/// Thrown when two graphs of different order are combined.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown by the text readers; offset is the byte (or line) position of the fault.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " (at offset " + std::to_string(offset) + ")"), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Position of the unordered pair {i, j} in the row-major upper-triangle
/// linkstring: for i < j, i*n - i(i+1)/2 + (j-i-1). Arguments may come in
/// either order.
std::size_t pair_index(int i, int j, int n);

/// Number of vertex pairs, n(n-1)/2.
constexpr std::size_t pair_count(int n) {
  return static_cast<std::size_t>(n) * static_cast<std::size_t>(n > 0 ? n - 1 : 0) / 2;
}

/// Simple undirected graph on vertices 0..n-1 stored as its linkstring:
/// bit k of the edge vector is set iff the k-th vertex pair is an edge.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);

  static Graph complete(int n);
  static Graph from_edges(int n, std::span<const std::pair<int, int>> edges);
  /// Builds a graph from raw linkstring words (bits past n(n-1)/2 must be clear).
  static Graph from_words(int n, std::vector<std::uint64_t> words);

  int order() const noexcept { return n_; }
  std::size_t pairs() const noexcept { return pair_count(n_); }

  bool has_edge(int i, int j) const;
  void set_edge(int i, int j, bool present = true);
  bool test_pair(std::size_t k) const noexcept { return (words_[k >> 6] >> (k & 63)) & 1U; }

  std::size_t edge_count() const noexcept;
  int degree(int v) const;
  std::vector<int> degrees() const;
  std::vector<std::pair<int, int>> edges() const;

  std::span<const std::uint64_t> words() const noexcept { return words_; }

  Graph& operator|=(const Graph& other);
  Graph& operator&=(const Graph& other);

  friend bool operator==(const Graph& a, const Graph& b) = default;

  /// Lexicographic order of the linkstrings read as bit sequences from pair 0.
  friend int compare_linkstrings(const Graph& a, const Graph& b);

  /// The linkstring as a '0'/'1' string, pair 0 first.
  std::string linkstring() const;

 private:
  void check_vertex(int v) const;
  void clear_tail() noexcept;

  int n_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Elementary star S_hub: hub joined to every other vertex.
Graph star(int n, int hub);

Graph graph_union(const Graph& a, const Graph& b);
Graph graph_intersection(const Graph& a, const Graph& b);
Graph complement(const Graph& g);

/// Relabels g so that vertex v becomes perm[v].
Graph permute(const Graph& g, std::span<const int> perm);

// graph6 exchange format (column-major upper triangle, 6 bits per byte + 63).
std::string write_graph6(const Graph& g);
Graph parse_graph6(std::string_view text);

// Plain edge list: "n m" header, then m lines "i j" (0-based).
std::string write_edge_list(const Graph& g);
Graph parse_edge_list(std::string_view text);

/// Erdős–Rényi G(n, p): each pair, in linkstring order, is kept when the next
/// xoshiro256** draw (seeded from SplitMix64(seed)) mapped to [0,1) is below p.
Graph er_random(int n, double p, std::uint64_t seed);

std::ostream& operator<<(std::ostream& os, const Graph& g);

}  // namespace starcx
