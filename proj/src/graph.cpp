#include "starcx/graph.hpp"

#include "starcx/rng.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <ostream>
#include <sstream>

namespace starcx {

namespace {

std::size_t word_count(int n) { return (pair_count(n) + 63) / 64; }

}  // namespace

std::size_t pair_index(int i, int j, int n) {
  if (i < 0 || j < 0 || i >= n || j >= n) {
    throw std::out_of_range("pair_index: vertex out of range");
  }
  if (i == j) throw std::out_of_range("pair_index: self pair");
  if (i > j) std::swap(i, j);
  const auto si = static_cast<std::size_t>(i);
  return si * static_cast<std::size_t>(n) - si * (si + 1) / 2 + static_cast<std::size_t>(j - i - 1);
}

Graph::Graph(int n) : n_(n) {
  if (n < 0 || n > kMaxVertices) throw std::out_of_range("Graph: vertex count out of range");
  words_.assign(word_count(n), 0);
}

Graph Graph::complete(int n) {
  Graph g(n);
  std::fill(g.words_.begin(), g.words_.end(), ~std::uint64_t{0});
  g.clear_tail();
  return g;
}

Graph Graph::from_edges(int n, std::span<const std::pair<int, int>> edges) {
  Graph g(n);
  for (auto [i, j] : edges) g.set_edge(i, j);
  return g;
}

Graph Graph::from_words(int n, std::vector<std::uint64_t> words) {
  Graph g(n);
  if (words.size() != g.words_.size()) throw DimensionError("Graph::from_words: word count mismatch");
  g.words_ = std::move(words);
  g.clear_tail();
  return g;
}

void Graph::check_vertex(int v) const {
  if (v < 0 || v >= n_) throw std::out_of_range("Graph: vertex out of range");
}

void Graph::clear_tail() noexcept {
  const std::size_t used = pairs() & 63;
  if (used != 0 && !words_.empty()) words_.back() &= (std::uint64_t{1} << used) - 1;
}

bool Graph::has_edge(int i, int j) const { return test_pair(pair_index(i, j, n_)); }

void Graph::set_edge(int i, int j, bool present) {
  const std::size_t k = pair_index(i, j, n_);
  const std::uint64_t mask = std::uint64_t{1} << (k & 63);
  if (present) {
    words_[k >> 6] |= mask;
  } else {
    words_[k >> 6] &= ~mask;
  }
}

std::size_t Graph::edge_count() const noexcept {
  std::size_t total = 0;
  for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

int Graph::degree(int v) const {
  check_vertex(v);
  int d = 0;
  for (int i = 0; i < v; ++i) d += test_pair(pair_index(i, v, n_));
  if (v + 1 < n_) {
    const std::size_t first = pair_index(v, v + 1, n_);
    for (std::size_t k = first; k < first + static_cast<std::size_t>(n_ - v - 1); ++k) d += test_pair(k);
  }
  return d;
}

std::vector<int> Graph::degrees() const {
  std::vector<int> deg(static_cast<std::size_t>(n_), 0);
  std::size_t k = 0;
  for (int i = 0; i < n_; ++i) {
    for (int j = i + 1; j < n_; ++j, ++k) {
      if (test_pair(k)) {
        ++deg[static_cast<std::size_t>(i)];
        ++deg[static_cast<std::size_t>(j)];
      }
    }
  }
  return deg;
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(edge_count());
  std::size_t k = 0;
  for (int i = 0; i < n_; ++i) {
    for (int j = i + 1; j < n_; ++j, ++k) {
      if (test_pair(k)) out.emplace_back(i, j);
    }
  }
  return out;
}

Graph& Graph::operator|=(const Graph& other) {
  if (other.n_ != n_) throw DimensionError("graph union: vertex counts differ");
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
  return *this;
}

Graph& Graph::operator&=(const Graph& other) {
  if (other.n_ != n_) throw DimensionError("graph intersection: vertex counts differ");
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= other.words_[w];
  return *this;
}

int compare_linkstrings(const Graph& a, const Graph& b) {
  if (a.n_ != b.n_) return a.n_ < b.n_ ? -1 : 1;
  for (std::size_t w = 0; w < a.words_.size(); ++w) {
    const std::uint64_t diff = a.words_[w] ^ b.words_[w];
    if (diff != 0) {
      const std::uint64_t lowest = diff & (~diff + 1);
      return (a.words_[w] & lowest) ? 1 : -1;
    }
  }
  return 0;
}

std::string Graph::linkstring() const {
  std::string s(pairs(), '0');
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (test_pair(k)) s[k] = '1';
  }
  return s;
}

Graph star(int n, int hub) {
  if (n < 2) throw std::out_of_range("star: need at least two vertices");
  if (hub < 0 || hub >= n) throw std::out_of_range("star: hub out of range");
  Graph g(n);
  for (int v = 0; v < n; ++v) {
    if (v != hub) g.set_edge(hub, v);
  }
  return g;
}

Graph graph_union(const Graph& a, const Graph& b) {
  Graph r = a;
  r |= b;
  return r;
}

Graph graph_intersection(const Graph& a, const Graph& b) {
  Graph r = a;
  r &= b;
  return r;
}

Graph complement(const Graph& g) {
  std::vector<std::uint64_t> words(g.words().begin(), g.words().end());
  for (auto& w : words) w = ~w;
  return Graph::from_words(g.order(), std::move(words));
}

Graph permute(const Graph& g, std::span<const int> perm) {
  const int n = g.order();
  if (static_cast<int>(perm.size()) != n) throw DimensionError("permute: permutation size mismatch");
  Graph r(n);
  std::size_t k = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j, ++k) {
      if (g.test_pair(k)) r.set_edge(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
    }
  }
  return r;
}

std::string write_graph6(const Graph& g) {
  const int n = g.order();
  std::string out;
  if (n <= 62) {
    out.push_back(static_cast<char>(63 + n));
  } else if (n <= 258047) {
    out.push_back('~');
    for (int shift = 12; shift >= 0; shift -= 6) out.push_back(static_cast<char>(63 + ((n >> shift) & 63)));
  }
  int acc = 0;
  int filled = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.has_edge(i, j) ? 1 : 0);
      if (++filled == 6) {
        out.push_back(static_cast<char>(63 + acc));
        acc = 0;
        filled = 0;
      }
    }
  }
  if (filled > 0) out.push_back(static_cast<char>(63 + (acc << (6 - filled))));
  return out;
}

Graph parse_graph6(std::string_view text) {
  constexpr std::string_view header = ">>graph6<<";
  std::size_t pos = 0;
  if (text.starts_with(header)) pos = header.size();
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' ')) {
    text.remove_suffix(1);
  }

  auto take = [&](const char* what) -> int {
    if (pos >= text.size()) throw ParseError(std::string("graph6: truncated ") + what, pos);
    const auto c = static_cast<unsigned char>(text[pos]);
    if (c < 63 || c > 126) throw ParseError("graph6: invalid character", pos);
    ++pos;
    return c - 63;
  };

  long long n = 0;
  if (pos < text.size() && text[pos] == '~') {
    ++pos;
    int fields = 3;
    if (pos < text.size() && text[pos] == '~') {
      ++pos;
      fields = 6;
    }
    for (int f = 0; f < fields; ++f) n = (n << 6) | take("header");
  } else {
    n = take("header");
  }
  if (n < 1 || n > kMaxVertices) throw ParseError("graph6: unsupported vertex count", 0);

  Graph g(static_cast<int>(n));
  const std::size_t bits = pair_count(static_cast<int>(n));
  const std::size_t payload = (bits + 5) / 6;
  if (text.size() - pos < payload) throw ParseError("graph6: truncated payload", text.size());
  if (text.size() - pos > payload) throw ParseError("graph6: trailing data", pos + payload);

  std::size_t bit = 0;
  int value = 0;
  for (int j = 1; j < n; ++j) {
    for (int i = 0; i < j; ++i, ++bit) {
      if (bit % 6 == 0) value = take("payload");
      if ((value >> (5 - bit % 6)) & 1) g.set_edge(i, j);
    }
  }
  if (bit % 6 != 0 && (value & ((1 << (6 - bit % 6)) - 1)) != 0) {
    throw ParseError("graph6: nonzero padding bits", pos - 1);
  }
  return g;
}

std::string write_edge_list(const Graph& g) {
  std::ostringstream os;
  os << g.order() << ' ' << g.edge_count() << '\n';
  for (auto [i, j] : g.edges()) os << i << ' ' << j << '\n';
  return os.str();
}

Graph parse_edge_list(std::string_view text) {
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\n' || text[pos] == '\r')) {
      ++pos;
    }
  };
  auto number = [&](const char* what) -> long long {
    skip_ws();
    long long v = 0;
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), v);
    if (ec != std::errc{}) throw ParseError(std::string("edge list: expected ") + what, pos);
    pos = static_cast<std::size_t>(ptr - text.data());
    return v;
  };

  const long long n = number("vertex count");
  if (n < 1 || n > kMaxVertices) throw ParseError("edge list: unsupported vertex count", 0);
  const long long m = number("edge count");
  if (m < 0) throw ParseError("edge list: negative edge count", pos);
  Graph g(static_cast<int>(n));
  for (long long e = 0; e < m; ++e) {
    const std::size_t at = pos;
    const long long i = number("endpoint");
    const long long j = number("endpoint");
    if (i < 0 || j < 0 || i >= n || j >= n || i == j) throw ParseError("edge list: bad endpoint pair", at);
    g.set_edge(static_cast<int>(i), static_cast<int>(j));
  }
  skip_ws();
  if (pos != text.size()) throw ParseError("edge list: trailing data", pos);
  return g;
}

Graph er_random(int n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("er_random: p must lie in [0, 1]");
  Graph g(n);
  Xoshiro256 rng(seed);
  std::vector<std::uint64_t> words(g.words().begin(), g.words().end());
  const std::size_t total = g.pairs();
  for (std::size_t k = 0; k < total; ++k) {
    if (rng.next_unit() < p) words[k >> 6] |= std::uint64_t{1} << (k & 63);
  }
  return Graph::from_words(n, std::move(words));
}

std::ostream& operator<<(std::ostream& os, const Graph& g) { return os << write_graph6(g); }

}  // namespace starcx
