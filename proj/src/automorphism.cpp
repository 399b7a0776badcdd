#include "starcx/automorphism.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>

namespace starcx {

namespace {

// Adjacency matrix as n bit rows, used by refinement and leaf construction.
class Adjacency {
 public:
  explicit Adjacency(const Graph& g) : n_(g.order()), words_((g.order() + 63) / 64) {
    bits_.assign(static_cast<std::size_t>(n_) * static_cast<std::size_t>(words_), 0);
    std::size_t k = 0;
    for (int i = 0; i < n_; ++i) {
      for (int j = i + 1; j < n_; ++j, ++k) {
        if (g.test_pair(k)) {
          set(i, j);
          set(j, i);
        }
      }
    }
  }

  int order() const { return n_; }
  int words() const { return words_; }
  const std::uint64_t* row(int v) const { return bits_.data() + static_cast<std::size_t>(v) * words_; }
  bool adjacent(int u, int v) const { return (row(u)[v >> 6] >> (v & 63)) & 1U; }

 private:
  void set(int u, int v) { bits_[static_cast<std::size_t>(u) * words_ + (v >> 6)] |= std::uint64_t{1} << (v & 63); }

  int n_;
  int words_;
  std::vector<std::uint64_t> bits_;
};

std::uint64_t mix(std::uint64_t h, std::uint64_t x) {
  h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h ^= h >> 31;
  h *= 0xbf58476d1ce4e5b9ULL;
  return h ^ (h >> 29);
}

// Ordered partition stored nauty-style: lab holds vertices in cell order and
// each cell is the range [start, cell_end[start]).
struct WorkPartition {
  std::vector<int> lab;
  std::vector<int> cell_end;  // indexed by cell start
  std::vector<int> cell_of;   // vertex -> start of its cell
  int cells = 0;

  int order() const { return static_cast<int>(lab.size()); }
  bool discrete() const { return cells == order(); }

  static WorkPartition from_cells(int n, const Partition& cells_in) {
    WorkPartition p;
    p.lab.reserve(static_cast<std::size_t>(n));
    p.cell_end.assign(static_cast<std::size_t>(n), 0);
    p.cell_of.assign(static_cast<std::size_t>(n), -1);
    for (const auto& cell : cells_in) {
      if (cell.empty()) throw std::invalid_argument("partition: empty cell");
      const int start = static_cast<int>(p.lab.size());
      std::vector<int> members = cell;
      std::sort(members.begin(), members.end());
      for (int v : members) {
        if (v < 0 || v >= n) throw std::invalid_argument("partition: vertex out of range");
        if (p.cell_of[static_cast<std::size_t>(v)] != -1) throw std::invalid_argument("partition: cells overlap");
        p.cell_of[static_cast<std::size_t>(v)] = start;
        p.lab.push_back(v);
      }
      p.cell_end[static_cast<std::size_t>(start)] = static_cast<int>(p.lab.size());
      ++p.cells;
    }
    if (static_cast<int>(p.lab.size()) != n) throw std::invalid_argument("partition: cells do not cover all vertices");
    return p;
  }

  Partition to_cells() const {
    Partition out;
    for (int start = 0; start < order(); start = cell_end[static_cast<std::size_t>(start)]) {
      std::vector<int> cell(lab.begin() + start, lab.begin() + cell_end[static_cast<std::size_t>(start)]);
      std::sort(cell.begin(), cell.end());
      out.push_back(std::move(cell));
    }
    return out;
  }
};

class Refiner {
 public:
  explicit Refiner(const Adjacency& adj)
      : adj_(adj),
        in_queue_(static_cast<std::size_t>(adj.order()), 0),
        splitter_(static_cast<std::size_t>(adj.words()), 0),
        count_(static_cast<std::size_t>(adj.order()), 0) {}

  void enqueue(int start) {
    if (!in_queue_[static_cast<std::size_t>(start)]) {
      in_queue_[static_cast<std::size_t>(start)] = 1;
      queue_.push_back(start);
    }
  }

  // Refines p to the coarsest equitable partition reachable from the queued
  // splitters; returns a hash of every split performed.
  std::uint64_t refine(WorkPartition& p) {
    std::uint64_t h = 0x51ed27;
    std::size_t head = 0;
    const int n = p.order();
    while (head < queue_.size()) {
      const int ws = queue_[head++];
      in_queue_[static_cast<std::size_t>(ws)] = 0;
      const int we = p.cell_end[static_cast<std::size_t>(ws)];
      std::fill(splitter_.begin(), splitter_.end(), 0);
      for (int q = ws; q < we; ++q) {
        const int v = p.lab[static_cast<std::size_t>(q)];
        splitter_[static_cast<std::size_t>(v >> 6)] |= std::uint64_t{1} << (v & 63);
      }
      h = mix(h, static_cast<std::uint64_t>(ws));
      for (int start = 0; start < n;) {
        const int end = p.cell_end[static_cast<std::size_t>(start)];
        if (end - start > 1) split_cell(p, start, end, h);
        start = end;
      }
      if (p.discrete()) break;
    }
    for (std::size_t q = head; q < queue_.size(); ++q) in_queue_[static_cast<std::size_t>(queue_[q])] = 0;
    queue_.clear();
    return h;
  }

 private:
  void split_cell(WorkPartition& p, int start, int end, std::uint64_t& h) {
    const int words = adj_.words();
    bool uniform = true;
    for (int q = start; q < end; ++q) {
      const int v = p.lab[static_cast<std::size_t>(q)];
      const std::uint64_t* row = adj_.row(v);
      int c = 0;
      for (int w = 0; w < words; ++w) c += std::popcount(row[w] & splitter_[static_cast<std::size_t>(w)]);
      count_[static_cast<std::size_t>(v)] = c;
      if (c != count_[static_cast<std::size_t>(p.lab[static_cast<std::size_t>(start)])]) uniform = false;
    }
    if (uniform) return;

    auto first = p.lab.begin() + start;
    auto last = p.lab.begin() + end;
    std::sort(first, last, [&](int a, int b) {
      const int ca = count_[static_cast<std::size_t>(a)];
      const int cb = count_[static_cast<std::size_t>(b)];
      return ca != cb ? ca < cb : a < b;
    });

    const bool parent_queued = in_queue_[static_cast<std::size_t>(start)] != 0;
    fragments_.clear();
    int frag = start;
    for (int q = start + 1; q <= end; ++q) {
      if (q == end || count_[static_cast<std::size_t>(p.lab[static_cast<std::size_t>(q)])] !=
                          count_[static_cast<std::size_t>(p.lab[static_cast<std::size_t>(frag)])]) {
        fragments_.push_back(frag);
        p.cell_end[static_cast<std::size_t>(frag)] = q;
        for (int r = frag; r < q; ++r) p.cell_of[static_cast<std::size_t>(p.lab[static_cast<std::size_t>(r)])] = frag;
        h = mix(h, (static_cast<std::uint64_t>(q - frag) << 32) |
                       static_cast<std::uint64_t>(count_[static_cast<std::size_t>(p.lab[static_cast<std::size_t>(frag)])]));
        frag = q;
      }
    }
    p.cells += static_cast<int>(fragments_.size()) - 1;
    h = mix(h, (static_cast<std::uint64_t>(start) << 20) | fragments_.size());

    if (parent_queued) {
      for (std::size_t f = 1; f < fragments_.size(); ++f) enqueue(fragments_[f]);
      return;
    }
    // Every fragment but the (first) largest one.
    std::size_t largest = 0;
    int largest_size = -1;
    for (std::size_t f = 0; f < fragments_.size(); ++f) {
      const int size = p.cell_end[static_cast<std::size_t>(fragments_[f])] - fragments_[f];
      if (size > largest_size) {
        largest_size = size;
        largest = f;
      }
    }
    for (std::size_t f = 0; f < fragments_.size(); ++f) {
      if (f != largest) enqueue(fragments_[f]);
    }
  }

  const Adjacency& adj_;
  std::vector<char> in_queue_;
  std::vector<int> queue_;
  std::vector<std::uint64_t> splitter_;
  std::vector<int> count_;
  std::vector<int> fragments_;
};

// Splits vertex v off the front of its cell.
int individualize(WorkPartition& p, int v) {
  const int start = p.cell_of[static_cast<std::size_t>(v)];
  const int end = p.cell_end[static_cast<std::size_t>(start)];
  auto it = std::find(p.lab.begin() + start, p.lab.begin() + end, v);
  std::rotate(p.lab.begin() + start, it, it + 1);
  std::sort(p.lab.begin() + start + 1, p.lab.begin() + end);
  p.cell_end[static_cast<std::size_t>(start)] = start + 1;
  p.cell_end[static_cast<std::size_t>(start + 1)] = end;
  for (int q = start + 1; q < end; ++q) p.cell_of[static_cast<std::size_t>(p.lab[static_cast<std::size_t>(q)])] = start + 1;
  ++p.cells;
  return start;
}

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(static_cast<std::size_t>(n)) { std::iota(parent_.begin(), parent_.end(), 0); }
  int find(int x) {
    while (parent_[static_cast<std::size_t>(x)] != x) {
      parent_[static_cast<std::size_t>(x)] = parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(x)])];
      x = parent_[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }

 private:
  std::vector<int> parent_;
};

constexpr int kNoJump = std::numeric_limits<int>::max();

class Canonizer {
 public:
  Canonizer(const Graph& g, const CanonOptions& options)
      : g_(g), adj_(g), refiner_(adj_), budget_(options.node_budget), cell_bits_(static_cast<std::size_t>(adj_.words())) {}

  AutResult run() {
    const int n = g_.order();
    WorkPartition root = WorkPartition::from_cells(n, Partition{unit_cell(n)});
    refiner_.enqueue(0);
    std::uint64_t h = refiner_.refine(root);
    h = collapse_twins(root, h, true);
    trace_.assign(1, h);
    path_.clear();
    search(root, 0, true);

    AutResult result;
    result.canonical_perm.assign(static_cast<std::size_t>(n), 0);
    for (int pos = 0; pos < n; ++pos) result.canonical_perm[static_cast<std::size_t>(best_.lab[static_cast<std::size_t>(pos)])] = pos;
    result.canonical_graph = best_.graph;
    result.aut_order = order_;
    result.search_nodes = nodes_;
    return result;
  }

 private:
  struct Leaf {
    bool set = false;
    std::vector<int> lab;
    std::vector<std::uint64_t> trace;
    std::vector<int> path;
    Graph graph;
  };

  static std::vector<int> unit_cell(int n) {
    std::vector<int> cell(static_cast<std::size_t>(n));
    std::iota(cell.begin(), cell.end(), 0);
    return cell;
  }

  // All permutations of a cell of mutual twins are automorphisms fixing every
  // other vertex, so such a cell is made discrete without branching.
  bool is_twin_cell(const WorkPartition& p, int start, int end) {
    const int words = adj_.words();
    std::fill(cell_bits_.begin(), cell_bits_.end(), 0);
    for (int q = start; q < end; ++q) {
      const int v = p.lab[static_cast<std::size_t>(q)];
      cell_bits_[static_cast<std::size_t>(v >> 6)] |= std::uint64_t{1} << (v & 63);
    }
    const int v0 = p.lab[static_cast<std::size_t>(start)];
    const std::uint64_t* r0 = adj_.row(v0);
    const bool clique = adj_.adjacent(v0, p.lab[static_cast<std::size_t>(start + 1)]);
    for (int q = start; q < end; ++q) {
      const int v = p.lab[static_cast<std::size_t>(q)];
      const std::uint64_t* r = adj_.row(v);
      for (int w = 0; w < words; ++w) {
        const std::uint64_t cb = cell_bits_[static_cast<std::size_t>(w)];
        if ((r[w] & ~cb) != (r0[w] & ~cb)) return false;
        std::uint64_t inside = r[w] & cb;
        if (clique) {
          if ((v >> 6) == w) inside |= std::uint64_t{1} << (v & 63);
          if (inside != cb) return false;
        } else if (inside != 0) {
          return false;
        }
      }
    }
    return true;
  }

  std::uint64_t collapse_twins(WorkPartition& p, std::uint64_t h, bool count_order) {
    const int n = p.order();
    bool changed = true;
    while (changed && !p.discrete()) {
      changed = false;
      for (int start = 0; start < n;) {
        const int end = p.cell_end[static_cast<std::size_t>(start)];
        if (end - start > 1 && is_twin_cell(p, start, end)) {
          std::sort(p.lab.begin() + start, p.lab.begin() + end);
          for (int q = start; q < end; ++q) {
            p.cell_end[static_cast<std::size_t>(q)] = q + 1;
            p.cell_of[static_cast<std::size_t>(p.lab[static_cast<std::size_t>(q)])] = q;
            refiner_.enqueue(q);
          }
          p.cells += end - start - 1;
          h = mix(h, (static_cast<std::uint64_t>(start) << 32) | static_cast<std::uint64_t>(end - start) | (1ULL << 63));
          if (count_order) order_ *= factorial(end - start);
          changed = true;
        }
        start = end;
      }
      if (changed) h = mix(h, refiner_.refine(p));
    }
    return h;
  }

  bool preserves(const std::vector<int>& gen, const WorkPartition& p) const {
    for (std::size_t v = 0; v < gen.size(); ++v) {
      if (p.cell_of[static_cast<std::size_t>(gen[v])] != p.cell_of[v]) return false;
    }
    return true;
  }

  UnionFind orbits(const WorkPartition& p) const {
    UnionFind uf(p.order());
    for (const auto& gen : gens_) {
      if (!preserves(gen, p)) continue;
      for (std::size_t v = 0; v < gen.size(); ++v) uf.unite(static_cast<int>(v), gen[v]);
    }
    return uf;
  }

  // Lexicographic comparison of the current trace prefix against a stored trace.
  int compare_trace(std::size_t length, const std::vector<std::uint64_t>& other) const {
    const std::size_t common = std::min(length, other.size());
    for (std::size_t d = 0; d < common; ++d) {
      if (trace_[d] != other[d]) return trace_[d] < other[d] ? -1 : 1;
    }
    if (length == other.size()) return 0;
    return length < other.size() ? -1 : 1;
  }

  int search(const WorkPartition& part, int depth, bool first_path) {
    if (++nodes_ > budget_) throw SearchBudgetExhausted("canonical: search node budget exhausted");
    if (part.discrete()) return leaf(part, depth);

    const int n = part.order();
    int target = -1;
    int target_size = n + 1;
    for (int start = 0; start < n; start = part.cell_end[static_cast<std::size_t>(start)]) {
      const int size = part.cell_end[static_cast<std::size_t>(start)] - start;
      if (size > 1 && size < target_size) {
        target = start;
        target_size = size;
      }
    }
    std::vector<int> members(part.lab.begin() + target, part.lab.begin() + target + target_size);
    std::sort(members.begin(), members.end());

    std::vector<int> explored;
    std::size_t gens_seen = gens_.size();
    UnionFind uf = orbits(part);
    const auto level = static_cast<std::size_t>(depth) + 1;

    for (int x : members) {
      if (gens_.size() != gens_seen) {
        uf = orbits(part);
        gens_seen = gens_.size();
      }
      const int root = uf.find(x);
      if (std::any_of(explored.begin(), explored.end(), [&](int y) { return uf.find(y) == root; })) continue;
      explored.push_back(x);

      const bool child_first = first_path && x == members.front();
      WorkPartition child = part;
      refiner_.enqueue(individualize(child, x));
      std::uint64_t h = mix(static_cast<std::uint64_t>(target), refiner_.refine(child));
      h = collapse_twins(child, h, child_first);

      trace_.resize(level + 1);
      trace_[level] = h;
      path_.resize(level);
      path_[level - 1] = x;

      if (!child_first) {
        const bool eq_first = compare_trace(level + 1, first_.trace) == 0;
        if (!eq_first && compare_trace(level + 1, best_.trace) > 0) continue;
      }

      const int jump = search(child, depth + 1, child_first);
      if (jump < depth) return jump;
    }

    if (first_path) {
      uf = orbits(part);
      const int root = uf.find(members.front());
      const auto orbit = std::count_if(members.begin(), members.end(), [&](int v) { return uf.find(v) == root; });
      order_ *= static_cast<long>(orbit);
    }
    return kNoJump;
  }

  Graph leaf_graph(const std::vector<int>& lab) const {
    const int n = g_.order();
    std::vector<std::uint64_t> words((pair_count(n) + 63) / 64, 0);
    std::size_t k = 0;
    for (int i = 0; i < n; ++i) {
      const std::uint64_t* row = adj_.row(lab[static_cast<std::size_t>(i)]);
      for (int j = i + 1; j < n; ++j, ++k) {
        const int v = lab[static_cast<std::size_t>(j)];
        if ((row[v >> 6] >> (v & 63)) & 1U) words[k >> 6] |= std::uint64_t{1} << (k & 63);
      }
    }
    return Graph::from_words(n, std::move(words));
  }

  static int common_prefix(const std::vector<int>& a, const std::vector<int>& b) {
    std::size_t d = 0;
    while (d < a.size() && d < b.size() && a[d] == b[d]) ++d;
    return static_cast<int>(d);
  }

  void add_generator(const std::vector<int>& from, const std::vector<int>& to) {
    std::vector<int> gen(from.size());
    for (std::size_t p = 0; p < from.size(); ++p) gen[static_cast<std::size_t>(from[p])] = to[p];
    gens_.push_back(std::move(gen));
  }

  int leaf(const WorkPartition& part, int depth) {
    const auto length = static_cast<std::size_t>(depth) + 1;
    Graph lg = leaf_graph(part.lab);
    std::vector<int> path(path_.begin(), path_.begin() + depth);

    if (!first_.set) {
      first_ = Leaf{true, part.lab, std::vector<std::uint64_t>(trace_.begin(), trace_.begin() + static_cast<long>(length)), path, lg};
      best_ = first_;
      return kNoJump;
    }
    if (compare_trace(length, first_.trace) == 0 && lg == first_.graph) {
      add_generator(first_.lab, part.lab);
      return common_prefix(path, first_.path);
    }
    int cmp = compare_trace(length, best_.trace);
    if (cmp == 0) cmp = compare_linkstrings(lg, best_.graph);
    if (cmp == 0) {
      add_generator(best_.lab, part.lab);
      return common_prefix(path, best_.path);
    }
    if (cmp < 0) {
      best_ = Leaf{true, part.lab, std::vector<std::uint64_t>(trace_.begin(), trace_.begin() + static_cast<long>(length)), std::move(path),
                   std::move(lg)};
    }
    return kNoJump;
  }

  const Graph& g_;
  Adjacency adj_;
  Refiner refiner_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::vector<std::uint64_t> cell_bits_;
  std::vector<std::uint64_t> trace_;
  std::vector<int> path_;
  Leaf first_;
  Leaf best_;
  std::vector<std::vector<int>> gens_;
  Natural order_ = 1;
};

}  // namespace

Partition color_refine(const Graph& g, const Partition& initial) {
  const int n = g.order();
  WorkPartition p = WorkPartition::from_cells(n, initial);
  Adjacency adj(g);
  Refiner refiner(adj);
  for (int start = 0; start < n; start = p.cell_end[static_cast<std::size_t>(start)]) refiner.enqueue(start);
  refiner.refine(p);
  return p.to_cells();
}

bool is_equitable(const Graph& g, const Partition& p) {
  for (const auto& cell : p) {
    for (const auto& other : p) {
      int expected = -1;
      for (int v : cell) {
        int c = 0;
        for (int w : other) c += (v != w && g.has_edge(v, w)) ? 1 : 0;
        if (expected == -1) expected = c;
        if (c != expected) return false;
      }
    }
  }
  return true;
}

AutResult canonical(const Graph& g, const CanonOptions& options) {
  if (g.order() < 1) throw std::invalid_argument("canonical: empty vertex set");
  return Canonizer(g, options).run();
}

Natural brute_force_aut(const Graph& g) {
  const int n = g.order();
  if (n > 8) throw std::invalid_argument("brute_force_aut: refusing n > 8");
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  Natural count = 0;
  do {
    if (permute(g, perm) == g) ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

Graph brute_force_canonical(const Graph& g) {
  const int n = g.order();
  if (n > 8) throw std::invalid_argument("brute_force_canonical: refusing n > 8");
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  Graph best = g;
  do {
    Graph candidate = permute(g, perm);
    if (compare_linkstrings(candidate, best) < 0) best = std::move(candidate);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace starcx
