#include "starcx/walker.hpp"

#include "parallel.hpp"
#include "starcx/automorphism.hpp"

#include <absl/container/flat_hash_map.h>

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <exception>
#include <map>
#include <mutex>
#include <span>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace starcx {

namespace {

using detail::parallel_for;

using u128 = unsigned __int128;

constexpr int kMaxWalkStars = 14;
constexpr int kTaskShift = 40;
constexpr std::uint64_t kOrdinalMask = (std::uint64_t{1} << kTaskShift) - 1;

// Bit layout of a labeled walk result. Hubs are the first k vertices; every
// other vertex sees exactly the stars of its hub neighbours, so the graph is
// fixed by the pairs among hubs plus, per hub, whether it is joined to the
// non-hub vertices. Pairs of two non-hubs never appear: unions and
// intersections of stars cannot create them.
struct Layout {
  int n = 0;
  int k = 0;
  bool singles = false;

  int pair_bits() const { return k * (k - 1) / 2; }
  int bits() const { return pair_bits() + (singles ? k : 0); }
  int pair_pos(int i, int j) const { return i * k - i * (i + 1) / 2 + (j - i - 1); }
  int single_pos(int i) const { return pair_bits() + i; }
};

template <class Word>
Word bit(int pos) {
  return Word{1} << pos;
}

template <class Word>
std::vector<Word> star_masks(const Layout& layout) {
  std::vector<Word> stars(static_cast<std::size_t>(layout.k), Word{0});
  for (int h = 0; h < layout.k; ++h) {
    Word m{0};
    for (int j = 0; j < layout.k; ++j) {
      if (j != h) m |= bit<Word>(layout.pair_pos(std::min(h, j), std::max(h, j)));
    }
    if (layout.singles) m |= bit<Word>(layout.single_pos(h));
    stars[static_cast<std::size_t>(h)] = m;
  }
  return stars;
}

template <class Word>
Graph expand(Word sig, const Layout& layout) {
  Graph g(layout.n);
  for (int i = 0; i < layout.k; ++i) {
    for (int j = i + 1; j < layout.k; ++j) {
      if ((sig >> layout.pair_pos(i, j)) & 1U) g.set_edge(i, j);
    }
    if (layout.singles && ((sig >> layout.single_pos(i)) & 1U)) {
      for (int x = layout.k; x < layout.n; ++x) g.set_edge(i, x);
    }
  }
  return g;
}

std::uint64_t fmix64(std::uint64_t x) {
  x ^= x >> 33;
  x *= 0xff51afd7ed558ccdULL;
  x ^= x >> 33;
  x *= 0xc4ceb9fe1a85ec53ULL;
  return x ^ (x >> 33);
}

struct SigHash {
  std::size_t operator()(std::uint64_t x) const { return fmix64(x); }
  std::size_t operator()(u128 x) const {
    return fmix64(static_cast<std::uint64_t>(x) ^ fmix64(static_cast<std::uint64_t>(x >> 64)));
  }
};

struct SigEntry {
  u128 weight = 0;
  std::uint64_t first = ~std::uint64_t{0};
};

template <class Word>
using SigMap = absl::flat_hash_map<Word, SigEntry, SigHash>;

// Depth-first generator of reduced recipes in lexicographic symbol-code order:
// push codes 0..n-1 (existing hubs, then the next fresh hub), n = intersection,
// n+1 = union. Stops at `limit` symbols and hands the state to the visitor.
template <class Word, class Visit>
class RecipeDfs {
 public:
  RecipeDfs(const std::vector<Word>& stars, int n, int s, int limit, Visit& visit)
      : stars_(stars.data()), max_hubs_(static_cast<int>(stars.size())), n_(n), s_(s), limit_(limit), visit_(visit) {}

  void run(std::span<const std::uint8_t> prefix) {
    sp_ = pushes_ = used_ = pos_ = 0;
    for (std::uint8_t code : prefix) {
      tokens_[static_cast<std::size_t>(pos_++)] = code;
      if (code < n_) {
        stack_[static_cast<std::size_t>(sp_++)] = stars_[code];
        ++pushes_;
        used_ = std::max(used_, code + 1);
      } else {
        const Word b = stack_[static_cast<std::size_t>(--sp_)];
        Word& a = stack_[static_cast<std::size_t>(sp_ - 1)];
        a = code == n_ ? (a & b) : (a | b);
      }
    }
    step();
  }

 private:
  void step() {
    if (pos_ == limit_) {
      visit_(stack_[0], used_, std::span<const std::uint8_t>(tokens_.data(), static_cast<std::size_t>(pos_)));
      return;
    }
    if (pushes_ <= s_) {
      const int fresh = used_ < max_hubs_ ? used_ : -1;
      const int top = fresh >= 0 ? fresh : used_ - 1;
      for (int h = 0; h <= top; ++h) {
        tokens_[static_cast<std::size_t>(pos_++)] = static_cast<std::uint8_t>(h);
        stack_[static_cast<std::size_t>(sp_++)] = stars_[h];
        ++pushes_;
        if (h == fresh) ++used_;
        step();
        if (h == fresh) --used_;
        --pushes_;
        --sp_;
        --pos_;
      }
    }
    if (sp_ >= 2) {
      const Word b = stack_[static_cast<std::size_t>(sp_ - 1)];
      const Word a = stack_[static_cast<std::size_t>(sp_ - 2)];
      --sp_;
      tokens_[static_cast<std::size_t>(pos_++)] = static_cast<std::uint8_t>(n_);
      stack_[static_cast<std::size_t>(sp_ - 1)] = a & b;
      step();
      tokens_[static_cast<std::size_t>(pos_ - 1)] = static_cast<std::uint8_t>(n_ + 1);
      stack_[static_cast<std::size_t>(sp_ - 1)] = a | b;
      step();
      --pos_;
      stack_[static_cast<std::size_t>(sp_ - 1)] = a;
      stack_[static_cast<std::size_t>(sp_++)] = b;
    }
  }

  const Word* stars_;
  int max_hubs_;
  int n_;
  int s_;
  int limit_;
  Visit& visit_;
  std::array<Word, kMaxWalkStars + 2> stack_{};
  std::array<std::uint8_t, 2 * kMaxWalkStars + 2> tokens_{};
  int sp_ = 0;
  int pushes_ = 0;
  int used_ = 0;
  int pos_ = 0;
};

Recipe recipe_from_codes(std::span<const std::uint8_t> codes, int n) {
  std::vector<Symbol> symbols;
  symbols.reserve(codes.size());
  for (std::uint8_t c : codes) {
    if (c < n) {
      symbols.push_back(Symbol::push(c));
    } else if (c == n) {
      symbols.push_back(Symbol::intersect());
    } else {
      symbols.push_back(Symbol::unite());
    }
  }
  return Recipe(std::move(symbols));
}

Natural to_natural(u128 x) {
  Natural r = static_cast<std::uint64_t>(x >> 64);
  r <<= 64;
  r += static_cast<std::uint64_t>(x);
  return r;
}

template <class Word>
class Walk {
 public:
  Walk(int n, int max_s, const WalkOptions& options, const Layout& layout)
      : n_(n), max_s_(max_s), options_(options), layout_(layout), stars_(star_masks<Word>(layout)) {
    weights_.resize(static_cast<std::size_t>(layout.k) + 1);
    for (int u = 0; u <= layout.k; ++u) {
      const Natural w = falling_factorial(n, u);
      if (boost::multiprecision::msb(w) >= 120) throw std::overflow_error("walk: recipe multiplicity too large");
      const Natural mask = (Natural(1) << 64) - 1;
      weights_[static_cast<std::size_t>(u)] =
          static_cast<u128>(static_cast<std::uint64_t>((w >> 64) & mask)) << 64 | static_cast<std::uint64_t>(w & mask);
    }
  }

  WalkTable run() {
    WalkTable table;
    table.n = n_;
    table.max_s = max_s_;
    Natural walked = 0;
    for (int s = 0; s <= max_s_; ++s) {
      const Natural size = enumeration_size(n_, s);
      if (walked + size > options_.recipe_budget) {
        table.complete = false;
        log("recipe budget reached before s=" + std::to_string(s));
        break;
      }
      walked += size;
      const auto t0 = std::chrono::steady_clock::now();
      sweep(s, size);
      table.completed_s = s;
      table.recipes_walked.push_back(size);
      const auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      std::ostringstream msg;
      msg << "s=" << s << ": " << size << " recipes, " << count_at(s) << " new classes, " << sig_class_.size()
          << " labeled graphs cached, " << secs << " s";
      log(msg.str());
    }

    for (const auto& c : classes_) {
      WalkRecord rec;
      rec.canonical = c.canonical;
      rec.star = c.star;
      rec.omega_star = to_natural(c.omega);
      rec.witness = c.witness;
      rec.c_star_extended = c.star == 0;
      rec.c_star_bits = cstar(rec, n_);
      table.records.push_back(std::move(rec));
    }
    std::sort(table.records.begin(), table.records.end(), [](const WalkRecord& a, const WalkRecord& b) {
      if (a.star != b.star) return a.star < b.star;
      return compare_linkstrings(a.canonical, b.canonical) < 0;
    });
    table.class_counts.assign(static_cast<std::size_t>(table.completed_s + 1), 0);
    for (const auto& rec : table.records) ++table.class_counts[static_cast<std::size_t>(rec.star)];
    return table;
  }

 private:
  struct ClassInfo {
    Graph canonical;
    int star = 0;
    u128 omega = 0;
    std::uint64_t witness_pos = ~std::uint64_t{0};
    Recipe witness;
  };

  void log(const std::string& msg) const {
    if (options_.log) options_.log(msg);
  }

  std::size_t count_at(int s) const {
    return static_cast<std::size_t>(
        std::count_if(classes_.begin(), classes_.end(), [&](const ClassInfo& c) { return c.star == s; }));
  }

  std::vector<std::vector<std::uint8_t>> prefixes(int s) const {
    const int length = std::min(2 * s + 1, 9);
    std::vector<std::vector<std::uint8_t>> out;
    auto collect = [&](Word, int, std::span<const std::uint8_t> tokens) { out.emplace_back(tokens.begin(), tokens.end()); };
    RecipeDfs<Word, decltype(collect)> dfs(stars_, n_, s, length, collect);
    dfs.run({});
    return out;
  }

  void sweep(int s, const Natural& expected) {
    const auto tasks = prefixes(s);
    const int shards = std::max(1, options_.shards);
    SigMap<Word> merged;
    std::mutex merge_mutex;
    std::atomic<std::uint64_t> leaves{0};

    parallel_for(shards, options_.threads, [&](int shard) {
      SigMap<Word> local;
      std::uint64_t task = 0;
      std::uint64_t ordinal = 0;
      std::uint64_t count = 0;
      auto visit = [&](Word sig, int used, std::span<const std::uint8_t>) {
        SigEntry& e = local[sig];
        if (__builtin_add_overflow(e.weight, weights_[static_cast<std::size_t>(used)], &e.weight)) {
          throw std::overflow_error("walk: recipe multiplicity overflow");
        }
        if (e.first == ~std::uint64_t{0}) e.first = (task << kTaskShift) | ordinal;
        ++ordinal;
        ++count;
      };
      RecipeDfs<Word, decltype(visit)> dfs(stars_, n_, s, 2 * s + 1, visit);
      for (std::size_t t = static_cast<std::size_t>(shard); t < tasks.size(); t += static_cast<std::size_t>(shards)) {
        task = t;
        ordinal = 0;
        dfs.run(tasks[t]);
      }
      leaves += count;
      std::lock_guard lock(merge_mutex);
      for (const auto& [sig, e] : local) {
        SigEntry& m = merged[sig];
        if (__builtin_add_overflow(m.weight, e.weight, &m.weight)) {
          throw std::overflow_error("walk: recipe multiplicity overflow");
        }
        m.first = std::min(m.first, e.first);
      }
    });
    if (Natural(leaves.load()) != expected) throw std::logic_error("walk: recipe count disagrees with enumeration_size");

    classify_new(merged, s);

    std::map<std::uint64_t, std::vector<std::pair<std::uint64_t, int>>> wanted;
    for (const auto& [sig, e] : merged) {
      const int id = sig_class_.at(sig);
      ClassInfo& c = classes_[static_cast<std::size_t>(id)];
      if (c.star < s) continue;
      if (c.star > s) throw std::logic_error("walk: class discovered out of order");
      if (__builtin_add_overflow(c.omega, e.weight, &c.omega)) {
        throw std::overflow_error("walk: recipe multiplicity overflow");
      }
      c.witness_pos = std::min(c.witness_pos, e.first);
    }
    for (std::size_t id = 0; id < classes_.size(); ++id) {
      const ClassInfo& c = classes_[id];
      if (c.star == s) wanted[c.witness_pos >> kTaskShift].emplace_back(c.witness_pos & kOrdinalMask, static_cast<int>(id));
    }
    for (auto& [task, targets] : wanted) {
      std::sort(targets.begin(), targets.end());
      std::size_t next = 0;
      std::uint64_t ordinal = 0;
      auto capture = [&](Word, int, std::span<const std::uint8_t> tokens) {
        while (next < targets.size() && targets[next].first == ordinal) {
          classes_[static_cast<std::size_t>(targets[next].second)].witness = recipe_from_codes(tokens, n_);
          ++next;
        }
        ++ordinal;
      };
      RecipeDfs<Word, decltype(capture)> dfs(stars_, n_, s, 2 * s + 1, capture);
      dfs.run(tasks[static_cast<std::size_t>(task)]);
      if (next != targets.size()) throw std::logic_error("walk: witness position not found");
    }
    for (auto& c : classes_) {
      if (c.star != s) continue;
      const Graph produced = canonical(evaluate(c.witness, n_)).canonical_graph;
      if (produced != c.canonical || c.witness.star_count() != s) {
        throw std::logic_error("walk: witness does not reproduce its class");
      }
    }
  }

  void classify_new(const SigMap<Word>& merged, int s) {
    std::vector<Word> todo;
    for (const auto& [sig, e] : merged) {
      if (!sig_class_.contains(sig)) todo.push_back(sig);
    }
    std::sort(todo.begin(), todo.end());
    std::vector<Graph> forms(todo.size());
    const int threads = std::max(1, options_.threads);
    parallel_for(threads, threads, [&](int t) {
      for (std::size_t i = static_cast<std::size_t>(t); i < todo.size(); i += static_cast<std::size_t>(threads)) {
        forms[i] = canonical(expand(todo[i], layout_)).canonical_graph;
      }
    });
    for (std::size_t i = 0; i < todo.size(); ++i) {
      std::vector<std::uint64_t> key(forms[i].words().begin(), forms[i].words().end());
      auto [it, inserted] = class_index_.try_emplace(std::move(key), static_cast<int>(classes_.size()));
      if (inserted) {
        ClassInfo c;
        c.canonical = std::move(forms[i]);
        c.star = s;
        classes_.push_back(std::move(c));
      }
      sig_class_.emplace(todo[i], it->second);
    }
  }

  int n_;
  int max_s_;
  const WalkOptions& options_;
  Layout layout_;
  std::vector<Word> stars_;
  std::vector<u128> weights_;
  absl::flat_hash_map<Word, int, SigHash> sig_class_;
  absl::flat_hash_map<std::vector<std::uint64_t>, int> class_index_;
  std::vector<ClassInfo> classes_;
};

}  // namespace

const WalkRecord* WalkTable::find(const Graph& canonical_form) const {
  for (const auto& rec : records) {
    if (rec.canonical == canonical_form) return &rec;
  }
  return nullptr;
}

Natural catalan(int s) {
  if (s < 0) throw std::domain_error("catalan: negative argument");
  Natural c = 1;
  for (int i = 0; i < s; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
  return c;
}

Natural restricted_growth_count(int length, int max_values) {
  if (length < 0 || max_values < 0) throw std::domain_error("restricted_growth_count: negative argument");
  // stirling[j] = S(len, j), advanced one position at a time.
  std::vector<Natural> stirling(static_cast<std::size_t>(length) + 1, 0);
  stirling[0] = 1;
  for (int len = 1; len <= length; ++len) {
    for (int j = len; j >= 1; --j) {
      stirling[static_cast<std::size_t>(j)] = stirling[static_cast<std::size_t>(j)] * j + stirling[static_cast<std::size_t>(j - 1)];
    }
    stirling[0] = 0;
  }
  Natural total = 0;
  for (int j = 0; j <= std::min(length, max_values); ++j) total += stirling[static_cast<std::size_t>(j)];
  return total;
}

Natural enumeration_size(int n, int s) {
  if (s < 0) throw std::domain_error("enumeration_size: negative star count");
  return restricted_growth_count(s + 1, n) * catalan(s) * (Natural(1) << s);
}

double cstar(const WalkRecord& record, int n) {
  return code_length(record.star, n).bits - log2_natural(record.omega_star);
}

WalkTable enumerate(int n, int max_s, const WalkOptions& options) {
  if (n < 2 || n > 250) throw std::domain_error("enumerate: n must lie in [2, 250]");
  if (max_s < 0 || max_s > n) throw std::domain_error("enumerate: need 0 <= max_s <= n");
  if (max_s > kMaxWalkStars) throw std::domain_error("enumerate: max_s above supported limit of 14");
  if (options.shards < 1 || options.threads < 1) throw std::domain_error("enumerate: shards and threads must be >= 1");

  Layout layout;
  layout.n = n;
  layout.k = std::min(n, max_s + 1);
  layout.singles = n > layout.k;
  if (layout.bits() <= 64) {
    Walk<std::uint64_t> walk(n, max_s, options, layout);
    return walk.run();
  }
  Walk<u128> walk(n, max_s, options, layout);
  return walk.run();
}

WalkTable brute_force_enumerate(int n, int max_s) {
  if (n < 2 || n > 4 || max_s < 0 || max_s > 3) throw std::domain_error("brute_force_enumerate: limited to n <= 4, max_s <= 3");
  struct Entry {
    int star;
    Natural omega;
    Recipe witness;
  };
  std::map<std::string, Entry> found;
  std::map<std::string, Graph> forms;
  WalkTable table;
  table.n = n;
  table.max_s = max_s;

  for (int s = 0; s <= max_s; ++s) {
    Natural walked = 0;
    // Every symbol sequence of length 2s+1 in lexicographic code order.
    std::vector<int> codes(static_cast<std::size_t>(2 * s + 1), 0);
    const int alphabet = n + 2;
    while (true) {
      std::vector<Symbol> symbols;
      int depth = 0;
      bool ok = true;
      for (int c : codes) {
        if (c < n) {
          symbols.push_back(Symbol::push(c));
          ++depth;
        } else {
          if (depth < 2) {
            ok = false;
            break;
          }
          --depth;
          symbols.push_back(c == n ? Symbol::intersect() : Symbol::unite());
        }
      }
      if (ok && depth == 1) {
        ++walked;
        Recipe r(std::move(symbols));
        const Graph form = brute_force_canonical(evaluate(r, n));
        const std::string key = form.linkstring();
        auto it = found.find(key);
        if (it == found.end()) {
          found.emplace(key, Entry{s, 1, r});
          forms.emplace(key, form);
        } else if (it->second.star == s) {
          ++it->second.omega;
        }
      }
      int pos = static_cast<int>(codes.size()) - 1;
      while (pos >= 0 && ++codes[static_cast<std::size_t>(pos)] == alphabet) codes[static_cast<std::size_t>(pos--)] = 0;
      if (pos < 0) break;
    }
    table.recipes_walked.push_back(walked);
    table.completed_s = s;
  }

  for (auto& [key, e] : found) {
    WalkRecord rec;
    rec.canonical = forms.at(key);
    rec.star = e.star;
    rec.omega_star = e.omega;
    rec.witness = e.witness;
    rec.c_star_extended = e.star == 0;
    rec.c_star_bits = cstar(rec, n);
    table.records.push_back(std::move(rec));
  }
  std::sort(table.records.begin(), table.records.end(), [](const WalkRecord& a, const WalkRecord& b) {
    if (a.star != b.star) return a.star < b.star;
    return compare_linkstrings(a.canonical, b.canonical) < 0;
  });
  table.class_counts.assign(static_cast<std::size_t>(max_s + 1), 0);
  for (const auto& rec : table.records) ++table.class_counts[static_cast<std::size_t>(rec.star)];
  return table;
}

}  // namespace starcx
