#include "starcx/recipe.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <cmath>
#include <set>

namespace starcx {

Recipe::Recipe(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
  int depth = 0;
  for (std::size_t k = 0; k < symbols_.size(); ++k) {
    const Symbol& sym = symbols_[k];
    if (sym.is_push()) {
      if (sym.hub < 0) throw RecipeError("negative hub", k + 1);
      max_hub_ = std::max(max_hub_, sym.hub);
      ++depth;
    } else {
      if (depth < 2) throw RecipeError("stack underflow", k + 1);
      --depth;
      ++operators_;
    }
  }
  if (depth != 1) throw RecipeError("recipe must leave exactly one operand", symbols_.size());
}

int Recipe::distinct_hubs() const {
  std::set<int> hubs;
  for (const auto& sym : symbols_) {
    if (sym.is_push()) hubs.insert(sym.hub);
  }
  return static_cast<int>(hubs.size());
}

int Recipe::compare(const Recipe& other, int n) const {
  const std::size_t common = std::min(symbols_.size(), other.symbols_.size());
  for (std::size_t k = 0; k < common; ++k) {
    const int a = symbols_[k].code(n);
    const int b = other.symbols_[k].code(n);
    if (a != b) return a < b ? -1 : 1;
  }
  if (symbols_.size() == other.symbols_.size()) return 0;
  return symbols_.size() < other.symbols_.size() ? -1 : 1;
}

Recipe parse_recipe(std::string_view text, int n) {
  std::vector<Symbol> symbols;
  int depth = 0;
  std::size_t token = 0;
  std::size_t pos = 0;
  while (true) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos >= text.size()) break;
    std::size_t end = pos;
    while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))) ++end;
    const std::string_view tok = text.substr(pos, end - pos);
    pos = end;
    ++token;

    if (tok == "&" || tok == "|") {
      if (depth < 2) throw RecipeError("stack underflow", token);
      --depth;
      symbols.push_back(tok == "&" ? Symbol::intersect() : Symbol::unite());
      continue;
    }
    int hub = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), hub);
    if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
      throw RecipeError("unknown token '" + std::string(tok) + "'", token);
    }
    if (hub < 0 || hub >= n) throw RecipeError("hub index out of range", token);
    symbols.push_back(Symbol::push(hub));
    ++depth;
  }
  if (depth != 1) throw RecipeError("recipe must leave exactly one operand", token);
  return Recipe(std::move(symbols));
}

std::string to_rpn(const Recipe& r) {
  std::string out;
  for (const auto& sym : r.symbols()) {
    if (!out.empty()) out.push_back(' ');
    switch (sym.kind) {
      case Symbol::Kind::Push: out += std::to_string(sym.hub); break;
      case Symbol::Kind::Intersect: out.push_back('&'); break;
      case Symbol::Kind::Union: out.push_back('|'); break;
    }
  }
  return out;
}

std::string to_infix(const Recipe& r) {
  std::vector<std::string> stack;
  for (const auto& sym : r.symbols()) {
    if (sym.is_push()) {
      stack.push_back("S" + std::to_string(sym.hub));
      continue;
    }
    std::string rhs = std::move(stack.back());
    stack.pop_back();
    std::string lhs = std::move(stack.back());
    stack.pop_back();
    const char* op = sym.kind == Symbol::Kind::Intersect ? " & " : " | ";
    stack.push_back("(" + lhs + op + rhs + ")");
  }
  std::string out = std::move(stack.back());
  if (out.size() > 1 && out.front() == '(') out = out.substr(1, out.size() - 2);
  return out;
}

namespace {

// Stack entry of the evaluator. A union of stars is kept as its hub set and
// only expanded into edges when it meets an intersection or a general graph.
struct StackValue {
  bool is_hub_set = true;
  std::vector<std::uint64_t> hubs;
  Graph graph;
};

bool hub_in(const std::vector<std::uint64_t>& set, int v) { return (set[static_cast<std::size_t>(v >> 6)] >> (v & 63)) & 1U; }

Graph expand_hubs(const std::vector<std::uint64_t>& hubs, int n) {
  Graph g(n);
  for (int h = 0; h < n; ++h) {
    if (!hub_in(hubs, h)) continue;
    for (int v = 0; v < n; ++v) {
      if (v != h) g.set_edge(h, v);
    }
  }
  return g;
}

// (union of stars over X) & (union of stars over Y): every edge at a vertex of
// X & Y, plus X\Y x Y\X.
Graph intersect_hubs(const std::vector<std::uint64_t>& x, const std::vector<std::uint64_t>& y, int n) {
  Graph g(n);
  std::vector<int> only_x;
  std::vector<int> only_y;
  for (int v = 0; v < n; ++v) {
    const bool in_x = hub_in(x, v);
    const bool in_y = hub_in(y, v);
    if (in_x && in_y) {
      for (int w = 0; w < n; ++w) {
        if (w != v) g.set_edge(v, w);
      }
    } else if (in_x) {
      only_x.push_back(v);
    } else if (in_y) {
      only_y.push_back(v);
    }
  }
  for (int a : only_x) {
    for (int b : only_y) g.set_edge(a, b);
  }
  return g;
}

Graph& materialize(StackValue& v, int n) {
  if (v.is_hub_set) {
    v.graph = expand_hubs(v.hubs, n);
    v.is_hub_set = false;
  }
  return v.graph;
}

}  // namespace

Graph evaluate(const Recipe& r, int n) {
  if (n < 2) throw std::domain_error("evaluate: need n >= 2");
  if (r.max_hub() >= n) throw RecipeError("hub index out of range for n", 0);
  const std::size_t words = (static_cast<std::size_t>(n) + 63) / 64;
  std::vector<StackValue> stack;
  for (const auto& sym : r.symbols()) {
    if (sym.is_push()) {
      StackValue v;
      v.hubs.assign(words, 0);
      v.hubs[static_cast<std::size_t>(sym.hub >> 6)] |= std::uint64_t{1} << (sym.hub & 63);
      stack.push_back(std::move(v));
      continue;
    }
    StackValue rhs = std::move(stack.back());
    stack.pop_back();
    StackValue& lhs = stack.back();
    if (sym.kind == Symbol::Kind::Union) {
      if (lhs.is_hub_set && rhs.is_hub_set) {
        for (std::size_t w = 0; w < words; ++w) lhs.hubs[w] |= rhs.hubs[w];
      } else {
        materialize(lhs, n) |= materialize(rhs, n);
      }
    } else if (lhs.is_hub_set && rhs.is_hub_set) {
      lhs.graph = intersect_hubs(lhs.hubs, rhs.hubs, n);
      lhs.is_hub_set = false;
    } else {
      materialize(lhs, n) &= materialize(rhs, n);
    }
  }
  return std::move(materialize(stack.back(), n));
}

CodeLength code_length(int s, int n) {
  if (s < 0) throw std::domain_error("code_length: negative star count");
  if (n < 2) throw std::domain_error("code_length: need n >= 2");
  CodeLength c;
  c.stars = s;
  c.n = n;
  c.extended = s == 0;
  c.bits = 3.0 * std::log2(static_cast<double>(std::max(s, n))) + std::log2(static_cast<double>(n + 2)) * (2.0 * s + 1.0);
  return c;
}

namespace {

void put_bits(std::string& out, unsigned value, int width) {
  for (int b = width - 1; b >= 0; --b) out.push_back(((value >> b) & 1U) ? '1' : '0');
}

int field_width(int s, int n) { return std::bit_width(static_cast<unsigned>(std::max(s, n))); }
int symbol_width(int n) { return std::bit_width(static_cast<unsigned>(n + 1)); }

}  // namespace

std::string serialize_bits(const Recipe& r, int n) {
  if (n < 2) throw std::domain_error("serialize_bits: need n >= 2");
  if (r.max_hub() >= n) throw RecipeError("hub index out of range for n", 0);
  const int s = r.star_count();
  const int w = field_width(s, n);
  std::string out(static_cast<std::size_t>(w - 1), '1');
  out.push_back('0');
  put_bits(out, static_cast<unsigned>(n), w);
  put_bits(out, static_cast<unsigned>(s), w);
  const int sw = symbol_width(n);
  for (const auto& sym : r.symbols()) put_bits(out, static_cast<unsigned>(sym.code(n)), sw);
  return out;
}

std::pair<Recipe, int> deserialize_bits(std::string_view bits) {
  std::size_t pos = 0;
  auto read = [&](int width) -> unsigned {
    unsigned v = 0;
    for (int b = 0; b < width; ++b) {
      if (pos >= bits.size()) throw RecipeError("truncated bit stream", pos);
      const char c = bits[pos];
      if (c != '0' && c != '1') throw RecipeError("bit stream contains a non-binary character", pos);
      v = (v << 1) | (c == '1' ? 1U : 0U);
      ++pos;
    }
    return v;
  };

  int w = 1;
  while (read(1) == 1U) {
    if (++w > 30) throw RecipeError("field width prefix too long", pos);
  }
  const auto n = static_cast<int>(read(w));
  const auto s = static_cast<int>(read(w));
  if (n < 2) throw RecipeError("vertex count field below 2", pos);
  if (field_width(s, n) != w) throw RecipeError("field width does not match max(s, n)", pos);

  const int sw = symbol_width(n);
  std::vector<Symbol> symbols;
  symbols.reserve(static_cast<std::size_t>(2 * s + 1));
  for (int k = 0; k < 2 * s + 1; ++k) {
    const std::size_t at = pos;
    const auto code = static_cast<int>(read(sw));
    if (code < n) {
      symbols.push_back(Symbol::push(code));
    } else if (code == n) {
      symbols.push_back(Symbol::intersect());
    } else if (code == n + 1) {
      symbols.push_back(Symbol::unite());
    } else {
      throw RecipeError("invalid symbol value " + std::to_string(code), at);
    }
  }
  if (pos != bits.size()) throw RecipeError("trailing bits after recipe", pos);
  Recipe r(std::move(symbols));
  if (r.star_count() != s) throw RecipeError("operator count disagrees with header", pos);
  return {std::move(r), n};
}

}  // namespace starcx
