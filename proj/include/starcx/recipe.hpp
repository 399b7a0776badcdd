#pragma once

#include "starcx/graph.hpp"

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace starcx {

/// Invalid recipe text, symbol sequence or bit stream. `position` is the
/// 1-based token number for text, the symbol index for sequences and the bit
/// offset for streams.
class RecipeError : public std::runtime_error {
 public:
  RecipeError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// One symbol of the star-recipe stack language.
struct Symbol {
  enum class Kind : std::uint8_t { Push, Intersect, Union };

  Kind kind = Kind::Push;
  int hub = 0;  // meaningful for Push only

  static constexpr Symbol push(int hub) { return {Kind::Push, hub}; }
  static constexpr Symbol intersect() { return {Kind::Intersect, 0}; }
  static constexpr Symbol unite() { return {Kind::Union, 0}; }

  bool is_push() const noexcept { return kind == Kind::Push; }

  /// Code used by the bit-stream format and by recipe ordering:
  /// pushes 0..n-1, then n for intersection, n+1 for union.
  int code(int n) const noexcept {
    switch (kind) {
      case Kind::Push: return hub;
      case Kind::Intersect: return n;
      case Kind::Union: return n + 1;
    }
    return -1;
  }

  friend bool operator==(const Symbol&, const Symbol&) = default;
};

/// A well-formed RPN program over elementary stars: every proper prefix keeps
/// at least one operand on the stack and the whole program leaves exactly one.
class Recipe {
 public:
  Recipe() = default;
  /// Validates stack discipline; hub bounds are checked against n by evaluate().
  explicit Recipe(std::vector<Symbol> symbols);

  const std::vector<Symbol>& symbols() const noexcept { return symbols_; }
  /// Number of operators, i.e. the star count this recipe witnesses.
  int star_count() const noexcept { return operators_; }
  int push_count() const noexcept { return operators_ + 1; }
  int max_hub() const noexcept { return max_hub_; }
  /// Number of distinct hubs pushed.
  int distinct_hubs() const;

  /// Lexicographic order on symbol codes (see Symbol::code).
  int compare(const Recipe& other, int n) const;

  friend bool operator==(const Recipe&, const Recipe&) = default;

 private:
  std::vector<Symbol> symbols_;
  int operators_ = 0;
  int max_hub_ = -1;
};

/// Whitespace-separated tokens: decimal hubs, "&" (intersection), "|" (union).
Recipe parse_recipe(std::string_view text, int n);

std::string to_rpn(const Recipe& r);
/// Fully parenthesised infix form, e.g. "(S0 & S1) | S2".
std::string to_infix(const Recipe& r);

/// Stack-machine evaluation with Push(i) pushing star(n, i).
Graph evaluate(const Recipe& r, int n);

/// Idealised description length of one recipe:
/// 3 log2 max(s, n) + log2(n + 2) (2s + 1).
struct CodeLength {
  double bits = 0.0;
  int stars = 0;
  int n = 0;
  /// Set for s = 0, where the formula is applied by continuous extension
  /// (3 log2 n + log2(n + 2)).
  bool extended = false;
};

CodeLength code_length(int s, int n);

/// Concrete bit stream, MSB first per field: w-1 ones and a zero
/// (w = bit width of max(s, n)), n and s in w bits each, then 2s+1 symbol
/// codes of bit_width(n+1) bits.
std::string serialize_bits(const Recipe& r, int n);
std::pair<Recipe, int> deserialize_bits(std::string_view bits);

}  // namespace starcx
