#include "starcx/natural.hpp"

#include <cmath>
#include <stdexcept>

namespace starcx {

Natural factorial(int k) {
  if (k < 0) throw std::domain_error("factorial: negative argument");
  Natural r = 1;
  for (int j = 2; j <= k; ++j) r *= j;
  return r;
}

Natural falling_factorial(int n, int k) {
  if (k < 0 || k > n) throw std::domain_error("falling_factorial: need 0 <= k <= n");
  Natural r = 1;
  for (int j = 0; j < k; ++j) r *= (n - j);
  return r;
}

double log2_natural(const Natural& x) {
  if (x <= 0) throw std::domain_error("log2_natural: argument must be positive");
  const auto top = static_cast<long>(boost::multiprecision::msb(x));
  if (top < 63) return std::log2(static_cast<double>(static_cast<unsigned long long>(x)));
  // Keep the leading 63 bits; the dropped tail changes the result by < 2^-62 relative.
  const long shift = top - 62;
  const auto head = static_cast<unsigned long long>(x >> shift);
  return static_cast<double>(shift) + std::log2(static_cast<double>(head));
}

std::string to_string(const Natural& x) { return x.str(); }

}  // namespace starcx
