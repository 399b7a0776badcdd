#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace starcx {

/// Arbitrary-precision natural number (group orders, recipe multiplicities).
using Natural = boost::multiprecision::cpp_int;

Natural factorial(int k);

/// n! / (n-k)!
Natural falling_factorial(int n, int k);

/// log2 of a positive natural, accurate to double precision for any magnitude.
double log2_natural(const Natural& x);

std::string to_string(const Natural& x);

}  // namespace starcx
