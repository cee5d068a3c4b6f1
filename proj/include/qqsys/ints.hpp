#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace qqsys {

// All arithmetic in this library is exact.  Integers are arbitrary
// precision; there is no floating point anywhere.
using Int = boost::multiprecision::cpp_int;

inline Int int_pow(Int base, unsigned long e) {
  Int r = 1;
  while (e) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

// Exact integer division; throws if the quotient is not integral.
inline Int exact_div(const Int& a, const Int& b) {
  if (b == 0) throw std::domain_error("exact_div: division by zero");
  Int q = a / b, r = a % b;
  if (r != 0) throw std::domain_error("exact_div: non-exact division");
  return q;
}

inline std::string to_string(const Int& x) { return x.str(); }

}  // namespace qqsys
