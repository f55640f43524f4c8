#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace ivck {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Rat rat_of(const Int& n) { return Rat(n); }

// Euclidean division as in SMT-LIB Ints: remainder is always in [0, |d|).
inline Int euclid_div(const Int& a, const Int& d) {
  Int q = a / d;
  Int r = a - q * d;
  if (r < 0) q += (d > 0 ? Int(-1) : Int(1));
  return q;
}

inline Int euclid_mod(const Int& a, const Int& d) {
  Int r = a % d;
  if (r < 0) r += abs(d);
  return r;
}

// Denominator of a cpp_rational is always positive, so Euclidean division
// by it is exactly floor.
inline Int rat_floor(const Rat& r) { return euclid_div(numerator(r), denominator(r)); }

inline Int rat_ceil(const Rat& r) { return -rat_floor(-r); }

inline bool rat_is_integer(const Rat& r) { return denominator(r) == 1; }

std::string rat_to_string(const Rat& r);

}  // namespace ivck
