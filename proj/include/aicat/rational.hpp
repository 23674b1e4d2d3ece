#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <string>

namespace aicat {

// Exact rational arithmetic for distribution weights and quantitative truth
// values.  Desk-scale inputs keep numerators/denominators tiny, so a 64-bit
// backing type is plenty.
using Rational = boost::rational<long long>;

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

inline std::string rat_str(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace aicat
