#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace zmcover {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// "p/q" with q >= 1, the exact form written to reports and CSV files.
inline std::string to_fraction_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

}  // namespace zmcover
