#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace bsll {

// Exact arithmetic only: covolumes and sheet ratios are equalities of
// rationals, never float comparisons.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt rat_num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt rat_den(const Rational& r) { return boost::multiprecision::denominator(r); }

} // namespace bsll
