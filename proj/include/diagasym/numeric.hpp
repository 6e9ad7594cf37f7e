#pragma once

#include <complex>
#include <string>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

namespace diagasym {

// Exact layer: arbitrary-precision rationals (GMP-backed).
using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

// High-precision float layer used when exact values must be compared against
// exponentially large leading terms. 80 decimal digits ~ 266 bits.
using BigFloat =
    boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<80>>;

using Complex = std::complex<double>;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline BigFloat to_bigfloat(const Rational& q) { return BigFloat(q); }

// Fixed-width float formatting (17 significant digits) so that emitted
// reports are byte-stable across runs and platforms with the same libc.
std::string format_double(double x);

}  // namespace diagasym
