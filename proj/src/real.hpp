#pragma once

#ifdef __FAST_MATH__
#error "compensated summation requires strict IEEE arithmetic; do not build with -ffast-math"
#endif

#include <boost/multiprecision/mpfr.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <cmath>
#include <cstdlib>
#include <string>

namespace polydet {

// Runtime-precision binary float (MPFR backend, no expression templates so
// results can be passed through generic code and the Complex type below).
using BigFloat = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                               boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

inline constexpr unsigned kDoubleBits = 53;
inline constexpr unsigned kDefaultBigBits = 128;

// The MPFR default precision is process-global (atomic in this boost
// version). Callers running concurrently must agree on one precision;
// the double path does not touch it.
inline void set_working_precision_bits(unsigned bits) {
  if (bits < kDoubleBits) bits = kDoubleBits;
  // digits10 chosen so the realized mantissa is >= bits.
  unsigned digits10 = static_cast<unsigned>(bits * 0.30103) + 2;
  if (BigFloat::default_precision() != digits10) BigFloat::default_precision(digits10);
}

struct PrecisionScope {
  explicit PrecisionScope(unsigned bits) { set_working_precision_bits(bits); }
};

// Kahan compensated accumulation; instantiated for double and BigFloat.
template <class Real>
class KahanSum {
 public:
  void add(const Real& v) {
    const Real y = v - carry_;
    const Real t = sum_ + y;
    carry_ = (t - sum_) - y;
    sum_ = t;
  }
  const Real& value() const { return sum_; }

 private:
  Real sum_{0};
  Real carry_{0};
};

namespace detail {
// 50-digit decimal literals; parsed at the active precision on each use so
// extended-precision callers always see a correctly rounded constant.
inline constexpr const char* kPiDigits =
    "3.14159265358979323846264338327950288419716939937511";
inline constexpr const char* kZeta3Digits =
    "1.20205690315959428539973816151144999076498629234050";
inline constexpr const char* kEulerGammaDigits =
    "0.57721566490153286060651209008240243104215933593992";
inline constexpr const char* kGlaisherDigits =
    "1.28242712910062263687534256886979172776768892732500";

template <class Real>
inline Real parse_digits(const char* s) {
  return Real(s);
}
template <>
inline double parse_digits<double>(const char* s) {
  return std::strtod(s, nullptr);
}
}  // namespace detail

template <class Real>
inline Real const_pi() {
  return detail::parse_digits<Real>(detail::kPiDigits);
}
template <class Real>
inline Real const_zeta3() {
  return detail::parse_digits<Real>(detail::kZeta3Digits);
}
template <class Real>
inline Real const_euler_gamma() {
  return detail::parse_digits<Real>(detail::kEulerGammaDigits);
}
template <class Real>
inline Real const_glaisher() {
  return detail::parse_digits<Real>(detail::kGlaisherDigits);
}

template <class Real>
inline Real machine_epsilon() {
  return std::numeric_limits<Real>::epsilon();
}
template <>
inline BigFloat machine_epsilon<BigFloat>() {
  // 2^(1-p) for the currently active precision.
  BigFloat one(1);
  return ldexp(one, 1 - static_cast<int>(mpfr_get_prec(one.backend().data())));
}

inline double to_double(double x) { return x; }
inline double to_double(const BigFloat& x) { return x.convert_to<double>(); }

template <class Real>
inline std::string to_digit_string(const Real& x, unsigned digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", static_cast<int>(digits), static_cast<double>(x));
  return buf;
}
template <>
inline std::string to_digit_string<BigFloat>(const BigFloat& x, unsigned digits) {
  return x.str(digits);
}

}  // namespace polydet
