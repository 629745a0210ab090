#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "real.hpp"

namespace polydet::exactdet {

// Log-domain determinant value: natural log of the modulus, phase in
// (-pi, pi], and the named additive components the log was assembled from.
template <class Real>
struct LogDet {
  Real log_modulus{0};
  double phase{0};
  std::vector<std::pair<std::string, Real>> breakdown;
};

// (n(n-1)/2) log 2 + sum_{j=1}^{n-1} (n-j) log sin(j pi / (2n)).
template <class Real>
Real log_abs_h_alpha(unsigned n);

// prod_{1 <= k < j <= n} (w_j - w_k), w_j = exp(i pi (j-1)/n), as the
// explicit pairwise product. Double-precision cross-check companion of
// log_abs_h_alpha; supported for n <= 32.
std::complex<double> vandermonde_h_alpha(unsigned n);

// sum_{k=0}^{n-1} [ log k! - log (n+k)! ].
template <class Real>
Real log_factorial_ratio(unsigned n);

// log det of (-1)^n d^{2n} on (0,T), Dirichlet conditions, assembled as
// n^2 log(T/2) + n log(4n) - 2 * (sine product) + factorial ratio.
template <class Real>
LogDet<Real> log_det_polyharmonic(unsigned n, const Real& T);

// Algebraically equivalent rearrangement,
// n log n + n log 2 - 2 log F(n) + n^2 log T + factorial ratio,
// kept as an independent evaluation route for consistency checks.
template <class Real>
Real log_det_polyharmonic_alt(unsigned n, const Real& T);

// n (log 2 + log T): log det under Navier conditions.
template <class Real>
Real navier_log_det(unsigned n, const Real& T);

// Determinant of the n x n matrix with entry (i,j) = C(n+j-1, i-1),
// exact integer arithmetic (fraction-free elimination). 1 <= n <= 64.
BigInt binomial_matrix_det(unsigned n);

// Determinant of the n x n matrix with entry (i,j) = T^{n+j-i}/(n+j-i)!,
// exact rational arithmetic. 1 <= n <= 20, T > 0.
Rational factorial_toeplitz_det(unsigned n, const Rational& T);

// T^{n^2} prod_{j=0}^{n-1} j!/(n+j)! as an exact rational.
Rational factorial_toeplitz_closed_form(unsigned n, const Rational& T);

extern template struct LogDet<double>;
extern template struct LogDet<BigFloat>;
extern template double log_abs_h_alpha<double>(unsigned);
extern template BigFloat log_abs_h_alpha<BigFloat>(unsigned);
extern template double log_factorial_ratio<double>(unsigned);
extern template BigFloat log_factorial_ratio<BigFloat>(unsigned);
extern template LogDet<double> log_det_polyharmonic<double>(unsigned, const double&);
extern template LogDet<BigFloat> log_det_polyharmonic<BigFloat>(unsigned, const BigFloat&);
extern template double log_det_polyharmonic_alt<double>(unsigned, const double&);
extern template BigFloat log_det_polyharmonic_alt<BigFloat>(unsigned, const BigFloat&);
extern template double navier_log_det<double>(unsigned, const double&);
extern template BigFloat navier_log_det<BigFloat>(unsigned, const BigFloat&);

}  // namespace polydet::exactdet
