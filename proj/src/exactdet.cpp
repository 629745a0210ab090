#include "exactdet.hpp"

#include <cmath>
#include <stdexcept>

#include "gammalog.hpp"

namespace polydet::exactdet {

namespace {

void require_positive_order(unsigned n) {
  if (n < 1) throw std::invalid_argument("operator half-order n must be >= 1");
}

template <class Real>
void require_positive_length(const Real& T) {
  if (!(T > 0)) throw std::invalid_argument("interval length T must be > 0");
}

// Fraction-free (Bareiss) elimination; exact for integer entries. Row-major.
BigInt bareiss_det(std::vector<BigInt>& a, unsigned n) {
  int sign = 1;
  BigInt denom(1);
  for (unsigned k = 0; k + 1 < n; ++k) {
    unsigned p = k;
    while (p < n && a[p * n + k] == 0) ++p;
    if (p == n) return BigInt(0);
    if (p != k) {
      for (unsigned j = 0; j < n; ++j) std::swap(a[p * n + j], a[k * n + j]);
      sign = -sign;
    }
    for (unsigned i = k + 1; i < n; ++i) {
      for (unsigned j = k + 1; j < n; ++j) {
        a[i * n + j] = (a[k * n + k] * a[i * n + j] - a[i * n + k] * a[k * n + j]) / denom;
      }
      a[i * n + k] = 0;
    }
    denom = a[k * n + k];
  }
  return sign * a[(n - 1) * n + (n - 1)];
}

BigInt binomial_exact(unsigned top, unsigned bottom) {
  if (bottom > top) return BigInt(0);
  BigInt r(1);
  for (unsigned i = 0; i < bottom; ++i) {
    r = r * (top - i) / (i + 1);
  }
  return r;
}

}  // namespace

template <class Real>
Real log_abs_h_alpha(unsigned n) {
  using std::log;
  using std::sin;
  require_positive_order(n);
  const Real pi = const_pi<Real>();
  const Real log2 = log(Real(2));
  KahanSum<Real> sum;
  for (unsigned j = 1; j < n; ++j) {
    const Real arg = (Real(j) * pi) / (2 * Real(n));
    sum.add(Real(n - j) * log(sin(arg)));
  }
  return (Real(n) * (n - 1) / 2) * log2 + sum.value();
}

std::complex<double> vandermonde_h_alpha(unsigned n) {
  require_positive_order(n);
  if (n > 32) throw std::out_of_range("vandermonde_h_alpha: supported range is 1 <= n <= 32");
  const double pi = const_pi<double>();
  std::vector<std::complex<double>> w(n);
  for (unsigned j = 0; j < n; ++j) {
    w[j] = std::polar(1.0, pi * j / n);
  }
  std::complex<double> prod(1.0, 0.0);
  for (unsigned j = 1; j < n; ++j) {
    for (unsigned k = 0; k < j; ++k) {
      prod *= w[j] - w[k];
    }
  }
  return prod;
}

template <class Real>
Real log_factorial_ratio(unsigned n) {
  require_positive_order(n);
  KahanSum<Real> sum;
  for (unsigned k = 0; k < n; ++k) {
    sum.add(log_factorial<Real>(k) - log_factorial<Real>(n + k));
  }
  return sum.value();
}

template <class Real>
LogDet<Real> log_det_polyharmonic(unsigned n, const Real& T) {
  using std::log;
  require_positive_order(n);
  require_positive_length(T);
  const Real n_real(n);

  LogDet<Real> out;
  out.breakdown.reserve(4);
  out.breakdown.emplace_back("T-power", n_real * n_real * log(T / 2));
  out.breakdown.emplace_back("prefactor", n_real * log(4 * n_real));
  const Real sine_sum = log_abs_h_alpha<Real>(n) - (n_real * (n - 1) / 2) * log(Real(2));
  out.breakdown.emplace_back("h-alpha", -2 * sine_sum);
  out.breakdown.emplace_back("factorial-ratio", log_factorial_ratio<Real>(n));

  KahanSum<Real> total;
  for (const auto& [name, value] : out.breakdown) total.add(value);
  out.log_modulus = total.value();
  out.phase = 0.0;
  return out;
}

template <class Real>
Real log_det_polyharmonic_alt(unsigned n, const Real& T) {
  using std::log;
  require_positive_order(n);
  require_positive_length(T);
  const Real n_real(n);
  return n_real * log(n_real) + n_real * log(Real(2)) - 2 * log_abs_h_alpha<Real>(n) +
         n_real * n_real * log(T) + log_factorial_ratio<Real>(n);
}

template <class Real>
Real navier_log_det(unsigned n, const Real& T) {
  using std::log;
  require_positive_order(n);
  require_positive_length(T);
  return Real(n) * (log(Real(2)) + log(T));
}

BigInt binomial_matrix_det(unsigned n) {
  require_positive_order(n);
  if (n > 64) throw std::out_of_range("binomial_matrix_det: supported range is 1 <= n <= 64");
  std::vector<BigInt> a(static_cast<std::size_t>(n) * n);
  for (unsigned i = 1; i <= n; ++i) {
    for (unsigned j = 1; j <= n; ++j) {
      a[(i - 1) * n + (j - 1)] = binomial_exact(n + j - 1, i - 1);
    }
  }
  return bareiss_det(a, n);
}

Rational factorial_toeplitz_det(unsigned n, const Rational& T) {
  require_positive_order(n);
  if (n > 20) throw std::out_of_range("factorial_toeplitz_det: supported range is 1 <= n <= 20");
  if (!(T > 0)) throw std::invalid_argument("factorial_toeplitz_det: T must be > 0");

  const BigInt p = numerator(T);
  const BigInt q = denominator(T);

  // Entry (i,j) = T^{n+j-i} / (n+j-i)! with exponent e = n+j-i in [1, 2n-1].
  // Scaling every entry by L = q^{2n-1} (2n-1)! clears all denominators:
  // the integer matrix has entries p^e q^{2n-1-e} (2n-1)!/e!.
  BigInt fact(1);
  std::vector<BigInt> fact_table(2 * n);  // fact_table[e] = e!
  fact_table[0] = 1;
  for (unsigned e = 1; e < 2 * n; ++e) {
    fact *= e;
    fact_table[e] = fact;
  }
  const BigInt top_factorial = fact_table[2 * n - 1];

  std::vector<BigInt> pow_p(2 * n), pow_q(2 * n);
  pow_p[0] = 1;
  pow_q[0] = 1;
  for (unsigned e = 1; e < 2 * n; ++e) {
    pow_p[e] = pow_p[e - 1] * p;
    pow_q[e] = pow_q[e - 1] * q;
  }

  std::vector<BigInt> a(static_cast<std::size_t>(n) * n);
  for (unsigned i = 1; i <= n; ++i) {
    for (unsigned j = 1; j <= n; ++j) {
      const unsigned e = n + j - i;
      a[(i - 1) * n + (j - 1)] = pow_p[e] * pow_q[2 * n - 1 - e] * (top_factorial / fact_table[e]);
    }
  }
  const BigInt det_scaled = bareiss_det(a, n);

  BigInt scale(1);  // L^n
  const BigInt L = pow_q[2 * n - 1] * top_factorial;
  for (unsigned i = 0; i < n; ++i) scale *= L;
  return Rational(det_scaled, scale);
}

Rational factorial_toeplitz_closed_form(unsigned n, const Rational& T) {
  require_positive_order(n);
  Rational t_power(1);
  for (unsigned i = 0; i < n * n; ++i) t_power *= T;
  Rational ratio(1);
  BigInt num(1), den(1);
  for (unsigned j = 0; j < n; ++j) {
    // j! / (n+j)!
    BigInt block(1);
    for (unsigned v = j + 1; v <= n + j; ++v) block *= v;
    ratio /= Rational(block);
  }
  return t_power * ratio;
}

template struct LogDet<double>;
template struct LogDet<BigFloat>;
template double log_abs_h_alpha<double>(unsigned);
template BigFloat log_abs_h_alpha<BigFloat>(unsigned);
template double log_factorial_ratio<double>(unsigned);
template BigFloat log_factorial_ratio<BigFloat>(unsigned);
template LogDet<double> log_det_polyharmonic<double>(unsigned, const double&);
template LogDet<BigFloat> log_det_polyharmonic<BigFloat>(unsigned, const BigFloat&);
template double log_det_polyharmonic_alt<double>(unsigned, const double&);
template BigFloat log_det_polyharmonic_alt<BigFloat>(unsigned, const BigFloat&);
template double navier_log_det<double>(unsigned, const double&);
template BigFloat navier_log_det<BigFloat>(unsigned, const BigFloat&);

}  // namespace polydet::exactdet
