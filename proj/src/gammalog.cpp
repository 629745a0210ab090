#include "gammalog.hpp"

#include <cmath>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace polydet {

namespace {

std::mutex g_bernoulli_mutex;
std::vector<Rational> g_bernoulli;  // B_0, B_1, ...

void grow_bernoulli_locked(unsigned m) {
  if (g_bernoulli.empty()) {
    g_bernoulli.push_back(Rational(1));
    g_bernoulli.push_back(Rational(-1, 2));
  }
  while (g_bernoulli.size() <= m) {
    const unsigned k = static_cast<unsigned>(g_bernoulli.size());
    if (k % 2 == 1) {
      g_bernoulli.push_back(Rational(0));
      continue;
    }
    // sum_{j=0}^{k} C(k+1, j) B_j = 0
    Rational acc(0);
    BigInt binom(1);  // C(k+1, 0)
    for (unsigned j = 0; j < k; ++j) {
      acc += Rational(binom) * g_bernoulli[j];
      binom = binom * (k + 1 - j) / (j + 1);
    }
    g_bernoulli.push_back(-acc / (k + 1));
  }
}

BigInt exact_factorial(std::uint64_t m) {
  BigInt f(1);
  for (std::uint64_t i = 2; i <= m; ++i) f *= i;
  return f;
}

template <class Real>
unsigned active_mantissa_bits() {
  return kDoubleBits;
}
template <>
unsigned active_mantissa_bits<BigFloat>() {
  BigFloat probe(1);
  return static_cast<unsigned>(mpfr_get_prec(probe.backend().data()));
}

// Correctly rounded double(log(m!)) through a fixed-precision mpfr_t; does
// not touch the process-global default precision.
double log_exact_factorial_as_double(std::uint64_t m) {
  const BigInt f = exact_factorial(m);
  mpfr_t t;
  mpfr_init2(t, 96);
  mpfr_set_z(t, f.backend().data(), MPFR_RNDN);
  mpfr_log(t, t, MPFR_RNDN);
  const double out = mpfr_get_d(t, MPFR_RNDN);
  mpfr_clear(t);
  return out;
}

template <class Real>
Real log_of_exact_factorial(std::uint64_t m) {
  return log(Real(exact_factorial(m)));
}
template <>
double log_of_exact_factorial<double>(std::uint64_t m) {
  return log_exact_factorial_as_double(m);
}

}  // namespace

const Rational& bernoulli_number(unsigned m) {
  std::lock_guard<std::mutex> lock(g_bernoulli_mutex);
  grow_bernoulli_locked(m);
  return g_bernoulli[m];
}

template <class Real>
Real zeta_even(unsigned s) {
  if (s == 0) throw std::invalid_argument("zeta_even: s must be >= 1");
  using std::pow;
  const Rational b = bernoulli_number(2 * s);
  const Rational coeff = abs(b) / (Rational(2) * Rational(exact_factorial(2 * s)));
  const Real two_pi = 2 * const_pi<Real>();
  return pow(two_pi, static_cast<int>(2 * s)) * Real(coeff);
}

template <class Real>
Real log_factorial(std::uint64_t m) {
  using std::abs;
  using std::log;
  const unsigned bits = active_mantissa_bits<Real>();
  // Stirling truncation error at argument m0 behaves like e^{-2*pi*m0};
  // this threshold keeps it below 2^-bits with margin.
  const std::uint64_t threshold = std::max<std::uint64_t>(32, bits / 4 + 16);
  if (m < threshold) {
    if constexpr (std::is_same_v<Real, double>) {
      static const std::vector<double>& table = *[] {
        auto* t = new std::vector<double>(64);
        for (unsigned i = 0; i < t->size(); ++i) (*t)[i] = log_exact_factorial_as_double(i);
        return t;
      }();
      return table[m];
    }
    return log_of_exact_factorial<Real>(m);
  }

  // log m! = (m + 1/2) log m - m + (1/2) log(2 pi)
  //          + sum_{j>=1} B_{2j} / (2j (2j-1) m^{2j-1})
  const Real x(m);
  const Real log_x = log(x);
  const Real lead = (x + Real(1) / 2) * log_x - x + log(2 * const_pi<Real>()) / 2;
  const Real eps = machine_epsilon<Real>();
  const Real inv_x2 = 1 / (x * x);
  Real power = 1 / x;  // x^{-(2j-1)}
  Real prev_mag(std::numeric_limits<double>::max());
  KahanSum<Real> tail;
  for (unsigned j = 1;; ++j) {
    const Rational& b = bernoulli_number(2 * j);
    const Real term = Real(b / (Rational(2 * j) * Rational(2 * j - 1))) * power;
    const Real mag = abs(term);
    if (mag >= prev_mag) break;  // asymptotic series bottomed out
    tail.add(term);
    if (mag <= lead * eps / 4) break;
    prev_mag = mag;
    power *= inv_x2;
  }
  return lead + tail.value();
}

template double zeta_even<double>(unsigned);
template BigFloat zeta_even<BigFloat>(unsigned);
template double log_factorial<double>(std::uint64_t);
template BigFloat log_factorial<BigFloat>(std::uint64_t);

}  // namespace polydet
