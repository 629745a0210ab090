#include "bounds.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

#include "exactdet.hpp"
#include "gammalog.hpp"

namespace polydet::bounds {

namespace {

void require_positive_order(unsigned n) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
}

// Summands of the k-indexed series lose all relative accuracy to
// cancellation once 1/(4k^2) is tiny; past this point they are evaluated
// through their own power series instead of the log form.
constexpr std::uint64_t kCancellationThreshold = 1000;

template <class Real>
Real log1p_generic(const Real& x) {
  return log1p(x);
}
template <>
double log1p_generic<double>(const double& x) {
  return std::log1p(x);
}

}  // namespace

template <class Real>
Real neg_log_F(unsigned n) {
  using std::log;
  using std::sin;
  require_positive_order(n);
  const Real pi = const_pi<Real>();
  KahanSum<Real> sum;
  for (unsigned j = n; j-- > 1;) {
    const Real arg = (Real(j) * pi) / (2 * Real(n));
    sum.add(Real(n - j) * log(sin(arg)));
  }
  return -(Real(n) * (n - 1) / 2) * log(Real(2)) - sum.value();
}

template <class Real>
Real lower_bound_neg_log_F(unsigned n) {
  using std::log;
  require_positive_order(n);
  const Real nn(n);
  const Real pi = const_pi<Real>();
  const Real pi2 = pi * pi;
  const Real pi4 = pi2 * pi2;
  return 7 * const_zeta3<Real>() / (4 * pi2) * nn * nn - nn * log(nn) / 2 +
         nn * (Real(-1) + log(pi) / 2) + Real(1) / 4 - pi2 / (72 * nn) - pi2 / (144 * nn * nn) -
         pi4 / (1080 * nn * nn * nn) + pi4 / (2160 * nn * nn * nn * nn);
}

template <class Real>
Real upper_bound_neg_log_F(unsigned n) {
  using std::log;
  require_positive_order(n);
  const Real nn(n);
  const Real pi = const_pi<Real>();
  const Real pi2 = pi * pi;
  return 7 * const_zeta3<Real>() / (4 * pi2) * nn * nn - nn * log(nn) / 2 +
         (log(pi) - log(Real(2)) / 2 - Real(43) / 48) * nn + log(nn) / 12 +
         (Real(3) / 16 - const_euler_gamma<Real>() / 12 - log(pi / 2)) / 2 +
         (Real(13) / 4 - pi2 / 3) / (24 * nn) + pi2 / (48 * nn * nn);
}

template <class Real>
BoundReport<Real> neg_log_F_report(unsigned n) {
  BoundReport<Real> r;
  r.n = n;
  r.lower = lower_bound_neg_log_F<Real>(n);
  r.direct = neg_log_F<Real>(n);
  r.upper = upper_bound_neg_log_F<Real>(n);
  r.slack_lower = r.direct - r.lower;
  r.slack_upper = r.upper - r.direct;
  r.certified = n >= 2 && r.slack_lower >= 0 && r.slack_upper >= 0;
  return r;
}

const std::array<SeriesInfo, 4>& series_table() {
  static const std::array<SeriesInfo, 4> table = {{
      {SeriesId::kHalfMinusTwoKsqLog, "lemma-lb2", 1.0},
      {SeriesId::kOnePlusKLogRatio, "lemma-lb3", 1.0},
      {SeriesId::kLogOneMinusQuarter, "lemma-lb4", 1.0},
      {SeriesId::kZetaEvenOverOdd, "eq-2s+1", 0.0},
  }};
  return table;
}

SeriesId series_by_name(const char* name) {
  for (const auto& info : series_table()) {
    if (std::strcmp(info.cli_name, name) == 0) return info.id;
  }
  throw std::invalid_argument(std::string("unknown series name: ") + name);
}

template <class Real>
Real series_term(SeriesId id, std::uint64_t k) {
  using std::log;
  if (k < 1) throw std::invalid_argument("series index starts at 1");
  const Real kk(k);
  switch (id) {
    case SeriesId::kHalfMinusTwoKsqLog: {
      // -1/2 - 2k^2 log(1 - 1/(4k^2))
      if (k <= kCancellationThreshold) {
        const Real x = 1 / (4 * kk * kk);
        return Real(-1) / 2 - 2 * kk * kk * log1p_generic<Real>(-x);
      }
      // = sum_{s>=1} 2 k^2 / ( (2k)^{2s+2} (s+1) )
      const Real eps = machine_epsilon<Real>();
      const Real x = 1 / (4 * kk * kk);
      Real power = x * x;  // x^{s+1} at s=1
      KahanSum<Real> sum;
      for (unsigned s = 1;; ++s) {
        const Real term = 2 * kk * kk * power / (s + 1);
        sum.add(term);
        if (term <= sum.value() * eps) break;
        power *= x;
      }
      return sum.value();
    }
    case SeriesId::kOnePlusKLogRatio: {
      // 2 [1 + k log(1 - 1/(2k)) - k log(1 + 1/(2k))]
      if (k <= kCancellationThreshold) {
        const Real y = 1 / (2 * kk);
        return 2 * (1 + kk * log1p_generic<Real>(-y) - kk * log1p_generic<Real>(y));
      }
      // = - sum_{l>=1} 2 / ( (2k)^{2l} (2l+1) )
      const Real eps = machine_epsilon<Real>();
      const Real y2 = 1 / (4 * kk * kk);
      Real power = y2;
      KahanSum<Real> sum;
      for (unsigned l = 1;; ++l) {
        const Real term = 2 * power / (2 * l + 1);
        sum.add(term);
        if (term <= sum.value() * eps) break;
        power *= y2;
      }
      return -sum.value();
    }
    case SeriesId::kLogOneMinusQuarter:
      // log(1 - 1/(4k^2)); no cancellation, log1p keeps full accuracy.
      return log1p_generic<Real>(-1 / (4 * kk * kk));
    case SeriesId::kZetaEvenOverOdd: {
      // zeta(2s) / (2^{2s} (2s+1)) with s = k
      if (k > 512) throw std::out_of_range("series index too large for exact zeta evaluation");
      const unsigned s = static_cast<unsigned>(k);
      using std::pow;
      return zeta_even<Real>(s) / (pow(Real(4), static_cast<int>(s)) * (2 * kk + 1));
    }
  }
  throw std::logic_error("unreachable");
}

template <class Real>
Real series_target(SeriesId id) {
  using std::log;
  const Real pi = const_pi<Real>();
  switch (id) {
    case SeriesId::kHalfMinusTwoKsqLog:
      return 7 * const_zeta3<Real>() / (4 * pi * pi) + Real(1) / 4 - log(Real(2)) / 2;
    case SeriesId::kOnePlusKLogRatio:
      return Real(-1) + log(Real(2));
    case SeriesId::kLogOneMinusQuarter:
      return log(Real(2)) - log(pi);
    case SeriesId::kZetaEvenOverOdd:
      return Real(1) / 2 - log(Real(2)) / 2;
  }
  throw std::logic_error("unreachable");
}

template <class Real>
Real series_partial_sum(SeriesId id, std::uint64_t K) {
  if (K < 1) throw std::invalid_argument("K must be >= 1");
  KahanSum<Real> sum;
  for (std::uint64_t k = 1; k <= K; ++k) {
    sum.add(series_term<Real>(id, k));
  }
  return sum.value();
}

template <class Real>
std::array<Real, 3> log_bound_check(const Real& y) {
  if (!(y >= Real(-1) / 2 && y <= Real(1) / 2)) {
    throw std::domain_error("log_bound_check: y must lie in [-1/2, 1/2]");
  }
  const Real y2 = y * y;
  const Real cubic = y - y2 / 2 + y2 * y / 3;
  return {cubic - 2 * y2 * y2 / 3, log1p_generic<Real>(y), cubic};
}

template <class Real>
std::array<Real, 3> cotangent_bounds_check(const Real& x) {
  using std::cos;
  using std::sin;
  const Real pi = const_pi<Real>();
  if (!(x > 0 && x <= pi / 2)) {
    throw std::domain_error("cotangent_bounds_check: x must lie in (0, pi/2]");
  }
  return {1 / x - 4 * x / (pi * pi), cos(x) / sin(x), 1 / x};
}

template <class Real>
std::pair<Real, Real> barnes_bounds(unsigned n) {
  using std::log;
  require_positive_order(n);
  const Real nn(n);
  const Real log2 = log(Real(2));
  const Real base = -nn * nn * log(nn) + (Real(3) / 2 - 2 * log2) * nn * nn - log(nn) / 12 +
                    log2 / 12 - log(const_glaisher<Real>());
  const Real wiggle = 1 / (320 * nn * nn);
  return {base - Real(1) / 12 - wiggle, base + Real(1) / 6 + wiggle};
}

template <class Real>
Real asymptotic_logdet(unsigned n, const Real& T) {
  using std::log;
  require_positive_order(n);
  if (!(T > 0)) throw std::invalid_argument("T must be > 0");
  const Real nn(n);
  const Real pi = const_pi<Real>();
  const Real c2 = 7 * const_zeta3<Real>() / (2 * pi * pi) + Real(3) / 2 + log(T / 4);
  return -nn * nn * log(nn) + c2 * nn * nn;
}

template <class Real>
Real critical_length() {
  using std::exp;
  const Real pi = const_pi<Real>();
  return 4 * exp(-7 * const_zeta3<Real>() / (2 * pi * pi) - Real(3) / 2);
}

template <class Real>
Real logdet_lower_bound(unsigned n, const Real& T) {
  using std::log;
  require_positive_order(n);
  const Real nn(n);
  const Real pi = const_pi<Real>();
  const Real pi2 = pi * pi;
  const Real pi4 = pi2 * pi2;
  const Real c2 = 7 * const_zeta3<Real>() / (2 * pi2) + Real(3) / 2 + log(T / 4);
  return -nn * nn * log(nn) + c2 * nn * nn + (log(2 * pi) - 2) * nn - log(nn) / 12 +
         (log(Real(2)) + 5 - 12 * log(const_glaisher<Real>())) / 12 - pi2 / (36 * nn) -
         (Real(1) / 320 + pi2 / 72) / (nn * nn) - pi4 / (540 * nn * nn * nn) +
         pi4 / (1080 * nn * nn * nn * nn);
}

template <class Real>
Real logdet_upper_bound(unsigned n, const Real& T) {
  using std::log;
  require_positive_order(n);
  const Real nn(n);
  const Real pi = const_pi<Real>();
  const Real pi2 = pi * pi;
  const Real c2 = 7 * const_zeta3<Real>() / (2 * pi2) + Real(3) / 2 + log(T / 4);
  return -nn * nn * log(nn) + c2 * nn * nn + (2 * log(pi) - Real(43) / 24) * nn + log(nn) / 12 +
         (Real(17) / 4 - const_euler_gamma<Real>() + 13 * log(Real(2)) -
          12 * log(pi * const_glaisher<Real>())) /
             12 +
         (Real(13) / 4 - pi2 / 3) / (12 * nn) + (pi2 + Real(3) / 40) / (24 * nn * nn);
}

template <class Real>
BoundReport<Real> logdet_two_sided(unsigned n, const Real& T) {
  if (n < 2) throw std::invalid_argument("logdet_two_sided: certified range starts at n = 2");
  if (!(T > 0)) throw std::invalid_argument("T must be > 0");
  BoundReport<Real> r;
  r.n = n;
  r.lower = logdet_lower_bound<Real>(n, T);
  r.direct = exactdet::log_det_polyharmonic<Real>(n, T).log_modulus;
  r.upper = logdet_upper_bound<Real>(n, T);
  r.slack_lower = r.direct - r.lower;
  r.slack_upper = r.upper - r.direct;
  r.certified = r.slack_lower >= 0 && r.slack_upper >= 0;
  return r;
}

template struct BoundReport<double>;
template struct BoundReport<BigFloat>;
template double neg_log_F<double>(unsigned);
template BigFloat neg_log_F<BigFloat>(unsigned);
template double lower_bound_neg_log_F<double>(unsigned);
template BigFloat lower_bound_neg_log_F<BigFloat>(unsigned);
template double upper_bound_neg_log_F<double>(unsigned);
template BigFloat upper_bound_neg_log_F<BigFloat>(unsigned);
template BoundReport<double> neg_log_F_report<double>(unsigned);
template BoundReport<BigFloat> neg_log_F_report<BigFloat>(unsigned);
template double series_term<double>(SeriesId, std::uint64_t);
template BigFloat series_term<BigFloat>(SeriesId, std::uint64_t);
template double series_target<double>(SeriesId);
template BigFloat series_target<BigFloat>(SeriesId);
template double series_partial_sum<double>(SeriesId, std::uint64_t);
template BigFloat series_partial_sum<BigFloat>(SeriesId, std::uint64_t);
template std::array<double, 3> log_bound_check<double>(const double&);
template std::array<BigFloat, 3> log_bound_check<BigFloat>(const BigFloat&);
template std::array<double, 3> cotangent_bounds_check<double>(const double&);
template std::array<BigFloat, 3> cotangent_bounds_check<BigFloat>(const BigFloat&);
template std::pair<double, double> barnes_bounds<double>(unsigned);
template std::pair<BigFloat, BigFloat> barnes_bounds<BigFloat>(unsigned);
template double asymptotic_logdet<double>(unsigned, const double&);
template BigFloat asymptotic_logdet<BigFloat>(unsigned, const BigFloat&);
template double critical_length<double>();
template BigFloat critical_length<BigFloat>();
template double logdet_lower_bound<double>(unsigned, const double&);
template BigFloat logdet_lower_bound<BigFloat>(unsigned, const BigFloat&);
template double logdet_upper_bound<double>(unsigned, const double&);
template BigFloat logdet_upper_bound<BigFloat>(unsigned, const BigFloat&);
template BoundReport<double> logdet_two_sided<double>(unsigned, const double&);
template BoundReport<BigFloat> logdet_two_sided<BigFloat>(unsigned, const BigFloat&);

}  // namespace polydet::bounds
