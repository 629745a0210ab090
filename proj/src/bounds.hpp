#pragma once

#include <array>
#include <cstdint>
#include <utility>

#include "real.hpp"

namespace polydet::bounds {

// Sandwich record: lower <= direct <= upper when certified.
template <class Real>
struct BoundReport {
  unsigned n = 0;
  Real lower{0};
  Real direct{0};
  Real upper{0};
  Real slack_lower{0};  // direct - lower
  Real slack_upper{0};  // upper - direct
  bool certified = false;
};

// -log F(n) with F(n) = 2^{n(n-1)/2} prod_{j<n} sin^{n-j}(j pi/(2n)).
// Summed in the opposite order from exactdet::log_abs_h_alpha so the
// equality between the two routes is a meaningful check.
template <class Real>
Real neg_log_F(unsigned n);

template <class Real>
Real lower_bound_neg_log_F(unsigned n);

// Valid for n >= 2; n = 1 evaluates the same expression but is excluded
// from certification.
template <class Real>
Real upper_bound_neg_log_F(unsigned n);

template <class Real>
BoundReport<Real> neg_log_F_report(unsigned n);

enum class SeriesId {
  kHalfMinusTwoKsqLog,  // CLI name "lemma-lb2"
  kOnePlusKLogRatio,    // CLI name "lemma-lb3"
  kLogOneMinusQuarter,  // CLI name "lemma-lb4"
  kZetaEvenOverOdd,     // CLI name "eq-2s+1"
};

struct SeriesInfo {
  SeriesId id;
  const char* cli_name;
  double tail_exponent;  // |tail after K| <= C / K^p (geometric series use p = 0)
};
const std::array<SeriesInfo, 4>& series_table();
SeriesId series_by_name(const char* name);  // throws std::invalid_argument

template <class Real>
Real series_term(SeriesId id, std::uint64_t k);

template <class Real>
Real series_target(SeriesId id);

template <class Real>
Real series_partial_sum(SeriesId id, std::uint64_t K);

// (lower, exact, upper) for the quartic/cubic polynomial bounds on
// log(1+y), y in [-1/2, 1/2].
template <class Real>
std::array<Real, 3> log_bound_check(const Real& y);

// (1/x - 4x/pi^2, cot x, 1/x) for x in (0, pi/2].
template <class Real>
std::array<Real, 3> cotangent_bounds_check(const Real& x);

// Two-sided bounds on log(prod j! / prod (n+j)!).
template <class Real>
std::pair<Real, Real> barnes_bounds(unsigned n);

// -n^2 log n + [7 zeta(3)/(2 pi^2) + 3/2 + log(T/4)] n^2.
template <class Real>
Real asymptotic_logdet(unsigned n, const Real& T);

// The n^2 coefficient above changes sign at T = 4 exp(-7 zeta(3)/(2 pi^2) - 3/2).
template <class Real>
Real critical_length();

template <class Real>
Real logdet_lower_bound(unsigned n, const Real& T);
template <class Real>
Real logdet_upper_bound(unsigned n, const Real& T);

// Assembles both combined bounds plus the direct closed-form value and
// certifies lower <= direct <= upper. Requires n >= 2.
template <class Real>
BoundReport<Real> logdet_two_sided(unsigned n, const Real& T);

extern template struct BoundReport<double>;
extern template struct BoundReport<BigFloat>;
extern template double neg_log_F<double>(unsigned);
extern template BigFloat neg_log_F<BigFloat>(unsigned);
extern template double lower_bound_neg_log_F<double>(unsigned);
extern template BigFloat lower_bound_neg_log_F<BigFloat>(unsigned);
extern template double upper_bound_neg_log_F<double>(unsigned);
extern template BigFloat upper_bound_neg_log_F<BigFloat>(unsigned);
extern template BoundReport<double> neg_log_F_report<double>(unsigned);
extern template BoundReport<BigFloat> neg_log_F_report<BigFloat>(unsigned);
extern template double series_term<double>(SeriesId, std::uint64_t);
extern template BigFloat series_term<BigFloat>(SeriesId, std::uint64_t);
extern template double series_target<double>(SeriesId);
extern template BigFloat series_target<BigFloat>(SeriesId);
extern template double series_partial_sum<double>(SeriesId, std::uint64_t);
extern template BigFloat series_partial_sum<BigFloat>(SeriesId, std::uint64_t);
extern template std::array<double, 3> log_bound_check<double>(const double&);
extern template std::array<BigFloat, 3> log_bound_check<BigFloat>(const BigFloat&);
extern template std::array<double, 3> cotangent_bounds_check<double>(const double&);
extern template std::array<BigFloat, 3> cotangent_bounds_check<BigFloat>(const BigFloat&);
extern template std::pair<double, double> barnes_bounds<double>(unsigned);
extern template std::pair<BigFloat, BigFloat> barnes_bounds<BigFloat>(unsigned);
extern template double asymptotic_logdet<double>(unsigned, const double&);
extern template BigFloat asymptotic_logdet<BigFloat>(unsigned, const BigFloat&);
extern template double critical_length<double>();
extern template BigFloat critical_length<BigFloat>();
extern template double logdet_lower_bound<double>(unsigned, const double&);
extern template BigFloat logdet_lower_bound<BigFloat>(unsigned, const BigFloat&);
extern template double logdet_upper_bound<double>(unsigned, const double&);
extern template BigFloat logdet_upper_bound<BigFloat>(unsigned, const BigFloat&);
extern template BoundReport<double> logdet_two_sided<double>(unsigned, const double&);
extern template BoundReport<BigFloat> logdet_two_sided<BigFloat>(unsigned, const BigFloat&);

}  // namespace polydet::bounds
