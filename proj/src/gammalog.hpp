#pragma once

#include <cstdint>

#include "real.hpp"

namespace polydet {

// Exact Bernoulli number B_m (B_1 = -1/2 convention). Cached, thread-safe.
const Rational& bernoulli_number(unsigned m);

// zeta(2s) from the closed form (2*pi)^{2s} |B_{2s}| / (2 (2s)!), exact
// rational data evaluated at the active precision.
template <class Real>
Real zeta_even(unsigned s);

// log(m!) with error below the active precision: exact factorials below a
// precision-dependent threshold, Stirling's series with exact Bernoulli
// coefficients above it.
template <class Real>
Real log_factorial(std::uint64_t m);

extern template double zeta_even<double>(unsigned);
extern template BigFloat zeta_even<BigFloat>(unsigned);
extern template double log_factorial<double>(std::uint64_t);
extern template BigFloat log_factorial<BigFloat>(std::uint64_t);

}  // namespace polydet
