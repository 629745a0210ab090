#include "bfk.hpp"

#include <cassert>
#include <cmath>

#include "gammalog.hpp"

namespace polydet::bfk {

Cplx operator+(const Cplx& a, const Cplx& b) { return {a.re + b.re, a.im + b.im}; }
Cplx operator-(const Cplx& a, const Cplx& b) { return {a.re - b.re, a.im - b.im}; }
Cplx operator*(const Cplx& a, const Cplx& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
Cplx operator*(const BigFloat& s, const Cplx& a) { return {s * a.re, s * a.im}; }
BigFloat abs(const Cplx& a) { return hypot(a.re, a.im); }
BigFloat arg(const Cplx& a) { return atan2(a.im, a.re); }

BigFloat poly_sup_bound(const Poly& p, const BigFloat& T) {
  BigFloat bound(0), t_power(1);
  for (const Cplx& c : p) {
    bound += abs(c) * t_power;
    t_power *= T;
  }
  return bound;
}

Cplx poly_eval(const Poly& p, const BigFloat& x) {
  Cplx acc;
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    acc = x * acc + *it;
  }
  return acc;
}

Poly poly_derivative(const Poly& p, unsigned times) {
  Poly d = p;
  for (unsigned t = 0; t < times; ++t) {
    if (d.size() <= 1) return {};
    Poly next(d.size() - 1);
    for (std::size_t k = 1; k < d.size(); ++k) next[k - 1] = BigFloat(k) * d[k];
    d = std::move(next);
  }
  return d;
}

namespace {

Poly poly_add(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i < a.size()) r[i] = r[i] + a[i];
    if (i < b.size()) r[i] = r[i] + b[i];
  }
  return r;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = r[i + j] + a[i] * b[j];
    }
  }
  return r;
}

// `folds`-fold integration from 0: x^d -> x^{d+folds} d!/(d+folds)!.
Poly poly_integrate(const Poly& p, unsigned folds) {
  if (p.empty()) return {};
  Poly r(p.size() + folds);
  for (std::size_t d = 0; d < p.size(); ++d) {
    BigFloat denom(1);
    for (unsigned i = 1; i <= folds; ++i) denom *= BigFloat(d + i);
    r[d + folds] = (1 / denom) * p[d];
  }
  return r;
}

BigFloat factorial_big(unsigned m) {
  BigInt f(1);
  for (unsigned i = 2; i <= m; ++i) f *= i;
  return BigFloat(f);
}

// Tail of the truncation model sum_{p > m} T^{2pn+a} / (2pn+a)! * Q^p.
BigFloat picard_tail_model(unsigned n, unsigned a, const BigFloat& T, const BigFloat& Q,
                           unsigned m) {
  if (Q == 0) return BigFloat(0);
  const BigFloat eps = machine_epsilon<BigFloat>();
  using std::pow;
  BigFloat sum(0);
  unsigned p = m + 1;
  // B_p ratio = Q T^{2n} (2pn+a)! / (2(p+1)n+a)!; factorially decreasing,
  // so the loop terminates for every input.
  BigFloat term = pow(T, static_cast<int>(2 * p * n + a)) * pow(Q, static_cast<int>(p)) /
                  factorial_big(2 * p * n + a);
  const BigFloat t2n = pow(T, static_cast<int>(2 * n));
  for (unsigned guard = 0; guard < 100000; ++guard) {
    sum += term;
    BigFloat ratio = Q * t2n;
    for (unsigned i = 1; i <= 2 * n; ++i) ratio /= BigFloat(2 * p * n + a + i);
    term *= ratio;
    ++p;
    if (term <= sum * eps || term == 0) return sum + 2 * term;
  }
  assert(false && "picard tail model failed to converge");
  return sum;
}

void validate_potential(const PolyPotential& pot, unsigned n, const PicardLimits& limits) {
  for (std::size_t j = 0; j < pot.orders.size(); ++j) {
    if (!pot.orders[j].empty() && pot.orders[j].size() - 1 > limits.degree_cap) {
      throw degree_cap_error(
          "potential degree exceeds the configured cap; raise PicardLimits::degree_cap");
    }
  }
  if (pot.max_order() > n) {
    throw std::invalid_argument("perturbation order m must satisfy m <= n");
  }
  // Orders 2n and 2n-1 must be absent (at n = 1, m <= n still admits
  // j = 1 = 2n-1, which the pipeline's unit trace factor excludes).
  if (pot.orders.size() > 2 * n - 1 && !pot.orders[2 * n - 1].empty()) {
    throw std::invalid_argument("coefficient of order 2n-1 must vanish");
  }
  for (std::size_t j = 2 * n; j < pot.orders.size(); ++j) {
    if (!pot.orders[j].empty()) {
      throw std::invalid_argument("coefficients of order >= 2n are not lower-order terms");
    }
  }
}

}  // namespace

unsigned PolyPotential::max_order() const {
  for (std::size_t j = orders.size(); j-- > 0;) {
    for (const Cplx& c : orders[j]) {
      if (!(c.re == 0 && c.im == 0)) return static_cast<unsigned>(j);
    }
  }
  return 0;
}

bool PolyPotential::is_zero() const {
  for (const Poly& p : orders) {
    for (const Cplx& c : p) {
      if (!(c.re == 0 && c.im == 0)) return false;
    }
  }
  return true;
}

bool PolyPotential::is_real() const {
  for (const Poly& p : orders) {
    for (const Cplx& c : p) {
      if (!(c.im == 0)) return false;
    }
  }
  return true;
}

unsigned PolyPotential::max_degree() const {
  unsigned d = 0;
  for (const Poly& p : orders) {
    if (!p.empty()) d = std::max<unsigned>(d, static_cast<unsigned>(p.size() - 1));
  }
  return d;
}

PicardResult picard_solve(unsigned n, const PolyPotential& pot, const BigFloat& T, unsigned ell,
                          const BigFloat& tol, const PicardLimits& limits) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (n > kMaxPipelineOrder) throw std::out_of_range("pipeline supports 1 <= n <= 32");
  if (!(T > 0)) throw std::invalid_argument("T must be > 0");
  if (!(tol > 0)) throw std::invalid_argument("tol must be > 0");
  if (ell < n || ell > 2 * n - 1) throw std::invalid_argument("ell must lie in [n, 2n-1]");
  validate_potential(pot, n, limits);

  // Q >= max_{[0,T]} sum_j |q_j|; feeds the truncation model.
  BigFloat Q(0);
  for (const Poly& q : pot.orders) Q += poly_sup_bound(q, T);

  const BigFloat scale = pow(T, static_cast<int>(ell)) / factorial_big(ell);
  const BigFloat target = tol * scale;
  const bool multi_order = pot.max_order() >= 1;

  Poly base(ell + 1);
  base[ell] = Cplx{1 / factorial_big(ell), BigFloat(0)};

  PicardResult result;
  result.iterate = base;
  result.sweeps = 0;
  result.tail_bound = picard_tail_model(n, ell, T, Q, 0);
  if (result.tail_bound < target && !multi_order) return result;

  const BigFloat sign(n % 2 == 0 ? -1 : 1);  // (-1)^{n+1}
  Poly y = base;
  BigFloat last_change = result.tail_bound;
  for (unsigned m = 1;; ++m) {
    Poly rhs;
    for (std::size_t j = 0; j < pot.orders.size(); ++j) {
      if (pot.orders[j].empty()) continue;
      rhs = poly_add(rhs, poly_mul(pot.orders[j], poly_derivative(y, static_cast<unsigned>(j))));
    }
    for (Cplx& c : rhs) c = sign * c;
    Poly next = poly_add(base, poly_integrate(rhs, 2 * n));
    if (next.size() - 1 > limits.iterate_degree_cap) {
      throw degree_cap_error(
          "picard iterate degree exceeds the configured cap; raise "
          "PicardLimits::iterate_degree_cap");
    }
    last_change = poly_sup_bound(poly_add(next, Poly{Cplx{BigFloat(-1), BigFloat(0)}}), T);
    // ^ placeholder replaced below
    last_change = 0;
    {
      Poly diff(std::max(next.size(), y.size()));
      for (std::size_t i = 0; i < diff.size(); ++i) {
        Cplx a = i < next.size() ? next[i] : Cplx{};
        Cplx b = i < y.size() ? y[i] : Cplx{};
        diff[i] = a - b;
      }
      last_change = poly_sup_bound(diff, T);
    }
    y = std::move(next);
    result.iterate = y;
    result.sweeps = m;
    result.tail_bound = picard_tail_model(n, ell, T, Q, m);
    const bool model_ok = result.tail_bound < target;
    const bool change_ok = !multi_order || last_change < target;
    if (model_ok && change_ok) break;
    if (m > 10000) {
      assert(false && "picard iteration failed to meet its convergent bound");
      break;
    }
  }
  return result;
}

CauchyBlock cauchy_block(unsigned n, const PolyPotential& pot, const BigFloat& T,
                         const BigFloat& tol, const PicardLimits& limits) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (n > kMaxPipelineOrder) throw std::out_of_range("pipeline supports 1 <= n <= 32");
  if (!(T > 0)) throw std::invalid_argument("T must be > 0");

  CauchyBlock block;
  block.n = n;
  block.entries.assign(static_cast<std::size_t>(n) * n, Cplx{});
  block.scaling_log =
      BigFloat(n) * BigFloat(n) * log(T) + exactdet::log_factorial_ratio<BigFloat>(n);

  BigFloat Q(0);
  for (const Poly& q : pot.orders) Q += poly_sup_bound(q, T);

  for (unsigned ell = n; ell <= 2 * n - 1; ++ell) {
    const unsigned j = ell - n + 1;
    const PicardResult solved = picard_solve(n, pot, T, ell, tol, limits);
    for (unsigned i = 1; i <= n; ++i) {
      const unsigned k = i - 1;
      const Cplx value = poly_eval(poly_derivative(solved.iterate, k), T);
      // Row scale 1/(T^{n-i+1} (i-1)!), column scale (n+j-1)!/T^{j-1};
      // at q = 0 this is exactly C(n+j-1, i-1).
      const BigFloat factor =
          factorial_big(n + j - 1) / (factorial_big(k) * pow(T, static_cast<int>(n + j - i)));
      block.entries[(i - 1) * n + (j - 1)] = factor * value;

      const BigFloat entry_tail = picard_tail_model(n, ell - k, T, Q, solved.sweeps) * factor;
      if (entry_tail > block.entry_tail_max) block.entry_tail_max = entry_tail;
    }
  }
  return block;
}

std::pair<BigFloat, double> k_theta(unsigned n) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  const BigFloat nn(n);
  return {nn * log(2 * nn) - 2 * exactdet::log_abs_h_alpha<BigFloat>(n), 0.0};
}

exactdet::LogDet<BigFloat> det_perturbed(unsigned n, const PolyPotential& pot, const BigFloat& T,
                                         const BigFloat& tol, const PicardLimits& limits) {
  CauchyBlock block = cauchy_block(n, pot, T, tol, limits);

  // LU with partial pivoting on the scaled entries; log-domain accumulation
  // of pivot moduli, phases from pivot arguments and the permutation sign.
  std::vector<Cplx> a = block.entries;
  BigFloat max_entry(0);
  for (const Cplx& c : a) max_entry = std::max(max_entry, abs(c));
  const BigFloat singular_guard = 100 * tol * std::max(max_entry, BigFloat(1));

  BigFloat log_abs_det(0);
  BigFloat phase(0);
  int permutation_sign = 1;
  for (unsigned col = 0; col < n; ++col) {
    unsigned pivot_row = col;
    BigFloat best = abs(a[col * n + col]);
    for (unsigned r = col + 1; r < n; ++r) {
      const BigFloat mag = abs(a[r * n + col]);
      if (mag > best) {
        best = mag;
        pivot_row = r;
      }
    }
    if (best <= singular_guard) {
      throw determinant_zero_error(
          "scaled block is singular at the working tolerance: the operator has an eigenvalue "
          "at zero");
    }
    if (pivot_row != col) {
      for (unsigned c = 0; c < n; ++c) std::swap(a[pivot_row * n + c], a[col * n + c]);
      permutation_sign = -permutation_sign;
    }
    const Cplx pivot = a[col * n + col];
    log_abs_det += log(abs(pivot));
    phase += arg(pivot);
    const BigFloat inv_norm = 1 / (pivot.re * pivot.re + pivot.im * pivot.im);
    const Cplx pivot_inv{pivot.re * inv_norm, -pivot.im * inv_norm};
    for (unsigned r = col + 1; r < n; ++r) {
      const Cplx factor = a[r * n + col] * pivot_inv;
      a[r * n + col] = Cplx{};
      for (unsigned c = col + 1; c < n; ++c) {
        a[r * n + c] = a[r * n + c] - factor * a[col * n + c];
      }
    }
  }
  if (permutation_sign < 0) phase += const_pi<BigFloat>();

  const auto [k_log, k_phase] = k_theta(n);

  exactdet::LogDet<BigFloat> out;
  out.breakdown.emplace_back("k-factor", k_log);
  out.breakdown.emplace_back("block-scaling", block.scaling_log);
  out.breakdown.emplace_back("block-det", log_abs_det);
  KahanSum<BigFloat> total;
  for (const auto& [name, value] : out.breakdown) total.add(value);
  out.log_modulus = total.value();

  const BigFloat two_pi = 2 * const_pi<BigFloat>();
  BigFloat wrapped = phase + BigFloat(k_phase);
  wrapped -= two_pi * floor(wrapped / two_pi + BigFloat(1) / 2);
  if (wrapped <= -const_pi<BigFloat>()) wrapped += two_pi;
  out.phase = to_double(wrapped);
  return out;
}

std::vector<std::pair<unsigned, BigFloat>> perturbation_decay(const std::vector<unsigned>& n_list,
                                                              const PolyPotential& pot,
                                                              const BigFloat& T,
                                                              const BigFloat& tol) {
  std::vector<std::pair<unsigned, BigFloat>> out;
  out.reserve(n_list.size());
  for (unsigned n : n_list) {
    const BigFloat perturbed = det_perturbed(n, pot, T, tol).log_modulus;
    const BigFloat reference = exactdet::log_det_polyharmonic<BigFloat>(n, T).log_modulus;
    out.emplace_back(n, abs(perturbed - reference));
  }
  return out;
}

}  // namespace polydet::bfk
