#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "exactdet.hpp"
#include "real.hpp"

namespace polydet::bfk {

// The perturbed pipeline runs in extended precision throughout: the scaled
// block entries grow like C(3n-2, n-1) and the quantities certified against
// the closed form differ by amounts far below double resolution.
struct Cplx {
  BigFloat re{0};
  BigFloat im{0};
};

Cplx operator+(const Cplx& a, const Cplx& b);
Cplx operator-(const Cplx& a, const Cplx& b);
Cplx operator*(const Cplx& a, const Cplx& b);
Cplx operator*(const BigFloat& s, const Cplx& a);
BigFloat abs(const Cplx& a);
BigFloat arg(const Cplx& a);

// Monomial coefficients, degree = size() - 1; empty means the zero polynomial.
using Poly = std::vector<Cplx>;

BigFloat poly_sup_bound(const Poly& p, const BigFloat& T);  // sum |c_d| T^d
Cplx poly_eval(const Poly& p, const BigFloat& x);
Poly poly_derivative(const Poly& p, unsigned times);

// Coefficients q_0 .. q_m of the lower-order terms sum_j q_j(x) d^j.
struct PolyPotential {
  std::vector<Poly> orders;

  unsigned max_order() const;  // highest j with a nonzero q_j (0 if none)
  bool is_zero() const;
  bool is_real() const;
  unsigned max_degree() const;
};

struct PicardLimits {
  unsigned degree_cap = 32;          // per q_j
  unsigned iterate_degree_cap = 4096;
};

class degree_cap_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class determinant_zero_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PicardResult {
  Poly iterate;        // y_{ell} after `sweeps` fixed-point sweeps
  unsigned sweeps = 0;
  BigFloat tail_bound{0};  // series model bound on |y - iterate| at x = T
};

// Fixed-point solve of y^{(2n)} = (-1)^{n+1} sum_j q_j y^{(j)} with
// y^{(k)}(0) = delta_{k,ell}, via exact polynomial integration. Stops at the
// smallest sweep count whose tail model is below tol * T^ell / ell!.
PicardResult picard_solve(unsigned n, const PolyPotential& pot, const BigFloat& T, unsigned ell,
                          const BigFloat& tol, const PicardLimits& limits = {});

// The n x n block of scaled Cauchy-solution derivatives. entries are
// normalised so the zero-potential block is the binomial matrix
// C(n+j-1, i-1); scaling_log restores the raw block determinant:
// log det M = scaling_log + log det(entries).
struct CauchyBlock {
  unsigned n = 0;
  std::vector<Cplx> entries;  // row-major
  BigFloat scaling_log{0};
  BigFloat entry_tail_max{0};  // largest per-entry truncation bound, in entry units

  const Cplx& at(unsigned i, unsigned j) const { return entries[(i - 1) * n + (j - 1)]; }
};

CauchyBlock cauchy_block(unsigned n, const PolyPotential& pot, const BigFloat& T,
                         const BigFloat& tol, const PicardLimits& limits = {});

// (log modulus, phase) of the boundary-condition prefactor (2n)^n |h_alpha|^{-2}.
std::pair<BigFloat, double> k_theta(unsigned n);

// Full pipeline: prefactor times det(scaled block) with the scaling
// restored. Throws determinant_zero_error when the block is singular at the
// working tolerance (an eigenvalue sits at 0).
exactdet::LogDet<BigFloat> det_perturbed(unsigned n, const PolyPotential& pot, const BigFloat& T,
                                         const BigFloat& tol, const PicardLimits& limits = {});

// r_n = | log det H_n - log det P_n | for each requested n.
std::vector<std::pair<unsigned, BigFloat>> perturbation_decay(const std::vector<unsigned>& n_list,
                                                              const PolyPotential& pot,
                                                              const BigFloat& T,
                                                              const BigFloat& tol);

inline constexpr unsigned kMaxPipelineOrder = 32;

}  // namespace polydet::bfk
