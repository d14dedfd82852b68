#pragma once

// Archimedean machinery for the approximate functional equation.
//
// gamma(s) = prod_j Gamma_R(s + mu_j) and the smoothed weight
//   G_s(x) = (1/2 pi i) int_(c) gamma(s+z) x^{-z} dz/z = int_x^infty phi(t) t^s dt/t,
// phi the inverse Mellin transform of gamma. G_s is positive and decreasing in
// x for real s (phi >= 0), which the truncation logic relies on.
//
// Two evaluation branches:
//  - degree 1, and degree 2 with consecutive shifts: exact incomplete-gamma
//    closed forms (MPFR's correctly rounded gamma_inc);
//  - general degree: the convergent expansion over the poles of the
//    integrand, sum over z0 of Res_{z0} gamma(s+z)x^{-z}/z, with Laurent data
//    computed once per (shifts, s) and adaptive working precision to absorb
//    the cancellation at large x.

#include <map>
#include <vector>

#include "ftlv/numtheory.hpp"
#include "ftlv/real.hpp"

namespace ftlv {
namespace lf {

// gamma(s) for s = s2/2 (must not be a pole)
Real gamma_product(const std::vector<int>& shifts, long s2, mpfr_prec_t prec);

class WeightFunction {
 public:
  // s = s2/2; digits = absolute accuracy target; x_max = largest argument
  // that will be requested (fixes the working precision for the series).
  // force_series bypasses the closed forms (cross-validation in tests).
  WeightFunction(std::vector<int> shifts, long s2, long digits, double x_max,
                 bool force_series = false);

  Real eval(const Real& x) const;
  // G(x) <= 10^{log10_bound} for all x >= the returned value (monotone search)
  double cutoff_x(double log10_bound) const;
  long s2() const { return s2_; }
  const std::vector<int>& shifts() const { return shifts_; }
  double x_max_built() const { return x_max_; }

 private:
  Real eval_series(const Real& x) const;
  Real eval_incgamma(const Real& x) const;

  std::vector<int> shifts_;
  long s2_;
  long digits_;
  double x_max_ = 1.0;
  bool use_incgamma_ = false;
  mpfr_prec_t prec_ = 0;       // working precision of the series data
  Real gamma_at_s_;            // residue at z = 0 when gamma is finite at s
  bool gamma_polar_at_s_ = false;
  Real tail_value_;            // G at x_max_, for the beyond-range clamp

  struct Pole {
    long t;                    // z0 = -t/2, i.e. x^{t/2} prefactor
    std::vector<Real> logcoef; // sum_l logcoef[l] * (ln x)^l
  };
  std::vector<Pole> poles_;    // sorted by t ascending
};

}  // namespace lf
}  // namespace ftlv
