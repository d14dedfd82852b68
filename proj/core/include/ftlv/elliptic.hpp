#pragma once

// Elliptic curves over Q from raw minimal Weierstrass coefficients: local
// reduction data via Tate's algorithm (all p, including 2 and 3), a_p by
// direct point counting, Dirichlet coefficients, and the real/imaginary
// periods via AGM iterations.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ftlv/numtheory.hpp"
#include "ftlv/real.hpp"

namespace ftlv {
namespace ec {

enum class ReductionKind { Good, SplitMultiplicative, NonsplitMultiplicative, Additive };

struct ReductionType {
  ReductionKind kind = ReductionKind::Good;
  int conductor_exponent = 0;
  int kodaira_m = 1;  // number of geometric components (Ogg bookkeeping)
};

// spec op: tate_local_data. Model must be minimal at ell.
ReductionType tate_local_data(const std::array<Int, 5>& a, const Int& ell);

struct CurveModel {
  Int a1, a2, a3, a4, a6;
  Int b2, b4, b6, b8, c4, c6, disc;
  Int conductor;
  std::map<Int, ReductionType> local_data;  // exactly the primes dividing disc

  static CurveModel from_coeffs(const std::array<Int, 5>& a);

  std::array<Int, 5> coeffs() const { return {a1, a2, a3, a4, a6}; }
  bool good_at(const Int& p) const { return disc % p != 0; }
  const ReductionType& reduction_at(const Int& p) const;
  std::string label_key() const;  // cache-file key "a1_a2_a3_a4_a6"

  // spec op: count_ap (naive O(l) with a quadratic-residue table). l good.
  i64 count_ap(u64 ell) const;
  // a_l for any prime: good -> count, split mult -> +1, nonsplit -> -1, additive -> 0
  i64 ap_any(u64 ell) const;

  // spec op: dirichlet_coeffs_E
  std::vector<i64> dirichlet_coeffs(size_t n, const std::map<u64, i64>* ap_cache = nullptr) const;
};

// spec op: frobenius_trace_extension. s_0=2, s_1=a, s_j = a s_{j-1} - l s_{j-2}.
Int frobenius_trace_extension(const Int& a, const Int& ell, unsigned f);

struct PeriodPair {
  Real omega_plus;       // > 0
  Real omega_minus_im;   // Omega_- = i * omega_minus_im, omega_minus_im > 0
};

// spec op: compute_periods (AGM on the roots of 4x^3+b2x^2+2b4x+b6)
PeriodPair compute_periods(const CurveModel& E, long digits);

// oracle-grade direct numerical integration of dx/(2y+a1x+a3) over the real
// locus (and the imaginary cycle); tanh-sinh quadrature. Slow; used by tests.
PeriodPair integrate_periods_reference(const CurveModel& E, long digits);

}  // namespace ec
}  // namespace ftlv
