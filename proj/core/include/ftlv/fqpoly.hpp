#pragma once

// Polynomials over Z/l and the finite fields F_{l^f} they cut out.
// Factorization is squarefree -> distinct-degree -> Cantor-Zassenhaus
// equal-degree splitting.

#include <cstdint>
#include <memory>
#include <vector>

#include "ftlv/numtheory.hpp"

namespace ftlv {

// dense coefficient vector, lowest degree first, normalized (no trailing zeros)
struct FpPoly {
  u64 p = 2;
  std::vector<u64> c;

  FpPoly() = default;
  FpPoly(u64 p_, std::vector<u64> c_) : p(p_), c(std::move(c_)) { trim(); }

  static FpPoly from_int_poly(const std::vector<Int>& f, u64 p);
  static FpPoly x_poly(u64 p);  // the monomial x
  static FpPoly constant(u64 p, u64 v);

  long deg() const { return static_cast<long>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  u64 lead() const { return c.back(); }
  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  bool operator==(const FpPoly& o) const { return p == o.p && c == o.c; }
};

FpPoly fp_add(const FpPoly& a, const FpPoly& b);
FpPoly fp_sub(const FpPoly& a, const FpPoly& b);
FpPoly fp_mul(const FpPoly& a, const FpPoly& b);
FpPoly fp_mod(const FpPoly& a, const FpPoly& m);
FpPoly fp_divexact(const FpPoly& a, const FpPoly& b);
FpPoly fp_gcd(FpPoly a, FpPoly b);  // monic
FpPoly fp_monic(FpPoly a);
FpPoly fp_powmod(const FpPoly& base, const Int& e, const FpPoly& m);
FpPoly fp_derivative(const FpPoly& a);
u64 fp_eval(const FpPoly& a, u64 x);

// spec op: factor_poly_mod_l. Returns monic irreducible factors with
// multiplicities; the product times lead(f) reproduces f mod l.
std::vector<std::pair<FpPoly, int>> factor_poly_mod_l(const std::vector<Int>& f, u64 ell);
std::vector<std::pair<FpPoly, int>> factor_poly_mod_l(const FpPoly& f);

// F_{p^f} = F_p[x]/(g), g monic irreducible
struct FqCtx {
  FpPoly g;  // modulus
  u64 p() const { return g.p; }
  unsigned f() const { return static_cast<unsigned>(g.deg()); }
  Int order() const { return int_pow(Int(static_cast<long>(g.p)), f()); }
};

struct FqElem {
  std::shared_ptr<const FqCtx> ctx;
  FpPoly rep;  // degree < f

  static FqElem make(std::shared_ptr<const FqCtx> ctx, FpPoly r);
  static FqElem from_u64(std::shared_ptr<const FqCtx> ctx, u64 v);
  static FqElem x_class(std::shared_ptr<const FqCtx> ctx);  // image of x

  bool is_one() const { return rep.deg() == 0 && rep.c[0] == 1; }
  bool is_zero() const { return rep.is_zero(); }
  friend FqElem operator*(const FqElem& a, const FqElem& b);
  bool operator==(const FqElem& o) const { return rep == o.rep; }
};

FqElem fq_pow(const FqElem& a, const Int& e);
// exact multiplicative order (full search over divisors of q-1 is overkill for
// our uses; this computes via factoring q-1 at desk scale)
Int fq_order(const FqElem& a);

}  // namespace ftlv
