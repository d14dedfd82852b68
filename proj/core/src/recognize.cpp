#include "ftlv/recognize.hpp"

#include <optional>

#include "ftlv/lll.hpp"

namespace ftlv {

namespace {

Int scaled_int(const Real& v, const Int& scale) {
  Real t(v.prec());
  mpfr_mul_z(t.raw(), v.raw(), scale.get_mpz_t(), MPFR_RNDN);
  Int out;
  mpfr_get_z(out.get_mpz_t(), t.raw(), MPFR_RNDN);
  return out;
}

// one lattice pass at a given decimal scale; returns the candidate or nullopt
std::optional<Cyclotomic> lattice_pass(const Complex& z, unsigned long M, const Int& height_bound,
                                       long scale_digits, long digits) {
  const size_t phi = euler_phi_ul(M);
  const mpfr_prec_t prec = z.prec();
  Int S = int_pow(Int(10), static_cast<unsigned long>(scale_digits));

  LatticeBasis rows(phi + 1, std::vector<Int>(phi + 1 + 2, Int(0)));
  for (size_t j = 0; j < phi; ++j) {
    Complex zj = Cyclotomic::zeta_power(M, static_cast<long>(j)).value(prec);
    rows[j][j] = 1;
    rows[j][phi + 1] = scaled_int(zj.re, S);
    rows[j][phi + 2] = scaled_int(zj.im, S);
  }
  rows[phi][phi] = 1;
  rows[phi][phi + 1] = scaled_int(-z.re, S);
  rows[phi][phi + 2] = scaled_int(-z.im, S);

  LatticeBasis red = lll_reduce(std::move(rows));

  Real tol = pow10(-(digits - 5), prec);
  for (const auto& v : red) {
    Int D = v[phi];
    if (D == 0) continue;
    std::vector<Rat> coeffs(phi);
    bool height_ok = (abs(D) <= height_bound);
    for (size_t j = 0; j < phi && height_ok; ++j) {
      if (abs(v[j]) > height_bound) height_ok = false;
      coeffs[j] = Rat(v[j], D);
      coeffs[j].canonicalize();
    }
    if (!height_ok) continue;
    Cyclotomic cand(M, std::move(coeffs));
    Complex val = cand.value(prec);
    Real res = (val - z).abs();
    if (res < tol) return cand;
  }
  return std::nullopt;
}

}  // namespace

Recognition recognize_cyclotomic(const Complex& z, unsigned long M, const Int& height_bound,
                                 long digits) {
  if (z.prec() < bits_for_digits(digits + 15))
    raise(ErrorKind::PrecisionExhausted, "recognize_cyclotomic: input precision below digits+15");

  auto first = lattice_pass(z, M, height_bound, digits, digits);
  if (!first) raise(ErrorKind::NoRelation, "recognize_cyclotomic: no candidate survived the residual test");

  // escalation: redo the reduction with 15 more digits of the same input;
  // the candidate must come out identical
  auto second = lattice_pass(z, M, height_bound, digits + 15, digits);
  if (!second || !(*second == *first))
    raise(ErrorKind::Unstable, "recognize_cyclotomic: candidate changed under precision escalation");

  Real residual = (first->value(z.prec()) - z).abs();
  return Recognition{*first, residual};
}

}  // namespace ftlv
