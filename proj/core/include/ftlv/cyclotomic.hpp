#pragma once

// Exact elements of Q(zeta_M) on the power basis 1, zeta, ..., zeta^{phi(M)-1}.

#include <string>
#include <vector>

#include "ftlv/numtheory.hpp"
#include "ftlv/real.hpp"

namespace ftlv {

// coefficients of the M-th cyclotomic polynomial (monic, degree phi(M))
std::vector<Int> cyclotomic_polynomial(unsigned long M);

class Cyclotomic {
 public:
  Cyclotomic() : modulus_(1), coeffs_(1, Rat(0)) {}
  explicit Cyclotomic(unsigned long M) : modulus_(M), coeffs_(euler_phi_ul(M), Rat(0)) {}
  Cyclotomic(unsigned long M, std::vector<Rat> coeffs);

  static Cyclotomic from_rat(const Rat& q, unsigned long M = 1);
  // zeta_M^k reduced to the power basis
  static Cyclotomic zeta_power(unsigned long M, long k);

  unsigned long modulus() const { return modulus_; }
  const std::vector<Rat>& coeffs() const { return coeffs_; }
  unsigned long degree() const { return coeffs_.size(); }

  bool is_zero() const;
  bool is_rational() const;
  Rat rational_part() const;  // requires is_rational()

  // image under zeta -> zeta^a, gcd(a, M) = 1
  Cyclotomic galois(long a) const;
  Cyclotomic conj() const { return galois(-1); }

  // re-embed into Q(zeta_L) for M | L
  Cyclotomic embed(unsigned long L) const;
  // if the element lies in Q(zeta_D) for D | M, rewrite on the smaller basis
  // (used for exact comparisons across moduli); returns false if not in the subfield
  bool try_descend(unsigned long D, Cyclotomic* out) const;

  Complex value(mpfr_prec_t prec) const;

  Int height() const;  // max over coefficients of max(|num|, den)
  std::string str() const;

  friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator-(const Cyclotomic& a);
  friend Cyclotomic operator*(const Cyclotomic& a, const Rat& q);
  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);
  friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

  Cyclotomic inverse() const;  // nonzero elements only

 private:
  unsigned long modulus_;
  std::vector<Rat> coeffs_;  // length phi(modulus_)
};

// spec op: galois_apply(c, a)
inline Cyclotomic galois_apply(const Cyclotomic& c, long a) { return c.galois(a); }

}  // namespace ftlv
