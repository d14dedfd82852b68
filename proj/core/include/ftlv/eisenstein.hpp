#pragma once

// Arithmetic in Z[w], w = e^{2 pi i/3}: the ring of integers of Q(mu_3).
// Class number 1, units {+-1, +-w, +-w^2}; everything needed here is gcds,
// norms, division with small remainder, and factorization of small elements.

#include <vector>

#include "ftlv/cyclotomic.hpp"
#include "ftlv/numtheory.hpp"

namespace ftlv {
namespace ft {

struct Eis {
  Int a, b;  // a + b*w

  Eis() : a(0), b(0) {}
  Eis(Int a_, Int b_) : a(std::move(a_)), b(std::move(b_)) {}
  static Eis one() { return {Int(1), Int(0)}; }
  static Eis omega() { return {Int(0), Int(1)}; }
  static Eis sqrt_minus3() { return {Int(1), Int(2)}; }  // 1 + 2w = i sqrt(3)

  bool is_zero() const { return a == 0 && b == 0; }
  Int norm() const { return a * a - a * b + b * b; }
  Eis conj() const { return {a - b, Int(-b)}; }  // w -> w^2 = -1-w

  friend Eis operator+(const Eis& x, const Eis& y) { return {x.a + y.a, x.b + y.b}; }
  friend Eis operator-(const Eis& x, const Eis& y) { return {x.a - y.a, x.b - y.b}; }
  friend Eis operator*(const Eis& x, const Eis& y) {
    // (a+bw)(c+dw) = ac + (ad+bc)w + bd w^2, w^2 = -1-w
    return {x.a * y.a - x.b * y.b, x.a * y.b + x.b * y.a - x.b * y.b};
  }
  friend bool operator==(const Eis& x, const Eis& y) { return x.a == y.a && x.b == y.b; }

  Complex value(mpfr_prec_t prec) const;
  // trace of (*this) * conj(d) / N(d), i.e. Tr_{K/Q}(this/d), exact
  static Rat trace_of_quotient(const Eis& x, const Eis& d);
};

// quotient with N(rem) < N(d); Euclidean
Eis eis_divrem(const Eis& x, const Eis& d, Eis* rem);
Eis eis_gcd(Eis x, Eis y);
bool eis_divides(const Eis& d, const Eis& x);
Eis eis_divexact(const Eis& x, const Eis& d);

// the six units
std::vector<Eis> eis_units();
// associate-canonical form: the representative among unit multiples with
// lexicographically smallest (a, b) among those with a > 0, or the smallest
// nonzero canonical tuple; purely a determinism device
Eis eis_canonical_associate(const Eis& x);

struct EisPrimeFactor {
  Eis prime;
  int exponent;
  u64 below;  // the rational prime it divides
};

// factorization into canonical primes (desk scale: N(x) factors by trial division)
std::vector<EisPrimeFactor> eis_factor(const Eis& x);

// the prime above a split rational l = 1 mod 3 with w = r (mod prime)
Eis eis_prime_above(u64 ell, u64 root_of_omega);
// r with w = r mod pi, for pi a degree-one prime not above 3
u64 eis_root_of_omega(const Eis& pi, u64 ell);

}  // namespace ft
}  // namespace ftlv
