#pragma once

// Dirichlet characters stored by generator images: one exponent per CRT
// component of (Z/q)^*. Evaluation is discrete log in tiny groups.

#include <optional>
#include <vector>

#include "ftlv/cyclotomic.hpp"
#include "ftlv/numtheory.hpp"

namespace ftlv {
namespace ft {

struct DirichletChar {
  struct Component {
    unsigned long pk;          // prime power factor of the modulus
    unsigned long gen;         // generator of the cyclic piece
    unsigned long gen_order;
    unsigned long exp;         // chi(gen) = zeta_{gen_order}^{exp}
  };
  unsigned long modulus = 1;
  std::vector<Component> comps;  // (Z/2^k)^* for k >= 3 contributes two pieces

  static DirichletChar trivial(unsigned long q = 1);
  // character on a cyclic (Z/p^k)^* (p odd) with chi(g) = zeta_{phi(p^k)}^e
  static DirichletChar prime_power(unsigned long p, unsigned k, unsigned long e);
  static DirichletChar quadratic(unsigned long q);  // q in {3,4} and odd primes
  // all characters mod q, in a deterministic order
  static std::vector<DirichletChar> all_mod(unsigned long q);

  unsigned long order() const;
  bool is_trivial() const { return order() == 1; }
  // exponent t with chi(a) = zeta_{order()}^t; NotCoprime if gcd(a,q) > 1
  unsigned long eval_exponent(long a) const;
  bool is_defined_at(long a) const;
  Cyclotomic value(long a) const;  // exact, modulus = order()
  Complex value_c(long a, mpfr_prec_t prec) const;
  int parity() const { return value(-1).rational_part() == 1 ? 1 : -1; }  // chi(-1)

  unsigned long conductor() const;
  bool is_primitive() const { return conductor() == modulus; }
  DirichletChar primitive_part() const;

  DirichletChar power(long a) const;  // chi^a (also the Galois action on values)
  friend DirichletChar operator*(const DirichletChar& x, const DirichletChar& y);
  bool operator==(const DirichletChar& o) const;
};

}  // namespace ft
}  // namespace ftlv
