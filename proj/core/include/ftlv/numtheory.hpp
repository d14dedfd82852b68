#pragma once

// Integer substrate: GMP-backed big integers/rationals plus 64-bit modular
// utilities used in the hot paths (point counting, prime splitting).

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "ftlv/errors.hpp"
#include "ftlv/real.hpp"

namespace ftlv {

using Int = mpz_class;
using Rat = mpq_class;  // always canonical: gcd(num,den)=1, den >= 1

using u64 = std::uint64_t;
using i64 = std::int64_t;

u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 a, u64 e, u64 m);
u64 gcd_u64(u64 a, u64 b);
i64 invmod(i64 a, i64 m);  // throws NotCoprime
bool is_prime_u64(u64 n);  // deterministic Miller-Rabin for 64-bit
std::vector<u64> primes_up_to(u64 n);
// Legendre/Jacobi symbol (a|n), n odd positive
int jacobi(i64 a, u64 n);
// square root mod odd prime p, or -1 if non-residue
i64 sqrt_mod(i64 a, u64 p);

// smallest t >= 1 with a^t = 1 mod M; requires gcd(a, M) = 1
unsigned long mult_order(const Int& a, const Int& M);

// Euler phi
Int euler_phi(const Int& n);
unsigned long euler_phi_ul(unsigned long n);

// smallest primitive root modulo p^k (p odd prime)
unsigned long primitive_root_mod_prime_power(unsigned long p, unsigned k);

Int int_pow(const Int& a, unsigned long e);
// v_p(n) and n / p^{v_p(n)}
int valuation(Int n, const Int& p, Int* quotient = nullptr);
// radical (product of distinct prime factors); trial division, desk scale
Int radical(Int n);
std::vector<std::pair<u64, int>> factor_u64(u64 n);

// count of divisor-function d_k(n) for coefficient bounds
u64 divisor_count_k(u64 n, int k);

Real rat_to_real(const Rat& q, mpfr_prec_t prec);
Real int_to_real(const Int& z, mpfr_prec_t prec);
u64 int_mod_u64(const Int& a, u64 m);

// max(|numerator|, denominator) as the height of a rational
Int rat_height(const Rat& q);

}  // namespace ftlv
