#pragma once

// Representation theory of the false Tate tower Q(mu_{p^n}, m^{1/p^n}):
// prime splitting in K_n = Q(mu_{p^n}), the Kummer character via power-residue
// symbols, composite Hecke characters chi * Res(phi), the classification of
// the irreducible Artin representations, and Galois conjugation.

#include <memory>
#include <vector>

#include "ftlv/cyclotomic.hpp"
#include "ftlv/dirichlet.hpp"
#include "ftlv/eisenstein.hpp"
#include "ftlv/fqpoly.hpp"
#include "ftlv/numtheory.hpp"

namespace ftlv {
namespace ft {

struct CyclotomicLevel {
  unsigned long p;  // odd prime
  unsigned n;       // level >= 1
  unsigned long pn;       // p^n
  unsigned long degree;   // phi(p^n)

  CyclotomicLevel(unsigned long p_, unsigned n_);
  unsigned residue_degree(u64 ell) const;       // f(ell) = ord(ell mod p^n)
  unsigned num_primes_above(u64 ell) const { return degree / residue_degree(ell); }
};

struct PrimeOfKn {
  u64 ell;                 // rational prime below, ell != p
  unsigned f;              // residue degree
  FpPoly factor;           // irreducible factor of Phi_{p^n} mod ell
  Int norm;                // ell^f
  std::shared_ptr<const FqCtx> ctx;
  FqElem zeta_image;       // image of zeta_{p^n}, exact order p^n
};

// spec op: primes_of_kn. RamifiedPrime for ell = p.
std::vector<PrimeOfKn> primes_of_kn(const CyclotomicLevel& level, u64 ell);
// index of the complex-conjugate prime inside the primes_of_kn(ell) list
size_t conjugate_prime_index(const CyclotomicLevel& level, const std::vector<PrimeOfKn>& vs,
                             size_t i);

struct KummerChar {
  unsigned long p;
  unsigned n;
  Int m;  // > 1, not a p-th power
};

// spec op: kummer_eval -> exponent k with chi(v) = zeta_{p^n}^k
unsigned long kummer_eval(const KummerChar& chi, const PrimeOfKn& v);

// xi = chi^{kummer_u} * Res(phi): the inducing Hecke character of rho
struct FalseTateChar {
  unsigned long p;
  unsigned n;
  Int m;
  long kummer_u = 1;     // chi raised to this power
  DirichletChar phi;     // modulus p^k (k = 0 -> trivial)

  unsigned long value_modulus() const;  // lcm(p^n, ord(phi))
  FalseTateChar power(long a) const;    // xi^a
  bool ramified_at(u64 ell) const;      // ell | p*m*cond(phi)
  // candidate norms N(f_xi) of the conductor ideal
  std::vector<Int> conductor_norm_candidates() const;
};

// spec op: hecke_eval. xi(v) as an exact root of unity; RamifiedAtV.
Cyclotomic hecke_eval(const FalseTateChar& xi, const PrimeOfKn& v);

// xi evaluated on the principal ideal (x) of Z[w]; requires p^n = 3 and
// (x) coprime to p*m*cond(phi). Used by the K_1 Gauss sums.
Cyclotomic hecke_eval_ideal(const FalseTateChar& xi, const Eis& x);

struct AnticycloReport {
  bool anticyclotomic;
  bool cyclotomic;
  unsigned samples;
};

// spec op: check_anticyclotomic: chi(v) chi(vbar) = 1 at sampled split primes
// (and the cyclotomic variant chi(v) = chi(vbar)).
AnticycloReport check_anticyclotomic(const FalseTateChar& xi, unsigned sample_size);

struct ArtinRepFT {
  unsigned long p;
  unsigned n;              // 0 for the 1-dimensional (Dirichlet) entries
  unsigned k;              // phi factors through p^k
  Int m;
  long kummer_u = 1;
  DirichletChar phi;
  unsigned dim, d_plus, d_minus;
  unsigned long coeff_modulus;       // p^{max(n,k)} (times ord for non-p-power phi)
  unsigned long orbit_size = 1;      // size of the Galois orbit this entry represents
  std::vector<Int> conductor_candidates;

  FalseTateChar inducing_character() const;
  bool is_dim_one() const { return n == 0; }
};

// spec op: classify_irreps. One entry per Galois-orbit representative.
std::vector<ArtinRepFT> classify_irreps(unsigned long p, unsigned n_max, unsigned k_max,
                                        const Int& m);

// spec op: conjugate_rep (sigma_a on coefficients). gcd(a, coeff_modulus) = 1.
ArtinRepFT conjugate_rep(const ArtinRepFT& rho, long a);

ArtinRepFT make_rho(unsigned long p, unsigned n, const Int& m, const DirichletChar& phi);

}  // namespace ft
}  // namespace ftlv
