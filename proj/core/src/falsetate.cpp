#include "ftlv/falsetate.hpp"

#include <algorithm>
#include <numeric>

namespace ftlv {
namespace ft {

CyclotomicLevel::CyclotomicLevel(unsigned long p_, unsigned n_) : p(p_), n(n_) {
  if (p < 3 || !is_prime_u64(p) || p == 2) raise(ErrorKind::NotPrime, "p must be an odd prime");
  if (n < 1) raise(ErrorKind::Internal, "level must be >= 1");
  pn = 1;
  for (unsigned i = 0; i < n; ++i) pn *= p;
  degree = euler_phi_ul(pn);
}

unsigned CyclotomicLevel::residue_degree(u64 ell) const {
  if (ell % p == 0) raise(ErrorKind::RamifiedPrime, "ell = p is totally ramified");
  return static_cast<unsigned>(mult_order(Int(static_cast<long>(ell % pn)), Int(static_cast<long>(pn))));
}

std::vector<PrimeOfKn> primes_of_kn(const CyclotomicLevel& level, u64 ell) {
  if (ell % level.p == 0) raise(ErrorKind::RamifiedPrime, "primes_of_kn: ell ramified");
  auto phi_poly = cyclotomic_polynomial(level.pn);
  auto factors = factor_poly_mod_l(phi_poly, ell);
  std::vector<PrimeOfKn> out;
  unsigned f = level.residue_degree(ell);
  for (auto& [fac, mult] : factors) {
    if (mult != 1) raise(ErrorKind::Internal, "Phi_{p^n} not squarefree mod ell");
    if (static_cast<unsigned>(fac.deg()) != f)
      raise(ErrorKind::Internal, "factor degree != residue degree");
    PrimeOfKn v;
    v.ell = ell;
    v.f = f;
    v.factor = fac;
    v.norm = int_pow(Int(static_cast<long>(ell)), f);
    auto ctx = std::make_shared<FqCtx>();
    ctx->g = fac;
    v.ctx = ctx;
    v.zeta_image = FqElem::x_class(v.ctx);
    if (!fq_pow(v.zeta_image, Int(static_cast<long>(level.pn))).is_one())
      raise(ErrorKind::Internal, "zeta image order");
    out.push_back(std::move(v));
  }
  return out;
}

size_t conjugate_prime_index(const CyclotomicLevel& level, const std::vector<PrimeOfKn>& vs,
                             size_t i) {
  // conjugation zeta -> zeta^{-1}: vbar corresponds to the factor whose roots
  // are the inverses, i.e. the normalized reversal x^deg * g(1/x)
  const FpPoly& g = vs[i].factor;
  std::vector<u64> rev(g.c.rbegin(), g.c.rend());
  FpPoly grev = fp_monic(FpPoly(g.p, std::move(rev)));
  for (size_t j = 0; j < vs.size(); ++j)
    if (vs[j].factor == grev) return j;
  raise(ErrorKind::Internal, "conjugate prime not found");
  (void)level;
}

unsigned long kummer_eval(const KummerChar& chi, const PrimeOfKn& v) {
  unsigned long pn = 1;
  for (unsigned i = 0; i < chi.n; ++i) pn *= chi.p;
  if (v.ell % chi.p == 0 || chi.m % Int(static_cast<long>(v.ell)) == 0)
    raise(ErrorKind::RamifiedAtV, "kummer_eval at ramified prime");
  Int e = (v.norm - 1) / static_cast<long>(pn);
  FqElem t = fq_pow(FqElem::from_u64(v.ctx, int_mod_u64(chi.m, v.ell)), e);
  FqElem z = FqElem::from_u64(v.ctx, 1);
  for (unsigned long k = 0; k < pn; ++k) {
    if (t == z) return k;
    z = z * v.zeta_image;
  }
  raise(ErrorKind::Internal, "kummer_eval: value not a p^n-th root of unity");
}

unsigned long FalseTateChar::value_modulus() const {
  unsigned long pn = 1;
  for (unsigned i = 0; i < n; ++i) pn *= p;
  return std::lcm(pn, phi.order());
}

FalseTateChar FalseTateChar::power(long a) const {
  FalseTateChar x = *this;
  unsigned long pn = 1;
  for (unsigned i = 0; i < n; ++i) pn *= p;
  long u = (kummer_u * (a % static_cast<long>(pn))) % static_cast<long>(pn);
  if (u < 0) u += static_cast<long>(pn);
  x.kummer_u = u;
  x.phi = phi.power(a);
  return x;
}

bool FalseTateChar::ramified_at(u64 ell) const {
  if (ell == p) return true;
  if (m % Int(static_cast<long>(ell)) == 0) return true;
  return phi.conductor() % ell == 0;
}

std::vector<Int> FalseTateChar::conductor_norm_candidates() const {
  // N(f_xi) = p^a * rad(m)^{2b}. The wild exponent a at the prime over p is
  // the one datum not computed locally (resolved downstream by the
  // functional-equation search); the bound is 2n+1 for the Kummer part and
  // 2k-1 for Res(phi) with phi of conductor p^k (norm filtration of the
  // ramified quadratic layer).
  unsigned k = 0;
  unsigned long c = phi.conductor();
  while (c > 1) { c /= p; ++k; }
  unsigned long amax = 2 * n + 1;
  if (k >= 1) amax = std::max<unsigned long>(amax, 2 * k - 1);
  Int radm = radical(m);
  std::vector<Int> out;
  for (unsigned long a = 0; a <= amax; ++a)
    for (int b = 1; b >= 0; --b)  // ramified-at-m first: the generic case
      out.push_back(int_pow(Int(static_cast<long>(p)), a) * (b ? radm * radm : Int(1)));
  return out;
}

Cyclotomic hecke_eval(const FalseTateChar& xi, const PrimeOfKn& v) {
  if (xi.ramified_at(v.ell)) raise(ErrorKind::RamifiedAtV, "hecke_eval at ramified prime");
  unsigned long pn = 1;
  for (unsigned i = 0; i < xi.n; ++i) pn *= xi.p;
  KummerChar chi{xi.p, xi.n, xi.m};
  unsigned long kk = kummer_eval(chi, v);
  kk = static_cast<unsigned long>((static_cast<unsigned __int128>(kk) *
                                   static_cast<unsigned long>(xi.kummer_u)) % pn);
  Cyclotomic val = Cyclotomic::zeta_power(pn, static_cast<long>(kk));
  if (!xi.phi.is_trivial()) {
    long nv = static_cast<long>(int_mod_u64(v.norm, xi.phi.modulus));
    val = val * xi.phi.value(nv);
  }
  return val;
}

Cyclotomic hecke_eval_ideal(const FalseTateChar& xi, const Eis& x) {
  if (xi.p != 3 || xi.n != 1)
    raise(ErrorKind::Unsupported, "ideal evaluation implemented for K_1 = Q(mu_3) only");
  Cyclotomic val = Cyclotomic::from_rat(Rat(1), 3);
  unsigned long pn = 3;
  for (auto& [pi, e, ell] : eis_factor(x)) {
    if (xi.ramified_at(ell)) raise(ErrorKind::RamifiedAtV, "hecke_eval_ideal: x not coprime to conductor");
    unsigned long kk;
    Int norm;
    if (ell % 3 == 1) {
      // split: chi(pi) from the power-residue symbol in F_ell with zeta -> r
      u64 r = eis_root_of_omega(pi, ell);
      u64 t = powmod(int_mod_u64(xi.m, ell), (ell - 1) / 3, ell);
      if (t == 1) kk = 0;
      else if (t == r) kk = 1;
      else if (t == mulmod(r, r, ell)) kk = 2;
      else raise(ErrorKind::Internal, "power residue symbol out of mu_3");
      norm = Int(static_cast<long>(ell));
    } else {
      // inert: N(v)-1 = (ell-1)(ell+1) with 3 | ell+1, so m^{(Nv-1)/3} = 1
      kk = 0;
      norm = Int(static_cast<long>(ell)) * Int(static_cast<long>(ell));
    }
    kk = static_cast<unsigned long>((static_cast<unsigned __int128>(kk) *
                                     static_cast<unsigned long>(xi.kummer_u)) % pn);
    Cyclotomic term = Cyclotomic::zeta_power(3, static_cast<long>(kk));
    if (!xi.phi.is_trivial())
      term = term * xi.phi.value(static_cast<long>(int_mod_u64(norm, xi.phi.modulus)));
    for (int i = 0; i < e; ++i) val = val * term;
  }
  return val;
}

AnticycloReport check_anticyclotomic(const FalseTateChar& xi, unsigned sample_size) {
  CyclotomicLevel level(xi.p, xi.n);
  AnticycloReport rep{true, true, 0};
  Cyclotomic one = Cyclotomic::from_rat(Rat(1));
  for (u64 ell = 2; rep.samples < sample_size && ell < 100000; ++ell) {
    if (!is_prime_u64(ell) || xi.ramified_at(ell)) continue;
    if (ell % level.pn != 1) continue;  // need split primes so v != vbar
    auto vs = primes_of_kn(level, ell);
    size_t j = conjugate_prime_index(level, vs, 0);
    if (j == 0) continue;
    Cyclotomic a = hecke_eval(xi, vs[0]);
    Cyclotomic b = hecke_eval(xi, vs[j]);
    if (!(a * b == one)) rep.anticyclotomic = false;
    if (!(a == b)) rep.cyclotomic = false;
    ++rep.samples;
  }
  if (rep.samples < sample_size)
    raise(ErrorKind::InsufficientSplitPrimes, "check_anticyclotomic: not enough split primes");
  return rep;
}

FalseTateChar ArtinRepFT::inducing_character() const {
  if (is_dim_one()) raise(ErrorKind::Internal, "dim-1 entry has no inducing character");
  FalseTateChar xi;
  xi.p = p;
  xi.n = n;
  xi.m = m;
  xi.kummer_u = kummer_u;
  xi.phi = phi;
  return xi;
}

ArtinRepFT make_rho(unsigned long p, unsigned n, const Int& m, const DirichletChar& phi) {
  ArtinRepFT r;
  r.p = p;
  r.n = n;
  r.m = m;
  r.kummer_u = 1;
  r.phi = phi;
  unsigned long pn = 1;
  for (unsigned i = 0; i < n; ++i) pn *= p;
  r.dim = static_cast<unsigned>(euler_phi_ul(pn));
  r.d_plus = r.dim / 2;
  r.d_minus = r.dim / 2;
  unsigned k = 0;
  unsigned long c = phi.conductor();
  while (c > 1) { c /= p; ++k; }
  r.k = k;
  unsigned long pmax = 1;
  for (unsigned i = 0; i < std::max(n, k); ++i) pmax *= p;
  r.coeff_modulus = std::lcm(pmax, std::lcm(pn, phi.order()));
  // candidates for the Artin conductor of Ind(xi): |disc(K_n)| * N(f_xi)
  Int disc_kn = 1;
  {
    // |disc Q(mu_{p^n})| = p^{phi(p^n)(n - 1/(p-1))}
    unsigned long phin = euler_phi_ul(pn);
    unsigned long e = n * phin - phin / (p - 1);
    disc_kn = int_pow(Int(static_cast<long>(p)), e);
  }
  for (const Int& nf : r.inducing_character().conductor_norm_candidates())
    r.conductor_candidates.push_back(disc_kn * nf);
  return r;
}

std::vector<ArtinRepFT> classify_irreps(unsigned long p, unsigned n_max, unsigned k_max,
                                        const Int& m) {
  if (!is_prime_u64(p) || p == 2) raise(ErrorKind::NotPrime, "classify_irreps: p must be odd prime");
  {
    // m must not be a perfect p-th power
    Int r;
    if (mpz_root(r.get_mpz_t(), m.get_mpz_t(), p) != 0)
      raise(ErrorKind::InvalidM, "m is a perfect p-th power");
    if (m <= 1) raise(ErrorKind::InvalidM, "m must be > 1");
  }
  std::vector<ArtinRepFT> out;

  // dimension-1 entries: Galois-orbit representatives of primitive Dirichlet
  // characters of p-power conductor p^k, k <= k_max; the cyclic group
  // (Z/p^k)^* has one orbit per character order
  for (unsigned k = 0; k <= k_max; ++k) {
    unsigned long pk = 1;
    for (unsigned i = 0; i < k; ++i) pk *= p;
    unsigned long phi_pk = euler_phi_ul(pk);
    for (unsigned long d = 1; d <= phi_pk; ++d) {
      if (phi_pk % d) continue;
      // order-d characters mod p^k have conductor exactly p^k iff d does not
      // already occur mod p^{k-1}
      if (k >= 1) {
        unsigned long phi_prev = euler_phi_ul(pk / p);
        if (k == 1 && d == 1) continue;  // trivial character belongs to k = 0
        if (k > 1 && phi_prev % d == 0) continue;
      }
      ArtinRepFT r;
      r.p = p;
      r.n = 0;
      r.k = k;
      r.m = m;
      r.phi = (k == 0) ? DirichletChar::trivial()
                       : DirichletChar::prime_power(p, k, phi_pk / d);
      r.dim = 1;
      int par = (k == 0) ? 1 : r.phi.parity();
      r.d_plus = par == 1 ? 1 : 0;
      r.d_minus = par == 1 ? 0 : 1;
      r.coeff_modulus = std::max<unsigned long>(r.phi.order(), 1);
      r.orbit_size = euler_phi_ul(d);
      r.conductor_candidates = {Int(static_cast<long>(pk))};
      out.push_back(std::move(r));
    }
  }

  // induced entries rho_n phi, n = 1..n_max. rho_n phi is determined by
  // Res phi (twisting the inducing character by anything trivial on K_n
  // gives an isomorphic induction), Res phi has p-power order p^j, and the
  // Galois action permutes the exact-order-p^j restrictions transitively:
  // one representative per (n, j), realized by the primitive character
  // mod p^{n+j} of exact order p^{n+j-1}
  for (unsigned n = 1; n <= n_max; ++n) {
    out.push_back(make_rho(p, n, m, DirichletChar::trivial()));
    out.back().orbit_size = 1;
    for (unsigned j = 1; n + j <= k_max; ++j) {
      unsigned kk = n + j;
      unsigned long pkk = 1;
      for (unsigned i = 0; i < kk; ++i) pkk *= p;
      unsigned long phi_order = 1;
      for (unsigned i = 0; i + 1 < kk; ++i) phi_order *= p;  // p^{kk-1}
      DirichletChar phi = DirichletChar::prime_power(p, kk, euler_phi_ul(pkk) / phi_order);
      unsigned long pj = 1;
      for (unsigned i = 0; i < j; ++i) pj *= p;
      out.push_back(make_rho(p, n, m, phi));
      out.back().orbit_size = euler_phi_ul(pj);
    }
  }
  return out;
}

ArtinRepFT conjugate_rep(const ArtinRepFT& rho, long a) {
  long M = static_cast<long>(rho.coeff_modulus);
  long ar = ((a % M) + M) % M;
  if (M > 1 && gcd_u64(static_cast<u64>(ar), static_cast<u64>(M)) != 1)
    raise(ErrorKind::NotCoprime, "conjugate_rep: a not coprime to the coefficient modulus");
  ArtinRepFT r = rho;
  if (rho.n >= 1) {
    unsigned long pn = 1;
    for (unsigned i = 0; i < rho.n; ++i) pn *= rho.p;
    long u = (rho.kummer_u * (ar % static_cast<long>(pn))) % static_cast<long>(pn);
    if (u < 0) u += static_cast<long>(pn);
    r.kummer_u = u;
  }
  r.phi = rho.phi.power(ar);
  return r;
}

}  // namespace ft
}  // namespace ftlv
