#include "ftlv/assemble.hpp"

#include <algorithm>

namespace ftlv {
namespace lf {

i64 ap_cached(const ec::CurveModel& E, const ApCache& cache, u64 ell);

namespace {

using ft::FalseTateChar;
using ft::PrimeOfKn;

// fast rational-prime local data for p^n = 3 (hot path of the coefficient
// streams): the Kummer exponent via one modular power, the phi part via a
// residue table, roots of unity from a small precomputed table. Verified
// against the generic exact path by a sampled property test.
struct FastK1 {
  FalseTateChar xi;
  unsigned long M;                 // value modulus lcm(3, ord phi)
  std::vector<Complex> zeta;       // zeta_M^j
  std::vector<long> phi_exp;       // exponent of phi at residues mod cond(phi), -1 undefined
  unsigned long phi_cond = 1, phi_ord = 1;

  FastK1(const FalseTateChar& x, mpfr_prec_t prec) : xi(x) {
    M = xi.value_modulus();
    for (unsigned long j = 0; j < M; ++j)
      zeta.push_back(unit_root_frac(static_cast<long>(j), static_cast<long>(M), prec));
    phi_cond = xi.phi.is_trivial() ? 1 : xi.phi.modulus;
    phi_ord = xi.phi.order();
    phi_exp.assign(phi_cond, -1);
    for (unsigned long a = 0; a < phi_cond; ++a)
      if (xi.phi.is_defined_at(static_cast<long>(a)))
        phi_exp[a] = static_cast<long>(xi.phi.eval_exponent(static_cast<long>(a)));
  }

  // xi(v) as an index into the zeta table; kummer k in {0,1,2}, norm nv
  long value_index(unsigned long k, const Int& nv) const {
    unsigned long idx = (k * static_cast<unsigned long>(xi.kummer_u) % 3) * (M / 3);
    if (phi_cond > 1) {
      long pe = phi_exp[int_mod_u64(nv, phi_cond)];
      if (pe < 0) raise(ErrorKind::RamifiedAtV, "fast path: norm not coprime to cond(phi)");
      idx = (idx + static_cast<unsigned long>(pe) * (M / phi_ord)) % M;
    }
    return static_cast<long>(idx % M);
  }
};

// complex local polynomial of L(E, Ind xi) at ell (degree up to 4), p^n = 3
std::vector<Complex> fast_twist_local(const FastK1& F, const ec::CurveModel& E, u64 ell,
                                      mpfr_prec_t prec, std::optional<u64> perturb,
                                      const ApCache& cache) {
  const FalseTateChar& xi = F.xi;
  std::vector<Complex> one{Complex(1L, prec)};
  if (ell == 3 || xi.ramified_at(ell)) {
    if (!E.good_at(Int(static_cast<long>(ell))) &&
        E.reduction_at(Int(static_cast<long>(ell))).kind == ec::ReductionKind::Additive)
      raise(ErrorKind::JointAdditiveRamification, "twist local factor");
    return one;
  }
  Int p(static_cast<long>(ell));
  bool good = E.good_at(p);
  int eig = 0;
  if (!good && E.reduction_at(p).kind == ec::ReductionKind::Additive) return one;
  if (!good) eig = E.reduction_at(p).kind == ec::ReductionKind::SplitMultiplicative ? 1 : -1;

  auto quad = [&](const Complex& xv, const Int& af, const Int& nv) {
    // 1 - xi(v) a_f X + xi(v)^2 Nv X^2
    Real a = int_to_real(af, prec), nn = int_to_real(nv, prec);
    return std::vector<Complex>{Complex(1L, prec), -(xv * a), (xv * xv) * nn};
  };
  auto lin = [&](const Complex& xv, int e) {
    return std::vector<Complex>{Complex(1L, prec), -(xv * Real(static_cast<long>(e), prec))};
  };
  auto mulpoly = [&](const std::vector<Complex>& a, const std::vector<Complex>& b) {
    std::vector<Complex> r(a.size() + b.size() - 1, Complex(prec));
    for (size_t i = 0; i < a.size(); ++i)
      for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
  };

  if (ell % 3 == 2) {
    // inert: f = 2, kummer exponent 0
    Int nv = p * p;
    long idx = F.value_index(0, nv);
    Complex xv = F.zeta[static_cast<size_t>(idx)];
    if (good) {
      Int af = ec::frobenius_trace_extension(Int(ap_cached(E, cache, ell)), p, 2);
      auto q2 = quad(xv, af, nv);
      return {q2[0], Complex(prec), q2[1], Complex(prec), q2[2]};
    }
    auto l2 = lin(xv, 1);  // (+-1)^2 = 1
    return {l2[0], Complex(prec), l2[1]};
  }
  // split: two degree-one primes with conjugate Kummer exponents
  u64 s = static_cast<u64>(sqrt_mod(-3, ell));
  u64 inv2 = static_cast<u64>(invmod(2, static_cast<i64>(ell)));
  u64 r1 = mulmod((ell - 1 + s) % ell, inv2, ell);
  u64 me = powmod(int_mod_u64(xi.m, ell), (ell - 1) / 3, ell);
  unsigned long k1;
  if (me == 1) k1 = 0;
  else if (me == r1) k1 = 1;
  else k1 = 2;
  unsigned long k2 = (3 - k1) % 3;
  if (perturb && *perturb == ell) k1 = (2 * k1) % 3;  // falsifier: xi(v) -> xi(v)^2
  long i1 = F.value_index(k1, p), i2 = F.value_index(k2, p);
  Complex x1 = F.zeta[static_cast<size_t>(i1)], x2 = F.zeta[static_cast<size_t>(i2)];
  if (good) {
    Int af(ap_cached(E, cache, ell));
    return mulpoly(quad(x1, af, p), quad(x2, af, p));
  }
  return mulpoly(lin(x1, eig), lin(x2, eig));
}

std::vector<Complex> fast_artin_local(const FastK1& F, u64 ell, mpfr_prec_t prec) {
  const FalseTateChar& xi = F.xi;
  std::vector<Complex> one{Complex(1L, prec)};
  if (ell == 3 || xi.ramified_at(ell)) return one;
  Int p(static_cast<long>(ell));
  if (ell % 3 == 2) {
    long idx = F.value_index(0, p * p);
    return {Complex(1L, prec), Complex(prec), -F.zeta[static_cast<size_t>(idx)]};
  }
  u64 s = static_cast<u64>(sqrt_mod(-3, ell));
  u64 inv2 = static_cast<u64>(invmod(2, static_cast<i64>(ell)));
  u64 r1 = mulmod((ell - 1 + s) % ell, inv2, ell);
  u64 me = powmod(int_mod_u64(xi.m, ell), (ell - 1) / 3, ell);
  unsigned long k1 = (me == 1) ? 0 : (me == r1 ? 1 : 2);
  unsigned long k2 = (3 - k1) % 3;
  Complex x1 = F.zeta[static_cast<size_t>(F.value_index(k1, p))];
  Complex x2 = F.zeta[static_cast<size_t>(F.value_index(k2, p))];
  // (1 - x1 X)(1 - x2 X)
  return {Complex(1L, prec), -(x1 + x2), x1 * x2};
}

std::vector<Cyclotomic> poly_mul_cyc(const std::vector<Cyclotomic>& a,
                                     const std::vector<Cyclotomic>& b) {
  std::vector<Cyclotomic> r(a.size() + b.size() - 1);
  for (auto& c : r) c = Cyclotomic::from_rat(Rat(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
  return r;
}

// substitute X -> X^f
std::vector<Cyclotomic> poly_stretch(const std::vector<Cyclotomic>& a, unsigned f) {
  std::vector<Cyclotomic> r((a.size() - 1) * f + 1, Cyclotomic::from_rat(Rat(0)));
  for (size_t i = 0; i < a.size(); ++i) r[i * f] = a[i];
  return r;
}

int mult_sign(const ec::CurveModel& E, const Int& p) {
  return E.reduction_at(p).kind == ec::ReductionKind::SplitMultiplicative ? 1 : -1;
}

}  // namespace

i64 ap_cached(const ec::CurveModel& E, const ApCache& cache, u64 ell) {
  if (!cache) return E.count_ap(ell);
  {
    std::lock_guard<std::mutex> lk(cache->mu);
    auto it = cache->m.find(ell);
    if (it != cache->m.end()) return it->second;
  }
  i64 a = E.count_ap(ell);
  std::lock_guard<std::mutex> lk(cache->mu);
  cache->m.emplace(ell, a);
  return a;
}

LocalFactor euler_factor_E_over_Kn(const ec::CurveModel& E, const PrimeOfKn& v) {
  Int p(static_cast<long>(v.ell));
  LocalFactor lf;
  lf.prime = p;
  Cyclotomic one = Cyclotomic::from_rat(Rat(1));
  if (E.good_at(p)) {
    Int af = ec::frobenius_trace_extension(Int(E.count_ap(v.ell)), p, v.f);
    lf.coeffs = {one, Cyclotomic::from_rat(Rat(-af)), Cyclotomic::from_rat(Rat(v.norm))};
    return lf;
  }
  auto kind = E.reduction_at(p).kind;
  if (kind == ec::ReductionKind::Additive) {
    lf.coeffs = {one};
    return lf;
  }
  int eig = mult_sign(E, p);
  int eig_f = (v.f % 2 == 0) ? 1 : eig;
  lf.coeffs = {one, Cyclotomic::from_rat(Rat(-eig_f))};
  return lf;
}

LocalFactor euler_factor_artin(const FalseTateChar& xi, const PrimeOfKn& v) {
  LocalFactor lf;
  lf.prime = Int(static_cast<long>(v.ell));
  Cyclotomic one = Cyclotomic::from_rat(Rat(1));
  if (xi.ramified_at(v.ell)) {
    lf.coeffs = {one};
    return lf;
  }
  lf.coeffs = {one, -ft::hecke_eval(xi, v)};
  return lf;
}

LocalFactor euler_factor_twist(const ec::CurveModel& E, const FalseTateChar& xi,
                               const PrimeOfKn& v) {
  Int p(static_cast<long>(v.ell));
  LocalFactor lf;
  lf.prime = p;
  Cyclotomic one = Cyclotomic::from_rat(Rat(1));
  bool ram = xi.ramified_at(v.ell);
  bool good = E.good_at(p);
  auto kind = E.reduction_at(p).kind;

  if (ram) {
    if (!good && kind == ec::ReductionKind::Additive)
      raise(ErrorKind::JointAdditiveRamification,
            "euler_factor_twist: additive reduction with ramified character at " +
                std::to_string(v.ell));
    lf.coeffs = {one};  // invariants vanish
    return lf;
  }
  Cyclotomic xv = ft::hecke_eval(xi, v);
  if (good) {
    Int af = ec::frobenius_trace_extension(Int(E.count_ap(v.ell)), p, v.f);
    lf.coeffs = {one, -(xv * Rat(af)), (xv * xv) * Rat(v.norm)};
    return lf;
  }
  if (kind == ec::ReductionKind::Additive) {
    lf.coeffs = {one};
    return lf;
  }
  int eig = mult_sign(E, p);
  int eig_f = (v.f % 2 == 0) ? 1 : eig;
  lf.coeffs = {one, -(xv * Rat(eig_f))};
  return lf;
}

std::vector<Cyclotomic> twist_local_rational(const ec::CurveModel& E, const FalseTateChar& xi,
                                             u64 ell) {
  Cyclotomic one = Cyclotomic::from_rat(Rat(1));
  if (ell == xi.p) {
    // the totally ramified prime over p: with xi ramified there the factor is
    // 1 for good/multiplicative E; joint additive ramification is refused
    if (!E.good_at(Int(static_cast<long>(ell))) &&
        E.reduction_at(Int(static_cast<long>(ell))).kind == ec::ReductionKind::Additive)
      raise(ErrorKind::JointAdditiveRamification, "twist at the wildly ramified prime over p");
    return {one};
  }
  ft::CyclotomicLevel level(xi.p, xi.n);
  auto vs = ft::primes_of_kn(level, ell);
  std::vector<Cyclotomic> poly{one};
  for (const auto& v : vs) {
    LocalFactor lf = euler_factor_twist(E, xi, v);
    poly = poly_mul_cyc(poly, poly_stretch(lf.coeffs, v.f));
  }
  return poly;
}

std::vector<Cyclotomic> artin_local_rational(const FalseTateChar& xi, u64 ell) {
  Cyclotomic one = Cyclotomic::from_rat(Rat(1));
  if (ell == xi.p) return {one};  // xi ramified at the unique prime over p
  ft::CyclotomicLevel level(xi.p, xi.n);
  auto vs = ft::primes_of_kn(level, ell);
  std::vector<Cyclotomic> poly{one};
  for (const auto& v : vs) {
    LocalFactor lf = euler_factor_artin(xi, v);
    poly = poly_mul_cyc(poly, poly_stretch(lf.coeffs, v.f));
  }
  return poly;
}

std::vector<Complex> expand_euler_product(
    size_t n, mpfr_prec_t prec,
    const std::function<std::vector<Complex>(u64, mpfr_prec_t)>& local_poly) {
  std::vector<Complex> a(n + 1, Complex(prec));
  if (n == 0) return a;
  a[1] = Complex(1L, prec);
  if (n == 1) return a;
  std::vector<uint32_t> spf(n + 1, 0);
  for (u64 i = 2; i <= n; ++i)
    if (spf[i] == 0)
      for (u64 j = i; j <= n; j += i)
        if (spf[j] == 0) spf[j] = static_cast<uint32_t>(i);

  for (u64 q = 2; q <= n; ++q) {
    if (spf[q] != q) continue;
    std::vector<Complex> c = local_poly(q, prec);
    size_t D = c.size() - 1;
    // 1/P(X) coefficients by the linear recurrence
    std::vector<Complex> b;
    b.push_back(Complex(1L, prec));
    u64 pk = q;
    size_t j = 1;
    while (pk <= n) {
      Complex acc(prec);
      for (size_t i = 1; i <= std::min(j, D); ++i) acc -= c[i] * b[j - i];
      b.push_back(acc);
      a[pk] = b[j];
      if (pk > n / q) break;
      pk *= q;
      ++j;
    }
  }
  for (u64 m2 = 2; m2 <= n; ++m2) {
    u64 p = spf[m2], pk = 1, rest = m2;
    while (rest % p == 0) { rest /= p; pk *= p; }
    if (rest > 1) a[m2] = a[pk] * a[rest];
  }
  return a;
}

LFunctionSpec zeta_spec() {
  LFunctionSpec s;
  s.degree = 1;
  s.conductor = 1;
  s.gamma_shifts = {0};
  s.weight = 0;
  s.root_number = std::nullopt;  // solved; should come out +1
  s.zeta_pole = true;
  s.self_dual = true;
  s.coeff_log_growth = 0.05;
  s.label = "zeta";
  s.conductor_candidates = {Int(1)};
  s.coeffs = memoize_coeffs([](size_t n, mpfr_prec_t prec) {
    std::vector<Complex> a(n + 1, Complex(prec));
    for (size_t i = 1; i <= n; ++i) a[i] = Complex(1L, prec);
    return a;
  });
  return s;
}

LFunctionSpec dirichlet_spec(const ft::DirichletChar& psi) {
  if (!psi.is_primitive()) raise(ErrorKind::ImprimitiveCharacter, "dirichlet_spec needs a primitive character");
  LFunctionSpec s;
  s.degree = 1;
  s.conductor = Int(static_cast<long>(psi.modulus));
  s.gamma_shifts = {psi.parity() == 1 ? 0 : 1};
  s.weight = 0;
  s.self_dual = psi.order() <= 2;
  s.zeta_pole = psi.order() == 1;
  s.coeff_log_growth = 0.05;
  s.label = "dirichlet-q" + std::to_string(psi.modulus);
  s.conductor_candidates = {s.conductor};
  s.coeffs = memoize_coeffs([psi](size_t n, mpfr_prec_t prec) {
    std::vector<Complex> a(n + 1, Complex(prec));
    for (size_t i = 1; i <= n; ++i)
      if (psi.is_defined_at(static_cast<long>(i))) a[i] = psi.value_c(static_cast<long>(i), prec);
    return a;
  });
  return s;
}

LFunctionSpec elliptic_spec(const ec::CurveModel& E, ApCache cache) {
  LFunctionSpec s;
  s.degree = 2;
  s.conductor = E.conductor;
  s.gamma_shifts = {0, 1};
  s.weight = 1;
  s.self_dual = true;
  s.coeff_log_growth = 0.8;
  s.label = "L(E), E=[" + E.label_key() + "]";
  s.conductor_candidates = {E.conductor, E.conductor * E.conductor};
  s.coeffs = memoize_coeffs([E, cache](size_t n, mpfr_prec_t prec) {
    std::vector<i64> c;
    if (cache) {
      std::lock_guard<std::mutex> lk(cache->mu);
      c = E.dirichlet_coeffs(n, &cache->m);
    } else {
      c = E.dirichlet_coeffs(n);
    }
    std::vector<Complex> a(n + 1, Complex(prec));
    for (size_t i = 1; i <= n; ++i) a[i] = Complex(Real(c[i], prec), Real(0L, prec));
    return a;
  });
  return s;
}

LFunctionSpec elliptic_twist_dirichlet(const ec::CurveModel& E, const ft::DirichletChar& psi,
                                       ApCache cache) {
  if (!psi.is_primitive()) raise(ErrorKind::ImprimitiveCharacter, "twist by imprimitive character");
  Int f(static_cast<long>(psi.modulus));
  Int g;
  mpz_gcd(g.get_mpz_t(), f.get_mpz_t(), E.conductor.get_mpz_t());
  if (g != 1) raise(ErrorKind::Unsupported, "twist character conductor shares a prime with N(E)");
  LFunctionSpec s;
  s.degree = 2;
  s.conductor = E.conductor * f * f;
  s.gamma_shifts = {0, 1};
  s.weight = 1;
  s.self_dual = psi.order() <= 1;
  s.coeff_log_growth = 0.8;
  s.label = "L(E,psi-q" + std::to_string(psi.modulus) + ")";
  s.conductor_candidates = {s.conductor};
  s.coeffs = memoize_coeffs([E, psi, cache](size_t n, mpfr_prec_t prec) {
    std::vector<i64> c;
    if (cache) {
      std::lock_guard<std::mutex> lk(cache->mu);
      c = E.dirichlet_coeffs(n, &cache->m);
    } else {
      c = E.dirichlet_coeffs(n);
    }
    std::vector<Complex> a(n + 1, Complex(prec));
    for (size_t i = 1; i <= n; ++i)
      if (psi.is_defined_at(static_cast<long>(i))) {
        Complex v = psi.value_c(static_cast<long>(i), prec);
        a[i] = Complex(v.re * Real(c[i], prec), v.im * Real(c[i], prec));
      }
    return a;
  });
  return s;
}

LFunctionSpec artin_spec(const ft::ArtinRepFT& rho) {
  if (rho.is_dim_one()) return dirichlet_spec(rho.phi.primitive_part());
  FalseTateChar xi = rho.inducing_character();
  LFunctionSpec s;
  s.degree = static_cast<int>(rho.dim);
  s.gamma_shifts.assign(rho.d_plus, 0);
  s.gamma_shifts.insert(s.gamma_shifts.end(), rho.d_minus, 1);
  s.weight = 0;
  s.self_dual = false;
  s.coeff_log_growth = 0.35;
  s.label = "L(rho), p=" + std::to_string(rho.p) + " n=" + std::to_string(rho.n);
  s.conductor_candidates = rho.conductor_candidates;
  s.conductor = rho.conductor_candidates.front();
  if (rho.p == 3 && rho.n == 1) {
    s.coeffs = memoize_coeffs([xi](size_t n, mpfr_prec_t prec) {
      FastK1 F(xi, prec);
      return expand_euler_product(
          n, prec, [&F](u64 ell, mpfr_prec_t pr) { return fast_artin_local(F, ell, pr); });
    });
  } else {
    s.coeffs = memoize_coeffs([xi](size_t n, mpfr_prec_t prec) {
      return expand_euler_product(n, prec, [xi](u64 ell, mpfr_prec_t pr) {
        std::vector<Complex> out;
        for (const auto& c : artin_local_rational(xi, ell)) out.push_back(c.value(pr));
        return out;
      });
    });
  }
  return s;
}

LFunctionSpec symsq_spec(const ec::CurveModel& E, ApCache cache) {
  for (auto& [p, rt] : E.local_data)
    if (rt.kind == ec::ReductionKind::Additive)
      raise(ErrorKind::Unsupported, "symmetric square assembled for semistable curves only");
  LFunctionSpec s;
  s.degree = 3;
  s.gamma_shifts = {0, 0, 1};
  s.weight = 2;
  s.self_dual = true;
  s.coeff_log_growth = 1.15;
  s.label = "L(Sym2 E), E=[" + E.label_key() + "]";
  Int N = E.conductor;
  s.conductor_candidates = {N * N, N, N * N * N};
  s.conductor = N * N;
  s.coeffs = memoize_coeffs([E, cache](size_t n, mpfr_prec_t prec) {
    return expand_euler_product(n, prec, [E, cache](u64 ell, mpfr_prec_t pr) {
      std::vector<Complex> out;
      Int p(static_cast<long>(ell));
      if (E.good_at(p)) {
        i64 al = ap_cached(E, cache, ell);
        i64 e1 = al * al - static_cast<i64>(ell);
        // (1 - a^2 ... ) = 1 - e1 X + l*e1 X^2 - l^3 X^3
        out = {Complex(1L, pr), Complex(-e1, pr), Complex(Real(e1, pr) * Real(static_cast<long>(ell), pr), Real(0L, pr)),
               Complex(-pow_si(Real(static_cast<long>(ell), pr), 3), Real(0L, pr))};
      } else {
        out = {Complex(1L, pr), Complex(-1L, pr)};  // multiplicative: 1 - X
      }
      return out;
    });
  });
  return s;
}

LFunctionSpec twist_spec(const ec::CurveModel& E, const ft::ArtinRepFT& rho,
                         std::optional<u64> perturb_prime, ApCache cache) {
  if (rho.is_dim_one()) return elliptic_twist_dirichlet(E, rho.phi.primitive_part(), cache);
  FalseTateChar xi = rho.inducing_character();
  // scope: ramification of E and xi must not meet except as handled
  for (auto& [q, rt] : E.local_data) {
    if (xi.ramified_at(q.get_ui()) && rt.kind == ec::ReductionKind::Additive)
      raise(ErrorKind::JointAdditiveRamification, "twist_spec");
    if (xi.ramified_at(q.get_ui()))
      raise(ErrorKind::Unsupported, "twist_spec: N(E) shares a prime with the character conductor");
  }
  LFunctionSpec s;
  s.degree = 2 * static_cast<int>(rho.dim);
  s.gamma_shifts.assign(rho.dim, 0);
  s.gamma_shifts.insert(s.gamma_shifts.end(), rho.dim, 1);
  s.weight = 1;
  s.self_dual = false;
  s.coeff_log_growth = 0.9;
  s.label = "L(E,rho), E=[" + E.label_key() + "], p=" + std::to_string(rho.p) +
            " n=" + std::to_string(rho.n) + " m=" + rho.m.get_str();
  // conductor candidates: disc(K_n)^2 * N(cond E/K_n) * N(f_xi)^2
  ft::CyclotomicLevel level(rho.p, rho.n);
  Int disc_kn = 1;
  {
    unsigned long phin = level.degree;
    unsigned long e = rho.n * phin - phin / (rho.p - 1);
    disc_kn = int_pow(Int(static_cast<long>(rho.p)), e);
  }
  Int ncond_ek = 1;
  for (auto& [q, rt] : E.local_data) {
    if (q == Int(static_cast<long>(rho.p))) continue;  // handled inside N(f) candidates scope
    ncond_ek *= int_pow(q, static_cast<unsigned long>(rt.conductor_exponent) * level.degree);
  }
  for (const Int& nf : xi.conductor_norm_candidates())
    s.conductor_candidates.push_back(disc_kn * disc_kn * ncond_ek * nf * nf);
  s.conductor = s.conductor_candidates.front();
  if (rho.p == 3 && rho.n == 1) {
    s.coeffs = memoize_coeffs([E, xi, perturb_prime, cache](size_t n, mpfr_prec_t prec) {
      FastK1 F(xi, prec);
      return expand_euler_product(n, prec, [&F, E, perturb_prime, cache](u64 ell, mpfr_prec_t pr) {
        return fast_twist_local(F, E, ell, pr, perturb_prime, cache);
      });
    });
  } else {
    s.coeffs = memoize_coeffs([E, xi, perturb_prime](size_t n, mpfr_prec_t prec) {
      return expand_euler_product(n, prec, [E, xi, perturb_prime](u64 ell, mpfr_prec_t pr) {
        std::vector<Cyclotomic> poly;
        if (perturb_prime && *perturb_prime == ell) {
          // falsifier hook: swap xi(v) -> xi(v)^2 at the first prime above ell
          ft::CyclotomicLevel lv(xi.p, xi.n);
          auto vs = ft::primes_of_kn(lv, ell);
          poly = {Cyclotomic::from_rat(Rat(1))};
          for (size_t i = 0; i < vs.size(); ++i) {
            LocalFactor f = (i == 0) ? euler_factor_twist(E, xi.power(2), vs[i])
                                     : euler_factor_twist(E, xi, vs[i]);
            poly = poly_mul_cyc(poly, poly_stretch(f.coeffs, vs[i].f));
          }
        } else {
          poly = twist_local_rational(E, xi, ell);
        }
        std::vector<Complex> out;
        for (const auto& c : poly) out.push_back(c.value(pr));
        return out;
      });
    });
  }
  return s;
}

LFunctionSpec product_spec(std::vector<LFunctionSpec> parts, const std::string& label) {
  if (parts.empty()) raise(ErrorKind::Internal, "product of zero specs");
  LFunctionSpec s;
  s.degree = 0;
  s.conductor = 1;
  s.weight = parts[0].weight;
  s.self_dual = true;
  bool have_root = true;
  Complex root(1L, 64);
  double growth = 0.15;
  for (auto& p : parts) {
    if (p.weight != s.weight) raise(ErrorKind::Internal, "product of different weights");
    if (p.zeta_pole) raise(ErrorKind::Unsupported, "product with poles");
    s.degree += p.degree;
    s.conductor *= p.conductor;
    s.gamma_shifts.insert(s.gamma_shifts.end(), p.gamma_shifts.begin(), p.gamma_shifts.end());
    s.self_dual = s.self_dual && p.self_dual;
    if (p.root_number && have_root)
      root = root * *p.root_number;
    else
      have_root = false;
    growth += p.coeff_log_growth;
  }
  if (have_root) s.root_number = root;
  s.coeff_log_growth = growth;
  s.label = label;
  s.conductor_candidates = {s.conductor};
  s.coeffs = memoize_coeffs([parts](size_t n, mpfr_prec_t prec) {
    CoeffVec a0 = parts[0].coeffs(n, prec);
    std::vector<Complex> acc(a0->begin(), a0->begin() + n + 1);
    for (size_t t = 1; t < parts.size(); ++t) {
      CoeffVec bp = parts[t].coeffs(n, prec);
      const std::vector<Complex>& b = *bp;
      std::vector<Complex> c(n + 1, Complex(prec));
      for (size_t d = 1; d <= n; ++d) {
        if (acc[d].is_zero()) continue;
        for (size_t e = 1; d * e <= n; ++e) {
          if (b[e].is_zero()) continue;
          c[d * e] += acc[d] * b[e];
        }
      }
      acc = std::move(c);
    }
    return acc;
  });
  return s;
}

}  // namespace lf
}  // namespace ftlv
