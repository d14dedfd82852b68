#include "ftlv/elliptic.hpp"

#include <sstream>

#include "ftlv/fqpoly.hpp"

namespace ftlv {
namespace ec {

namespace {

struct W {
  Int a1, a2, a3, a4, a6;

  // x = x' + r, y = y' + s x' + t  (u = 1)
  void translate(const Int& r, const Int& s, const Int& t) {
    Int A1 = a1 + 2 * s;
    Int A2 = a2 - s * a1 + 3 * r - s * s;
    Int A3 = a3 + r * a1 + 2 * t;
    Int A4 = a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t;
    Int A6 = a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1;
    a1 = A1; a2 = A2; a3 = A3; a4 = A4; a6 = A6;
  }

  Int b2() const { return a1 * a1 + 4 * a2; }
  Int b4() const { return 2 * a4 + a1 * a3; }
  Int b6() const { return a3 * a3 + 4 * a6; }
  Int b8() const { return a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4; }
  Int c4() const { return b2() * b2() - 24 * b4(); }
  Int disc() const {
    Int B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
    return -B2 * B2 * B8 - 8 * B4 * B4 * B4 - 27 * B6 * B6 + 9 * B2 * B4 * B6;
  }
};

u64 umod(const Int& a, u64 p) {
  Int r = a % Int(static_cast<long>(p));
  if (r < 0) r += static_cast<long>(p);
  return r.get_ui();
}

int val(const Int& a, const Int& p) {
  if (a == 0) return 1 << 20;  // "infinity" for divisibility tests
  Int q;
  return valuation(a, p, &q);
}

// a representative x0 in [0,p) of a root of the (nontrivial) gcd(g, g') mod p
u64 repeated_root_mod(const FpPoly& g, u64 p) {
  FpPoly d = fp_derivative(g);
  FpPoly h = d.is_zero() ? fp_monic(g) : fp_gcd(g, d);
  if (h.deg() < 1) raise(ErrorKind::Internal, "tate: expected repeated root");
  for (auto& [fac, mult] : factor_poly_mod_l(h)) {
    (void)mult;
    if (fac.deg() == 1) return (p - fac.c[0] % p) % p;  // monic x + c -> root -c
  }
  raise(ErrorKind::Internal, "tate: repeated root not rational");
}

// move the singular point of the reduction mod p to (0,0)
void move_singular_point_to_origin(W& w, u64 p) {
  if (p == 2) {
    for (u64 x = 0; x < 2; ++x)
      for (u64 y = 0; y < 2; ++y) {
        u64 F = (y * y + umod(w.a1, 2) * x * y + umod(w.a3, 2) * y + x * x * x +
                 umod(w.a2, 2) * x * x + umod(w.a4, 2) * x + umod(w.a6, 2)) %
                2;
        u64 Fx = (umod(w.a1, 2) * y + x * x + umod(w.a4, 2)) % 2;
        u64 Fy = (umod(w.a1, 2) * x + umod(w.a3, 2)) % 2;
        if (F == 0 && Fx == 0 && Fy == 0) {
          w.translate(Int(static_cast<long>(x)), 0, Int(static_cast<long>(y)));
          return;
        }
      }
    raise(ErrorKind::Internal, "tate: singular point not found mod 2");
  }
  // odd p: x0 is a repeated root of 4x^3 + b2 x^2 + 2b4 x + b6
  std::vector<Int> g{w.b6(), 2 * w.b4(), w.b2(), Int(4)};
  u64 x0 = repeated_root_mod(FpPoly::from_int_poly(g, p), p);
  u64 inv2 = static_cast<u64>(invmod(2, static_cast<i64>(p)));
  u64 y0 = mulmod((p - umod(w.a1 * Int(static_cast<long>(x0)) + w.a3, p)) % p, inv2, p);
  w.translate(Int(static_cast<long>(x0)), 0, Int(static_cast<long>(y0)));
}

// distinct-roots test of a*Y^2 + b*Y + c over the algebraic closure of F_p
bool quad_distinct_roots(const Int& a, const Int& b, const Int& c, u64 p) {
  if (p == 2) return umod(b, 2) != 0;
  return umod(b * b - 4 * a * c, p) != 0;
}

// a root of a*Y^2 + b*Y + c mod p given the double-root case (disc = 0, a unit)
u64 quad_double_root(const Int& a, const Int& b, const Int& c, u64 p) {
  if (p == 2) return (umod(c, 2) * umod(a, 2)) % 2;  // Y^2 = -c/a, sqrt mod 2 is identity
  u64 ua = umod(a, p);
  u64 inv = static_cast<u64>(invmod(static_cast<i64>(mulmod(2, ua, p)), static_cast<i64>(p)));
  return mulmod((p - umod(b, p)) % p, inv, p);
}

}  // namespace

ReductionType tate_local_data(const std::array<Int, 5>& coeffs, const Int& ell) {
  if (ell <= 0 || mpz_probab_prime_p(ell.get_mpz_t(), 30) == 0)
    raise(ErrorKind::NotPrime, "tate_local_data: ell not prime");
  W w{coeffs[0], coeffs[1], coeffs[2], coeffs[3], coeffs[4]};
  const Int p = ell;
  const u64 pu = p.get_ui();
  const Int D = w.disc();
  if (D == 0) raise(ErrorKind::Internal, "tate: singular curve");
  const int vD = val(D, p);

  ReductionType out;
  if (vD == 0) {
    out.kind = ReductionKind::Good;
    out.conductor_exponent = 0;
    out.kodaira_m = 1;
    return out;
  }

  if (val(w.c4(), p) == 0) {
    // multiplicative, type I_{vD}
    move_singular_point_to_origin(w, pu);
    // tangent directions from y^2 + a1 x y - a2 x^2
    bool split;
    if (pu == 2) {
      split = (umod(w.a2, 2) == 0) || (umod(Int(1) + w.a1 - w.a2, 2) == 0);
    } else {
      split = jacobi(static_cast<i64>(umod(w.a1 * w.a1 + 4 * w.a2, pu)), pu) == 1;
    }
    out.kind = split ? ReductionKind::SplitMultiplicative : ReductionKind::NonsplitMultiplicative;
    out.conductor_exponent = 1;
    out.kodaira_m = vD;
    return out;
  }

  // additive from here; conductor exponent comes out of Ogg's formula
  out.kind = ReductionKind::Additive;
  move_singular_point_to_origin(w, pu);
  if (val(w.a3, p) < 1 || val(w.a4, p) < 1 || val(w.a6, p) < 1)
    raise(ErrorKind::Internal, "tate: translation failed");

  auto finish = [&](int m) {
    out.kodaira_m = m;
    out.conductor_exponent = vD - m + 1;
    return out;
  };

  if (val(w.a6, p) < 2) return finish(1);   // II
  if (val(w.b8(), p) < 3) return finish(2); // III
  if (val(w.b6(), p) < 3) return finish(3); // IV

  // normalize to p | a1,a2, p^2 | a3,a4, p^3 | a6
  auto normalized = [&]() {
    return val(w.a1, p) >= 1 && val(w.a2, p) >= 1 && val(w.a3, p) >= 2 && val(w.a4, p) >= 2 &&
           val(w.a6, p) >= 3;
  };
  if (pu == 2) {
    // wild case: the right (s, t) exists for types >= I0*; search the 8 candidates
    W saved = w;
    bool found = false;
    for (long s = 0; s < 2 && !found; ++s)
      for (long t = 0; t < 4 && !found; ++t) {
        w = saved;
        w.translate(0, Int(s), Int(t));
        found = normalized();
      }
    if (!found) raise(ErrorKind::Internal, "tate: p=2 normalization failed");
  } else {
    u64 inv2 = static_cast<u64>(invmod(2, static_cast<i64>(pu)));
    Int s = mulmod((pu - umod(w.a1, pu)) % pu, inv2, pu);
    w.translate(0, s, 0);
    // kill a3 mod p^2
    Int p2 = p * p;
    Int a3r = w.a3 % p2;
    if (a3r < 0) a3r += p2;
    Int t = ((p2 - a3r) * Int(static_cast<long>(invmod(2, p2.get_si())))) % p2;
    w.translate(0, 0, t);
    if (!normalized()) raise(ErrorKind::Internal, "tate: normalization failed");
  }

  // P(T) = T^3 + a_{2,1} T^2 + a_{4,2} T + a_{6,3} mod p
  Int a21 = w.a2 / p, a42 = w.a4 / (p * p), a63 = w.a6 / (p * p * p);
  FpPoly P = FpPoly::from_int_poly({a63, a42, a21, Int(1)}, pu);
  // root multiplicities decide between I0*, In* and the IV*/III*/II* chain;
  // factоring is multiplicity-correct in characteristic 2 and 3 where
  // derivative/gcd shortcuts are not
  int max_mult = 1;
  u64 rep_root = 0;
  for (auto& [fac, mult] : factor_poly_mod_l(P)) {
    if (mult > max_mult && fac.deg() == 1) {
      max_mult = mult;
      rep_root = (pu - fac.c[0] % pu) % pu;
    }
  }

  if (max_mult == 1) return finish(5);  // I0*, three distinct roots

  if (max_mult == 2) {
    // double root; move it to T = 0, i.e. x -> x + p * r0
    u64 r0 = rep_root;
    w.translate(p * Int(static_cast<long>(r0)), 0, 0);
    // I_n* subprocedure
    if (val(w.a2, p) != 1 || val(w.a4, p) < 3 || val(w.a6, p) < 4)
      raise(ErrorKind::Internal, "tate: In* entry valuations");
    int k = 1;
    for (;;) {
      // n = 2k-1: component pair from Y^2 + a_{3,k+1} Y - a_{6,2k+2}
      Int pk1 = int_pow(p, static_cast<unsigned long>(k + 1));
      Int a3k = w.a3 / pk1;
      Int a62k = w.a6 / (pk1 * pk1);
      if (quad_distinct_roots(Int(1), a3k, -a62k, pu)) return finish(5 + 2 * k - 1);
      u64 y0 = quad_double_root(Int(1), a3k, -a62k, pu);
      w.translate(0, 0, pk1 * Int(static_cast<long>(y0)));
      // n = 2k: a_{2,1} X^2 + a_{4,k+2} X + a_{6,2k+3}
      Int pk2 = pk1 * p;
      Int a4k = w.a4 / pk2;
      Int a62k3 = w.a6 / (pk1 * pk2);
      Int A21 = w.a2 / p;
      if (quad_distinct_roots(A21, a4k, a62k3, pu)) return finish(5 + 2 * k);
      u64 x0 = quad_double_root(A21, a4k, a62k3, pu);
      w.translate(pk2 * Int(static_cast<long>(x0)), 0, 0);
      ++k;
      if (k > vD + 2) raise(ErrorKind::Internal, "tate: In* loop runaway");
    }
  }

  // triple root; move it to T = 0
  w.translate(p * Int(static_cast<long>(rep_root)), 0, 0);
  if (val(w.a2, p) < 2 || val(w.a4, p) < 3 || val(w.a6, p) < 4)
    raise(ErrorKind::Internal, "tate: triple-root valuations");

  // IV*: Y^2 + a_{3,2} Y - a_{6,4}
  Int p2 = p * p;
  if (quad_distinct_roots(Int(1), w.a3 / p2, -(w.a6 / (p2 * p2)), pu)) return finish(7);
  {
    u64 y0 = quad_double_root(Int(1), w.a3 / p2, -(w.a6 / (p2 * p2)), pu);
    w.translate(0, 0, p2 * Int(static_cast<long>(y0)));
  }
  if (val(w.a4, p) < 4) return finish(8);  // III*
  if (val(w.a6, p) < 6) return finish(9);  // II*
  raise(ErrorKind::NonMinimalAtL, "tate: model not minimal at " + ell.get_str());
}

CurveModel CurveModel::from_coeffs(const std::array<Int, 5>& a) {
  CurveModel E;
  E.a1 = a[0]; E.a2 = a[1]; E.a3 = a[2]; E.a4 = a[3]; E.a6 = a[4];
  E.b2 = E.a1 * E.a1 + 4 * E.a2;
  E.b4 = 2 * E.a4 + E.a1 * E.a3;
  E.b6 = E.a3 * E.a3 + 4 * E.a6;
  E.b8 = E.a1 * E.a1 * E.a6 + 4 * E.a2 * E.a6 - E.a1 * E.a3 * E.a4 + E.a2 * E.a3 * E.a3 -
         E.a4 * E.a4;
  E.c4 = E.b2 * E.b2 - 24 * E.b4;
  E.c6 = -E.b2 * E.b2 * E.b2 + 36 * E.b2 * E.b4 - 216 * E.b6;
  E.disc = -E.b2 * E.b2 * E.b8 - 8 * E.b4 * E.b4 * E.b4 - 27 * E.b6 * E.b6 + 9 * E.b2 * E.b4 * E.b6;
  if (E.disc == 0) raise(ErrorKind::Internal, "singular Weierstrass model");

  // primes dividing the discriminant by trial division (desk scale)
  Int d = E.disc < 0 ? Int(-E.disc) : E.disc;
  std::vector<Int> bad;
  for (Int q = 2; q * q <= d; q = (q == 2 ? Int(3) : q + 2)) {
    if (d % q == 0) {
      bad.push_back(q);
      while (d % q == 0) d /= q;
    }
  }
  if (d > 1) bad.push_back(d);

  E.conductor = 1;
  for (const Int& q : bad) {
    ReductionType rt = tate_local_data(a, q);
    E.local_data[q] = rt;
    E.conductor *= int_pow(q, static_cast<unsigned long>(rt.conductor_exponent));
  }
  return E;
}

const ReductionType& CurveModel::reduction_at(const Int& p) const {
  static const ReductionType good{};
  auto it = local_data.find(p);
  return it == local_data.end() ? good : it->second;
}

std::string CurveModel::label_key() const {
  std::ostringstream os;
  os << a1.get_str() << "_" << a2.get_str() << "_" << a3.get_str() << "_" << a4.get_str() << "_"
     << a6.get_str();
  return os.str();
}

i64 CurveModel::count_ap(u64 ell) const {
  if (conductor % Int(static_cast<long>(ell)) == 0)
    raise(ErrorKind::BadPrime, "count_ap: bad reduction at " + std::to_string(ell));
  if (ell == 2) {
    // brute force over F_2
    int n = 0;
    auto m2 = [&](const Int& v) { return umod(v, 2); };
    for (u64 x = 0; x < 2; ++x)
      for (u64 y = 0; y < 2; ++y) {
        u64 lhs = (y * y + m2(a1) * x * y + m2(a3) * y) % 2;
        u64 rhs = (x * x * x + m2(a2) * x * x + m2(a4) * x + m2(a6)) % 2;
        if (lhs == rhs) ++n;
      }
    return 2 + 1 - (n + 1);
  }
  // a_l = -sum_x chi(4x^3 + b2 x^2 + 2 b4 x + b6)
  const u64 p = ell;
  static thread_local std::vector<uint8_t> sq;
  sq.assign(p, 0);
  for (u64 z = 0; z <= (p - 1) / 2; ++z) sq[(z * z) % p] = 1;
  u64 B2 = umod(b2, p), B4 = umod(b4, p), B6 = umod(b6, p);
  // finite differences of g(x) = 4x^3 + B2 x^2 + 2 B4 x + B6
  u64 g = B6;
  u64 d1 = (4 + B2 + 2 * B4) % p;             // g(1) - g(0)
  u64 d2 = (24 + 2 * B2) % p;                 // second difference at 0
  const u64 d3 = 24 % p;
  i64 s = 0;
  for (u64 x = 0; x < p; ++x) {
    if (g != 0) s += sq[g] ? 1 : -1;
    g += d1; if (g >= p) g -= p;
    d1 += d2; if (d1 >= p) d1 -= p;
    d2 += d3; if (d2 >= p) d2 -= p;
  }
  i64 a = -s;
  if (static_cast<double>(a) * a > 4.0 * static_cast<double>(p))
    raise(ErrorKind::HasseViolation, "count_ap: |a_p| exceeds 2 sqrt(p)");
  return a;
}

i64 CurveModel::ap_any(u64 ell) const {
  Int p(static_cast<long>(ell));
  if (good_at(p)) return count_ap(ell);
  switch (reduction_at(p).kind) {
    case ReductionKind::SplitMultiplicative: return 1;
    case ReductionKind::NonsplitMultiplicative: return -1;
    default: return 0;
  }
}

Int frobenius_trace_extension(const Int& a, const Int& ell, unsigned f) {
  if (a * a > 4 * ell) raise(ErrorKind::HasseViolation, "frobenius_trace_extension");
  Int s0 = 2, s1 = a;
  if (f == 0) return s0;
  for (unsigned j = 2; j <= f; ++j) {
    Int s2 = a * s1 - ell * s0;
    s0 = s1;
    s1 = s2;
  }
  return s1;
}

std::vector<i64> CurveModel::dirichlet_coeffs(size_t n, const std::map<u64, i64>* ap_cache) const {
  std::vector<i64> a(n + 1, 0);
  if (n == 0) return a;
  a[1] = 1;
  if (n == 1) return a;
  // smallest-prime-factor sieve for multiplicative assembly
  std::vector<uint32_t> spf(n + 1, 0);
  for (u64 i = 2; i <= n; ++i) {
    if (spf[i] == 0)
      for (u64 j = i; j <= n; j += i)
        if (spf[j] == 0) spf[j] = static_cast<uint32_t>(i);
  }
  for (u64 q = 2; q <= n; ++q) {
    if (spf[q] != q) continue;  // primes only
    i64 aq;
    if (ap_cache) {
      auto it = ap_cache->find(q);
      aq = (it != ap_cache->end()) ? it->second : ap_any(q);
    } else {
      aq = ap_any(q);
    }
    bool good = good_at(Int(static_cast<long>(q)));
    // prime powers by the degree-2 recurrence (good) or geometric (bad)
    u64 pk = q;
    i64 prev = 1, cur = aq;
    while (pk <= n) {
      a[pk] = cur;
      if (pk > n / q) break;
      pk *= q;
      i64 next = good ? aq * cur - static_cast<i64>(q) * prev : aq * cur;
      prev = cur;
      cur = next;
    }
  }
  for (u64 m = 2; m <= n; ++m) {
    u64 p = spf[m], pk = 1, rest = m;
    while (rest % p == 0) { rest /= p; pk *= p; }
    if (rest > 1) a[m] = a[pk] * a[rest];
  }
  return a;
}

}  // namespace ec
}  // namespace ftlv
