#include "ftlv/eisenstein.hpp"

namespace ftlv {
namespace ft {

Complex Eis::value(mpfr_prec_t prec) const {
  // a + b*(-1/2 + i sqrt(3)/2)
  Real ra = int_to_real(a, prec), rb = int_to_real(b, prec);
  Real half_sqrt3 = sqrt(Real(3L, prec)) / 2L;
  return {ra - rb / 2L, rb * half_sqrt3};
}

Rat Eis::trace_of_quotient(const Eis& x, const Eis& d) {
  // x/d = x * conj(d) / N(d); Tr(u + v*w) = 2u - v
  Eis num = x * d.conj();
  Rat t(2 * num.a - num.b, d.norm());
  t.canonicalize();
  return t;
}

Eis eis_divrem(const Eis& x, const Eis& d, Eis* rem) {
  if (d.is_zero()) raise(ErrorKind::Internal, "eis division by zero");
  Eis num = x * d.conj();
  Int N = d.norm();
  // round both coordinates of num/N to nearby integers; try the 3x3 box
  auto fdiv = [](const Int& u, const Int& v) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t());
    return q;
  };
  Int qa0 = fdiv(num.a, N), qb0 = fdiv(num.b, N);
  Eis best_q, best_r;
  Int best_norm(-1);
  for (int da = 0; da <= 1; ++da)
    for (int db = 0; db <= 1; ++db) {
      Eis q{qa0 + da, qb0 + db};
      Eis r = x - q * d;
      Int n = r.norm();
      if (best_norm < 0 || n < best_norm) {
        best_norm = n;
        best_q = q;
        best_r = r;
      }
    }
  if (!(best_norm < N)) raise(ErrorKind::Internal, "eis divrem not Euclidean");
  if (rem) *rem = best_r;
  return best_q;
}

Eis eis_gcd(Eis x, Eis y) {
  while (!y.is_zero()) {
    Eis r;
    eis_divrem(x, y, &r);
    x = y;
    y = r;
  }
  return eis_canonical_associate(x);
}

bool eis_divides(const Eis& d, const Eis& x) {
  Eis r;
  eis_divrem(x, d, &r);
  return r.is_zero();
}

Eis eis_divexact(const Eis& x, const Eis& d) {
  Eis r;
  Eis q = eis_divrem(x, d, &r);
  if (!r.is_zero()) raise(ErrorKind::Internal, "eis_divexact: nonzero remainder");
  return q;
}

std::vector<Eis> eis_units() {
  Eis w = Eis::omega();
  Eis w2 = w * w;
  return {Eis::one(), w, w2, {Int(-1), Int(0)}, Eis{Int(0), Int(-1)}, Eis{w2.a * -1, w2.b * -1}};
}

Eis eis_canonical_associate(const Eis& x) {
  if (x.is_zero()) return x;
  Eis best = x;
  bool have = false;
  for (const Eis& u : eis_units()) {
    Eis y = x * u;
    // prefer a > 0, then smallest b >= 0, then smallest a
    auto better = [](const Eis& p, const Eis& q) {
      auto key = [](const Eis& e) {
        int apos = e.a > 0 ? 0 : 1;
        int bneg = e.b >= 0 ? 0 : 1;
        return std::tuple<int, int, Int, Int>(apos, bneg, e.b >= 0 ? e.b : -e.b,
                                              e.a > 0 ? e.a : -e.a);
      };
      return key(p) < key(q);
    };
    if (!have || better(y, best)) {
      best = y;
      have = true;
    }
  }
  return best;
}

std::vector<EisPrimeFactor> eis_factor(const Eis& x_in) {
  if (x_in.is_zero()) raise(ErrorKind::Internal, "eis_factor(0)");
  std::vector<EisPrimeFactor> out;
  Eis x = x_in;
  Int n = x.norm();
  if (n > Int("1000000000000")) raise(ErrorKind::Internal, "eis_factor: norm too large for trial division");
  for (auto& [ell, e_norm] : factor_u64(n.get_ui())) {
    (void)e_norm;
    if (ell == 3) {
      Eis lam = eis_canonical_associate(Eis::sqrt_minus3());
      int e = 0;
      while (eis_divides(lam, x)) { x = eis_divexact(x, lam); ++e; }
      if (e) out.push_back({lam, e, 3});
    } else if (ell % 3 == 2) {
      Eis p{Int(static_cast<long>(ell)), Int(0)};
      p = eis_canonical_associate(p);
      int e = 0;
      while (eis_divides(p, x)) { x = eis_divexact(x, p); ++e; }
      if (e) out.push_back({p, e, ell});
    } else {
      i64 s = sqrt_mod(-3, ell);
      if (s < 0) raise(ErrorKind::Internal, "split prime without sqrt(-3)");
      u64 inv2 = static_cast<u64>(invmod(2, static_cast<i64>(ell)));
      u64 r1 = mulmod((ell - 1 + static_cast<u64>(s)) % ell, inv2, ell);         // (-1+s)/2
      u64 r2 = mulmod((2 * ell - 1 - static_cast<u64>(s)) % ell, inv2, ell);     // (-1-s)/2
      for (u64 r : {r1, r2}) {
        Eis pi = eis_prime_above(ell, r);
        int e = 0;
        while (eis_divides(pi, x)) { x = eis_divexact(x, pi); ++e; }
        if (e) out.push_back({pi, e, ell});
      }
    }
  }
  if (x.norm() != 1) raise(ErrorKind::Internal, "eis_factor: leftover non-unit");
  return out;
}

Eis eis_prime_above(u64 ell, u64 root_of_w) {
  // gcd(ell, w - r)
  Eis pi = eis_gcd(Eis{Int(static_cast<long>(ell)), Int(0)},
                   Eis{Int(-static_cast<long>(root_of_w)), Int(1)});
  if (pi.norm() != Int(static_cast<long>(ell)))
    raise(ErrorKind::Internal, "eis_prime_above: wrong norm");
  return pi;
}

u64 eis_root_of_omega(const Eis& pi, u64 ell) {
  // a + b*w = 0 mod pi  =>  w = -a/b
  u64 a = int_mod_u64(pi.a, ell), b = int_mod_u64(pi.b, ell);
  if (b == 0) raise(ErrorKind::Internal, "eis_root_of_omega: degree-two prime");
  return mulmod((ell - a) % ell, static_cast<u64>(invmod(static_cast<i64>(b), static_cast<i64>(ell))), ell);
}

}  // namespace ft
}  // namespace ftlv
