#include "ftlv/fqpoly.hpp"

#include <random>

namespace ftlv {

FpPoly FpPoly::from_int_poly(const std::vector<Int>& f, u64 p) {
  std::vector<u64> c(f.size());
  for (size_t i = 0; i < f.size(); ++i) {
    Int r = f[i] % Int(static_cast<long>(p));
    if (r < 0) r += static_cast<long>(p);
    c[i] = r.get_ui();
  }
  return FpPoly(p, std::move(c));
}

FpPoly FpPoly::x_poly(u64 p) { return FpPoly(p, {0, 1}); }
FpPoly FpPoly::constant(u64 p, u64 v) { return FpPoly(p, {v % p}); }

FpPoly fp_add(const FpPoly& a, const FpPoly& b) {
  std::vector<u64> c(std::max(a.c.size(), b.c.size()), 0);
  for (size_t i = 0; i < c.size(); ++i) {
    u64 v = (i < a.c.size() ? a.c[i] : 0) + (i < b.c.size() ? b.c[i] : 0);
    c[i] = v % a.p;
  }
  return FpPoly(a.p, std::move(c));
}

FpPoly fp_sub(const FpPoly& a, const FpPoly& b) {
  std::vector<u64> c(std::max(a.c.size(), b.c.size()), 0);
  for (size_t i = 0; i < c.size(); ++i) {
    u64 x = i < a.c.size() ? a.c[i] : 0;
    u64 y = i < b.c.size() ? b.c[i] : 0;
    c[i] = (x + a.p - y) % a.p;
  }
  return FpPoly(a.p, std::move(c));
}

FpPoly fp_mul(const FpPoly& a, const FpPoly& b) {
  if (a.is_zero() || b.is_zero()) return FpPoly(a.p, {});
  std::vector<u64> c(a.c.size() + b.c.size() - 1, 0);
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (!a.c[i]) continue;
    for (size_t j = 0; j < b.c.size(); ++j) c[i + j] = (c[i + j] + mulmod(a.c[i], b.c[j], a.p)) % a.p;
  }
  return FpPoly(a.p, std::move(c));
}

FpPoly fp_mod(const FpPoly& a, const FpPoly& m) {
  FpPoly r = a;
  u64 p = a.p;
  u64 inv_lead = static_cast<u64>(invmod(static_cast<i64>(m.lead()), static_cast<i64>(p)));
  while (r.deg() >= m.deg() && !r.is_zero()) {
    u64 q = mulmod(r.lead(), inv_lead, p);
    size_t shift = static_cast<size_t>(r.deg() - m.deg());
    for (size_t i = 0; i < m.c.size(); ++i) {
      u64& t = r.c[shift + i];
      t = (t + p - mulmod(q, m.c[i], p)) % p;
    }
    r.trim();
  }
  return r;
}

FpPoly fp_divexact(const FpPoly& a, const FpPoly& b) {
  FpPoly r = a;
  u64 p = a.p;
  u64 inv_lead = static_cast<u64>(invmod(static_cast<i64>(b.lead()), static_cast<i64>(p)));
  std::vector<u64> q(a.c.size() >= b.c.size() ? a.c.size() - b.c.size() + 1 : 0, 0);
  while (r.deg() >= b.deg() && !r.is_zero()) {
    u64 qc = mulmod(r.lead(), inv_lead, p);
    size_t shift = static_cast<size_t>(r.deg() - b.deg());
    q[shift] = qc;
    for (size_t i = 0; i < b.c.size(); ++i) {
      u64& t = r.c[shift + i];
      t = (t + p - mulmod(qc, b.c[i], p)) % p;
    }
    r.trim();
  }
  if (!r.is_zero()) raise(ErrorKind::Internal, "fp_divexact: nonzero remainder");
  return FpPoly(p, std::move(q));
}

FpPoly fp_monic(FpPoly a) {
  if (a.is_zero() || a.lead() == 1) return a;
  u64 inv = static_cast<u64>(invmod(static_cast<i64>(a.lead()), static_cast<i64>(a.p)));
  for (auto& v : a.c) v = mulmod(v, inv, a.p);
  return a;
}

FpPoly fp_gcd(FpPoly a, FpPoly b) {
  while (!b.is_zero()) {
    FpPoly r = fp_mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return fp_monic(std::move(a));
}

FpPoly fp_powmod(const FpPoly& base, const Int& e, const FpPoly& m) {
  FpPoly r = FpPoly::constant(base.p, 1);
  FpPoly b = fp_mod(base, m);
  Int k = e;
  while (k > 0) {
    if (mpz_odd_p(k.get_mpz_t())) r = fp_mod(fp_mul(r, b), m);
    b = fp_mod(fp_mul(b, b), m);
    k >>= 1;
  }
  return r;
}

FpPoly fp_derivative(const FpPoly& a) {
  if (a.c.size() <= 1) return FpPoly(a.p, {});
  std::vector<u64> c(a.c.size() - 1);
  for (size_t i = 1; i < a.c.size(); ++i) c[i - 1] = mulmod(a.c[i], i % a.p, a.p);
  return FpPoly(a.p, std::move(c));
}

u64 fp_eval(const FpPoly& a, u64 x) {
  u64 r = 0;
  for (size_t i = a.c.size(); i-- > 0;) r = (mulmod(r, x, a.p) + a.c[i]) % a.p;
  return r;
}

namespace {

// x^{p^i} mod f accumulated by repeated Frobenius
std::vector<std::pair<FpPoly, long>> distinct_degree_split(const FpPoly& f) {
  std::vector<std::pair<FpPoly, long>> out;  // (product of irreducibles of degree d, d)
  FpPoly rest = f;
  FpPoly h = FpPoly::x_poly(f.p);
  long d = 0;
  while (rest.deg() > 0) {
    ++d;
    if (2 * d > rest.deg()) {  // what is left is irreducible
      out.emplace_back(rest, rest.deg());
      break;
    }
    h = fp_powmod(h, Int(static_cast<long>(f.p)), rest);
    FpPoly g = fp_gcd(fp_sub(h, FpPoly::x_poly(f.p)), rest);
    if (g.deg() > 0) {
      out.emplace_back(g, d);
      rest = fp_divexact(rest, g);
      h = fp_mod(h, rest);
    }
  }
  return out;
}

// Cantor-Zassenhaus equal-degree splitting for odd p
void equal_degree_factor(const FpPoly& f, long d, std::mt19937_64& rng, std::vector<FpPoly>& out) {
  if (f.deg() == d) {
    out.push_back(fp_monic(f));
    return;
  }
  Int q = int_pow(Int(static_cast<long>(f.p)), static_cast<unsigned long>(d));
  Int e = (q - 1) / 2;
  for (;;) {
    std::vector<u64> rc(static_cast<size_t>(f.deg()), 0);
    for (auto& v : rc) v = rng() % f.p;
    FpPoly r(f.p, std::move(rc));
    if (r.is_zero()) continue;
    FpPoly g = fp_gcd(r, f);
    if (g.deg() > 0 && g.deg() < f.deg()) {
      equal_degree_factor(g, d, rng, out);
      equal_degree_factor(fp_divexact(f, g), d, rng, out);
      return;
    }
    FpPoly s = fp_powmod(r, e, f);
    s = fp_sub(s, FpPoly::constant(f.p, 1));
    g = fp_gcd(s, f);
    if (g.deg() > 0 && g.deg() < f.deg()) {
      equal_degree_factor(g, d, rng, out);
      equal_degree_factor(fp_divexact(f, g), d, rng, out);
      return;
    }
  }
}

// p = 2: trace-based splitting
void equal_degree_factor_p2(const FpPoly& f, long d, std::mt19937_64& rng, std::vector<FpPoly>& out) {
  if (f.deg() == d) {
    out.push_back(fp_monic(f));
    return;
  }
  for (;;) {
    std::vector<u64> rc(static_cast<size_t>(f.deg()), 0);
    for (auto& v : rc) v = rng() & 1;
    FpPoly r(f.p, std::move(rc));
    if (r.is_zero()) continue;
    // trace map T(r) = r + r^2 + r^4 + ... + r^{2^{d-1}}
    FpPoly t = r, sq = r;
    for (long i = 1; i < d; ++i) {
      sq = fp_mod(fp_mul(sq, sq), f);
      t = fp_add(t, sq);
    }
    FpPoly g = fp_gcd(t, f);
    if (g.deg() > 0 && g.deg() < f.deg()) {
      equal_degree_factor_p2(g, d, rng, out);
      equal_degree_factor_p2(fp_divexact(f, g), d, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<std::pair<FpPoly, int>> factor_poly_mod_l(const FpPoly& f_in) {
  u64 p = f_in.p;
  if (!is_prime_u64(p)) raise(ErrorKind::NotPrime, "factor_poly_mod_l: modulus not prime");
  if (f_in.is_zero()) raise(ErrorKind::Internal, "factor_poly_mod_l: zero polynomial mod l");
  std::mt19937_64 rng(0x5eed5eedULL ^ p);  // deterministic runs
  std::vector<std::pair<FpPoly, int>> result;
  FpPoly f = fp_monic(f_in);

  // squarefree decomposition via gcd with derivative; handles p-th power parts
  struct Item { FpPoly poly; int mult; };
  std::vector<Item> stack{{f, 1}};
  std::vector<Item> squarefree;
  while (!stack.empty()) {
    auto [g, mult] = stack.back();
    stack.pop_back();
    if (g.deg() == 0) continue;
    FpPoly dg = fp_derivative(g);
    if (dg.is_zero()) {
      // g = h(x^p); replace by h with multiplicity p (coefficients are p-th powers = themselves^... over F_p: c^{1/p} = c)
      std::vector<u64> h((g.c.size() - 1) / p + 1, 0);
      for (size_t i = 0; i < g.c.size(); i += p) h[i / p] = g.c[i];
      stack.push_back({FpPoly(p, std::move(h)), mult * static_cast<int>(p)});
      continue;
    }
    FpPoly c = fp_gcd(g, dg);
    FpPoly w = fp_divexact(g, c);
    // w is the squarefree part; peel multiplicities
    int i = 1;
    while (w.deg() > 0) {
      FpPoly y = fp_gcd(w, c);
      FpPoly fac = fp_divexact(w, y);
      if (fac.deg() > 0) squarefree.push_back({fac, mult * i});
      w = y;
      if (!y.is_zero() && y.deg() >= 0) c = fp_divexact(c, y);
      ++i;
    }
    if (c.deg() > 0) stack.push_back({c, mult});
  }

  for (auto& item : squarefree) {
    for (auto& [prod, d] : distinct_degree_split(item.poly)) {
      std::vector<FpPoly> irr;
      if (prod.deg() == d) {
        irr.push_back(fp_monic(prod));
      } else if (p == 2) {
        equal_degree_factor_p2(prod, d, rng, irr);
      } else {
        equal_degree_factor(prod, d, rng, irr);
      }
      for (auto& g : irr) result.emplace_back(std::move(g), item.mult);
    }
  }
  std::sort(result.begin(), result.end(), [](const auto& a, const auto& b) {
    if (a.first.deg() != b.first.deg()) return a.first.deg() < b.first.deg();
    return a.first.c < b.first.c;
  });
  return result;
}

std::vector<std::pair<FpPoly, int>> factor_poly_mod_l(const std::vector<Int>& f, u64 ell) {
  if (!is_prime_u64(ell)) raise(ErrorKind::NotPrime, "factor_poly_mod_l: modulus not prime");
  FpPoly fp = FpPoly::from_int_poly(f, ell);
  if (fp.is_zero()) raise(ErrorKind::Internal, "factor_poly_mod_l: polynomial vanishes mod l");
  return factor_poly_mod_l(fp);
}

FqElem FqElem::make(std::shared_ptr<const FqCtx> ctx, FpPoly r) {
  FqElem e;
  e.rep = fp_mod(std::move(r), ctx->g);
  e.ctx = std::move(ctx);
  return e;
}

FqElem FqElem::from_u64(std::shared_ptr<const FqCtx> ctx, u64 v) {
  u64 p = ctx->p();
  return make(std::move(ctx), FpPoly::constant(p, v));
}

FqElem FqElem::x_class(std::shared_ptr<const FqCtx> ctx) {
  u64 p = ctx->p();
  return make(std::move(ctx), FpPoly::x_poly(p));
}

FqElem operator*(const FqElem& a, const FqElem& b) {
  FqElem r;
  r.ctx = a.ctx;
  r.rep = fp_mod(fp_mul(a.rep, b.rep), a.ctx->g);
  return r;
}

FqElem fq_pow(const FqElem& a, const Int& e) {
  FqElem r;
  r.ctx = a.ctx;
  r.rep = fp_powmod(a.rep, e, a.ctx->g);
  return r;
}

Int fq_order(const FqElem& a) {
  if (a.is_zero()) raise(ErrorKind::Internal, "order of zero");
  Int q1 = a.ctx->order() - 1;
  Int ord = q1;
  for (auto& [p, e] : factor_u64(q1.get_ui())) {
    (void)e;
    while (ord % static_cast<long>(p) == 0 && fq_pow(a, ord / static_cast<long>(p)).is_one())
      ord /= static_cast<long>(p);
  }
  return ord;
}

}  // namespace ftlv
