#include "ftlv/numtheory.hpp"

#include <algorithm>

namespace ftlv {

u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

u64 gcd_u64(u64 a, u64 b) {
  while (b) { u64 t = a % b; a = b; b = t; }
  return a;
}

i64 invmod(i64 a, i64 m) {
  i64 g = m, x = 0, x1 = 1, a1 = ((a % m) + m) % m;
  while (a1) {
    i64 q = g / a1;
    g -= q * a1; std::swap(g, a1);
    x -= q * x1; std::swap(x, x1);
  }
  if (g != 1) raise(ErrorKind::NotCoprime, "invmod");
  return ((x % m) + m) % m;
}

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) { d >>= 1; ++s; }
  // deterministic witness set for 64-bit integers
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) { composite = false; break; }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<u64> primes_up_to(u64 n) {
  std::vector<u64> out;
  if (n < 2) return out;
  std::vector<bool> comp(static_cast<size_t>(n) + 1, false);
  for (u64 i = 2; i <= n; ++i) {
    if (!comp[i]) {
      out.push_back(i);
      for (u64 j = i * i; j <= n; j += i) comp[static_cast<size_t>(j)] = true;
    }
  }
  return out;
}

int jacobi(i64 a, u64 n) {
  a %= static_cast<i64>(n);
  if (a < 0) a += static_cast<i64>(n);
  u64 ua = static_cast<u64>(a), un = n;
  int t = 1;
  while (ua != 0) {
    while ((ua & 1) == 0) {
      ua >>= 1;
      u64 r = un & 7;
      if (r == 3 || r == 5) t = -t;
    }
    std::swap(ua, un);
    if ((ua & 3) == 3 && (un & 3) == 3) t = -t;
    ua %= un;
  }
  return un == 1 ? t : 0;
}

i64 sqrt_mod(i64 a, u64 p) {
  a %= static_cast<i64>(p);
  if (a < 0) a += static_cast<i64>(p);
  if (a == 0) return 0;
  if (p == 2) return a;
  if (jacobi(a, p) != 1) return -1;
  u64 ua = static_cast<u64>(a);
  if ((p & 3) == 3) return static_cast<i64>(powmod(ua, (p + 1) / 4, p));
  // Tonelli-Shanks
  u64 q = p - 1;
  int s = 0;
  while ((q & 1) == 0) { q >>= 1; ++s; }
  u64 z = 2;
  while (jacobi(static_cast<i64>(z), p) != -1) ++z;
  u64 m = s, c = powmod(z, q, p), t = powmod(ua, q, p), r = powmod(ua, (q + 1) / 2, p);
  while (t != 1) {
    u64 t2 = t;
    u64 i = 0;
    while (t2 != 1) { t2 = mulmod(t2, t2, p); ++i; }
    u64 b = powmod(c, 1ull << (m - i - 1), p);
    m = i;
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    r = mulmod(r, b, p);
  }
  return static_cast<i64>(r);
}

unsigned long mult_order(const Int& a, const Int& M) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), M.get_mpz_t());
  if (g != 1) raise(ErrorKind::NotCoprime, "mult_order: gcd(a,M) != 1");
  if (M == 1) return 1;
  Int x = a % M;
  if (x < 0) x += M;
  Int acc = x;
  unsigned long t = 1;
  while (acc != 1) {
    acc = (acc * x) % M;
    ++t;
  }
  return t;
}

Int euler_phi(const Int& n) {
  Int r = 1, m = n;
  for (Int p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      r *= p - 1;
      m /= p;
      while (m % p == 0) { r *= p; m /= p; }
    }
  }
  if (m > 1) r *= m - 1;
  return r;
}

unsigned long euler_phi_ul(unsigned long n) { return euler_phi(Int(static_cast<long>(n))).get_ui(); }

unsigned long primitive_root_mod_prime_power(unsigned long p, unsigned k) {
  // find g primitive mod p, then adjust for p^2 (a root mod p^2 works for all p^k)
  unsigned long order = p - 1;
  auto fac = factor_u64(order);
  unsigned long g = 2;
  for (;; ++g) {
    bool ok = true;
    for (auto& [q, e] : fac) {
      (void)e;
      if (powmod(g, order / q, p) == 1) { ok = false; break; }
    }
    if (ok) break;
  }
  if (k == 1) return g;
  unsigned long p2 = p * p;
  if (powmod(g, p - 1, p2) == 1) g += p;
  return g;
}

Int int_pow(const Int& a, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), a.get_mpz_t(), e);
  return r;
}

int valuation(Int n, const Int& p, Int* quotient) {
  if (n == 0) raise(ErrorKind::Internal, "valuation of 0");
  int v = 0;
  while (n % p == 0) { n /= p; ++v; }
  if (quotient) *quotient = n;
  return v;
}

Int radical(Int n) {
  if (n < 0) n = -n;
  Int r = 1;
  for (Int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      r *= p;
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) r *= n;
  return r;
}

std::vector<std::pair<u64, int>> factor_u64(u64 n) {
  std::vector<std::pair<u64, int>> out;
  for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p == 0) {
      int e = 0;
      while (n % p == 0) { n /= p; ++e; }
      out.emplace_back(p, e);
    }
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

u64 divisor_count_k(u64 n, int k) {
  // d_k is multiplicative with d_k(p^e) = C(e+k-1, k-1)
  u64 r = 1;
  for (auto& [p, e] : factor_u64(n)) {
    (void)p;
    u64 num = 1, den = 1;
    for (int i = 1; i < k; ++i) { num *= e + i; den *= i; }
    r *= num / den;
  }
  return r;
}

Real rat_to_real(const Rat& q, mpfr_prec_t prec) {
  Real r(prec);
  mpfr_set_q(r.raw(), q.get_mpq_t(), MPFR_RNDN);
  return r;
}

Real int_to_real(const Int& z, mpfr_prec_t prec) {
  Real r(prec);
  mpfr_set_z(r.raw(), z.get_mpz_t(), MPFR_RNDN);
  return r;
}

u64 int_mod_u64(const Int& a, u64 m) {
  Int r = a % Int(static_cast<unsigned long>(m));
  if (r < 0) r += Int(static_cast<unsigned long>(m));
  return r.get_ui();
}

Int rat_height(const Rat& q) {
  Int n = q.get_num(), d = q.get_den();
  if (n < 0) n = -n;
  return n > d ? n : d;
}

}  // namespace ftlv
