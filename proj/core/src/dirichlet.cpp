#include "ftlv/dirichlet.hpp"

#include <numeric>

namespace ftlv {
namespace ft {

namespace {

// cyclic pieces of (Z/q)^*
std::vector<DirichletChar::Component> group_structure(unsigned long q) {
  std::vector<DirichletChar::Component> comps;
  for (auto& [p, k] : factor_u64(q)) {
    unsigned long pk = 1;
    for (int i = 0; i < k; ++i) pk *= p;
    if (p == 2) {
      if (k == 1) continue;  // trivial group
      if (k == 2) {
        comps.push_back({pk, 3, 2, 0});
      } else {
        comps.push_back({pk, pk - 1, 2, 0});                       // <-1>
        comps.push_back({pk, 5, pk / 4, 0});                       // <5>
      }
    } else {
      unsigned long g = primitive_root_mod_prime_power(p, k);
      comps.push_back({pk, g % pk, euler_phi_ul(pk), 0});
    }
  }
  return comps;
}

unsigned long dlog_cyclic(unsigned long a, unsigned long g, unsigned long ord, unsigned long pk) {
  unsigned long x = 1;
  for (unsigned long t = 0; t < ord; ++t) {
    if (x == a % pk) return t;
    x = (x * g) % pk;
  }
  raise(ErrorKind::Internal, "dlog: not in cyclic subgroup");
}

// decompose a mod 2^k (k >= 3) as (-1)^s * 5^t
std::pair<unsigned long, unsigned long> dlog_two_power(unsigned long a, unsigned long pk) {
  unsigned long half_ord = pk / 4;
  unsigned long x = 1;
  for (unsigned long t = 0; t < half_ord; ++t) {
    if (x == a) return {0, t};
    if ((pk - x) % pk == a) return {1, t};
    x = (x * 5) % pk;
  }
  raise(ErrorKind::Internal, "dlog mod 2^k failed");
}

}  // namespace

DirichletChar DirichletChar::trivial(unsigned long q) {
  DirichletChar c;
  c.modulus = q;
  c.comps = group_structure(q);
  return c;
}

DirichletChar DirichletChar::prime_power(unsigned long p, unsigned k, unsigned long e) {
  if (p == 2) raise(ErrorKind::Internal, "prime_power: use all_mod for even moduli");
  unsigned long pk = 1;
  for (unsigned i = 0; i < k; ++i) pk *= p;
  DirichletChar c;
  c.modulus = pk;
  c.comps = group_structure(pk);
  c.comps[0].exp = e % c.comps[0].gen_order;
  return c;
}

DirichletChar DirichletChar::quadratic(unsigned long q) {
  DirichletChar c;
  c.modulus = q;
  c.comps = group_structure(q);
  if (c.comps.size() != 1 || c.comps[0].gen_order % 2 != 0)
    raise(ErrorKind::Internal, "quadratic character: no order-2 quotient");
  c.comps[0].exp = c.comps[0].gen_order / 2;
  return c;
}

std::vector<DirichletChar> DirichletChar::all_mod(unsigned long q) {
  DirichletChar base = trivial(q);
  std::vector<DirichletChar> out;
  std::vector<unsigned long> idx(base.comps.size(), 0);
  for (;;) {
    DirichletChar c = base;
    for (size_t i = 0; i < idx.size(); ++i) c.comps[i].exp = idx[i];
    out.push_back(c);
    size_t i = 0;
    for (; i < idx.size(); ++i) {
      if (++idx[i] < base.comps[i].gen_order) break;
      idx[i] = 0;
    }
    if (i == idx.size()) break;
    if (base.comps.empty()) break;
  }
  return out;
}

unsigned long DirichletChar::order() const {
  unsigned long n = 1;
  for (const auto& c : comps) {
    unsigned long o = c.gen_order / gcd_u64(c.gen_order, c.exp == 0 ? c.gen_order : c.exp);
    n = std::lcm(n, o);
  }
  return n;
}

bool DirichletChar::is_defined_at(long a) const {
  long m = static_cast<long>(modulus);
  long r = ((a % m) + m) % m;
  return gcd_u64(static_cast<u64>(r), modulus) == 1;
}

unsigned long DirichletChar::eval_exponent(long a) const {
  if (!is_defined_at(a)) raise(ErrorKind::NotCoprime, "character undefined: gcd(a, q) > 1");
  unsigned long N = order();
  unsigned long t = 0;
  for (const auto& c : comps) {
    unsigned long am = static_cast<unsigned long>(((a % static_cast<long>(c.pk)) +
                                                   static_cast<long>(c.pk)) %
                                                  static_cast<long>(c.pk));
    unsigned long d;
    if (c.pk % 2 == 0 && c.pk >= 8) {
      auto [s, tt] = dlog_two_power(am, c.pk);
      d = (c.gen == c.pk - 1) ? s : tt;  // which of the two pieces this is
    } else {
      d = dlog_cyclic(am, c.gen, c.gen_order, c.pk);
    }
    // chi(gen^d) = zeta_{gen_order}^{exp*d} = zeta_N^{(exp*d mod gen_order)*N/gen_order}
    unsigned __int128 num = static_cast<unsigned __int128>(
                                (static_cast<unsigned __int128>(c.exp) * d) % c.gen_order) *
                            N;
    if (num % c.gen_order != 0) raise(ErrorKind::Internal, "character exponent not integral");
    t = (t + static_cast<unsigned long>((num / c.gen_order) % N)) % N;
  }
  return t;
}

Cyclotomic DirichletChar::value(long a) const {
  return Cyclotomic::zeta_power(order(), static_cast<long>(eval_exponent(a)));
}

Complex DirichletChar::value_c(long a, mpfr_prec_t prec) const {
  return unit_root_frac(static_cast<long>(eval_exponent(a)), static_cast<long>(order()), prec);
}

unsigned long DirichletChar::conductor() const {
  for (unsigned long f = 1; f <= modulus; ++f) {
    if (modulus % f) continue;
    bool triv = true;
    for (unsigned long a = 1; a < modulus && triv; ++a) {
      if (a % f != 1 % f) continue;
      if (gcd_u64(a, modulus) != 1) continue;
      if (eval_exponent(static_cast<long>(a)) != 0) triv = false;
    }
    if (triv) return f;
  }
  return modulus;
}

DirichletChar DirichletChar::primitive_part() const {
  unsigned long f = conductor();
  if (f == modulus) return *this;
  DirichletChar c = trivial(f);
  for (auto& comp : c.comps) {
    // chi'(gen) = chi(b) for b = gen mod f lifted coprime to modulus
    unsigned long b = comp.gen;
    while (gcd_u64(b, modulus) != 1) b += f;
    unsigned long N = order();
    unsigned long t = eval_exponent(static_cast<long>(b));
    // express zeta_N^t as zeta_{gen_order}^{e}: requires gen_order * t / N integral
    if ((static_cast<unsigned __int128>(t) * comp.gen_order) % N != 0)
      raise(ErrorKind::Internal, "primitive_part: order mismatch");
    comp.exp = static_cast<unsigned long>((static_cast<unsigned __int128>(t) * comp.gen_order) / N);
  }
  return c;
}

DirichletChar DirichletChar::power(long a) const {
  DirichletChar c = *this;
  for (auto& comp : c.comps) {
    long e = static_cast<long>(comp.exp) * (a % static_cast<long>(comp.gen_order));
    e %= static_cast<long>(comp.gen_order);
    if (e < 0) e += static_cast<long>(comp.gen_order);
    comp.exp = static_cast<unsigned long>(e);
  }
  return c;
}

DirichletChar operator*(const DirichletChar& x, const DirichletChar& y) {
  unsigned long q = std::lcm(x.modulus, y.modulus);
  DirichletChar c = DirichletChar::trivial(q);
  for (auto& comp : c.comps) {
    // chi(gen) for gen lifted coprime to q, evaluated through both factors
    unsigned long ga = comp.gen;
    // CRT lift: value 'gen' on this component, 1 on the others
    unsigned long lift = 1;
    {
      // solve lift = gen mod pk, lift = 1 mod q/pk-part... build via CRT
      unsigned long pk = comp.pk;
      unsigned long rest = q;
      while (rest % (comp.pk / gcd_u64(comp.pk, rest)) == 0 && pk != 0) break;
      // simple search (moduli are tiny)
      for (unsigned long v = 1; v < q; ++v) {
        if (gcd_u64(v, q) != 1) continue;
        if (v % comp.pk != ga % comp.pk) continue;
        bool ok = true;
        for (auto& other : c.comps) {
          if (other.pk == comp.pk) continue;
          if (v % other.pk != 1 % other.pk) { ok = false; break; }
        }
        if (ok) { lift = v; break; }
      }
    }
    unsigned long Nx = x.order(), Ny = y.order();
    unsigned long tx = x.is_defined_at(static_cast<long>(lift)) ? x.eval_exponent(static_cast<long>(lift)) : 0;
    unsigned long ty = y.is_defined_at(static_cast<long>(lift)) ? y.eval_exponent(static_cast<long>(lift)) : 0;
    if (!x.is_defined_at(static_cast<long>(lift)) || !y.is_defined_at(static_cast<long>(lift)))
      raise(ErrorKind::Internal, "character product: lift not coprime");
    // zeta_Nx^tx * zeta_Ny^ty = zeta_L^{...}, L = lcm; then express in gen_order
    unsigned long L = std::lcm(Nx, Ny);
    unsigned long t = (static_cast<unsigned long>((static_cast<unsigned __int128>(tx) * (L / Nx)) % L) +
                       static_cast<unsigned long>((static_cast<unsigned __int128>(ty) * (L / Ny)) % L)) % L;
    if ((static_cast<unsigned __int128>(t) * comp.gen_order) % L != 0)
      raise(ErrorKind::Internal, "character product: value order does not divide group order");
    comp.exp = static_cast<unsigned long>((static_cast<unsigned __int128>(t) * comp.gen_order) / L);
  }
  return c;
}

bool DirichletChar::operator==(const DirichletChar& o) const {
  if (modulus != o.modulus) return false;
  for (unsigned long a = 1; a < modulus; ++a) {
    if (gcd_u64(a, modulus) != 1) continue;
    unsigned long N1 = order(), N2 = o.order();
    unsigned long L = std::lcm(N1, N2);
    if ((static_cast<unsigned __int128>(eval_exponent(static_cast<long>(a))) * (L / N1)) % L !=
        (static_cast<unsigned __int128>(o.eval_exponent(static_cast<long>(a))) * (L / N2)) % L)
      return false;
  }
  return true;
}

}  // namespace ft
}  // namespace ftlv
