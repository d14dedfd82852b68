#include "ftlv/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace ftlv {

namespace {

// exact division of integer polynomials, b monic
std::vector<Int> poly_div_exact(std::vector<Int> a, const std::vector<Int>& b) {
  std::vector<Int> q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Int(0));
  while (a.size() >= b.size() && !(a.size() == 1 && a[0] == 0)) {
    size_t k = a.size() - b.size();
    Int c = a.back();
    q[k] = c;
    for (size_t i = 0; i < b.size(); ++i) a[k + i] -= c * b[i];
    while (a.size() > 1 && a.back() == 0) a.pop_back();
    if (a.size() < b.size()) break;
  }
  return q;
}

const std::vector<Int>& cyclo_cached(unsigned long M) {
  static std::map<unsigned long, std::vector<Int>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lk(mu);
  auto it = cache.find(M);
  if (it != cache.end()) return it->second;
  // Phi_M = prod_{d | M} (x^d - 1)^{mu(M/d)}: multiply the numerator factors,
  // divide the denominator factors
  std::vector<Int> num{Int(1)}, den{Int(1)};
  for (unsigned long d = 1; d <= M; ++d) {
    if (M % d) continue;
    unsigned long q = M / d;
    // Moebius mu(q)
    int mu_q = 1;
    unsigned long qq = q;
    for (unsigned long p = 2; p * p <= qq; ++p) {
      if (qq % p == 0) {
        qq /= p;
        if (qq % p == 0) { mu_q = 0; break; }
        mu_q = -mu_q;
      }
    }
    if (mu_q != 0 && qq > 1) mu_q = -mu_q;
    if (mu_q == 0) continue;
    std::vector<Int> f(d + 1, Int(0));
    f[0] = -1;
    f[d] = 1;
    auto& target = (mu_q == 1) ? num : den;
    std::vector<Int> prod(target.size() + f.size() - 1, Int(0));
    for (size_t i = 0; i < target.size(); ++i)
      for (size_t j = 0; j < f.size(); ++j) prod[i + j] += target[i] * f[j];
    target = std::move(prod);
  }
  auto phi = poly_div_exact(std::move(num), den);
  return cache.emplace(M, std::move(phi)).first->second;
}

}  // namespace

std::vector<Int> cyclotomic_polynomial(unsigned long M) { return cyclo_cached(M); }

Cyclotomic::Cyclotomic(unsigned long M, std::vector<Rat> coeffs) : modulus_(M), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != euler_phi_ul(M)) raise(ErrorKind::Internal, "cyclotomic coefficient length");
}

Cyclotomic Cyclotomic::from_rat(const Rat& q, unsigned long M) {
  Cyclotomic c(M);
  c.coeffs_[0] = q;
  return c;
}

namespace {
// reduce a polynomial in zeta_M of arbitrary degree to the power basis:
// first fold zeta^M = 1, then divide by Phi_M
std::vector<Rat> reduce_poly(unsigned long M, std::vector<Rat> p) {
  size_t phi = euler_phi_ul(M);
  for (size_t i = p.size(); i-- > M;) {
    p[i - M] += p[i];
    p[i] = 0;
  }
  if (p.size() > M) p.resize(M);
  const auto& cyc = cyclo_cached(M);
  // cyc is monic of degree phi; subtract multiples top-down
  for (size_t i = p.size(); i-- > phi;) {
    Rat c = p[i];
    if (c == 0) continue;
    p[i] = 0;
    for (size_t j = 0; j < cyc.size() - 1; ++j) p[i - phi + j] -= c * Rat(cyc[j]);
  }
  p.resize(phi >= 1 ? phi : 1);
  for (auto& c : p) c.canonicalize();
  return p;
}
}  // namespace

Cyclotomic Cyclotomic::zeta_power(unsigned long M, long k) {
  long m = static_cast<long>(M);
  k %= m;
  if (k < 0) k += m;
  std::vector<Rat> p(static_cast<size_t>(k) + 1, Rat(0));
  p[static_cast<size_t>(k)] = 1;
  return Cyclotomic(M, reduce_poly(M, std::move(p)));
}

bool Cyclotomic::is_zero() const {
  for (const auto& c : coeffs_)
    if (c != 0) return false;
  return true;
}

bool Cyclotomic::is_rational() const {
  for (size_t i = 1; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return false;
  return true;
}

Rat Cyclotomic::rational_part() const {
  if (!is_rational()) raise(ErrorKind::Internal, "rational_part of irrational value");
  return coeffs_[0];
}

Cyclotomic Cyclotomic::galois(long a) const {
  long m = static_cast<long>(modulus_);
  long ar = ((a % m) + m) % m;
  if (gcd_u64(static_cast<u64>(ar), modulus_) != 1) raise(ErrorKind::NotCoprime, "galois_apply");
  std::vector<Rat> p(modulus_, Rat(0));
  for (size_t j = 0; j < coeffs_.size(); ++j) {
    if (coeffs_[j] == 0) continue;
    p[(j * static_cast<unsigned long>(ar)) % modulus_] += coeffs_[j];
  }
  return Cyclotomic(modulus_, reduce_poly(modulus_, std::move(p)));
}

Cyclotomic Cyclotomic::embed(unsigned long L) const {
  if (L == modulus_) return *this;
  if (L % modulus_ != 0) raise(ErrorKind::Internal, "embed: modulus does not divide target");
  unsigned long step = L / modulus_;
  std::vector<Rat> p(L, Rat(0));
  for (size_t j = 0; j < coeffs_.size(); ++j) p[j * step] += coeffs_[j];
  return Cyclotomic(L, reduce_poly(L, std::move(p)));
}

bool Cyclotomic::try_descend(unsigned long D, Cyclotomic* out) const {
  // brute solve: express this element in terms of zeta_D powers by checking
  // round-trip through the embedding of each basis monomial
  if (modulus_ % D != 0) return false;
  // element lies in Q(zeta_D) iff it is fixed by Gal(Q(zeta_M)/Q(zeta_D)),
  // i.e. by all a = 1 mod D coprime to M
  for (unsigned long a = 1; a < modulus_; ++a) {
    if (a % D != 1 % D) continue;
    if (gcd_u64(a, modulus_) != 1) continue;
    if (!(galois(static_cast<long>(a)) == *this)) return false;
  }
  if (!out) return true;
  // solve a small linear system: basis of Q(zeta_D) embedded into Q(zeta_M)
  size_t phiD = euler_phi_ul(D), phiM = coeffs_.size();
  std::vector<Cyclotomic> basis;
  basis.reserve(phiD);
  for (size_t j = 0; j < phiD; ++j)
    basis.push_back(Cyclotomic::zeta_power(D, static_cast<long>(j)).embed(modulus_));
  // Gaussian elimination over Q on a phiM x (phiD+1) system
  std::vector<std::vector<Rat>> A(phiM, std::vector<Rat>(phiD + 1, Rat(0)));
  for (size_t i = 0; i < phiM; ++i) {
    for (size_t j = 0; j < phiD; ++j) A[i][j] = basis[j].coeffs()[i];
    A[i][phiD] = coeffs_[i];
  }
  std::vector<Rat> sol(phiD, Rat(0));
  size_t row = 0;
  std::vector<long> pivot_col(phiM, -1);
  for (size_t col = 0; col < phiD && row < phiM; ++col) {
    size_t pr = row;
    while (pr < phiM && A[pr][col] == 0) ++pr;
    if (pr == phiM) continue;
    std::swap(A[pr], A[row]);
    Rat inv = Rat(1) / A[row][col];
    for (size_t j = col; j <= phiD; ++j) A[row][j] *= inv;
    for (size_t i = 0; i < phiM; ++i) {
      if (i == row || A[i][col] == 0) continue;
      Rat f = A[i][col];
      for (size_t j = col; j <= phiD; ++j) A[i][j] -= f * A[row][j];
    }
    pivot_col[row] = static_cast<long>(col);
    ++row;
  }
  for (size_t i = 0; i < row; ++i)
    if (pivot_col[i] >= 0) sol[static_cast<size_t>(pivot_col[i])] = A[i][phiD];
  for (size_t i = row; i < phiM; ++i)
    if (A[i][phiD] != 0) return false;
  *out = Cyclotomic(D, std::move(sol));
  return true;
}

Complex Cyclotomic::value(mpfr_prec_t prec) const {
  Complex acc(prec);
  for (size_t j = 0; j < coeffs_.size(); ++j) {
    if (coeffs_[j] == 0) continue;
    Complex z = unit_root_frac(static_cast<long>(j), static_cast<long>(modulus_), prec);
    Real c = rat_to_real(coeffs_[j], prec);
    acc += z * c;
  }
  return acc;
}

Int Cyclotomic::height() const {
  Int h = 0;
  for (const auto& c : coeffs_) {
    Int hc = rat_height(c);
    if (hc > h) h = hc;
  }
  return h;
}

std::string Cyclotomic::str() const {
  std::ostringstream os;
  bool first = true;
  for (size_t j = 0; j < coeffs_.size(); ++j) {
    if (coeffs_[j] == 0) continue;
    if (!first) os << " + ";
    os << coeffs_[j].get_str();
    if (j > 0) os << "*z" << modulus_ << "^" << j;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

namespace {
std::pair<Cyclotomic, Cyclotomic> to_common(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.modulus() == b.modulus()) return {a, b};
  unsigned long l = std::lcm(a.modulus(), b.modulus());
  return {a.embed(l), b.embed(l)};
}
}  // namespace

Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
  auto [x, y] = to_common(a, b);
  std::vector<Rat> c = x.coeffs_;
  for (size_t i = 0; i < c.size(); ++i) c[i] += y.coeffs_[i];
  return Cyclotomic(x.modulus_, std::move(c));
}

Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) {
  auto [x, y] = to_common(a, b);
  std::vector<Rat> c = x.coeffs_;
  for (size_t i = 0; i < c.size(); ++i) c[i] -= y.coeffs_[i];
  return Cyclotomic(x.modulus_, std::move(c));
}

Cyclotomic operator-(const Cyclotomic& a) {
  std::vector<Rat> c = a.coeffs_;
  for (auto& q : c) q = -q;
  return Cyclotomic(a.modulus_, std::move(c));
}

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
  auto [x, y] = to_common(a, b);
  std::vector<Rat> p(x.coeffs_.size() + y.coeffs_.size(), Rat(0));
  for (size_t i = 0; i < x.coeffs_.size(); ++i) {
    if (x.coeffs_[i] == 0) continue;
    for (size_t j = 0; j < y.coeffs_.size(); ++j) {
      if (y.coeffs_[j] == 0) continue;
      p[i + j] += x.coeffs_[i] * y.coeffs_[j];
    }
  }
  return Cyclotomic(x.modulus_, reduce_poly(x.modulus_, std::move(p)));
}

Cyclotomic operator*(const Cyclotomic& a, const Rat& q) {
  std::vector<Rat> c = a.coeffs_;
  for (auto& v : c) v *= q;
  return Cyclotomic(a.modulus_, std::move(c));
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
  auto [x, y] = to_common(a, b);
  return x.coeffs_ == y.coeffs_;
}

Cyclotomic Cyclotomic::inverse() const {
  if (is_zero()) raise(ErrorKind::Internal, "inverse of zero");
  // norm trick: multiply all nontrivial conjugates; the product with *this is rational
  Cyclotomic prod = Cyclotomic::from_rat(Rat(1), modulus_);
  for (unsigned long a = 2; a <= modulus_; ++a) {
    if (gcd_u64(a, modulus_) != 1) continue;
    prod = prod * galois(static_cast<long>(a));
  }
  Cyclotomic norm = *this * prod;
  if (!norm.is_rational()) raise(ErrorKind::Internal, "norm not rational");
  return prod * (Rat(1) / norm.rational_part());
}

}  // namespace ftlv
