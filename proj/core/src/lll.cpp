#include "ftlv/lll.hpp"

namespace ftlv {

namespace {

Int dot(const std::vector<Int>& a, const std::vector<Int>& b) {
  Int s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Int round_div(const Int& a, const Int& b) {
  // nearest integer to a/b, ties away from zero
  Int q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  if (2 * r >= b) q += 1;
  return q;
}

}  // namespace

LatticeBasis lll_reduce(LatticeBasis b) {
  const size_t n = b.size();
  if (n == 0) return b;
  for (auto& row : b)
    if (row.size() != b[0].size()) raise(ErrorKind::Internal, "lll: ragged basis");

  // d[i] = Gram determinant of the first i vectors, lam[i][j] = d[j+1]... we
  // keep Cohen's integral GSO data: lam[i][j] = mu_{i,j} * d[j+1] with 1-based
  // d; here d has length n+1, d[0] = 1.
  std::vector<Int> d(n + 1);
  d[0] = 1;
  std::vector<std::vector<Int>> lam(n, std::vector<Int>(n, Int(0)));

  auto init_gso = [&]() {
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = 0; j <= i; ++j) {
        Int u = dot(b[i], b[j]);
        for (size_t k = 0; k < j; ++k) u = (d[k + 1] * u - lam[i][k] * lam[j][k]) / d[k];
        if (j < i)
          lam[i][j] = u;
        else {
          if (u <= 0) raise(ErrorKind::DependentInput, "lll: input vectors dependent");
          d[i + 1] = u;
        }
      }
    }
  };
  init_gso();

  auto red = [&](size_t k, size_t l) {
    Int two_lam = 2 * lam[k][l];
    if (two_lam > d[l + 1] || two_lam < -d[l + 1]) {
      Int q = round_div(lam[k][l], d[l + 1]);
      for (size_t i = 0; i < b[k].size(); ++i) b[k][i] -= q * b[l][i];
      lam[k][l] -= q * d[l + 1];
      for (size_t i = 0; i < l; ++i) lam[k][i] -= q * lam[l][i];
    }
  };

  size_t k = 1;
  while (k < n) {
    red(k, k - 1);
    // Lovasz with delta = 99/100: swap iff 100 d_k d_{k-2} < 99 d_{k-1}^2 - 100 lam^2
    Int lhs = 100 * d[k + 1] * d[k - 1];
    Int rhs = 99 * d[k] * d[k] - 100 * lam[k][k - 1] * lam[k][k - 1];
    if (lhs < rhs) {
      std::swap(b[k], b[k - 1]);
      for (size_t j = 0; j + 1 < k; ++j) std::swap(lam[k][j], lam[k - 1][j]);
      Int lbar = lam[k][k - 1];
      Int Bnew = (d[k - 1] * d[k + 1] + lbar * lbar) / d[k];
      for (size_t i = k + 1; i < n; ++i) {
        Int t = lam[i][k];
        lam[i][k] = (d[k + 1] * lam[i][k - 1] - lbar * t) / d[k];
        lam[i][k - 1] = (Bnew * t + lbar * lam[i][k]) / d[k + 1];
      }
      d[k] = Bnew;
      k = k > 1 ? k - 1 : 1;
    } else {
      for (size_t l = k - 1; l-- > 0;) red(k, l);
      ++k;
    }
  }
  return b;
}

bool lll_satisfies_conditions(const LatticeBasis& basis, const Rat& delta) {
  const size_t n = basis.size();
  if (n == 0) return true;
  const size_t m = basis[0].size();
  // exact rational Gram-Schmidt
  std::vector<std::vector<Rat>> gs(n, std::vector<Rat>(m));
  std::vector<std::vector<Rat>> mu(n, std::vector<Rat>(n, Rat(0)));
  std::vector<Rat> norm2(n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < m; ++j) gs[i][j] = Rat(basis[i][j]);
    for (size_t k = 0; k < i; ++k) {
      Rat num(0);
      for (size_t j = 0; j < m; ++j) num += Rat(basis[i][j]) * gs[k][j];
      mu[i][k] = num / norm2[k];
      for (size_t j = 0; j < m; ++j) gs[i][j] -= mu[i][k] * gs[k][j];
    }
    norm2[i] = 0;
    for (size_t j = 0; j < m; ++j) norm2[i] += gs[i][j] * gs[i][j];
    if (norm2[i] == 0) return false;
  }
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < i; ++k) {
      if (mu[i][k] > Rat(1, 2) || mu[i][k] < Rat(-1, 2)) return false;
    }
  for (size_t i = 1; i < n; ++i) {
    // ||b*_i||^2 >= (delta - mu_{i,i-1}^2) ||b*_{i-1}||^2
    if (norm2[i] < (delta - mu[i][i - 1] * mu[i][i - 1]) * norm2[i - 1]) return false;
  }
  return true;
}

}  // namespace ftlv
