#include "ftlv/gammafactor.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

namespace ftlv {
namespace lf {

namespace {

// truncated Laurent series: c[i] is the coefficient of u^{lead+i}
struct LSeries {
  int lead = 0;
  std::vector<Real> c;
};

LSeries ls_mul(const LSeries& a, const LSeries& b, int max_deg, mpfr_prec_t prec) {
  LSeries r;
  r.lead = a.lead + b.lead;
  int keep = max_deg - r.lead + 1;
  if (keep <= 0) keep = 1;
  r.c.assign(static_cast<size_t>(keep), Real(prec));
  for (size_t i = 0; i < a.c.size(); ++i) {
    for (size_t j = 0; j < b.c.size(); ++j) {
      if (static_cast<int>(i + j) >= keep) break;
      r.c[i + j] += a.c[i] * b.c[j];
    }
  }
  return r;
}

// exp of a series with zero constant term, truncated at u^{nterms-1}
std::vector<Real> ls_exp(const std::vector<Real>& d, size_t nterms, mpfr_prec_t prec) {
  std::vector<Real> e(nterms, Real(prec));
  e[0] = Real(1L, prec);
  for (size_t n = 1; n < nterms; ++n) {
    Real acc(prec);
    for (size_t m = 1; m <= n && m < d.size(); ++m) acc += Real(static_cast<long>(m), prec) * d[m] * e[n - m];
    e[n] = acc / static_cast<long>(n);
  }
  return e;
}

// process-wide caches for the constants the Laurent builds hammer on
const Real& cached_zeta(unsigned long m, mpfr_prec_t prec) {
  static std::map<std::pair<unsigned long, mpfr_prec_t>, Real> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lk(mu);
  auto key = std::make_pair(m, prec);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, zeta_int(m, prec)).first;
  return it->second;
}

const Real& cached_const(int which, mpfr_prec_t prec) {  // 0: euler, 1: log2
  static std::map<std::pair<int, mpfr_prec_t>, Real> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lk(mu);
  auto key = std::make_pair(which, prec);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, which == 0 ? const_euler(prec) : const_log2(prec)).first;
  return it->second;
}

// Hurwitz zeta(m, a) for a = c/2 > 0, c integer, m >= 2
Real hurwitz_halfint(unsigned long m, long c, mpfr_prec_t prec) {
  Real z = cached_zeta(m, prec);
  if (c % 2 == 0) {
    long q = c / 2;  // a = q >= 1
    Real s(prec);
    for (long j = 1; j < q; ++j) s += pow_si(Real(j, prec), -static_cast<long>(m));
    return z - s;
  }
  // a = q + 1/2, q >= 0
  long q = (c - 1) / 2;
  Real two_m = pow_si(Real(2L, prec), static_cast<long>(m));
  Real s(prec);
  for (long j = 0; j < q; ++j) {
    Real base = Real(2 * j + 1, prec) / 2L;
    s += pow_si(base, -static_cast<long>(m));
  }
  return (two_m - 1L) * z - s;
}

// psi(c/2) by the closed forms (avoids per-pole mpfr_digamma at high precision)
Real digamma_halfint(long c, mpfr_prec_t prec) {
  if (c % 2 == 0) {
    long q = c / 2;  // psi(q) = -gamma + H_{q-1}
    Real s = -cached_const(0, prec);
    for (long j = 1; j < q; ++j) s += Real(1L, prec) / Real(j, prec);
    return s;
  }
  long q = (c - 1) / 2;  // psi(q + 1/2) = -gamma - 2 ln 2 + 2 sum_{j=1}^{q} 1/(2j-1)
  Real s = -cached_const(0, prec) - 2L * cached_const(1, prec);
  for (long j = 1; j <= q; ++j) s += Real(2L, prec) / Real(2 * j - 1, prec);
  return s;
}

// Taylor coefficients (in h) of ln Gamma(a + h) minus the constant, a = c/2 >= 1/2
std::vector<Real> lngamma_series(long c, size_t nterms, mpfr_prec_t prec) {
  std::vector<Real> d(nterms, Real(prec));
  if (nterms > 1) d[1] = digamma_halfint(c, prec);
  for (size_t m = 2; m < nterms; ++m) {
    Real zm = hurwitz_halfint(m, c, prec);
    d[m] = zm / static_cast<long>(m);
    if (m % 2 == 1) d[m] = -d[m];
  }
  return d;
}

// Laurent series of Gamma_R(c + u), c integer, keeping terms through u^{+1}
LSeries laurent_gamma_R(long c, int order_hint, mpfr_prec_t prec) {
  // we need principal part + a couple of regular terms; build generously
  size_t nterms = static_cast<size_t>(order_hint) + 4;
  LSeries out;

  auto analytic_at = [&](long cc) {
    // Gamma(cc/2 + h) as a Taylor series in h; valid for cc >= 1
    std::vector<Real> d = lngamma_series(cc, nterms, prec);
    std::vector<Real> e = ls_exp(d, nterms, prec);
    Real g0 = gamma(Real(cc, prec) / 2L);
    for (auto& v : e) v *= g0;
    return e;  // series in h
  };

  std::vector<Real> series_h;  // Taylor/Laurent data in h with lead `lead_h`
  int lead_h = 0;
  if (c >= 1) {
    series_h = analytic_at(c);
  } else if (c % 2 == 0) {
    // a = c/2 = -k <= 0: Gamma(h - k) = Gamma(1 + h) / (h * prod_{i=1}^{k} (h - i))
    long k = -c / 2;
    series_h = analytic_at(2);  // Gamma(1 + h)
    lead_h = -1;                // divide by h
    for (long i = 1; i <= k; ++i) {
      // divide by (h - i) = -i (1 - h/i): multiply by -(1/i) sum (h/i)^t
      Real inv_i = Real(1L, prec) / Real(i, prec);
      std::vector<Real> geo(nterms, Real(prec));
      Real p = -inv_i;
      for (size_t t = 0; t < nterms; ++t) {
        geo[t] = p;
        p *= inv_i;
      }
      std::vector<Real> prod(nterms, Real(prec));
      for (size_t x = 0; x < nterms; ++x)
        for (size_t y = 0; x + y < nterms; ++y) prod[x + y] += series_h[x] * geo[y];
      series_h = std::move(prod);
    }
  } else {
    // a negative half-integer: shift up to a + K >= 1/2 and divide the factors
    long K = (1 - c) / 2;  // c odd, so exact: c + 2K = 1
    series_h = analytic_at(c + 2 * K);
    for (long i = 0; i < K; ++i) {
      // divide by (a + i + h), a + i = (c + 2i)/2 != 0
      Real ai = Real(c + 2 * i, prec) / 2L;
      Real inv = Real(1L, prec) / ai;
      std::vector<Real> geo(nterms, Real(prec));
      Real p = inv;
      for (size_t t = 0; t < nterms; ++t) {
        geo[t] = p;
        p *= -inv;
      }
      std::vector<Real> prod(nterms, Real(prec));
      for (size_t x = 0; x < nterms; ++x)
        for (size_t y = 0; x + y < nterms; ++y) prod[x + y] += series_h[x] * geo[y];
      series_h = std::move(prod);
    }
  }

  // substitute h = u/2 and multiply by pi^{-c/2} exp(-(ln pi / 2) u)
  Real lnpi = log(const_pi(prec));
  std::vector<Real> expo(nterms, Real(prec));
  {
    std::vector<Real> d(nterms, Real(prec));
    if (nterms > 1) d[1] = -lnpi / 2L;
    expo = ls_exp(d, nterms, prec);
  }
  Real pic = exp(lnpi * Real(-c, prec) / 2L);
  std::vector<Real> half_pows(nterms, Real(prec));
  {
    Real hp = Real(1L, prec);
    // h^{lead_h + i} = u^{lead_h + i} / 2^{lead_h + i}
    for (size_t i = 0; i < nterms; ++i) {
      half_pows[i] = hp;
      hp = hp / 2L;
    }
    Real lead_scale = pow_si(Real(2L, prec), -lead_h);
    for (size_t i = 0; i < nterms; ++i) half_pows[i] = half_pows[i] * lead_scale / 1L;
  }
  std::vector<Real> scaled(nterms, Real(prec));
  for (size_t i = 0; i < nterms; ++i) scaled[i] = series_h[i] * half_pows[i] * pic;
  std::vector<Real> final_c(nterms, Real(prec));
  for (size_t x = 0; x < nterms; ++x)
    for (size_t y = 0; x + y < nterms; ++y) final_c[x + y] += scaled[x] * expo[y];

  out.lead = lead_h;
  out.c = std::move(final_c);
  return out;
}

}  // namespace

Real gamma_product(const std::vector<int>& shifts, long s2, mpfr_prec_t prec) {
  Real r(1L, prec);
  Real pi = const_pi(prec);
  for (int mu : shifts) {
    Real arg = Real(s2 + 2L * mu, prec) / 2L;  // s + mu
    r *= exp(log(pi) * (-arg) / 2L) * gamma(arg / 2L);
  }
  return r;
}

WeightFunction::WeightFunction(std::vector<int> shifts, long s2, long digits, double x_max,
                               bool force_series)
    : shifts_(std::move(shifts)), s2_(s2), digits_(digits) {
  std::sort(shifts_.begin(), shifts_.end());
  const int d = static_cast<int>(shifts_.size());
  if (x_max < 1.0) x_max = 1.0;
  x_max_ = x_max;

  bool consecutive_pair = (d == 2 && shifts_[1] == shifts_[0] + 1);
  if ((d == 1 || consecutive_pair) && !force_series) {
    // exact incomplete-gamma closed forms (valid for any real first argument)
    use_incgamma_ = true;
    prec_ = bits_for_digits(digits_ + 15);
    x_max_ = 1e300;
    return;
  }

  mpfr_prec_t base = bits_for_digits(digits_ + 15);

  // two-phase build: provisional precision, then rebuild if the predicted
  // cancellation at x_max demands more bits
  prec_ = base + 64;
  for (int phase = 0; phase < 2; ++phase) {
    poles_.clear();
    gamma_polar_at_s_ = false;
    mpfr_prec_t P = prec_;
    const Real lx(std::log(x_max), P);
    Real maxterm(P);

    // z = 0 contribution when gamma is analytic at s: constant gamma(s).
    // Gamma_R(s+mu) is polar iff s+mu is in {0,-2,-4,...}, i.e. s2+2mu = 0 mod 4
    bool polar_at_zero = false;
    for (int mu : shifts_) {
      long cc = s2_ + 2 * mu;
      if (cc <= 0 && ((cc % 4) + 4) % 4 == 0) polar_at_zero = true;
    }
    gamma_polar_at_s_ = polar_at_zero;
    if (!polar_at_zero) {
      Pole p0;
      p0.t = 0;
      p0.logcoef = {gamma_product(shifts_, s2_, P)};
      poles_.push_back(std::move(p0));
    }

    // gamma poles z0 = -(s + mu + 2k), grouped by t = s2 + 2 mu + 4k;
    // plus the z = 0 pole merged in when gamma is polar at s (t = 0)
    std::map<long, int> order;  // t -> number of polar factors
    int negligible_waves = 0;
    for (long k = 0; k <= 5000 && negligible_waves < 3; ++k) {
      Real wave_max(P);
      for (int mu : shifts_) {
        long t = s2_ + 2 * mu + 4 * k;
        if (order.count(t)) continue;  // already built (same t from another (mu,k))
        // count polar factors at z0 = -t/2: Gamma_R(c) has poles at c = 0,-2,-4,...
        // (t = s2 mod 2 always, so (s2 - t)/2 is an integer)
        int r_gamma = 0;
        for (int mj : shifts_) {
          long cj = (s2_ - t) / 2 + mj;
          if (cj <= 0 && cj % 2 == 0) ++r_gamma;
        }
        if (r_gamma == 0) continue;  // not actually a pole (can happen for odd parity)
        order[t] = r_gamma;
        int r_total = r_gamma + (t == 0 ? 1 : 0);

        // product Laurent series of gamma(s + z0 + u) over all factors
        LSeries prod;
        prod.lead = 0;
        prod.c = {Real(1L, P)};
        for (int mj : shifts_) {
          long cj = (s2_ - t) / 2 + mj;
          LSeries f = laurent_gamma_R(cj, r_total, P);
          prod = ls_mul(prod, f, 1, P);
        }
        // g_j coefficients: prod.c[i] is coeff of u^{prod.lead + i}
        auto gcoef = [&](int j) -> Real {
          int idx = j - prod.lead;
          if (idx < 0 || idx >= static_cast<int>(prod.c.size())) return Real(P);
          return prod.c[static_cast<size_t>(idx)];
        };

        Pole pe;
        pe.t = t;
        if (t == 0) {
          // Res_{u=0} gamma(s+u) e^{-uL} / u = sum_l g_{-l} (-L)^l / l!
          pe.logcoef.assign(static_cast<size_t>(r_gamma) + 1, Real(P));
          Real fact(1L, P);
          for (int l = 0; l <= r_gamma; ++l) {
            if (l > 0) fact *= l;
            Real v = gcoef(-l) / 1L;
            if (l % 2 == 1) v = -v;
            pe.logcoef[static_cast<size_t>(l)] = v / fact;
          }
        } else {
          Real z0 = Real(-t, P) / 2L;
          pe.logcoef.assign(static_cast<size_t>(r_gamma), Real(P));
          Real fact(1L, P);
          for (int l = 0; l < r_gamma; ++l) {
            if (l > 0) fact *= l;
            Real acc(P);
            for (int j = -r_gamma; j <= -1 - l; ++j) {
              Real term = gcoef(j) * pow_si(z0, l + j);
              if ((1 + j) % 2 != 0) term = -term;
              acc += term;
            }
            pe.logcoef[static_cast<size_t>(l)] = acc / fact;
          }
        }
        // track the predicted largest term magnitude at x_max
        Real xpow = exp(Real(t, P) / 2L * Real(std::log(x_max), P));
        Real lpow(1L, P);
        for (size_t l = 0; l < pe.logcoef.size(); ++l) {
          Real mag = abs(pe.logcoef[l]) * xpow * lpow;
          if (mag > wave_max) wave_max = mag;
          if (mag > maxterm) maxterm = mag;
          lpow = lpow * abs(lx) + Real(0L, P);  // |ln x|^l, crude but monotone
        }
        poles_.push_back(std::move(pe));
      }
      Real eps_stop = pow10(-(digits_ + 20), P);
      if (k > 0 && wave_max < eps_stop)
        ++negligible_waves;
      else
        negligible_waves = 0;
    }
    std::sort(poles_.begin(), poles_.end(), [](const Pole& a, const Pole& b) { return a.t < b.t; });

    // decide the working precision from the observed cancellation
    double lg_max = 0.0;
    if (!maxterm.is_zero()) {
      mpfr_exp_t e = mpfr_get_exp(maxterm.raw());
      lg_max = std::max(0.0, static_cast<double>(e));
    }
    mpfr_prec_t want = base + static_cast<mpfr_prec_t>(lg_max) + 48;
    if (want <= prec_) break;
    prec_ = want;
  }
  tail_value_ = eval_series(Real(x_max_, prec_));
}

Real WeightFunction::eval_incgamma(const Real& x) const {
  mpfr_prec_t P = prec_;
  Real pi = const_pi(P);
  if (shifts_.size() == 1) {
    // G_s(x) = pi^{-(s+mu)/2} Gamma((s+mu)/2, pi x^2)
    Real a = Real(s2_ + 2L * shifts_[0], P) / 2L;
    return exp(log(pi) * (-a) / 2L) * gamma_upper(a / 2L, pi * x * x);
  }
  // Gamma_C(s + mu) = 2 (2pi)^{-(s+mu)} Gamma(s+mu): G_s(x) = 2 (2pi)^{-(s+mu)} Gamma(s+mu, 2 pi x)
  Real a = Real(s2_ + 2L * shifts_[0], P) / 2L;
  Real two_pi = 2L * pi;
  return 2L * exp(log(two_pi) * (-a)) * gamma_upper(a, two_pi * x);
}

Real WeightFunction::eval_series(const Real& x) const {
  const mpfr_prec_t P = prec_;
  // scratch-buffer walk over the poles in increasing t, maintaining x^{t/2};
  // all arithmetic in place (this loop dominates the engine's runtime)
  mpfr_t L, sqx, xpow, poly, acc, tmp;
  mpfr_inits2(P, L, sqx, xpow, poly, acc, tmp, static_cast<mpfr_ptr>(nullptr));
  mpfr_log(L, x.raw(), MPFR_RNDN);
  mpfr_sqrt(sqx, x.raw(), MPFR_RNDN);
  mpfr_set_zero(acc, 1);
  long cur_t = poles_.empty() ? 0 : poles_.front().t;
  // xpow = x^{cur_t / 2}
  mpfr_mul_si(tmp, L, cur_t, MPFR_RNDN);
  mpfr_div_ui(tmp, tmp, 2, MPFR_RNDN);
  mpfr_exp(xpow, tmp, MPFR_RNDN);
  // terms grow to a peak near t = d sqrt(x) and then decay superfactorially;
  // once past the peak and below the absolute floor, the rest cannot matter
  const long t_peak = static_cast<long>(3.0 * static_cast<double>(shifts_.size()) *
                                        std::sqrt(std::max(1.0, x.to_double()))) + 16;
  const mpfr_exp_t floor_exp = static_cast<mpfr_exp_t>(-(digits_ + 17) * 3.33);
  for (const Pole& p : poles_) {
    while (cur_t < p.t) {
      mpfr_mul(xpow, xpow, sqx, MPFR_RNDN);
      ++cur_t;
    }
    const auto& lc = p.logcoef;
    mpfr_set(poly, lc.back().raw(), MPFR_RNDN);
    for (size_t l = lc.size() - 1; l-- > 0;) {
      mpfr_mul(poly, poly, L, MPFR_RNDN);
      mpfr_add(poly, poly, lc[l].raw(), MPFR_RNDN);
    }
    mpfr_mul(tmp, xpow, poly, MPFR_RNDN);
    mpfr_add(acc, acc, tmp, MPFR_RNDN);
    if (p.t > t_peak && (mpfr_zero_p(tmp) || mpfr_get_exp(tmp) < floor_exp)) break;
  }
  Real out(P);
  mpfr_set(out.raw(), acc, MPFR_RNDN);
  mpfr_clears(L, sqx, xpow, poly, acc, tmp, static_cast<mpfr_ptr>(nullptr));
  return out;
}

Real WeightFunction::eval(const Real& x) const {
  if (use_incgamma_) return eval_incgamma(x);
  if (x.to_double() > x_max_) {
    // beyond the range the series data was sized for: G is positive and
    // decreasing, so it is bounded by the value at x_max_, which must itself
    // be negligible at the accuracy this table promises
    Real floor = pow10(-(digits_ + 4), prec_);
    if (abs(tail_value_) < floor) return Real(prec_);
    raise(ErrorKind::PrecisionExhausted, "weight function queried beyond its built range");
  }
  return eval_series(x);
}

double WeightFunction::cutoff_x(double log10_bound) const {
  mpfr_prec_t P = prec_;
  Real bound = pow10(static_cast<long>(std::floor(log10_bound)), P);
  double lo = 0.25, hi = 0.5;
  for (int i = 0; i < 80; ++i) {
    hi = std::min(hi * 2.0, x_max_);
    if (eval(Real(hi, P)) < bound || hi >= x_max_) break;
  }
  for (int i = 0; i < 50; ++i) {
    double mid = 0.5 * (lo + hi);
    if (eval(Real(mid, P)) < bound)
      hi = mid;
    else
      lo = mid;
    if (hi - lo < 0.01 * hi) break;
  }
  return hi;
}

}  // namespace lf
}  // namespace ftlv
