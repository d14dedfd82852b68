#include "ftlv/elliptic.hpp"

#include <cmath>
#include <complex>

namespace ftlv {
namespace ec {

namespace {

Real agm(Real a, Real b) {
  mpfr_prec_t prec = a.prec();
  Real eps = pow10(1, prec);
  mpfr_set_ui_2exp(eps.raw(), 1, -(prec - 8), MPFR_RNDN);
  for (int i = 0; i < 4 * 64; ++i) {
    Real am = (a + b) / 2L;
    Real gm = sqrt(a * b);
    a = am;
    b = gm;
    if (abs(a - b) <= eps * abs(a)) return (a + b) / 2L;
  }
  raise(ErrorKind::PrecisionExhausted, "agm did not converge");
}

// roots of the monic cubic X^3 + c2 X^2 + c1 X + c0 (coefficients exact
// rationals scaled from b-invariants); Newton-polished at working precision
struct CubicRoots {
  bool three_real = false;
  Real e1, e2, e3;   // three_real: e1 > e2 > e3
  Real beta, gamma;  // otherwise: e1 real, pair beta +- i*gamma (gamma > 0)
};

Real eval_cubic(const Real& c2, const Real& c1, const Real& c0, const Real& x) {
  return ((x + c2) * x + c1) * x + c0;
}

Real newton_polish(const Real& c2, const Real& c1, const Real& c0, Real x) {
  mpfr_prec_t prec = x.prec();
  Real tol(prec);
  mpfr_set_ui_2exp(tol.raw(), 1, -(prec - 6), MPFR_RNDN);
  for (int i = 0; i < 300; ++i) {
    Real f = eval_cubic(c2, c1, c0, x);
    Real df = (3L * x + 2L * c2) * x + c1;
    Real step = f / df;
    x -= step;
    if (abs(step) <= tol * (abs(x) + Real(1L, prec))) return x;
  }
  raise(ErrorKind::PrecisionExhausted, "cubic Newton did not converge");
}

CubicRoots cubic_roots(const CurveModel& E, mpfr_prec_t prec) {
  Real c2 = rat_to_real(Rat(E.b2, 4), prec);
  Real c1 = rat_to_real(Rat(E.b4, 2), prec);
  Real c0 = rat_to_real(Rat(E.b6, 4), prec);

  // double-precision seeds
  double d2 = c2.to_double(), d1 = c1.to_double(), d0 = c0.to_double();
  double sh = d2 / 3.0;
  double p = d1 - d2 * d2 / 3.0;
  double q = 2.0 * d2 * d2 * d2 / 27.0 - d2 * d1 / 3.0 + d0;

  CubicRoots out;
  out.three_real = E.disc > 0;
  if (out.three_real) {
    double r = std::sqrt(-p / 3.0);
    double phi = std::acos(std::max(-1.0, std::min(1.0, 3.0 * q / (2.0 * p * r))));
    double t0 = 2 * r * std::cos(phi / 3.0);
    double t1 = 2 * r * std::cos((phi + 2 * M_PI) / 3.0);
    double t2 = 2 * r * std::cos((phi + 4 * M_PI) / 3.0);
    double rs[3] = {t0 - sh, t1 - sh, t2 - sh};
    std::sort(rs, rs + 3, std::greater<double>());
    out.e1 = newton_polish(c2, c1, c0, Real(rs[0], prec));
    out.e2 = newton_polish(c2, c1, c0, Real(rs[1], prec));
    out.e3 = newton_polish(c2, c1, c0, Real(rs[2], prec));
  } else {
    double disc = q * q / 4.0 + p * p * p / 27.0;  // > 0 here
    double s = std::sqrt(disc);
    double t = std::cbrt(-q / 2.0 + s) + std::cbrt(-q / 2.0 - s);
    out.e1 = newton_polish(c2, c1, c0, Real(t - sh, prec));
    // quadratic cofactor X^2 + (c2+e1) X + (c1 + e1(c2+e1))
    Real lin = c2 + out.e1;
    Real cst = c1 + out.e1 * lin;
    out.beta = -lin / 2L;
    out.gamma = sqrt(cst - out.beta * out.beta);
  }
  return out;
}

}  // namespace

PeriodPair compute_periods(const CurveModel& E, long digits) {
  mpfr_prec_t prec = bits_for_digits(digits + 10);
  CubicRoots r = cubic_roots(E, prec);
  Real pi = const_pi(prec);
  PeriodPair out;
  if (r.three_real) {
    out.omega_plus = pi / agm(sqrt(r.e1 - r.e3), sqrt(r.e1 - r.e2));
    out.omega_minus_im = pi / agm(sqrt(r.e1 - r.e3), sqrt(r.e2 - r.e3));
  } else {
    Real u = r.e1 - r.beta;
    Real A = sqrt(u * u + r.gamma * r.gamma);
    out.omega_plus = pi / agm(sqrt((A + u) / 2L), sqrt(A));
    // Omega_- = 2i * eta with eta the (-infty, e1] integral
    out.omega_minus_im = pi / agm(sqrt((A - u) / 2L), sqrt(A));
  }
  return out;
}

PeriodPair integrate_periods_reference(const CurveModel& E, long digits) {
  // plain tanh-sinh with explicit node recomputation at every level; this is
  // deliberately simple and independent of the AGM path
  mpfr_prec_t prec = bits_for_digits(digits + 12);
  CubicRoots r = cubic_roots(E, prec);
  Real pi = const_pi(prec);
  (void)pi;

  // integral over t in (0, inf) mapped to s in (-1,1) by t = (1+s)/(1-s)
  auto integrate_halfline = [&](auto&& g) {
    auto mapped = [&](const Real& s) {
      Real one(1L, s.prec());
      Real t = (one + s) / (one - s);
      Real jac = Real(2L, s.prec()) / ((one - s) * (one - s));
      return g(t) * jac;
    };
    // direct tanh-sinh, fixed deep level
    mpfr_prec_t p2 = prec;
    Real pi_half = const_pi(p2) / 2L;
    Real sum(p2);
    double h = 1.0 / 256.0;
    int kmax = static_cast<int>(std::ceil(std::asinh(2.0 * (static_cast<double>(p2) * 0.6931 + 20) / M_PI) / h)) + 4;
    Real wfloor(p2);
    mpfr_set_ui_2exp(wfloor.raw(), 1, -(p2 + 48), MPFR_RNDN);
    Real one(1L, p2);
    for (int k = -kmax; k <= kmax; ++k) {
      Real u(k * h, p2);
      Real eu = exp(u), emu = 1L / eu;
      Real sh = pi_half * (eu - emu) / 2L;
      Real ch = (eu + emu) / 2L;
      Real esh = exp(sh), emsh = 1L / esh;
      Real cosh_sh = (esh + emsh) / 2L;
      Real x = (esh - emsh) / (esh + emsh);
      Real w = pi_half * ch / (cosh_sh * cosh_sh);
      // integrands are bounded on the mapped line; nodes whose weight has
      // underflowed past the target cannot contribute (and x may have rounded
      // to +-1 there, where the map itself blows up)
      if (w < wfloor || x == one || x == -one) continue;
      sum += mapped(x) * w;
    }
    return sum * Real(h, p2);
  };

  PeriodPair out;
  if (r.three_real) {
    Real d12 = r.e1 - r.e2, d13 = r.e1 - r.e3;
    out.omega_plus = integrate_halfline([&](const Real& t) {
      return Real(2L, prec) / sqrt((t * t + d12) * (t * t + d13));
    });
    // imaginary cycle: (1/2) * int_{e2}^{e1} dX / sqrt((e1-X)(X-e2)(X-e3));
    // substitute X = e2 + (e1-e2) * w^2/(1+w^2)... simpler: X = e1 - t^2 over t in (0, sqrt(e1-e2))
    // with both-endpoint singularities handled by X = e2 + (e1-e2)*sin^2: use the
    // half-line form via t^2 = (e1-X): X in (e2, e1): t in (0, sqrt(d12)):
    // (1/2)*dX/sqrt((e1-X)(X-e2)(X-e3)) with X = e1 - d12 * s^2/(1+s^2), s in (0,inf):
    // dX = -d12 * 2s/(1+s^2)^2 ds ; e1 - X = d12 s^2/(1+s^2); X - e2 = d12/(1+s^2);
    // X - e3 = (d13 + d12 s^2)/(1+s^2)
    Real d23 = r.e2 - r.e3;
    out.omega_minus_im = integrate_halfline([&](const Real& s) {
      Real one(1L, prec);
      Real s2 = s * s;
      Real denom = one + s2;
      Real dX = d12 * 2L * s / (denom * denom);
      Real f1 = d12 * s2 / denom;
      Real f2 = d12 / denom;
      Real f3 = (d13 + d23 * s2) / denom;
      return dX / sqrt(f1 * f2 * f3);
    });
  } else {
    Real u = r.e1 - r.beta, g2 = r.gamma * r.gamma;
    out.omega_plus = integrate_halfline([&](const Real& t) {
      Real q = t * t + u;
      return Real(2L, prec) / sqrt(q * q + g2);
    });
    out.omega_minus_im = integrate_halfline([&](const Real& t) {
      Real q = t * t - u;
      return Real(2L, prec) / sqrt(q * q + g2);
    });
  }
  return out;
}

}  // namespace ec
}  // namespace ftlv
