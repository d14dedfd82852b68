#include "ftlv/real.hpp"

#include <cstdio>
#include <vector>

namespace ftlv {

std::string Real::str(long digits) const {
  // %.*Re gives digits+1 significant figures in scientific notation;
  // output is deterministic for a given (value, digits).
  std::vector<char> buf(static_cast<size_t>(digits) + 32);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Re", static_cast<int>(digits), x_);
  return std::string(buf.data());
}

#define FTLV_RE_UN(name, fn)                      \
  Real name(const Real& a) {                      \
    Real r(a.prec());                             \
    fn(r.raw(), a.raw(), MPFR_RNDN);              \
    return r;                                     \
  }

FTLV_RE_UN(abs, mpfr_abs)
FTLV_RE_UN(sqrt, mpfr_sqrt)
FTLV_RE_UN(exp, mpfr_exp)
FTLV_RE_UN(log, mpfr_log)
FTLV_RE_UN(sin, mpfr_sin)
FTLV_RE_UN(cos, mpfr_cos)
FTLV_RE_UN(gamma, mpfr_gamma)
FTLV_RE_UN(digamma, mpfr_digamma)
#undef FTLV_RE_UN

Real atan2(const Real& y, const Real& x) {
  Real r(y.prec() > x.prec() ? y.prec() : x.prec());
  mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
  return r;
}

Real pow_si(const Real& a, long e) {
  Real r(a.prec());
  mpfr_pow_si(r.raw(), a.raw(), e, MPFR_RNDN);
  return r;
}

Real pow(const Real& a, const Real& b) {
  Real r(a.prec() > b.prec() ? a.prec() : b.prec());
  mpfr_pow(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
  return r;
}

Real gamma_upper(const Real& a, const Real& x) {
  Real r(a.prec() > x.prec() ? a.prec() : x.prec());
  mpfr_gamma_inc(r.raw(), a.raw(), x.raw(), MPFR_RNDN);
  return r;
}

Real const_pi(mpfr_prec_t prec) { Real r(prec); mpfr_const_pi(r.raw(), MPFR_RNDN); return r; }
Real const_euler(mpfr_prec_t prec) { Real r(prec); mpfr_const_euler(r.raw(), MPFR_RNDN); return r; }
Real const_log2(mpfr_prec_t prec) { Real r(prec); mpfr_const_log2(r.raw(), MPFR_RNDN); return r; }

Real zeta_int(unsigned long n, mpfr_prec_t prec) {
  Real r(prec);
  mpfr_zeta_ui(r.raw(), n, MPFR_RNDN);
  return r;
}

Real real_from_ui(unsigned long v, mpfr_prec_t prec) {
  Real r(prec);
  mpfr_set_ui(r.raw(), v, MPFR_RNDN);
  return r;
}

Real pow10(long k, mpfr_prec_t prec) {
  Real r(prec);
  mpfr_set_ui(r.raw(), 10, MPFR_RNDN);
  mpfr_pow_si(r.raw(), r.raw(), k, MPFR_RNDN);
  return r;
}

Complex unit_root(const Real& t) {
  mpfr_prec_t p = t.prec();
  Real theta = t * 2L * const_pi(p);
  Real s(p), c(p);
  mpfr_sin_cos(s.raw(), c.raw(), theta.raw(), MPFR_RNDN);
  return {c, s};
}

Complex unit_root_frac(long a, long n, mpfr_prec_t prec) {
  a %= n;
  if (a < 0) a += n;
  Real t(a, prec);
  t /= n;
  return unit_root(t);
}

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::NotCoprime: return "NotCoprime";
    case ErrorKind::DependentInput: return "DependentInput";
    case ErrorKind::NoRelation: return "NoRelation";
    case ErrorKind::Unstable: return "Unstable";
    case ErrorKind::NonMinimalAtL: return "NonMinimalAtL";
    case ErrorKind::BadPrime: return "BadPrime";
    case ErrorKind::HasseViolation: return "HasseViolation";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::RamifiedPrime: return "RamifiedPrime";
    case ErrorKind::RamifiedAtV: return "RamifiedAtV";
    case ErrorKind::InvalidM: return "InvalidM";
    case ErrorKind::InsufficientSplitPrimes: return "InsufficientSplitPrimes";
    case ErrorKind::JointAdditiveRamification: return "JointAdditiveRamification";
    case ErrorKind::NeedMoreCoefficients: return "NeedMoreCoefficients";
    case ErrorKind::NoRootNumberConverged: return "NoRootNumberConverged";
    case ErrorKind::ResidualTooLarge: return "ResidualTooLarge";
    case ErrorKind::NoCandidate: return "NoCandidate";
    case ErrorKind::AmbiguousCandidates: return "AmbiguousCandidates";
    case ErrorKind::ImprimitiveCharacter: return "ImprimitiveCharacter";
    case ErrorKind::ConventionMismatch: return "ConventionMismatch";
    case ErrorKind::OrbitMismatch: return "OrbitMismatch";
    case ErrorKind::CacheCorrupt: return "CacheCorrupt";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace ftlv
