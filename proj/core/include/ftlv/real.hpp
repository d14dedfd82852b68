#pragma once

// Arbitrary-precision reals and complexes on top of MPFR. Values carry their
// own precision; binary operations compute at the larger of the two operand
// precisions. All values are immutable in spirit: every operation returns a
// fresh value, so sharing across threads is safe once constructed.

#include <mpfr.h>

#include <cstdint>
#include <string>
#include <utility>

#include "ftlv/errors.hpp"

namespace ftlv {

// digits -> mantissa bits, with guard bits on top.
inline mpfr_prec_t bits_for_digits(long digits) {
  return static_cast<mpfr_prec_t>(digits * 3.3219280948873623 + 64);
}

class Real {
 public:
  Real() { mpfr_init2(x_, 64); mpfr_set_zero(x_, 1); }
  explicit Real(mpfr_prec_t prec) { mpfr_init2(x_, prec); mpfr_set_zero(x_, 1); }
  Real(long v, mpfr_prec_t prec) { mpfr_init2(x_, prec); mpfr_set_si(x_, v, MPFR_RNDN); }
  Real(double v, mpfr_prec_t prec) { mpfr_init2(x_, prec); mpfr_set_d(x_, v, MPFR_RNDN); }
  Real(const char* s, mpfr_prec_t prec) {
    mpfr_init2(x_, prec);
    if (mpfr_set_str(x_, s, 10, MPFR_RNDN) != 0) raise(ErrorKind::Internal, "bad real literal");
  }
  Real(const Real& o) { mpfr_init2(x_, mpfr_get_prec(o.x_)); mpfr_set(x_, o.x_, MPFR_RNDN); }
  Real(Real&& o) noexcept { mpfr_init2(x_, 64); mpfr_swap(x_, o.x_); }
  Real& operator=(const Real& o) {
    if (this != &o) { mpfr_set_prec(x_, mpfr_get_prec(o.x_)); mpfr_set(x_, o.x_, MPFR_RNDN); }
    return *this;
  }
  Real& operator=(Real&& o) noexcept { mpfr_swap(x_, o.x_); return *this; }
  ~Real() { mpfr_clear(x_); }

  mpfr_ptr raw() { return x_; }
  mpfr_srcptr raw() const { return x_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(x_); }

  static Real with_prec_of(const Real& model) { return Real(model.prec()); }

  double to_double() const { return mpfr_get_d(x_, MPFR_RNDN); }
  long to_long() const { return mpfr_get_si(x_, MPFR_RNDN); }
  bool is_zero() const { return mpfr_zero_p(x_); }
  int sign() const { return mpfr_sgn(x_); }
  // decimal, fixed number of significant digits; deterministic for JSON output
  std::string str(long digits) const;

  friend Real operator+(const Real& a, const Real& b) { Real r(maxp(a, b)); mpfr_add(r.x_, a.x_, b.x_, MPFR_RNDN); return r; }
  friend Real operator-(const Real& a, const Real& b) { Real r(maxp(a, b)); mpfr_sub(r.x_, a.x_, b.x_, MPFR_RNDN); return r; }
  friend Real operator*(const Real& a, const Real& b) { Real r(maxp(a, b)); mpfr_mul(r.x_, a.x_, b.x_, MPFR_RNDN); return r; }
  friend Real operator/(const Real& a, const Real& b) { Real r(maxp(a, b)); mpfr_div(r.x_, a.x_, b.x_, MPFR_RNDN); return r; }
  friend Real operator-(const Real& a) { Real r(a.prec()); mpfr_neg(r.x_, a.x_, MPFR_RNDN); return r; }
  Real& operator+=(const Real& b) { mpfr_add(x_, x_, b.x_, MPFR_RNDN); return *this; }
  Real& operator-=(const Real& b) { mpfr_sub(x_, x_, b.x_, MPFR_RNDN); return *this; }
  Real& operator*=(const Real& b) { mpfr_mul(x_, x_, b.x_, MPFR_RNDN); return *this; }
  Real& operator/=(const Real& b) { mpfr_div(x_, x_, b.x_, MPFR_RNDN); return *this; }
  Real& operator*=(long b) { mpfr_mul_si(x_, x_, b, MPFR_RNDN); return *this; }
  Real& operator/=(long b) { mpfr_div_si(x_, x_, b, MPFR_RNDN); return *this; }

  friend Real operator*(const Real& a, long b) { Real r(a.prec()); mpfr_mul_si(r.x_, a.x_, b, MPFR_RNDN); return r; }
  friend Real operator*(long b, const Real& a) { return a * b; }
  friend Real operator/(const Real& a, long b) { Real r(a.prec()); mpfr_div_si(r.x_, a.x_, b, MPFR_RNDN); return r; }
  friend Real operator/(long b, const Real& a) { Real r(a.prec()); mpfr_si_div(r.x_, b, a.x_, MPFR_RNDN); return r; }
  friend Real operator+(const Real& a, long b) { Real r(a.prec()); mpfr_add_si(r.x_, a.x_, b, MPFR_RNDN); return r; }
  friend Real operator-(const Real& a, long b) { Real r(a.prec()); mpfr_sub_si(r.x_, a.x_, b, MPFR_RNDN); return r; }
  friend Real operator-(long b, const Real& a) { Real r(a.prec()); mpfr_si_sub(r.x_, b, a.x_, MPFR_RNDN); return r; }

  friend bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.x_, b.x_) < 0; }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_cmp(a.x_, b.x_) > 0; }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_cmp(a.x_, b.x_) <= 0; }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_cmp(a.x_, b.x_) >= 0; }
  friend bool operator==(const Real& a, const Real& b) { return mpfr_cmp(a.x_, b.x_) == 0; }

 private:
  static mpfr_prec_t maxp(const Real& a, const Real& b) {
    return a.prec() > b.prec() ? a.prec() : b.prec();
  }
  mpfr_t x_;
};

Real abs(const Real& a);
Real sqrt(const Real& a);
Real exp(const Real& a);
Real log(const Real& a);
Real sin(const Real& a);
Real cos(const Real& a);
Real atan2(const Real& y, const Real& x);
Real pow_si(const Real& a, long e);
Real pow(const Real& a, const Real& b);  // a > 0
Real gamma(const Real& a);
Real digamma(const Real& a);
Real gamma_upper(const Real& a, const Real& x);  // incomplete Gamma(a, x)
Real const_pi(mpfr_prec_t prec);
Real const_euler(mpfr_prec_t prec);
Real const_log2(mpfr_prec_t prec);
Real zeta_int(unsigned long n, mpfr_prec_t prec);  // zeta(n), n >= 2
Real real_from_ui(unsigned long v, mpfr_prec_t prec);
// 10^{-k} at the given precision, for thresholds
Real pow10(long k, mpfr_prec_t prec);

struct Complex {
  Real re, im;

  Complex() = default;
  explicit Complex(mpfr_prec_t prec) : re(prec), im(prec) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  Complex(long r, mpfr_prec_t prec) : re(r, prec), im(0L, prec) {}

  mpfr_prec_t prec() const { return re.prec() > im.prec() ? re.prec() : im.prec(); }
  bool is_zero() const { return re.is_zero() && im.is_zero(); }

  friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
  friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
  friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Complex operator*(const Complex& a, const Real& b) { return {a.re * b, a.im * b}; }
  friend Complex operator*(const Real& b, const Complex& a) { return a * b; }
  friend Complex operator/(const Complex& a, const Real& b) { return {a.re / b, a.im / b}; }
  friend Complex operator/(const Complex& a, const Complex& b) {
    Real n = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
  }
  Complex& operator+=(const Complex& b) { re += b.re; im += b.im; return *this; }
  Complex& operator-=(const Complex& b) { re -= b.re; im -= b.im; return *this; }

  Complex conj() const { return {re, -im}; }
  Real abs() const { return sqrt(re * re + im * im); }
  Real abs2() const { return re * re + im * im; }
};

// e^{2 pi i t}
Complex unit_root(const Real& t);
// e^{2 pi i a/n}
Complex unit_root_frac(long a, long n, mpfr_prec_t prec);

}  // namespace ftlv
