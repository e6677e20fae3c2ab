#pragma once

#include <mpfr.h>

#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "apolar/rational.hpp"

namespace apolar {

namespace detail {
inline mpfr_prec_t& working_precision() {
  thread_local mpfr_prec_t bits = 128;
  return bits;
}
}  // namespace detail

/// Sets the precision (in bits) of newly created Real values on this thread
/// for the lifetime of the guard.
class PrecisionGuard {
 public:
  explicit PrecisionGuard(long bits) : saved_(detail::working_precision()) {
    detail::working_precision() = bits < MPFR_PREC_MIN ? MPFR_PREC_MIN : bits;
  }
  ~PrecisionGuard() { detail::working_precision() = saved_; }
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

  static long current() { return detail::working_precision(); }

 private:
  mpfr_prec_t saved_;
};

/// Arbitrary-precision binary floating-point number backed by MPFR.
class Real {
 public:
  Real() { mpfr_init2(v_, detail::working_precision()); mpfr_set_zero(v_, 1); }
  Real(long x) { mpfr_init2(v_, detail::working_precision()); mpfr_set_si(v_, x, MPFR_RNDN); }
  Real(int x) : Real(static_cast<long>(x)) {}
  Real(double x) { mpfr_init2(v_, detail::working_precision()); mpfr_set_d(v_, x, MPFR_RNDN); }
  explicit Real(const Rational& q) {
    mpfr_init2(v_, detail::working_precision());
    mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
  }
  Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  Real(Real&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  Real& operator+=(const Real& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator-=(const Real& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator*=(const Real& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator/=(const Real& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }

  friend Real operator+(Real a, const Real& b) { return a += b; }
  friend Real operator-(Real a, const Real& b) { return a -= b; }
  friend Real operator*(Real a, const Real& b) { return a *= b; }
  friend Real operator/(Real a, const Real& b) { return a /= b; }
  Real operator-() const {
    Real r(*this);
    mpfr_neg(r.v_, r.v_, MPFR_RNDN);
    return r;
  }

  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_); }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_); }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_); }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_); }
  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_); }

  bool is_zero() const { return mpfr_zero_p(v_); }
  int sign() const { return mpfr_sgn(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long precision() const { return mpfr_get_prec(v_); }

  friend Real abs(const Real& a) {
    Real r(a);
    mpfr_abs(r.v_, r.v_, MPFR_RNDN);
    return r;
  }
  friend Real sqrt(const Real& a) {
    Real r(a);
    mpfr_sqrt(r.v_, r.v_, MPFR_RNDN);
    return r;
  }
  friend Real hypot(const Real& a, const Real& b) {
    Real r;
    mpfr_hypot(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real cos(const Real& a) {
    Real r;
    mpfr_cos(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend Real sin(const Real& a) {
    Real r;
    mpfr_sin(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend Real log2(const Real& a) {
    Real r;
    mpfr_log2(r.v_, a.v_, MPFR_RNDN);
    return r;
  }

  static Real pi() {
    Real r;
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }
  /// 2^e.
  static Real exp2(long e) {
    Real r(1L);
    mpfr_mul_2si(r.v_, r.v_, e, MPFR_RNDN);
    return r;
  }

  /// Scientific notation with the given number of significant digits, e.g. "1.25e-14".
  std::string to_string(int digits = 3) const {
    char buf[256];
    mpfr_snprintf(buf, sizeof buf, "%.*Re", digits > 1 ? digits - 1 : 0, v_);
    return buf;
  }

  /// Closest rational with denominator at most max_den (continued fractions).
  Rational to_rational_approx(const Integer& max_den) const {
    mpq_t q;
    mpq_init(q);
    mpfr_get_q(q, v_);
    Rational x(q);
    mpq_clear(q);
    Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    Rational rest = x;
    for (int it = 0; it < 200; ++it) {
      Integer a;
      mpz_fdiv_q(a.get_mpz_t(), rest.get_num_mpz_t(), rest.get_den_mpz_t());
      Integer p2 = a * p1 + p0, q2 = a * q1 + q0;
      if (q2 > max_den) break;
      p0 = p1; q0 = q1; p1 = p2; q1 = q2;
      Rational frac = rest - Rational(a);
      if (frac == 0) break;
      rest = 1 / frac;
    }
    if (q1 == 0) return Rational(0);
    Rational r(p1, q1);
    r.canonicalize();
    return r;
  }

 private:
  mpfr_t v_;
};

/// Complex number over Real.
struct Complex {
  Real re;
  Real im;

  Complex() = default;
  Complex(Real r) : re(std::move(r)), im(0L) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  Complex(long r) : re(r), im(0L) {}
  explicit Complex(const Rational& q) : re(q), im(0L) {}

  Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
  Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
  Complex& operator*=(const Complex& o) {
    Real r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  Complex& operator/=(const Complex& o) {
    const Real d = o.re * o.re + o.im * o.im;
    Real r = (re * o.re + im * o.im) / d;
    im = (im * o.re - re * o.im) / d;
    re = std::move(r);
    return *this;
  }
  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
  friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
  Complex operator-() const { return Complex(-re, -im); }

  Complex conj() const { return Complex(re, -im); }
  Real norm() const { return re * re + im * im; }
  friend Real abs(const Complex& z) { return hypot(z.re, z.im); }

  static Complex polar(const Real& r, const Real& theta) { return Complex(r * cos(theta), r * sin(theta)); }

  std::string to_string(int digits = 30) const {
    return re.to_string(digits) + (im.sign() < 0 ? "-" : "+") + abs(im).to_string(digits) + "i";
  }
};

using ComplexVector = std::vector<Complex>;

inline ComplexVector to_complex(const std::vector<Rational>& v) {
  ComplexVector out;
  out.reserve(v.size());
  for (const auto& q : v) out.emplace_back(q);
  return out;
}

inline Real max_abs(const ComplexVector& v) {
  Real m(0L);
  for (const auto& z : v) {
    Real a = abs(z);
    if (a > m) m = a;
  }
  return m;
}

}  // namespace apolar
