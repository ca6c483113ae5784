#pragma once

// Multiprecision floating point on top of MPFR with directed-rounding
// enclosures. GMP's C++ classes cover exact integers and rationals.

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace pierce {

using BigInt = mpz_class;
using Rational = mpq_class;

namespace detail {

inline mpfr_prec_t& thread_precision() {
  thread_local mpfr_prec_t prec = 128;
  return prec;
}

inline void widen_exponent_range() {
  static const bool done = [] {
    mpfr_set_emax(mpfr_get_emax_max());
    mpfr_set_emin(mpfr_get_emin_min());
    return true;
  }();
  (void)done;
}

}  // namespace detail

/// Working precision (bits) used when a Real is built without an explicit one.
inline mpfr_prec_t default_precision() { return detail::thread_precision(); }

/// Scoped override of the thread's working precision.
class PrecisionScope {
 public:
  explicit PrecisionScope(mpfr_prec_t bits) : saved_(detail::thread_precision()) {
    if (bits < MPFR_PREC_MIN || bits > (1L << 24))
      throw std::invalid_argument("precision out of range: " + std::to_string(bits));
    detail::thread_precision() = bits;
  }
  ~PrecisionScope() { detail::thread_precision() = saved_; }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  mpfr_prec_t saved_;
};

/// RAII MPFR value. Arithmetic operators round to nearest at the wider operand precision.
class Real {
 public:
  explicit Real(mpfr_prec_t prec = default_precision()) {
    detail::widen_exponent_range();
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  Real(double x, mpfr_prec_t prec = default_precision()) : Real(prec) {  // NOLINT
    mpfr_set_d(v_, x, MPFR_RNDN);
  }
  // No long overload: a lone long argument is a precision.
  Real(int x, mpfr_prec_t prec = default_precision()) : Real(prec) {  // NOLINT
    mpfr_set_si(v_, x, MPFR_RNDN);
  }
  static Real from_long(long x, mpfr_prec_t prec = default_precision()) {
    Real r(prec);
    mpfr_set_si(r.v_, x, MPFR_RNDN);
    return r;
  }
  Real(const BigInt& z, mpfr_prec_t prec = default_precision(), mpfr_rnd_t rnd = MPFR_RNDN)
      : Real(prec) {
    mpfr_set_z(v_, z.get_mpz_t(), rnd);
  }
  Real(const Rational& q, mpfr_prec_t prec = default_precision(), mpfr_rnd_t rnd = MPFR_RNDN)
      : Real(prec) {
    mpfr_set_q(v_, q.get_mpq_t(), rnd);
  }
  Real(const Real& o) : Real(mpfr_get_prec(o.v_)) { mpfr_set(v_, o.v_, MPFR_RNDN); }
  Real(Real&& o) noexcept : Real(MPFR_PREC_MIN) { mpfr_swap(v_, o.v_); }
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

  static Real inf(int sign = 1, mpfr_prec_t prec = default_precision()) {
    Real r(prec);
    mpfr_set_inf(r.v_, sign);
    return r;
  }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  bool is_nan() const { return mpfr_nan_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  /// Floor as an exact integer; throws on non-finite values.
  BigInt floor() const {
    if (!is_finite()) throw std::domain_error("floor of a non-finite real");
    BigInt z;
    mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDD);
    return z;
  }

  std::string str(int digits = 17) const {
    if (is_nan()) return "nan";
    if (!is_finite()) return sign() > 0 ? "inf" : "-inf";
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Rg", digits, v_);
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
  }

  friend Real operator+(const Real& a, const Real& b) { return binary(a, b, mpfr_add); }
  friend Real operator-(const Real& a, const Real& b) { return binary(a, b, mpfr_sub); }
  friend Real operator*(const Real& a, const Real& b) { return binary(a, b, mpfr_mul); }
  friend Real operator/(const Real& a, const Real& b) { return binary(a, b, mpfr_div); }
  friend Real operator-(const Real& a) {
    Real r(a.precision());
    mpfr_neg(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  Real& operator+=(const Real& b) { return *this = *this + b; }
  Real& operator-=(const Real& b) { return *this = *this - b; }
  Real& operator*=(const Real& b) { return *this = *this * b; }
  Real& operator/=(const Real& b) { return *this = *this / b; }

  friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_); }
  friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_); }
  friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_); }
  friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_); }
  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_); }

 private:
  using BinaryFn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);
  static Real binary(const Real& a, const Real& b, BinaryFn f) {
    Real r(std::max(a.precision(), b.precision()));
    f(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }

  mpfr_t v_;
};

namespace detail {
using UnaryFn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);
inline Real unary(const Real& a, UnaryFn f, mpfr_rnd_t rnd = MPFR_RNDN) {
  Real r(a.precision());
  f(r.get(), a.get(), rnd);
  return r;
}
}  // namespace detail

inline Real log(const Real& a) { return detail::unary(a, mpfr_log); }
inline Real exp(const Real& a) { return detail::unary(a, mpfr_exp); }
inline Real sqrt(const Real& a) { return detail::unary(a, mpfr_sqrt); }
inline Real log1p(const Real& a) { return detail::unary(a, mpfr_log1p); }
inline Real abs(const Real& a) { return detail::unary(a, mpfr_abs); }
inline Real pow(const Real& a, const Real& b) {
  Real r(std::max(a.precision(), b.precision()));
  mpfr_pow(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}
inline Real max(const Real& a, const Real& b) { return a < b ? b : a; }
inline Real min(const Real& a, const Real& b) { return b < a ? b : a; }

/// Natural log of a positive integer, from its bit length and leading bits.
/// Double accuracy; cheap for integers with millions of bits.
inline double log_double(const BigInt& z) {
  if (sgn(z) <= 0) throw std::domain_error("log of a non-positive integer");
  long exp2 = 0;
  double mant = mpz_get_d_2exp(&exp2, z.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
}

/// Natural log of a positive rational at the given precision.
inline Real log_real(const Rational& q, mpfr_prec_t prec = default_precision()) {
  if (sgn(q) <= 0) throw std::domain_error("log of a non-positive rational");
  Real num(q.get_num(), prec + 32), den(q.get_den(), prec + 32);
  Real out(prec);
  mpfr_log(num.get(), num.get(), MPFR_RNDN);
  mpfr_log(den.get(), den.get(), MPFR_RNDN);
  mpfr_sub(out.get(), num.get(), den.get(), MPFR_RNDN);
  return out;
}

/// Closed interval [lo, hi] guaranteed to contain a real quantity.
struct Enclosure {
  Real lo;
  Real hi;

  Enclosure(Real l, Real h) : lo(std::move(l)), hi(std::move(h)) {}
  static Enclosure point(const Rational& q, mpfr_prec_t prec) {
    return {Real(q, prec, MPFR_RNDD), Real(q, prec, MPFR_RNDU)};
  }
  static Enclosure point(long v, mpfr_prec_t prec) { return point(Rational(v), prec); }

  mpfr_prec_t precision() const { return lo.precision(); }
  Real mid() const {
    Real r(precision());
    mpfr_add(r.get(), lo.get(), hi.get(), MPFR_RNDN);
    mpfr_div_2ui(r.get(), r.get(), 1, MPFR_RNDN);
    return r;
  }
  bool finite() const { return lo.is_finite() && hi.is_finite(); }
  bool positive() const { return lo.sign() > 0; }
  bool negative() const { return hi.sign() < 0; }
  /// -1, +1 when the sign is certified, 0 when the enclosure straddles zero.
  int certified_sign() const { return positive() ? 1 : negative() ? -1 : 0; }
};

namespace encl {

inline Enclosure add(const Enclosure& a, const Enclosure& b) {
  mpfr_prec_t p = std::max(a.precision(), b.precision());
  Real lo(p), hi(p);
  mpfr_add(lo.get(), a.lo.get(), b.lo.get(), MPFR_RNDD);
  mpfr_add(hi.get(), a.hi.get(), b.hi.get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

inline Enclosure neg(const Enclosure& a) {
  Real lo(a.precision()), hi(a.precision());
  mpfr_neg(lo.get(), a.hi.get(), MPFR_RNDD);
  mpfr_neg(hi.get(), a.lo.get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

inline Enclosure sub(const Enclosure& a, const Enclosure& b) { return add(a, neg(b)); }

inline Enclosure mul(const Enclosure& a, const Enclosure& b) {
  mpfr_prec_t p = std::max(a.precision(), b.precision());
  const Real* xs[2] = {&a.lo, &a.hi};
  const Real* ys[2] = {&b.lo, &b.hi};
  Real lo = Real::inf(1, p), hi = Real::inf(-1, p);
  Real t(p);
  for (const Real* x : xs)
    for (const Real* y : ys) {
      mpfr_mul(t.get(), x->get(), y->get(), MPFR_RNDD);
      if (t < lo) lo = t;
      mpfr_mul(t.get(), x->get(), y->get(), MPFR_RNDU);
      if (t > hi) hi = t;
    }
  return {std::move(lo), std::move(hi)};
}

inline Enclosure reciprocal(const Enclosure& a) {
  if (a.certified_sign() == 0) throw std::domain_error("division by an enclosure containing zero");
  Real lo(a.precision()), hi(a.precision());
  mpfr_ui_div(lo.get(), 1, a.hi.get(), MPFR_RNDD);
  mpfr_ui_div(hi.get(), 1, a.lo.get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

inline Enclosure div(const Enclosure& a, const Enclosure& b) { return mul(a, reciprocal(b)); }

inline Enclosure monotone(const Enclosure& a, detail::UnaryFn f) {
  Real lo(a.precision()), hi(a.precision());
  f(lo.get(), a.lo.get(), MPFR_RNDD);
  f(hi.get(), a.hi.get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

inline Enclosure exp(const Enclosure& a) { return monotone(a, mpfr_exp); }
inline Enclosure log(const Enclosure& a) {
  if (!a.positive()) throw std::domain_error("log of an enclosure not certified positive");
  return monotone(a, mpfr_log);
}
inline Enclosure sqrt(const Enclosure& a) {
  if (a.lo.sign() < 0) throw std::domain_error("sqrt of an enclosure reaching below zero");
  return monotone(a, mpfr_sqrt);
}

/// log(1 - exp(t)) for t < 0; decreasing in t.
inline Enclosure log1m_exp(const Enclosure& t) {
  if (t.hi.sign() >= 0) throw std::domain_error("log1m_exp needs a certified negative argument");
  mpfr_prec_t p = t.precision();
  Real lo(p), hi(p);
  // lower bound: evaluate at t.hi with every step rounded so the result shrinks
  mpfr_expm1(lo.get(), t.hi.get(), MPFR_RNDU);  // expm1(t) in (-1, 0)
  mpfr_neg(lo.get(), lo.get(), MPFR_RNDD);       // -expm1(t) = 1 - e^t
  mpfr_log(lo.get(), lo.get(), MPFR_RNDD);
  mpfr_expm1(hi.get(), t.lo.get(), MPFR_RNDD);
  mpfr_neg(hi.get(), hi.get(), MPFR_RNDU);
  mpfr_log(hi.get(), hi.get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

/// log(1 + exp(t)); increasing in t.
inline Enclosure log1p_exp(const Enclosure& t) {
  mpfr_prec_t p = t.precision();
  Real lo(p), hi(p);
  mpfr_exp(lo.get(), t.lo.get(), MPFR_RNDD);
  mpfr_log1p(lo.get(), lo.get(), MPFR_RNDD);
  mpfr_exp(hi.get(), t.hi.get(), MPFR_RNDU);
  mpfr_log1p(hi.get(), hi.get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

/// Enclosure of x^p for x > 0 and an exact rational exponent.
inline Enclosure pow(const Enclosure& x, const Rational& p) {
  if (!x.positive()) throw std::domain_error("power of an enclosure not certified positive");
  Enclosure e = Enclosure::point(p, x.precision());
  Enclosure t = mul(log(x), e);
  return exp(t);
}

inline Enclosure log_of(const Rational& q, mpfr_prec_t prec) {
  if (sgn(q) <= 0) throw std::domain_error("log of a non-positive rational");
  // the +2 guard bits let mpfr_set_z stay exact for small integers
  Enclosure num{Real(q.get_num(), prec + 2, MPFR_RNDD), Real(q.get_num(), prec + 2, MPFR_RNDU)};
  Enclosure den{Real(q.get_den(), prec + 2, MPFR_RNDD), Real(q.get_den(), prec + 2, MPFR_RNDU)};
  return sub(log(num), log(den));
}

}  // namespace encl

}  // namespace pierce
