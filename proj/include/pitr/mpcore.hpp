#pragma once

// Arbitrary-precision real kernel on top of mpfr, with conservative forward
// error tracking.  Every HReal carries an absolute error radius as a log2
// exponent; -inf means exact.  The bound is propagated pessimistically (the
// tracked bound only ever over-estimates), which is all the verification
// layers need: they work with ~50 digits of headroom.

#include <cstdio>

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace pitr {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(long num, long den = 1) {
  Rat q(num, den);
  q.canonicalize();
  return q;
}

struct PrecisionCtx {
  long precision_bits;
  long guard_bits;

  explicit PrecisionCtx(long bits, long guard = 32)
      : precision_bits(bits), guard_bits(guard) {
    if (bits < 64) throw std::invalid_argument("PrecisionCtx: need >= 64 bits");
    if (guard < 1) throw std::invalid_argument("PrecisionCtx: guard >= 1");
  }

  long work_bits() const { return precision_bits + guard_bits; }

  // enough working precision to certify `digits` decimal digits with room for
  // accumulated rounding across ~10^5 operations
  static PrecisionCtx for_digits(long digits, long extra_bits = 64) {
    long bits = static_cast<long>(digits * 3.3219280948873626) + extra_bits;
    return PrecisionCtx(std::max<long>(bits, 64));
  }
};

inline constexpr double kExactErr = -std::numeric_limits<double>::infinity();
inline constexpr double kTinyLog2 = -1.0e18;  // stand-in for log2 of zero

// log2(2^a + 2^b), saturating
inline double log2_add(double a, double b) {
  if (a == kExactErr || a <= kTinyLog2) return b;
  if (b == kExactErr || b <= kTinyLog2) return a;
  double hi = std::max(a, b), lo = std::min(a, b);
  double d = lo - hi;
  if (d < -60) return hi;
  return hi + std::log2(1.0 + std::exp2(d));
}

class HReal {
 public:
  HReal() : err_(kExactErr) { mpfr_init2(v_, 64); mpfr_set_zero(v_, 1); }

  explicit HReal(long prec) : err_(kExactErr) {
    mpfr_init2(v_, std::max<long>(prec, MPFR_PREC_MIN));
    mpfr_set_zero(v_, 1);
  }

  HReal(const HReal& o) : err_(o.err_) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }

  HReal(HReal&& o) noexcept : err_(o.err_) {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }

  HReal& operator=(const HReal& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
      err_ = o.err_;
    }
    return *this;
  }

  HReal& operator=(HReal&& o) noexcept {
    if (this != &o) { mpfr_swap(v_, o.v_); err_ = o.err_; }
    return *this;
  }

  ~HReal() { mpfr_clear(v_); }

  static HReal from_long(long x, long prec_bits) {
    HReal r(prec_bits);
    mpfr_set_si(r.v_, x, MPFR_RNDN);
    r.err_ = kExactErr;  // prec_bits >= 64 always holds a long exactly
    return r;
  }
  static HReal from_long(long x, const PrecisionCtx& ctx) {
    return from_long(x, ctx.work_bits());
  }

  static HReal from_rat(const Rat& q, long prec_bits) {
    HReal r(prec_bits);
    mpfr_set_q(r.v_, q.get_mpq_t(), MPFR_RNDN);
    r.err_ = r.ulp_log2();
    return r;
  }
  static HReal from_rat(const Rat& q, const PrecisionCtx& ctx) {
    return from_rat(q, ctx.work_bits());
  }

  static HReal from_int(const Int& z, long prec_bits) {
    HReal r(prec_bits);
    mpfr_set_z(r.v_, z.get_mpz_t(), MPFR_RNDN);
    r.err_ = r.ulp_log2();
    return r;
  }
  static HReal from_int(const Int& z, const PrecisionCtx& ctx) {
    return from_int(z, ctx.work_bits());
  }

  static HReal zero(long prec_bits) { return HReal(prec_bits); }
  static HReal zero(const PrecisionCtx& ctx) { return HReal(ctx.work_bits()); }

  mpfr_srcptr raw() const { return v_; }
  mpfr_ptr raw() { return v_; }
  long prec() const { return mpfr_get_prec(v_); }
  double err_log2() const { return err_; }
  void set_err_log2(double e) { err_ = e; }
  void bump_err(double e) { err_ = log2_add(err_, e); }

  bool is_zero_value() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  // log2 |value|, within 1; very negative when value == 0
  double log2_abs() const {
    if (mpfr_zero_p(v_)) return kTinyLog2;
    return static_cast<double>(mpfr_get_exp(v_));
  }

  double ulp_log2() const {
    if (mpfr_zero_p(v_)) return kTinyLog2;
    return static_cast<double>(mpfr_get_exp(v_)) - prec() + 1;
  }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  // |this| <= 2^bound for certain (value magnitude plus the error radius)
  double mag_upper_log2() const { return log2_add(log2_abs(), err_); }

  friend HReal operator+(const HReal& a, const HReal& b) {
    HReal r(std::max(a.prec(), b.prec()));
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    r.err_ = log2_add(log2_add(a.err_, b.err_), r.ulp_log2());
    return r;
  }

  friend HReal operator-(const HReal& a, const HReal& b) {
    HReal r(std::max(a.prec(), b.prec()));
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    r.err_ = log2_add(log2_add(a.err_, b.err_), r.ulp_log2());
    return r;
  }

  friend HReal operator-(const HReal& a) {
    HReal r(a.prec());
    mpfr_neg(r.v_, a.v_, MPFR_RNDN);
    r.err_ = a.err_;
    return r;
  }

  friend HReal operator*(const HReal& a, const HReal& b) {
    HReal r(std::max(a.prec(), b.prec()));
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    double e = log2_add(a.err_ + b.log2_abs(), b.err_ + a.log2_abs());
    e = log2_add(e, a.err_ + b.err_);
    r.err_ = log2_add(e, r.ulp_log2());
    return r;
  }

  friend HReal operator/(const HReal& a, const HReal& b) {
    if (mpfr_zero_p(b.v_)) throw std::domain_error("HReal: divide by zero");
    // require the divisor to be certainly nonzero
    if (b.err_ != kExactErr && b.err_ >= b.log2_abs() - 1)
      throw std::domain_error("HReal: divisor not separated from zero");
    HReal r(std::max(a.prec(), b.prec()));
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    double lb = b.log2_abs();
    double e = log2_add(a.err_ - lb, a.log2_abs() + b.err_ - 2 * lb);
    r.err_ = log2_add(e + 1.0, r.ulp_log2());
    return r;
  }

  HReal abs() const {
    HReal r(prec());
    mpfr_abs(r.v_, v_, MPFR_RNDN);
    r.err_ = err_;
    return r;
  }

  HReal sqrt() const {
    if (sign() < 0) throw std::domain_error("HReal: sqrt of negative");
    HReal r(prec());
    mpfr_sqrt(r.v_, v_, MPFR_RNDN);
    // |d sqrt| = err / (2 sqrt(x)); guard with +1
    double e = (mpfr_zero_p(v_)) ? err_ : err_ - log2_abs() / 2 - 1 + 1;
    r.err_ = log2_add(e, r.ulp_log2());
    return r;
  }

  HReal pow_si(long n) const {
    HReal r(prec());
    mpfr_pow_si(r.v_, v_, n, MPFR_RNDN);
    double la = log2_abs();
    double e = std::log2(std::max<double>(std::labs(n), 1)) + (n - 1) * la + err_;
    if (err_ == kExactErr) e = kExactErr;
    r.err_ = log2_add(e, r.ulp_log2());
    return r;
  }

  HReal rootn(unsigned long n) const {
    if (sign() < 0 && n % 2 == 0)
      throw std::domain_error("HReal: even root of negative");
    HReal r(prec());
    mpfr_rootn_ui(r.v_, v_, n, MPFR_RNDN);
    double e = (err_ == kExactErr || mpfr_zero_p(v_))
                   ? err_
                   : err_ - log2_abs() + r.log2_abs() - std::log2((double)n) + 1;
    r.err_ = log2_add(e, r.ulp_log2());
    return r;
  }

  // x^(num/den) for x > 0
  HReal pow_rat(const Rat& q) const {
    if (sign() <= 0) {
      if (is_zero_value() && sgn(q) > 0) return *this;
      throw std::domain_error("HReal: rational power needs positive base");
    }
    long num = static_cast<long>(mpz_get_si(q.get_num_mpz_t()));
    unsigned long den = mpz_get_ui(q.get_den_mpz_t());
    return rootn(den).pow_si(num);
  }

  // certified comparison: true when |this - other| is provably below 2^tol_log2
  bool close_to(const HReal& o, double tol_log2) const {
    HReal d = (*this - o).abs();
    double bound = log2_add(d.log2_abs(), d.err_);
    return bound < tol_log2;
  }

  // decimal digits (after the point) certified by the error bound
  long certified_decimals() const {
    if (err_ == kExactErr) return 1000000;
    return static_cast<long>(std::floor(-err_ * 0.30102999566398120));
  }

  std::string to_decimal(long digits) const {
    long shown = digits;
    if (err_ != kExactErr) shown = std::min(shown, std::max<long>(certified_decimals(), 1));
    char* s = nullptr;
    int n = mpfr_asprintf(&s, "%.*Rf", static_cast<int>(shown), v_);
    std::string out = (n >= 0 && s) ? std::string(s) : std::string("?");
    if (s) mpfr_free_str(s);
    return out;
  }

 private:
  mpfr_t v_;
  double err_;
};

// ---- kernel constants and elementary evaluations ----

// atan(1/q) by its Taylor series, digit-chasing the alternating tail
inline HReal atan_inv(long q, const PrecisionCtx& ctx) {
  long wp = ctx.work_bits() + 16;
  HReal acc(wp), term(wp), q2(wp);
  mpfr_set_si(q2.raw(), q, MPFR_RNDN);
  mpfr_sqr(q2.raw(), q2.raw(), MPFR_RNDN);
  mpfr_set_si(term.raw(), q, MPFR_RNDN);
  mpfr_si_div(term.raw(), 1, term.raw(), MPFR_RNDN);  // 1/q
  mpfr_set_zero(acc.raw(), 1);
  long k = 0;
  HReal t(wp);
  while (true) {
    mpfr_div_si(t.raw(), term.raw(), 2 * k + 1, MPFR_RNDN);
    if ((k & 1) == 0)
      mpfr_add(acc.raw(), acc.raw(), t.raw(), MPFR_RNDN);
    else
      mpfr_sub(acc.raw(), acc.raw(), t.raw(), MPFR_RNDN);
    if (mpfr_get_exp(t.raw()) < -(wp + 8)) break;
    mpfr_div(term.raw(), term.raw(), q2.raw(), MPFR_RNDN);
    ++k;
    if (k > 8 * wp) throw std::runtime_error("atan_inv: no convergence");
  }
  // tail: |next term|; rounding: ~k operations at working precision
  double rounding = std::log2(std::max<long>(4 * k, 8)) - wp;
  acc.set_err_log2(log2_add(static_cast<double>(-(wp + 8)), rounding));
  return acc;
}

// pi by a Machin-type formula, independent of every series under test:
// pi/4 = 2*atan(1/3) + atan(1/7)
inline HReal pi_const(const PrecisionCtx& ctx) {
  HReal a = atan_inv(3, ctx), b = atan_inv(7, ctx);
  HReal two = HReal::from_long(2, ctx), four = HReal::from_long(4, ctx);
  return four * (two * a + b);
}

inline HReal sqrt_rat(const Rat& q, const PrecisionCtx& ctx) {
  if (sgn(q) <= 0) throw std::domain_error("sqrt_rat: need q > 0");
  return HReal::from_rat(q, ctx).sqrt();
}

// exp and log with the library rounding folded into the tracked bound
inline HReal exp_h(const HReal& x) {
  HReal r(x.prec());
  mpfr_exp(r.raw(), x.raw(), MPFR_RNDN);
  double e = (x.err_log2() == kExactErr) ? kExactErr : x.err_log2() + r.log2_abs() + 1;
  r.set_err_log2(log2_add(e, r.ulp_log2() + 2));
  return r;
}

inline HReal log_h(const HReal& x) {
  if (x.sign() <= 0) throw std::domain_error("log_h: need x > 0");
  HReal r(x.prec());
  mpfr_log(r.raw(), x.raw(), MPFR_RNDN);
  double e = (x.err_log2() == kExactErr) ? kExactErr : x.err_log2() - x.log2_abs() + 1;
  r.set_err_log2(log2_add(e, r.ulp_log2() + 2));
  return r;
}

}
