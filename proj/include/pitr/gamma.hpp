#pragma once

// Gamma at rational points: shift the argument until Stirling's series with
// exact Bernoulli coefficients carries the target precision, then divide the
// shift product back out exactly.  sin(pi q) with exact rational reduction.

#include "pitr/exact.hpp"
#include "pitr/mpcore.hpp"

#include <mutex>
#include <vector>

namespace pitr {

// B_0, B_1, B_2, ... exact (B_1 = -1/2)
inline const std::vector<Rat>& bernoulli_upto(size_t m) {
  static std::vector<Rat> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  if (cache.size() > m) return cache;
  if (cache.empty()) cache.push_back(Rat(1));
  while (cache.size() <= m) {
    size_t k = cache.size();
    // sum_{j=0}^{k} C(k+1, j) B_j = 0
    Rat s(0);
    for (size_t j = 0; j < k; ++j)
      s += Rat(binomial_int(k + 1, j)) * cache[j];
    Rat b = -s / Rat(binomial_int(k + 1, k));
    b.canonicalize();
    cache.push_back(b);
  }
  return cache;
}

// ln Gamma(z) for an exact rational z >= threshold, via Stirling with the
// remainder bounded by the first omitted term (valid for real z > 0)
inline HReal ln_gamma_stirling(const Rat& z, const PrecisionCtx& ctx) {
  long wp = ctx.work_bits() + 32;
  PrecisionCtx wctx(wp, 16);
  HReal zh = HReal::from_rat(z, wctx);
  HReal lnz = log_h(zh);
  HReal half = HReal::from_rat(make_rat(1, 2), wctx);
  HReal acc = (zh - half) * lnz - zh;
  HReal pi = pi_const(wctx);
  HReal two = HReal::from_long(2, wctx);
  acc = acc + half * log_h(two * pi);
  // sum B_2j / (2j (2j-1) z^(2j-1)); terms shrink, then grow: stop at min
  Rat zinv = 1 / z;
  Rat z2inv = zinv * zinv;
  Rat p = zinv;  // z^-(2j-1)
  double prev_mag = 1e300;
  for (size_t j = 1;; ++j) {
    const auto& B = bernoulli_upto(2 * j + 2);
    Rat term = B[2 * j] / make_rat(static_cast<long>(2 * j * (2 * j - 1))) * p;
    HReal th = HReal::from_rat(term, wctx);
    double mag = th.log2_abs();
    if (mag > prev_mag) {
      // divergence reached before target: shift threshold was too low
      throw std::runtime_error("ln_gamma_stirling: asymptotic floor too high");
    }
    acc = acc + th;
    p *= z2inv;
    // bound the remainder by the next term's magnitude
    Rat nxt = B[2 * j + 2] / make_rat(static_cast<long>((2 * j + 2) * (2 * j + 1))) * p;
    HReal nh = HReal::from_rat(nxt, wctx);
    if (nh.log2_abs() < -(ctx.work_bits() + 16)) {
      acc.bump_err(nh.log2_abs());
      break;
    }
    prev_mag = mag;
    if (j > 4000) throw std::runtime_error("ln_gamma_stirling: too many terms");
  }
  return acc;
}

// Gamma(q) for rational q, poles rejected.  Negative non-integers go through
// the reflection formula.
inline HReal gamma_rat(const Rat& q, const PrecisionCtx& ctx);

// sin(pi q) with exact reduction of q into [0, 1/2] first (no cancellation in
// the float argument)
inline HReal sin_pi_rat(const Rat& q, const PrecisionCtx& ctx) {
  // reduce mod 2
  Rat r = q;
  Int fl;
  mpz_fdiv_q(fl.get_mpz_t(), Int(r.get_num()).get_mpz_t(), Int(r.get_den()).get_mpz_t());
  r -= Rat(fl);  // now 0 <= r < 1... (mod 1), sign flip if we dropped an odd part
  bool neg = mpz_odd_p(fl.get_mpz_t());
  // fold [1/2, 1) -> (0, 1/2]
  if (r > make_rat(1, 2)) r = 1 - r;
  long wp = ctx.work_bits() + 16;
  PrecisionCtx wctx(wp, 16);
  HReal x = HReal::from_rat(r, wctx) * pi_const(wctx);
  HReal s(wp);
  mpfr_sin(s.raw(), x.raw(), MPFR_RNDN);
  // |d sin| <= |d x|
  s.set_err_log2(log2_add(x.err_log2(), s.ulp_log2() + 2));
  if (neg) s = -s;
  return s;
}

inline HReal gamma_rat(const Rat& q, const PrecisionCtx& ctx) {
  if (q.get_den() == 1 && sgn(q) <= 0)
    throw std::domain_error("gamma_rat: pole at zero / negative integer");
  if (sgn(q) < 0) {
    // Gamma(q) = pi / (sin(pi q) Gamma(1-q))
    PrecisionCtx wctx(ctx.work_bits() + 32, 16);
    HReal pi = pi_const(wctx);
    return pi / (sin_pi_rat(q, wctx) * gamma_rat(1 - q, wctx));
  }
  // shift until Stirling converges comfortably: z >= (bits+64)/9 + 2
  long threshold = std::max<long>(12, (ctx.work_bits() + 64) / 9 + 2);
  Rat z = q;
  unsigned long shift = 0;
  while (z < threshold) {
    z += 1;
    ++shift;
  }
  HReal lg = ln_gamma_stirling(z, ctx);
  HReal g = exp_h(lg);
  if (shift > 0) {
    Rat prod = pochhammer(q, shift);
    g = g / HReal::from_rat(prod, PrecisionCtx(g.prec(), 16));
  }
  return g;
}

}
