#pragma once
// Stolz-Cesaro quotient engine with Richardson acceleration over geometric
// index nodes, plus the exact sine-product and Gamma-product limit constants
// used by the translation pipeline.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "pitr/closed_form.hpp"
#include "pitr/exact.hpp"
#include "pitr/mpcore.hpp"
#include "pitr/quadext.hpp"
#include "pitr/sequences.hpp"
#include "pitr/series_eval.hpp"

namespace pitr {

// Data for the termwise limit gamma = lim c_n w(n) r^n n!/(alpha)_n.
// r is the singular radius of sum c_n x^n (exact in Q(sqrt d)); alpha is the
// local exponent entering through the Pochhammer normalization n!/(alpha)_n,
// which behaves like Gamma(alpha) n^{1-alpha} at infinity.
struct SCProblem {
  SeriesSeq seq;
  QuadExt r = QuadExt(1);
  Rat alpha = make_rat(1, 2);
  WeightPoly weight = WeightPoly{{QuadExt(1)}};
};

struct AsymEstimate {
  HReal value;
  int richardson_order = 0;
  long terms_used = 0;
  // agreement depth, in decimal digits, between the last two extrapolation
  // columns; >= 1 on success
  long stability_digits = 0;
  bool target_reached = true;
};

// Quotients q_n = c_n w(n) r^n n!/(alpha)_n for n = 1..N; entry i holds the
// quotient at n = i+1.  The term core c_n w(n) n!/(alpha)_n is kept exact and
// rendered once per term.  Powers of a rational radius stay exact too; powers
// of an irrational radius are accumulated in floating point, since the exact
// field representation of r^n is a difference of conjugate parts growing like
// |conj(r)/r|^n and loses a fixed number of bits per term to cancellation.
inline std::vector<HReal> sc_quotients(const SCProblem& p, long n_terms,
                                       const PrecisionCtx& ctx,
                                       const std::atomic<bool>* stop = nullptr) {
  if (n_terms < 1) throw std::invalid_argument("sc_quotients: need N >= 1");
  if (sign(p.r) <= 0) throw std::domain_error("sc_quotients: radius must be positive");
  if (!(p.alpha > 0)) throw std::domain_error("sc_quotients: alpha must be positive");
  std::vector<Rat> c = p.seq.terms(static_cast<size_t>(n_terms) + 1);
  std::vector<HReal> q;
  q.reserve(static_cast<size_t>(n_terms));
  bool rat_radius = p.r.b == 0;
  PrecisionCtx wctx(ctx.work_bits() + 64);
  QuadExt rpow(1);
  HReal r_f = eval_quad(p.r, wctx);
  HReal rpow_f = HReal::from_long(1, wctx);
  Rat fac(1);  // n!/(alpha)_n, updated incrementally
  for (long n = 1; n <= n_terms; ++n) {
    if (stop && (n & 0xff) == 0 && stop->load()) throw std::runtime_error("sc_quotients: cancelled");
    fac *= Rat(n) / (p.alpha + Rat(n - 1));
    QuadExt core = p.weight.eval(QuadExt(n));
    core = core * QuadExt(c[static_cast<size_t>(n)] * fac);
    if (rat_radius) {
      rpow = rpow * p.r;
      q.push_back(eval_quad(core * rpow, ctx));
    } else {
      rpow_f = rpow_f * r_f;
      q.push_back(eval_quad(core, wctx) * rpow_f);
    }
  }
  return q;
}

// One Richardson sweep on nodes n0, 2*n0, 4*n0, ...: with values on a
// geometric ladder the 1/n-expansion kills one power per column via
// T[j][k+1] = T[j+1][k] + (T[j+1][k] - T[j][k]) / (2^{k+1} - 1).
inline AsymEstimate richardson(const std::vector<HReal>& q, int order) {
  if (order < 1) throw std::invalid_argument("richardson: order must be >= 1");
  long len = static_cast<long>(q.size());
  if (len <= 2 * order)
    throw std::invalid_argument("richardson: need more than 2*order quotients");
  if (len < (1L << order))
    throw std::invalid_argument("richardson: need at least 2^order quotients for geometric nodes");
  long n0 = len >> order;
  std::vector<HReal> col;
  for (int j = 0; j <= order; ++j)
    col.push_back(q[static_cast<size_t>(n0 * (1L << j) - 1)]);
  HReal prev_entry;  // T[1][order-1], the node feeding the apex from below
  for (int k = 1; k <= order; ++k) {
    double denom = std::pow(2.0, k) - 1.0;
    HReal dh = HReal::from_long(static_cast<long>(denom), col[0].prec());
    std::vector<HReal> next;
    for (size_t j = 0; j + 1 < col.size(); ++j)
      next.push_back(col[j + 1] + (col[j + 1] - col[j]) / dh);
    if (k == order) prev_entry = col[1];
    col = std::move(next);
  }
  AsymEstimate est;
  est.value = col[0];
  est.richardson_order = order;
  est.terms_used = n0 << order;
  HReal diff = (col[0] - prev_entry).abs();
  if (diff.is_zero_value()) {
    est.stability_digits =
        static_cast<long>(static_cast<double>(col[0].prec()) * 0.30103);
  } else {
    double rel = diff.log2_abs() - col[0].abs().log2_abs();
    if (col[0].is_zero_value()) rel = diff.log2_abs();
    if (rel > -2.0)  // last correction not small against the value itself
      throw std::runtime_error("richardson: sequence not 1/n-regular");
    est.stability_digits = static_cast<long>(std::floor(-rel * 0.30103));
  }
  if (est.stability_digits < 1) est.stability_digits = 1;
  return est;
}

// Drives sc_quotients + richardson until the extrapolation stabilizes to
// target_digits or the term budget runs out (result flagged, not thrown).
inline AsymEstimate sc_limit(const SCProblem& p, long target_digits,
                             long term_budget = 10000, int order = 6,
                             const std::atomic<bool>* stop = nullptr) {
  if (target_digits < 1) throw std::invalid_argument("sc_limit: target_digits must be >= 1");
  PrecisionCtx ctx(64 + static_cast<long>((target_digits + 30) * 3.322));
  long n = std::min<long>(term_budget, 1 << 10);
  if (n <= 2 * order) n = std::min<long>(term_budget, 4L << order);
  AsymEstimate est;
  while (true) {
    std::vector<HReal> q = sc_quotients(p, n, ctx, stop);
    est = richardson(q, order);
    if (est.stability_digits >= target_digits) {
      est.target_reached = true;
      return est;
    }
    if (n >= term_budget) break;
    n = std::min(term_budget, 2 * n);
  }
  est.target_reached = false;
  return est;
}

// Exact value of lim of m-fold Pochhammer quotient products with parameters
// s_j in (0,1): prod_j sin(pi s_j) / pi^m, as a closed-form tree.
inline ClosedForm theorem1_limit(const std::vector<Rat>& s) {
  if (s.empty()) throw std::domain_error("theorem1_limit: empty parameter list");
  for (const Rat& sj : s)
    if (!(sj > 0 && sj < 1))
      throw std::domain_error("theorem1_limit: parameters must lie in (0,1)");
  ClosedForm num = cf_rat(make_rat(1));
  for (const Rat& sj : s) num = cf_prod({num, cf_sin_pi(sj)});
  return cf_quot(num, cf_pi_pow(2 * static_cast<long>(s.size())));
}

// Exact boundary constant for a series with a strictly smallest upper
// parameter a_m: prod_{j != m} Gamma(a_j - a_m)/Gamma(a_j) times
// prod_j Gamma(b_j)/Gamma(b_j - a_m), the implicit lower parameter 1
// included.  A tie for the smallest upper parameter is a double pole and is
// refused.
inline ClosedForm theorem2_limit(const HGParams& p) {
  size_t m = 0;
  for (size_t j = 1; j < p.upper.size(); ++j)
    if (p.upper[j] < p.upper[m]) m = j;
  for (size_t j = 0; j < p.upper.size(); ++j) {
    if (j == m) continue;
    if (p.upper[j] == p.upper[m])
      throw std::domain_error("theorem2_limit: tied smallest upper parameter");
    if (!(p.upper[j] > 0))
      throw std::domain_error("theorem2_limit: parameters must be positive");
  }
  Rat am = p.upper[m];
  if (!(am > 0))
    throw std::domain_error("theorem2_limit: parameters must be positive");
  ClosedForm acc = cf_rat(make_rat(1));
  for (size_t j = 0; j < p.upper.size(); ++j) {
    if (j == m) continue;
    acc = cf_prod({acc, cf_quot(cf_gamma(p.upper[j] - am), cf_gamma(p.upper[j]))});
  }
  std::vector<Rat> lowers = p.lower;
  lowers.push_back(make_rat(1));
  for (const Rat& b : lowers) {
    if (!(b > 0)) throw std::domain_error("theorem2_limit: parameters must be positive");
    acc = cf_prod({acc, cf_quot(cf_gamma(b), cf_gamma(b - am))});
  }
  return acc;
}

}  // namespace pitr
