#pragma once
#include <pitr/sequences.hpp>

#include <cmath>

namespace pitr {

// weight polynomial in n with coefficients from a real quadratic field
using WeightPoly = Poly<QuadExt>;

inline WeightPoly weight_linear(const QuadExt& c0, const QuadExt& c1) {
  return WeightPoly(std::vector<QuadExt>{c0, c1});
}

enum class SeqKind {
  kHyper,
  kQuartic,
  kLevel7,
  kConvEx5,
  kNtrC,
  kCubicL14,
  kRecurrence
};

// coefficient stream plus a certified bound on |a_{n+1}/a_n|; the bound is
// validated term by term while summing, so a bad declaration fails loudly
// instead of silently corrupting a tail estimate
struct SeriesSeq {
  SeqKind kind = SeqKind::kHyper;
  HGParams hg;
  PRecurrence rec;
  Rat ratio_cap = Rat(1);

  static SeriesSeq hyper(HGParams p) {
    SeriesSeq s;
    s.kind = SeqKind::kHyper;
    // pair parameters in sorted order; each upper at most its partner
    // guarantees |a_{n+1}/a_n| <= 1 for every n
    std::vector<Rat> up = p.upper, lo = p.lower;
    lo.push_back(Rat(1));  // the implicit n!
    if (up.size() > lo.size())
      throw std::domain_error("series: more upper than lower parameters");
    std::sort(up.begin(), up.end());
    std::sort(lo.begin(), lo.end());
    size_t off = lo.size() - up.size();
    for (size_t i = 0; i < up.size(); ++i)
      if (up[i] > lo[i + off])
        throw std::domain_error("series: coefficient ratio not bounded by 1");
    s.hg = std::move(p);
    s.ratio_cap = Rat(1);
    return s;
  }

  static SeriesSeq named(SeqKind k) {
    SeriesSeq s;
    s.kind = k;
    switch (k) {
      case SeqKind::kQuartic: s.ratio_cap = Rat(16); break;
      case SeqKind::kLevel7: s.ratio_cap = Rat(27); break;
      case SeqKind::kConvEx5: s.ratio_cap = Rat(1); break;
      case SeqKind::kNtrC: s.ratio_cap = make_rat(9, 10); break;
      case SeqKind::kCubicL14: s.ratio_cap = Rat(15); break;
      default: throw std::domain_error("series: not a named kind");
    }
    return s;
  }

  static SeriesSeq recurrence(PRecurrence r, Rat cap) {
    SeriesSeq s;
    s.kind = SeqKind::kRecurrence;
    s.rec = std::move(r);
    s.ratio_cap = std::move(cap);
    return s;
  }

  std::vector<Rat> terms(size_t n) const {
    switch (kind) {
      case SeqKind::kHyper: return hg_coeffs(hg, n);
      case SeqKind::kQuartic: return quartic_binomial(n);
      case SeqKind::kLevel7: return level7_seq(n);
      case SeqKind::kConvEx5: return conv_seq_ex5(n);
      case SeqKind::kNtrC: return ntr_c_seq(n);
      case SeqKind::kCubicL14: return cubic_l14_seq(n);
      case SeqKind::kRecurrence: return prec_terms(rec, n);
    }
    throw std::logic_error("series: bad kind");
  }
};

struct EvalReport {
  HReal value;
  long terms_used = 0;
  double tail_bound = kTinyLog2;  // log2 of the certified tail magnitude
};

// |first omitted| / (1 - q), in log2
inline double tail_bound_geometric(double omitted_log2, double q) {
  if (q <= 0.0) return omitted_log2;
  if (q >= 1.0) throw std::domain_error("tail bound needs q < 1");
  return omitted_log2 - std::log2(1.0 - q);
}

namespace detail {

// sum_{m>=1} (N+m)^i q^m for i = 0..3, as upper bounds
inline void poly_geom_sums(const HReal& q, long n_from, int max_deg,
                           const PrecisionCtx& ctx, HReal out[4]) {
  HReal one = HReal::from_long(1, ctx);
  HReal r = one - q;
  HReal s0 = q / r;                       // sum q^m
  HReal s1 = q / (r * r);                 // sum m q^m
  HReal s2 = q * (one + q) / (r * r * r); // sum m^2 q^m
  HReal s3 = q * (one + HReal::from_long(4, ctx) * q + q * q) /
             (r * r * r * r);             // sum m^3 q^m
  HReal N = HReal::from_long(n_from, ctx);
  out[0] = s0;
  if (max_deg >= 1) out[1] = N * s0 + s1;
  if (max_deg >= 2) out[2] = N * N * s0 + HReal::from_long(2, ctx) * N * s1 + s2;
  if (max_deg >= 3)
    out[3] = N * N * N * s0 + HReal::from_long(3, ctx) * (N * N * s1 + N * s2) + s3;
}

}  // namespace detail

// partial sum of sum_n a_n w(n) z^n with a certified geometric tail bound;
// retries at higher precision until the requested digits are certified
inline EvalReport eval_series(const SeriesSeq& seq, const WeightPoly& w,
                              const QuadExt& z, long target_digits) {
  if (w.degree() > 3) throw std::domain_error("series: weight degree above 3");
  PrecisionCtx probe(64, 16);
  double qd = std::abs(eval_quad(z, probe).to_double()) *
              std::abs(HReal::from_rat(seq.ratio_cap, probe).to_double());
  if (!(qd < 1.0))
    throw std::domain_error("series: argument outside certified radius");
  double digits_per_term = -std::log10(qd);
  long n_est = static_cast<long>((target_digits + 12) / digits_per_term) + 48;

  long extra_bits = 96;
  for (int round = 0; round < 6; ++round) {
    PrecisionCtx ctx(static_cast<long>((target_digits + 8) * 3.3219) + extra_bits, 32);
    std::vector<Rat> a = seq.terms(n_est + 1);
    // validate the declared ratio bound on everything we computed; a zero
    // term may only be followed by zeros under that bound
    for (long n = 0; n < n_est; ++n) {
      if (a[n] == 0) {
        if (a[n + 1] != 0)
          throw std::domain_error("series: zero term breaks the ratio bound at n=" +
                                  std::to_string(n));
        continue;
      }
      if (abs(a[n + 1]) > seq.ratio_cap * abs(a[n]))
        throw std::domain_error("series: declared ratio bound violated at n=" +
                                std::to_string(n));
    }
    HReal zh = eval_quad(z, ctx);
    HReal acc = HReal::zero(ctx);
    HReal zp = HReal::from_long(1, ctx);
    HReal zpN = HReal::from_long(1, ctx);  // z^n_est at loop end
    for (long n = 0; n <= n_est; ++n) {
      if (n == n_est) zpN = zp;
      if (a[n] != 0) {
        HReal term = HReal::from_rat(a[n], ctx) * zp;
        QuadExt wq = w.eval(QuadExt(n));
        acc = acc + term * eval_quad(wq, ctx);
      }
      zp = zp * zh;
    }
    // tail: |a_n z^n| <= |a_N z^N| q^(n-N) for n > N := n_est
    HReal q = HReal::from_rat(seq.ratio_cap, ctx) * zh.abs();
    HReal head = HReal::from_rat(abs(a[n_est]), ctx) * zpN.abs();
    HReal sums[4];
    detail::poly_geom_sums(q, n_est, static_cast<int>(std::max(0l, w.degree())),
                           ctx, sums);
    HReal wtail = HReal::zero(ctx);
    for (long i = 0; i <= w.degree(); ++i) {
      QuadExt ci = w.coeff(static_cast<size_t>(i));
      HReal mag = eval_quad(ci, ctx).abs();
      wtail = wtail + mag * sums[i];
    }
    HReal tail = head * wtail;
    double tail_log2 = tail.is_zero_value() ? kTinyLog2
                                            : tail.log2_abs() + 1.0;
    HReal value = acc;
    value.bump_err(tail_log2);
    EvalReport rep{std::move(value), n_est + 1, tail_log2};
    if (rep.value.certified_decimals() >= target_digits) return rep;
    // not enough certified digits: more terms and more precision
    n_est = n_est + n_est / 2 + 32;
    extra_bits *= 2;
    if (round == 5) return rep;
  }
  throw std::logic_error("series: unreachable");
}

// acceleration for alternating unit-argument series sum (-1)^n p_n with
// p_n >= 0: Chebyshev-style weights with exact rational arithmetic
inline Rat cvz_alternating(const std::vector<Rat>& p, size_t n) {
  if (n < 8) throw std::domain_error("accelerator: depth too small");
  if (p.size() < n) throw std::domain_error("accelerator: not enough terms");
  // d = e_n / 2 with e_0 = 2, e_1 = 6, e_m = 6 e_{m-1} - e_{m-2}
  Int e0(2), e1(6);
  for (size_t m = 2; m <= n; ++m) {
    Int e2 = 6 * e1 - e0;
    e0 = e1;
    e1 = e2;
  }
  Int d = e1 / 2;
  Rat b(-1), c = Rat(-Rat(d)), s(0);
  for (size_t k = 0; k < n; ++k) {
    c = b - c;
    s += c * p[k];
    long kl = static_cast<long>(k), nl = static_cast<long>(n);
    b *= make_rat(2 * (kl + nl) * (kl - nl), (2 * kl + 1) * (kl + 1));
  }
  return s / Rat(d);
}

// evaluate sum a_n w(n) (-1)^n at unit argument by acceleration, with an
// a-posteriori error estimate from a deeper run
inline EvalReport eval_alternating_unit(const SeriesSeq& seq, const WeightPoly& w,
                                        long target_digits) {
  size_t n = static_cast<size_t>((target_digits * 10 + 45) / 7) + 24;
  size_t n2 = n + 24;
  std::vector<Rat> a = seq.terms(n2);
  std::vector<Rat> p(n2);
  for (size_t k = 0; k < n2; ++k) {
    QuadExt wk = w.eval(QuadExt(static_cast<long>(k)));
    if (!wk.is_rational())
      throw std::domain_error("accelerator: weight must be rational");
    p[k] = a[k] * wk.a;
    if (sgn(p[k]) < 0)
      throw std::domain_error("accelerator: terms must be nonnegative");
  }
  Rat v1 = cvz_alternating(p, n);
  Rat v2 = cvz_alternating(p, n2);
  PrecisionCtx ctx(static_cast<long>((target_digits + 8) * 3.3219) + 64, 32);
  HReal value = HReal::from_rat(v2, ctx);
  Rat diff = abs(v2 - v1);
  double err = (diff == 0) ? kTinyLog2
                           : HReal::from_rat(diff, PrecisionCtx(64, 8)).log2_abs() + 4.0;
  value.bump_err(err);
  return EvalReport{std::move(value), static_cast<long>(n2), err};
}

}  // namespace pitr
