#pragma once
#include <pitr/asymptotics.hpp>
#include <pitr/factor_product.hpp>
#include <pitr/identities.hpp>

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pitr {

struct Interval {
  Rat lo, hi;
  bool lo_closed = false;
  bool hi_closed = false;

  bool contains(const Rat& x) const {
    if (x < lo || x > hi) return false;
    if (x == lo && !lo_closed) return false;
    if (x == hi && !hi_closed) return false;
    return true;
  }
  bool closure_contains(const Rat& x) const { return x >= lo && x <= hi; }
};

inline std::string interval_to_string(const Interval& iv) {
  std::string s = iv.lo_closed ? "[" : "(";
  s += rat_to_string(iv.lo) + "," + rat_to_string(iv.hi);
  s += iv.hi_closed ? "]" : ")";
  return s;
}

inline Interval interval_from_string(const std::string& str) {
  std::string s;
  for (char c : str)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.size() < 4 || (s.front() != '(' && s.front() != '[') ||
      (s.back() != ')' && s.back() != ']'))
    throw std::invalid_argument("bad interval literal: " + str);
  size_t comma = s.find(',');
  if (comma == std::string::npos)
    throw std::invalid_argument("bad interval literal: " + str);
  Interval iv;
  iv.lo_closed = s.front() == '[';
  iv.hi_closed = s.back() == ']';
  iv.lo = rat_from_string(s.substr(1, comma - 1));
  iv.hi = rat_from_string(s.substr(comma + 1, s.size() - comma - 2));
  if (!(iv.lo < iv.hi)) throw std::invalid_argument("empty interval: " + str);
  return iv;
}

// algebraic pullback F_lhs(u(x)) = g(x) * F_rhs(y(x)) on the validity
// interval; rhs_weight, when present, inserts a linear-in-n weight
// w0(x) + w1(x) n under the right-hand sum
struct TransformRule {
  std::string name;
  std::string lhs_seq, rhs_seq;
  SeriesSeq lhs, rhs;
  RatFun u, y;
  FactorProduct g;
  std::optional<std::pair<RatFun, RatFun>> rhs_weight;
  Interval validity;
  std::vector<Rat> samples;
};

// 1 - c*map written with its vanishing locus split into explicit factors;
// target is kept verbatim so the equality check is exact and self-contained
struct Certificate {
  std::string name;
  std::string rule;
  RatFun target;
  FactorProduct factored;
};

inline bool verify_certificate(const Certificate& c) {
  return ratfun_equal(c.target, fp_to_ratfun(c.factored));
}

// theta log of a factor product: sum_i e_i x b_i'(x) / b_i(x)
inline RatFun fp_theta_log(const FactorProduct& f) {
  RatFun acc;
  for (const auto& [base, e] : f.factors) {
    RatFun b = RatFun::from_poly(base);
    acc = acc + RatFun::from_rat(e) * (theta(b) / b);
  }
  return acc;
}

inline RatFun map_theta_log(const RatFun& f) { return theta(f) / f; }

// exact rational value of a factor product at a rational point; every
// fractional-exponent group must resolve to a perfect root
inline Rat fp_exact_value(const FactorProduct& f, const Rat& x) {
  Rat acc = f.scalar;
  std::vector<long> dens;
  for (const auto& [base, e] : f.factors) {
    long d = static_cast<long>(e.get_den().get_si());
    if (d == 1) {
      Rat v = base.eval(x);
      if (v == 0 && e < 0)
        throw std::domain_error("factor product: pole at evaluation point");
      long ei = static_cast<long>(e.get_num().get_si());
      Rat p(1);
      for (long i = 0; i < (ei >= 0 ? ei : -ei); ++i) p *= v;
      acc *= (ei >= 0) ? p : Rat(1) / p;
    } else if (std::find(dens.begin(), dens.end(), d) == dens.end()) {
      dens.push_back(d);
    }
  }
  for (long d : dens) {
    Rat grp(1);
    for (const auto& [base, e] : f.factors) {
      if (static_cast<long>(e.get_den().get_si()) != d) continue;
      Rat v = base.eval(x);
      Rat ed = e * d;
      long num = static_cast<long>(ed.get_num().get_si());
      if (v == 0 && num < 0)
        throw std::domain_error("factor product: pole at evaluation point");
      Rat p(1);
      for (long i = 0; i < (num >= 0 ? num : -num); ++i) p *= v;
      grp *= (num >= 0) ? p : Rat(1) / p;
    }
    bool neg = grp < 0;
    if (neg && d % 2 == 0)
      throw std::domain_error("factor product: even root of negative value");
    Rat root;
    if (!perfect_root(neg ? -grp : grp, d, root))
      throw std::domain_error("factor product: value is not a perfect root");
    acc *= neg ? -root : root;
  }
  return acc;
}

// structural checks applied when a rule is registered; the origin
// normalization only binds when 0 lies in the closed validity interval
inline void validate_rule(const TransformRule& r) {
  if (r.samples.size() < 3)
    throw std::domain_error("rule " + r.name + ": needs at least three samples");
  for (const Rat& s : r.samples)
    if (!r.validity.contains(s))
      throw std::domain_error("rule " + r.name + ": sample outside validity");
  if (!r.validity.closure_contains(Rat(0))) return;
  if (ratfun_eval(r.u, Rat(0)) != 0)
    throw std::domain_error("rule " + r.name + ": inner argument must vanish at 0");
  if (ratfun_eval(r.y, Rat(0)) != 0)
    throw std::domain_error("rule " + r.name + ": outer argument must vanish at 0");
  if (fp_exact_value(r.g, Rat(0)) != 1)
    throw std::domain_error("rule " + r.name + ": prefactor must be 1 at 0");
}

struct SampleReport {
  Rat x;
  bool pass = false;
  long digits = 0;
};

// compare both sides of the rule at its registered sample points
inline std::vector<SampleReport> verify_transform(const TransformRule& r,
                                                  long target_digits) {
  const double kLog2Of10 = 3.321928094887362;
  std::vector<SampleReport> out;
  for (const Rat& x : r.samples) {
    QuadExt ux(ratfun_eval(r.u, x)), yx(ratfun_eval(r.y, x));
    EvalReport lhs = eval_series(r.lhs, WeightPoly({QuadExt(Rat(1))}), ux,
                                 target_digits + 5);
    WeightPoly w({QuadExt(Rat(1))});
    if (r.rhs_weight)
      w = WeightPoly({QuadExt(ratfun_eval(r.rhs_weight->first, x)),
                      QuadExt(ratfun_eval(r.rhs_weight->second, x))});
    EvalReport rhs = eval_series(r.rhs, w, yx, target_digits + 5);
    PrecisionCtx ctx(static_cast<long>((target_digits + 12) * 3.3219) + 96, 32);
    HReal gx = fp_eval_hreal(r.g, HReal::from_rat(x, ctx), ctx);
    HReal rv = gx * rhs.value;
    SampleReport rep;
    rep.x = x;
    rep.pass = lhs.value.close_to(rv, -static_cast<double>(target_digits) * kLog2Of10);
    HReal diff = (lhs.value - rv).abs();
    double bound = log2_add(diff.log2_abs(), diff.err_log2());
    rep.digits = (bound >= 0.0) ? 0 : static_cast<long>(std::floor(-bound / kLog2Of10));
    out.push_back(rep);
  }
  return out;
}

enum class LimitArchetype { kThetaBoundary, kMinusInfinity };

inline std::string archetype_to_string(LimitArchetype a) {
  return a == LimitArchetype::kThetaBoundary ? "theta-boundary" : "minus-infinity";
}

inline LimitArchetype archetype_from_string(const std::string& s) {
  if (s == "theta-boundary") return LimitArchetype::kThetaBoundary;
  if (s == "minus-infinity") return LimitArchetype::kMinusInfinity;
  throw std::invalid_argument("unknown limit archetype " + s);
}

// a boundary point of a rule worth differentiating at: either the singular
// side's argument reaches its radius tangentially (theta-boundary) or it
// runs off to -infinity (minus-infinity)
struct LimitSpec {
  std::string name;
  std::string rule;
  QuadExt x0;
  LimitArchetype archetype = LimitArchetype::kThetaBoundary;
  bool singular_lhs = true;
  std::string cert;       // theta-boundary: certificate for 1 - map/radius
  ClosedForm gamma;       // stored boundary constant when not derivable
};

struct TranslateResult {
  RamanujanIdentity main;
  std::optional<RamanujanIdentity> side;
  QuadExt w0, w1;                // exact weight pair of the main emission
  std::optional<QuadExt> star;   // theta-boundary singular factor value
  ClosedForm gamma;              // boundary constant of the main emission
};

namespace detail {

// boundary constant of the singular side via the sine product: one upper
// 1/2 is absorbed by the sqrt(pi n) normalization, the remaining uppers
// must pair as (s, 1-s) over unit lowers
inline ClosedForm derive_singular_gamma(const SeriesSeq& s) {
  if (s.kind != SeqKind::kHyper)
    throw std::domain_error("translate: stored boundary constant required");
  for (const Rat& b : s.hg.lower)
    if (b != 1)
      throw std::domain_error("translate: stored boundary constant required");
  std::vector<Rat> up = s.hg.upper;
  std::sort(up.begin(), up.end());
  auto it = std::find(up.begin(), up.end(), make_rat(1, 2));
  if (it == up.end())
    throw std::domain_error("translate: stored boundary constant required");
  up.erase(it);
  if (up.size() % 2 != 0)
    throw std::domain_error("translate: stored boundary constant required");
  std::vector<Rat> slist;
  for (size_t i = 0; i < up.size() / 2; ++i) {
    if (up[i] + up[up.size() - 1 - i] != 1)
      throw std::domain_error("translate: stored boundary constant required");
    slist.push_back(up[i]);
  }
  return theorem1_limit(slist);
}

inline HGParams drop_one_unit_lower(const HGParams& p) {
  HGParams q = p;
  auto it = std::find(q.lower.begin(), q.lower.end(), Rat(1));
  if (it == q.lower.end())
    throw std::domain_error("translate: sequence has no unit lower parameter");
  q.lower.erase(it);
  return q;
}

inline QuadExt fp_eval_field(const FactorProduct& f, const QuadExt& x0,
                             const char* what) {
  FactorValue v = fp_eval(f, x0);
  if (!v.field)
    throw std::domain_error(std::string("translate: ") + what +
                            " does not lie in a quadratic field");
  return *v.field;
}

// scale the emitted weight to a unit constant term so the identity lines up
// with its registry form and keeps rational weights where possible
inline void normalize_main(RamanujanIdentity& id, const QuadExt& w0,
                           const QuadExt& w1) {
  if (w0.is_zero()) return;
  id.weight = WeightPoly({QuadExt(Rat(1)), w1 / w0});
  if (!(w0.is_rational() && w0.a == 1)) id.rhs = cf_quot(id.rhs, cf_of_quad(w0));
}

}  // namespace detail

// differentiate the rule by theta at the registered boundary point and
// cancel the singular factor exactly; emits a weighted identity for the
// regular side (and, off a -infinity point, the unweighted value identity)
inline TranslateResult translate(const TransformRule& rule, const LimitSpec& spec,
                                 const Certificate* cert) {
  if (rule.rhs_weight)
    throw std::domain_error("translate: weighted rules are not supported");
  const bool slhs = spec.singular_lhs;
  const SeriesSeq& sseq = slhs ? rule.lhs : rule.rhs;
  const SeriesSeq& eseq = slhs ? rule.rhs : rule.lhs;
  const std::string ename = slhs ? rule.rhs_seq : rule.lhs_seq;
  const RatFun& us = slhs ? rule.u : rule.y;
  const RatFun& ue = slhs ? rule.y : rule.u;
  // normalize so the singular series stands alone: F_S(uS) = G * F_E(uE)
  FactorProduct G = slhs ? rule.g : fp_pow(rule.g, Rat(-1));
  RatFun bs = map_theta_log(us);
  RatFun be = map_theta_log(ue);
  RatFun ae = fp_theta_log(G);
  const QuadExt& x0 = spec.x0;

  TranslateResult res;
  if (spec.archetype == LimitArchetype::kThetaBoundary) {
    if (cert == nullptr)
      throw std::domain_error("translate: theta-boundary needs a certificate");
    // the certificate must complement the singular argument at its radius
    RatFun want = RatFun::from_rat(Rat(1)) -
                  RatFun::from_rat(sseq.ratio_cap) * us;
    if (!ratfun_equal(cert->target, want))
      throw std::domain_error("translate: certificate does not match the rule");
    if (!ratfun_eval_quad(bs, x0).is_zero())
      throw std::domain_error("translate: boundary contact is not tangential");
    FactorProduct starfp = fp_mul(fp_pow(cert->factored, make_rat(1, 2)),
                                  fp_div(G, fp_from_ratfun(bs)));
    QuadExt star = detail::fp_eval_field(starfp, x0, "singular factor");
    QuadExt w0 = star * ratfun_eval_quad(ae, x0);
    QuadExt w1 = star * ratfun_eval_quad(be, x0);
    ClosedForm gamma = spec.gamma ? spec.gamma : detail::derive_singular_gamma(sseq);
    RamanujanIdentity id;
    id.name = spec.name;
    id.seq_name = ename;
    id.seq = eseq;
    id.weight = WeightPoly({w0, w1});
    id.z = ratfun_eval_quad(ue, x0);
    id.rhs = gamma;
    id.status = IdStatus::kProven;
    res.main = std::move(id);
    res.w0 = w0;
    res.w1 = w1;
    res.star = star;
    res.gamma = gamma;
    return res;
  }

  // minus-infinity archetype
  if (sseq.kind != SeqKind::kHyper)
    throw std::domain_error("translate: -infinity point needs hypergeometric side");
  if (!eval_poly_quad(us.den, x0).is_zero())
    throw std::domain_error("translate: argument stays finite at the point");
  HGParams base = detail::drop_one_unit_lower(sseq.hg);
  size_t m = 0;
  for (size_t j = 1; j < base.upper.size(); ++j)
    if (base.upper[j] < base.upper[m]) m = j;
  Rat am = base.upper[m];
  ClosedForm gamma0 = theorem2_limit(base);
  HGParams shifted = base;
  shifted.upper[m] = am + 1;
  Rat lambda = *std::min_element(shifted.upper.begin(), shifted.upper.end());
  ClosedForm gammaw = theorem2_limit(shifted);

  FactorProduct negus = fp_from_ratfun(-us);
  RatFun scale = RatFun::from_rat(Rat(1)) / (RatFun::from_rat(am) * bs);
  FactorProduct p0fp = fp_mul(fp_pow(negus, lambda),
                              fp_mul(G, fp_from_ratfun(RatFun::from_rat(Rat(1)) +
                                                       ae * scale)));
  FactorProduct p1fp = fp_mul(fp_pow(negus, lambda),
                              fp_mul(G, fp_from_ratfun(be * scale)));
  QuadExt w0 = detail::fp_eval_field(p0fp, x0, "constant weight");
  QuadExt w1 = detail::fp_eval_field(p1fp, x0, "linear weight");

  RamanujanIdentity id;
  id.name = spec.name;
  id.seq_name = ename;
  id.seq = eseq;
  id.weight = WeightPoly({w0, w1});
  id.z = ratfun_eval_quad(ue, x0);
  id.rhs = gammaw;
  id.status = IdStatus::kProven;
  res.main = id;
  res.w0 = w0;
  res.w1 = w1;
  res.gamma = gammaw;

  // value slot: lim (-uS)^{a_m} G is an exact root once raised to the
  // denominator of a_m; deeper roots stay as explicit closed-form data
  long dd = static_cast<long>(am.get_den().get_si());
  FactorProduct lamfp = fp_pow(fp_mul(fp_pow(negus, am), G), Rat(dd));
  RatFun lam_rf = fp_to_ratfun(lamfp);
  QuadExt lam_pow = ratfun_eval_quad(lam_rf, x0);
  if (!lam_pow.is_rational() || !(lam_pow.a > 0))
    throw std::domain_error("translate: value-slot scale is not a positive rational");
  ClosedForm lam = cf_root(lam_pow.a, dd);
  RamanujanIdentity sid;
  sid.name = spec.name + "-side";
  sid.seq_name = ename;
  sid.seq = eseq;
  sid.weight = WeightPoly({QuadExt(Rat(1))});
  sid.z = id.z;
  sid.rhs = cf_quot(gamma0, lam);
  sid.status = IdStatus::kSideIdentity;
  res.side = std::move(sid);
  return res;
}

// numeric partial sum at a numeric argument, for boundary diagnostics;
// hypergeometric families run a term recurrence, everything else takes the
// exact coefficient list
inline HReal series_value_hreal(const SeriesSeq& seq, const HReal& z,
                                long target_digits, const PrecisionCtx& ctx) {
  double q = std::abs(z.to_double()) *
             std::abs(HReal::from_rat(seq.ratio_cap, ctx).to_double());
  if (!(q < 1.0))
    throw std::domain_error("series: argument outside certified radius");
  long n = static_cast<long>((target_digits + 10) / -std::log10(q)) + 48;
  HReal acc = HReal::zero(ctx);
  if (seq.kind == SeqKind::kHyper) {
    HReal term = HReal::from_long(1, ctx);
    for (long k = 0; k < n; ++k) {
      acc = acc + term;
      Rat r(1);
      for (const Rat& a : seq.hg.upper) r *= a + k;
      Rat d(k + 1);
      for (const Rat& b : seq.hg.lower) d *= b + k;
      term = term * HReal::from_rat(r / d, ctx) * z;
    }
    acc.bump_err(term.abs().log2_abs() - std::log2(1.0 - q));
    return acc;
  }
  std::vector<Rat> a = seq.terms(static_cast<size_t>(n) + 1);
  HReal zp = HReal::from_long(1, ctx);
  for (long k = 0; k <= n; ++k) {
    if (a[k] != 0) acc = acc + HReal::from_rat(a[k], ctx) * zp;
    zp = zp * z;
  }
  HReal last = HReal::from_rat(abs(a[static_cast<size_t>(n)]), ctx) * zp.abs();
  acc.bump_err(last.log2_abs() - std::log2(1.0 - q));
  return acc;
}

// Richardson elimination for expansions in powers eps^(step*i); step = 1 is
// the classical table
inline HReal richardson_frac(std::vector<HReal> v, const Rat& step,
                             const PrecisionCtx& ctx) {
  if (v.size() < 2) throw std::domain_error("richardson: need at least two levels");
  HReal one = HReal::from_long(1, ctx);
  for (size_t i = 1; i < v.size(); ++i) {
    // eliminate eps^(step*i); levels halve eps, so the factor is 2^(-step*i)
    HReal r = HReal::from_long(2, ctx).pow_rat(-step * static_cast<long>(i));
    for (size_t j = 0; j + i < v.size(); ++j)
      v[j] = (v[j + 1] - r * v[j]) / (one - r);
  }
  return v[0];
}

// numeric cross-check of the -infinity boundary constant: approach the
// blow-up point of the singular argument and extrapolate
// (-Y)^{a_m} G F_E(uE) in the approach parameter
struct PullbackSpec {
  std::string name;
  std::string rule;
  bool singular_lhs = true;
  QuadExt x0;
  PolyQ root_poly;     // when nonzero, x0 is its root inside the bracket
  Rat bracket_lo, bracket_hi;
  bool from_above = true;
  Rat step = Rat(1);
};

struct PullbackReport {
  long digits = 0;
  HReal value;
  HReal expected;
};

inline PullbackReport pullback_check_theorem2(const TransformRule& rule,
                                              const PullbackSpec& spec,
                                              long target_digits) {
  if (rule.rhs_weight)
    throw std::domain_error("pullback: weighted rules are not supported");
  const bool slhs = spec.singular_lhs;
  const SeriesSeq& sseq = slhs ? rule.lhs : rule.rhs;
  const SeriesSeq& eseq = slhs ? rule.rhs : rule.lhs;
  const RatFun& us = slhs ? rule.u : rule.y;
  const RatFun& ue = slhs ? rule.y : rule.u;
  FactorProduct G = slhs ? rule.g : fp_pow(rule.g, Rat(-1));
  if (sseq.kind != SeqKind::kHyper)
    throw std::domain_error("pullback: -infinity side must be hypergeometric");
  HGParams base = detail::drop_one_unit_lower(sseq.hg);
  size_t m = 0;
  for (size_t j = 1; j < base.upper.size(); ++j)
    if (base.upper[j] < base.upper[m]) m = j;
  Rat am = base.upper[m];

  long work = static_cast<long>((target_digits + 24) * 3.3219) + 160;
  PrecisionCtx ctx(work, 48);
  HReal x0h = eval_quad(spec.x0, ctx);
  if (!spec.root_poly.is_zero()) {
    // Newton refinement from the bracket midpoint
    HReal xk = HReal::from_rat((spec.bracket_lo + spec.bracket_hi) / 2, ctx);
    PolyQ dp = spec.root_poly.derivative();
    for (int i = 0; i < 64; ++i)
      xk = xk - eval_poly_hreal(spec.root_poly, xk, ctx) /
                eval_poly_hreal(dp, xk, ctx);
    x0h = xk;
  }

  const long kLevels = (spec.step == 1) ? 10 : 6;
  HReal eps = HReal::from_rat(make_rat(1, spec.step == 1 ? 32 : 64), ctx);
  std::vector<HReal> levels;
  for (long j = 0; j < kLevels; ++j) {
    HReal x = spec.from_above ? x0h + eps : x0h - eps;
    HReal negy = -ratfun_eval_hreal(us, x, ctx);
    HReal fe = series_value_hreal(eseq, ratfun_eval_hreal(ue, x, ctx),
                                  target_digits + 16, ctx);
    levels.push_back(negy.pow_rat(am) * fp_eval_hreal(G, x, ctx) * fe);
    eps = eps / HReal::from_long(2, ctx);
  }
  PullbackReport rep;
  rep.value = richardson_frac(levels, spec.step, ctx);
  rep.expected = eval_closed_form(theorem2_limit(base), ctx);
  HReal diff = (rep.value - rep.expected).abs();
  double bound = log2_add(diff.log2_abs(), diff.err_log2());
  rep.digits = (bound >= 0.0) ? 0
                              : static_cast<long>(std::floor(-bound / 3.321928094887362));
  return rep;
}

}  // namespace pitr
