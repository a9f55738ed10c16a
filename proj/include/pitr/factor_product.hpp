#pragma once
#include <pitr/closed_form.hpp>

#include <algorithm>
#include <optional>

namespace pitr {

// product  scalar * prod_i base_i(x)^{e_i}  with rational exponents.
// Nonconstant bases under integer exponents are primitive with positive
// leading coefficient; under a fractional exponent only the positive part
// of the content moves out, so the base keeps its written sign and no
// formal (-1)^e constants arise.  Fractional powers of pushed-out content
// live on as degree-zero bases.  Values with fractional exponents present
// follow a positive-branch convention (see fp_eval / fp_eval_hreal).
struct FactorProduct {
  Rat scalar{1};
  std::vector<std::pair<PolyQ, Rat>> factors;

  static FactorProduct one() { return FactorProduct{}; }

  void push(const PolyQ& base, const Rat& e) {
    if (e == 0) return;
    if (base.is_zero()) throw std::domain_error("factor product: zero base");
    if (base.degree() == 0) {
      push_const(base.c[0], e);
      return;
    }
    Rat c = content(base);
    if (e.get_den() != 1 && c < 0) c = -c;
    PolyQ prim = base;
    if (c != 1) {
      for (auto& x : prim.c) x /= c;
      push_const(c, e);
    }
    merge(prim, e);
  }

  void push_const(const Rat& c, const Rat& e) {
    if (c == 0) throw std::domain_error("factor product: zero base");
    if (c == 1 || e == 0) return;
    if (e.get_den() == 1) {
      // integer power of a rational folds into the scalar
      long k = static_cast<long>(e.get_num().get_si());
      Rat p(1);
      Rat b = (k >= 0) ? c : Rat(1) / c;
      for (long i = 0; i < std::labs(k); ++i) p *= b;
      scalar *= p;
      return;
    }
    merge(PolyQ::constant(c), e);
  }

  void merge(const PolyQ& base, const Rat& e) {
    for (auto& [b, ex] : factors) {
      if (b == base) {
        ex += e;
        return;
      }
    }
    factors.push_back({base, e});
  }

  void tidy() {
    std::vector<std::pair<PolyQ, Rat>> keep;
    for (auto& [b, e] : factors)
      if (e != 0 && !(b.degree() == 0 && b.c[0] == 1)) keep.push_back({b, e});
    factors = std::move(keep);
  }
};

inline FactorProduct fp_from_poly(const PolyQ& p, const Rat& e) {
  FactorProduct f;
  f.push(p, e);
  f.tidy();
  return f;
}

inline FactorProduct fp_from_ratfun(const RatFun& r) {
  if (r.is_zero()) throw std::domain_error("factor product: zero function");
  FactorProduct f;
  f.push(r.num, Rat(1));
  f.push(r.den, Rat(-1));
  f.tidy();
  return f;
}

inline FactorProduct fp_mul(const FactorProduct& a, const FactorProduct& b) {
  FactorProduct f = a;
  f.scalar *= b.scalar;
  for (const auto& [base, e] : b.factors) f.merge(base, e);
  f.tidy();
  return f;
}

inline FactorProduct fp_pow(const FactorProduct& a, const Rat& r) {
  FactorProduct f;
  f.factors = a.factors;
  for (auto& [b, e] : f.factors) e *= r;
  // scalar^r may leave the rationals; reroute through push_const
  f.push_const(a.scalar, r);
  f.tidy();
  return f;
}

inline FactorProduct fp_div(const FactorProduct& a, const FactorProduct& b) {
  return fp_mul(a, fp_pow(b, Rat(-1)));
}

// expansion to a rational function; requires integer exponents throughout
inline RatFun fp_to_ratfun(const FactorProduct& f) {
  RatFun r = RatFun::from_rat(f.scalar);
  for (const auto& [base, e] : f.factors) {
    if (e.get_den() != 1)
      throw std::domain_error("factor product: fractional exponent in expansion");
    long k = static_cast<long>(e.get_num().get_si());
    r = r * ratfun_pow(RatFun::from_poly(base), k);
  }
  return r;
}

// total vanishing order at x0 (poles negative), a rational number since
// exponents are rational
inline Rat fp_order_at(const FactorProduct& f, const QuadExt& x0) {
  Rat ord(0);
  for (const auto& [base, e] : f.factors)
    ord += e * Rat(poly_order_at_quad(base, x0));
  return ord;
}

struct FactorValue {
  ClosedForm cf;                 // always set
  std::optional<QuadExt> field;  // set when the value lies in Q or one Q(sqrt d)
};

inline ClosedForm cf_of_quad(const QuadExt& v) {
  if (v.is_rational()) return cf_rat(v.a);
  return cf_sum({cf_rat(v.a), cf_prod({cf_rat(v.b), cf_sqrt(make_rat(v.d))})});
}

// Exact evaluation.  With integer exponents throughout this is the signed
// product.  Once half-integer exponents enter, the square of the product is
// expanded to a reduced rational function -- forcing factors that vanish at
// x0 to cancel exactly, whatever written form they entered in -- and the
// positive square root of its value is returned.  Callers arrange
// approach-side positivity; exponent denominators beyond 2 are out of scope
// here and are refused.
inline FactorValue fp_eval(const FactorProduct& f, const QuadExt& x0) {
  bool half = false;
  for (const auto& [base, e] : f.factors) {
    long den = e.get_den().get_si();
    if (den == 2) half = true;
    else if (den != 1)
      throw std::domain_error("factor product: exponent denominator beyond 2");
  }
  FactorValue out;
  if (!half) {
    QuadExt acc{f.scalar};
    for (const auto& [base, e] : f.factors) {
      QuadExt v = eval_poly_quad(base, x0);
      long k = static_cast<long>(e.get_num().get_si());
      if (k < 0) {
        if (v.is_zero())
          throw std::domain_error("factor product: pole at evaluation point");
        v = inverse(v);
        k = -k;
      }
      for (long i = 0; i < k; ++i) acc = acc * v;
    }
    out.field = acc;
    out.cf = cf_of_quad(acc);
    return out;
  }
  RatFun sq = fp_to_ratfun(fp_pow(f, Rat(2)));
  if (order_at(sq, x0) != 0)
    throw std::domain_error(
        "factor product: singular factor fails to cancel at the evaluation point");
  QuadExt v2 = ratfun_eval_quad(sq, x0);
  if (sign(v2) <= 0)
    throw std::domain_error("factor product: squared value not positive");
  if (auto r = sqrt_exact(v2)) {
    out.field = *r;
    out.cf = cf_of_quad(*r);
    return out;
  }
  if (v2.is_rational()) {
    SqrtSplit sp = sqrt_split(v2.a);
    long inside = static_cast<long>(sp.inside.get_si());
    out.field = QuadExt(Rat(0), sp.outside, inside);
    out.cf = (sp.outside == 1)
                 ? cf_sqrt(v2.a)
                 : cf_prod({cf_rat(sp.outside), cf_sqrt(Rat(inside))});
    return out;
  }
  out.cf = cf_sqrt_quad(v2);
  out.field.reset();
  return out;
}

// numeric evaluation along real x.  Integer exponents give the signed
// product.  With half-integer exponents and nothing deeper, the whole
// product is squared and the positive root taken, matching fp_eval.
// Deeper exponent denominators (which fp_eval refuses) are handled per
// root order: all factors sharing exponent denominator d are raised
// jointly to the d-th power, the result must be positive, and the
// positive d-th root is taken.
inline HReal fp_eval_hreal(const FactorProduct& f, const HReal& x,
                           const PrecisionCtx& ctx) {
  long max_den = 1;
  for (const auto& [base, e] : f.factors)
    max_den = std::max(max_den, static_cast<long>(e.get_den().get_si()));
  if (max_den == 1) {
    HReal acc = HReal::from_rat(f.scalar, ctx);
    for (const auto& [base, e] : f.factors) {
      HReal b = eval_poly_hreal(base, x, ctx);
      acc = acc * b.pow_si(static_cast<long>(e.get_num().get_si()));
    }
    return acc;
  }
  if (max_den == 2) {
    RatFun sq = fp_to_ratfun(fp_pow(f, Rat(2)));
    HReal v2 = eval_poly_hreal(sq.num, x, ctx) / eval_poly_hreal(sq.den, x, ctx);
    if (v2.sign() <= 0)
      throw std::domain_error("factor product: squared value not positive");
    return v2.sqrt();
  }
  HReal acc = HReal::from_rat(f.scalar, ctx);
  std::vector<long> dens;
  for (const auto& [base, e] : f.factors) {
    long d = static_cast<long>(e.get_den().get_si());
    if (d == 1)
      acc = acc * eval_poly_hreal(base, x, ctx)
                      .pow_si(static_cast<long>(e.get_num().get_si()));
    else if (std::find(dens.begin(), dens.end(), d) == dens.end())
      dens.push_back(d);
  }
  for (long d : dens) {
    HReal grp = HReal::from_long(1, ctx);
    for (const auto& [base, e] : f.factors) {
      if (static_cast<long>(e.get_den().get_si()) != d) continue;
      Rat k = e * d;
      grp = grp * eval_poly_hreal(base, x, ctx)
                      .pow_si(static_cast<long>(k.get_num().get_si()));
    }
    if (grp.sign() <= 0)
      throw std::domain_error("factor product: root group not positive");
    acc = acc * grp.pow_rat(make_rat(1, d));
  }
  return acc;
}

inline std::string fp_to_string(const FactorProduct& f) {
  std::string s = rat_to_string(f.scalar);
  for (const auto& [base, e] : f.factors)
    s += " ; " + poly_to_string(base) + "^" + rat_to_string(e);
  return s;
}

inline FactorProduct fp_from_string(const std::string& str) {
  FactorProduct f;
  size_t pos = 0;
  auto next_chunk = [&]() -> std::string {
    size_t sep = str.find(" ; ", pos);
    std::string chunk = (sep == std::string::npos) ? str.substr(pos)
                                                   : str.substr(pos, sep - pos);
    pos = (sep == std::string::npos) ? str.size() : sep + 3;
    return chunk;
  };
  std::string head = next_chunk();
  f.scalar = rat_from_string(head);
  if (f.scalar == 0) throw std::invalid_argument("factor product: zero scalar");
  while (pos < str.size()) {
    std::string chunk = next_chunk();
    size_t caret = chunk.rfind("]^");
    if (caret == std::string::npos)
      throw std::invalid_argument("bad factor literal: " + chunk);
    PolyQ base = poly_from_string(chunk.substr(0, caret + 1));
    Rat e = rat_from_string(chunk.substr(caret + 2));
    f.push(base, e);
  }
  f.tidy();
  return f;
}

}  // namespace pitr
