#pragma once
#include <pitr/gamma.hpp>
#include <pitr/poly.hpp>

#include <memory>
#include <vector>

namespace pitr {

// exact constant expressions: rationals, square roots, half-integer powers
// of pi, gamma and sine factors, r-th roots, and quadratic surds, combined
// by sum / product / quotient nodes. Serialized as s-expressions.
enum class CFKind {
  kRat,       // q
  kSqrt,      // sqrt(q), q > 0 rational
  kPiPow,     // pi^(k/2), k integer (possibly negative)
  kGamma,     // gamma(q)
  kSinPi,     // sin(pi q)
  kRoot,      // q^(1/r), q > 0 rational, r >= 2
  kSqrtQuad,  // sqrt(a + b sqrt(d)), positive
  kProd,
  kQuot,      // kids[0] / kids[1]
  kSum,
};

struct ClosedFormNode;
using ClosedForm = std::shared_ptr<const ClosedFormNode>;

struct ClosedFormNode {
  CFKind kind;
  Rat q{0};       // payload for kRat, kSqrt, kGamma, kSinPi, kRoot
  long k{0};      // twice the pi exponent (kPiPow) or root index (kRoot)
  QuadExt surd;   // payload for kSqrtQuad
  std::vector<ClosedForm> kids;
};

inline ClosedForm cf_rat(const Rat& q) {
  auto n = std::make_shared<ClosedFormNode>();
  n->kind = CFKind::kRat;
  n->q = q;
  return n;
}

inline ClosedForm cf_sqrt(const Rat& q) {
  if (sgn(q) <= 0) throw std::domain_error("closed form: sqrt of nonpositive");
  Rat r;
  if (perfect_root(q, 2, r)) return cf_rat(r);
  auto n = std::make_shared<ClosedFormNode>();
  n->kind = CFKind::kSqrt;
  n->q = q;
  return n;
}

// pi^(half_twice / 2)
inline ClosedForm cf_pi_pow(long half_twice) {
  auto n = std::make_shared<ClosedFormNode>();
  n->kind = CFKind::kPiPow;
  n->k = half_twice;
  return n;
}

inline ClosedForm cf_gamma(const Rat& q) {
  auto n = std::make_shared<ClosedFormNode>();
  n->kind = CFKind::kGamma;
  n->q = q;
  return n;
}

inline ClosedForm cf_sin_pi(const Rat& q) {
  auto n = std::make_shared<ClosedFormNode>();
  n->kind = CFKind::kSinPi;
  n->q = q;
  return n;
}

inline ClosedForm cf_root(const Rat& q, long r) {
  if (sgn(q) <= 0) throw std::domain_error("closed form: root of nonpositive");
  if (r < 2) throw std::domain_error("closed form: root index must be >= 2");
  Rat exact;
  if (perfect_root(q, r, exact)) return cf_rat(exact);
  auto n = std::make_shared<ClosedFormNode>();
  n->kind = CFKind::kRoot;
  n->q = q;
  n->k = r;
  return n;
}

inline ClosedForm cf_prod(std::vector<ClosedForm> kids) {
  auto n = std::make_shared<ClosedFormNode>();
  n->kind = CFKind::kProd;
  n->kids = std::move(kids);
  return n;
}

inline ClosedForm cf_quot(ClosedForm a, ClosedForm b) {
  auto n = std::make_shared<ClosedFormNode>();
  n->kind = CFKind::kQuot;
  n->kids = {std::move(a), std::move(b)};
  return n;
}

inline ClosedForm cf_sum(std::vector<ClosedForm> kids) {
  auto n = std::make_shared<ClosedFormNode>();
  n->kind = CFKind::kSum;
  n->kids = std::move(kids);
  return n;
}

inline ClosedForm cf_sqrt_quad(const QuadExt& s) {
  if (sign(s) <= 0) throw std::domain_error("closed form: sqrt of nonpositive");
  if (s.is_rational()) {
    Rat r;
    if (perfect_root(s.a, 2, r)) return cf_rat(r);
    return cf_sqrt(s.a);
  }
  if (auto r = sqrt_exact(s)) {
    // root lies in the same field: a + b sqrt(d) with rational a, b
    return cf_sum({cf_rat(r->a), cf_prod({cf_rat(r->b), cf_sqrt(make_rat(r->d))})});
  }
  auto n = std::make_shared<ClosedFormNode>();
  n->kind = CFKind::kSqrtQuad;
  n->surd = s;
  return n;
}

inline HReal eval_closed_form(const ClosedForm& f, const PrecisionCtx& ctx) {
  switch (f->kind) {
    case CFKind::kRat:
      return HReal::from_rat(f->q, ctx);
    case CFKind::kSqrt:
      return sqrt_rat(f->q, ctx);
    case CFKind::kPiPow: {
      HReal pi = pi_const(ctx);
      long k = f->k;
      HReal r = HReal::from_long(1, ctx);
      long half = k >= 0 ? k / 2 : -((-k) / 2);
      long rem = k - 2 * half;
      r = pi.pow_si(half);
      if (rem != 0) {
        HReal sq = pi.sqrt();
        r = (rem > 0) ? r * sq : r / sq;
      }
      return r;
    }
    case CFKind::kGamma:
      return gamma_rat(f->q, ctx);
    case CFKind::kSinPi:
      return sin_pi_rat(f->q, ctx);
    case CFKind::kRoot: {
      HReal base = HReal::from_rat(f->q, ctx);
      return base.pow_rat(make_rat(1, f->k));
    }
    case CFKind::kSqrtQuad:
      return eval_quad(f->surd, ctx).sqrt();
    case CFKind::kProd: {
      HReal acc = HReal::from_long(1, ctx);
      for (const auto& kid : f->kids) acc = acc * eval_closed_form(kid, ctx);
      return acc;
    }
    case CFKind::kQuot:
      return eval_closed_form(f->kids[0], ctx) / eval_closed_form(f->kids[1], ctx);
    case CFKind::kSum: {
      HReal acc = HReal::zero(ctx);
      for (const auto& kid : f->kids) acc = acc + eval_closed_form(kid, ctx);
      return acc;
    }
  }
  throw std::logic_error("closed form: bad node");
}

inline std::string cf_to_string(const ClosedForm& f) {
  switch (f->kind) {
    case CFKind::kRat:
      return "(rat " + rat_to_string(f->q) + ")";
    case CFKind::kSqrt:
      return "(sqrt " + rat_to_string(f->q) + ")";
    case CFKind::kPiPow:
      return "(pi " + std::to_string(f->k) + ")";
    case CFKind::kGamma:
      return "(gamma " + rat_to_string(f->q) + ")";
    case CFKind::kSinPi:
      return "(sinpi " + rat_to_string(f->q) + ")";
    case CFKind::kRoot:
      return "(root " + rat_to_string(f->q) + " " + std::to_string(f->k) + ")";
    case CFKind::kSqrtQuad:
      return "(sqrtq " + quad_to_string(f->surd) + ")";
    case CFKind::kProd:
    case CFKind::kQuot:
    case CFKind::kSum: {
      std::string s = (f->kind == CFKind::kProd)  ? "(prod"
                      : (f->kind == CFKind::kQuot) ? "(quot"
                                                   : "(sum";
      for (const auto& kid : f->kids) s += " " + cf_to_string(kid);
      return s + ")";
    }
  }
  throw std::logic_error("closed form: bad node");
}

namespace detail {

inline void cf_skip_ws(const std::string& s, size_t& i) {
  while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
}

inline std::string cf_token(const std::string& s, size_t& i) {
  cf_skip_ws(s, i);
  size_t start = i;
  while (i < s.size() && s[i] != ' ' && s[i] != '(' && s[i] != ')') ++i;
  return s.substr(start, i - start);
}

// like cf_token but lets the token carry balanced parentheses, as surd
// literals do: "13+16*sqrt(2)"
inline std::string cf_token_parens(const std::string& s, size_t& i) {
  cf_skip_ws(s, i);
  size_t start = i;
  int depth = 0;
  while (i < s.size()) {
    char c = s[i];
    if (c == ' ' && depth == 0) break;
    if (c == '(') ++depth;
    if (c == ')') {
      if (depth == 0) break;
      --depth;
    }
    ++i;
  }
  return s.substr(start, i - start);
}

inline ClosedForm cf_parse_node(const std::string& s, size_t& i) {
  cf_skip_ws(s, i);
  if (i >= s.size() || s[i] != '(')
    throw std::invalid_argument("bad closed form literal: " + s);
  ++i;
  std::string tag = cf_token(s, i);
  auto arg = [&]() { return cf_token(s, i); };
  ClosedForm result;
  if (tag == "rat") {
    result = cf_rat(rat_from_string(arg()));
  } else if (tag == "sqrt") {
    result = cf_sqrt(rat_from_string(arg()));
  } else if (tag == "pi") {
    result = cf_pi_pow(std::stol(arg()));
  } else if (tag == "gamma") {
    result = cf_gamma(rat_from_string(arg()));
  } else if (tag == "sinpi") {
    result = cf_sin_pi(rat_from_string(arg()));
  } else if (tag == "root") {
    Rat q = rat_from_string(arg());
    long r = std::stol(arg());
    result = cf_root(q, r);
  } else if (tag == "sqrtq") {
    result = cf_sqrt_quad(quad_from_string(cf_token_parens(s, i)));
  } else if (tag == "prod" || tag == "quot" || tag == "sum") {
    std::vector<ClosedForm> kids;
    cf_skip_ws(s, i);
    while (i < s.size() && s[i] == '(') {
      kids.push_back(cf_parse_node(s, i));
      cf_skip_ws(s, i);
    }
    if (tag == "quot") {
      if (kids.size() != 2)
        throw std::invalid_argument("quot needs two children: " + s);
      result = cf_quot(kids[0], kids[1]);
    } else if (tag == "prod") {
      result = cf_prod(std::move(kids));
    } else {
      result = cf_sum(std::move(kids));
    }
  } else {
    throw std::invalid_argument("unknown closed form node: " + tag);
  }
  cf_skip_ws(s, i);
  if (i >= s.size() || s[i] != ')')
    throw std::invalid_argument("bad closed form literal: " + s);
  ++i;
  return result;
}

}  // namespace detail

inline ClosedForm cf_from_string(const std::string& s) {
  size_t i = 0;
  ClosedForm f = detail::cf_parse_node(s, i);
  detail::cf_skip_ws(s, i);
  if (i != s.size())
    throw std::invalid_argument("trailing junk in closed form: " + s);
  return f;
}

inline bool cf_equal_structural(const ClosedForm& a, const ClosedForm& b) {
  return cf_to_string(a) == cf_to_string(b);
}

// flatten products and quotients into (rational) * (sorted factor list),
// merging rational and sqrt factors; used to compare engine output with
// stored forms independent of construction order
inline void cf_collect_factors(const ClosedForm& f, Rat& scalar, Rat& under_sqrt,
                               long& pi_twice, std::vector<std::string>& rest,
                               bool invert) {
  switch (f->kind) {
    case CFKind::kRat:
      if (invert) {
        if (f->q == 0) throw std::domain_error("closed form: divide by zero");
        scalar /= f->q;
      } else {
        scalar *= f->q;
      }
      return;
    case CFKind::kSqrt:
      if (invert) under_sqrt /= f->q;
      else under_sqrt *= f->q;
      return;
    case CFKind::kPiPow:
      pi_twice += invert ? -f->k : f->k;
      return;
    case CFKind::kProd:
      for (const auto& kid : f->kids)
        cf_collect_factors(kid, scalar, under_sqrt, pi_twice, rest, invert);
      return;
    case CFKind::kQuot:
      cf_collect_factors(f->kids[0], scalar, under_sqrt, pi_twice, rest, invert);
      cf_collect_factors(f->kids[1], scalar, under_sqrt, pi_twice, rest, !invert);
      return;
    default:
      rest.push_back((invert ? "inv " : "") + cf_to_string(f));
      return;
  }
}

inline std::string cf_canonical_string(const ClosedForm& f) {
  Rat scalar(1), under_sqrt(1);
  long pi_twice = 0;
  std::vector<std::string> rest;
  cf_collect_factors(f, scalar, under_sqrt, pi_twice, rest, false);
  // pull square part out of the sqrt factor
  SqrtSplit sp = sqrt_split(under_sqrt);
  scalar *= sp.outside;
  std::sort(rest.begin(), rest.end());
  std::string s = "mul " + rat_to_string(scalar);
  s += " sqrt " + rat_to_string(Rat(sp.inside));
  s += " pi " + std::to_string(pi_twice);
  for (const auto& r : rest) s += " | " + r;
  return s;
}

inline bool cf_equal_canonical(const ClosedForm& a, const ClosedForm& b) {
  return cf_canonical_string(a) == cf_canonical_string(b);
}

}  // namespace pitr
