#pragma once
#include <pitr/exact.hpp>

#include <cctype>
#include <optional>
#include <string>

namespace pitr {

// element a + b*sqrt(d) of a real quadratic field; d squarefree, d >= 1.
// d == 1 encodes a plain rational (b folded into a on normalize).
// Mixed-d arithmetic is allowed only when one side is rational; anything
// else is a caller bug and throws.
struct QuadExt {
  Rat a{0};
  Rat b{0};
  long d{1};

  QuadExt() = default;
  QuadExt(long v) : a(v) {}
  QuadExt(const Rat& a_) : a(a_) {}
  QuadExt(const Rat& a_, const Rat& b_, long d_) : a(a_), b(b_), d(d_) {
    normalize();
  }

  void normalize() {
    if (d < 1) throw std::domain_error("quadext: d must be positive");
    if (d == 1) {
      a += b;
      b = 0;
    } else if (b == 0) {
      d = 1;
    }
  }

  bool is_rational() const { return b == 0; }
  Rat to_rat() const {
    if (!is_rational()) throw std::domain_error("quadext: not rational");
    return a;
  }

  bool is_zero() const { return a == 0 && b == 0; }

  // a^2 - b^2 d, the field norm times conjugation sign convention
  Rat norm() const { return a * a - b * b * Rat(d); }
  QuadExt conj() const { return QuadExt(a, -b, d); }
};

inline long common_d(const QuadExt& x, const QuadExt& y) {
  if (x.d == y.d) return x.d;
  if (x.is_rational()) return y.d;
  if (y.is_rational()) return x.d;
  throw std::domain_error("quadext: mixing different radicands");
}

inline QuadExt operator+(const QuadExt& x, const QuadExt& y) {
  long d = common_d(x, y);
  return QuadExt(x.a + y.a, x.b + y.b, d);
}
inline QuadExt operator-(const QuadExt& x, const QuadExt& y) {
  long d = common_d(x, y);
  return QuadExt(x.a - y.a, x.b - y.b, d);
}
inline QuadExt operator-(const QuadExt& x) { return QuadExt(-x.a, -x.b, x.d); }

inline QuadExt operator*(const QuadExt& x, const QuadExt& y) {
  long d = common_d(x, y);
  return QuadExt(x.a * y.a + x.b * y.b * Rat(d), x.a * y.b + x.b * y.a, d);
}

inline QuadExt inverse(const QuadExt& x) {
  Rat n = x.norm();
  if (x.is_zero() || n == 0) throw std::domain_error("quadext: divide by zero");
  return QuadExt(x.a / n, -x.b / n, x.d);
}

inline QuadExt operator/(const QuadExt& x, const QuadExt& y) {
  long d = common_d(x, y);
  (void)d;
  return x * inverse(y);
}

inline bool operator==(const QuadExt& x, const QuadExt& y) {
  if (x.a != y.a) return false;
  if (x.b == 0 && y.b == 0) return true;
  return x.b == y.b && x.d == y.d;
}
inline bool operator!=(const QuadExt& x, const QuadExt& y) { return !(x == y); }

// exact sign of a + b*sqrt(d) by rational comparisons only
inline int sign(const QuadExt& x) {
  int sa = sgn(x.a), sb = sgn(x.b);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // opposite signs: compare a^2 against b^2 d
  Rat lhs = x.a * x.a, rhs = x.b * x.b * Rat(x.d);
  int c = cmp(lhs, rhs);
  if (c == 0) return 0;
  return (c > 0) ? sa : sb;
}

// solve (p + q*sqrt(d))^2 = a + b*sqrt(d) exactly; empty when no such
// element exists in the same field
inline std::optional<QuadExt> sqrt_exact(const QuadExt& x) {
  if (sign(x) < 0) return std::nullopt;
  if (x.is_zero()) return QuadExt(Rat(0));
  if (x.is_rational()) {
    Rat r;
    if (perfect_root(x.a, 2, r)) return QuadExt(r);
    // maybe a = c^2 d for the ambient d; caller with d == 1 gets nothing
    if (x.d > 1) {
      Rat c2 = x.a / Rat(x.d);
      if (perfect_root(c2, 2, r)) return QuadExt(Rat(0), r, x.d);
    }
    return std::nullopt;
  }
  // need s = sqrt(a^2 - b^2 d) rational, then p^2 = (a +/- s)/2
  Rat s;
  if (!perfect_root(x.norm(), 2, s)) return std::nullopt;
  for (int pick = 0; pick < 2; ++pick) {
    Rat p2 = (x.a + (pick ? -s : s)) / 2;
    Rat p;
    if (sgn(p2) > 0 && perfect_root(p2, 2, p)) {
      Rat q = x.b / (2 * p);
      QuadExt cand(p, q, x.d);
      if (cand * cand == x && sign(cand) > 0) return cand;
      cand = -cand;
      if (cand * cand == x && sign(cand) > 0) return cand;
    }
  }
  return std::nullopt;
}

inline HReal eval_quad(const QuadExt& x, const PrecisionCtx& ctx) {
  HReal r = HReal::from_rat(x.a, ctx);
  if (x.b != 0)
    r = r + HReal::from_rat(x.b, ctx) * sqrt_rat(make_rat(x.d), ctx);
  return r;
}

inline std::string quad_to_string(const QuadExt& x) {
  if (x.is_rational()) return rat_to_string(x.a);
  std::string s = rat_to_string(x.a);
  s += (sgn(x.b) < 0) ? "-" : "+";
  Rat ab = abs(x.b);
  if (ab != 1) s += rat_to_string(ab) + "*";
  s += "sqrt(" + std::to_string(x.d) + ")";
  return s;
}

// parse "a", "a+b*sqrt(d)", "a-sqrt(d)" and the b-only forms
inline QuadExt quad_from_string(const std::string& str) {
  auto fail = [&]() -> QuadExt {
    throw std::invalid_argument("bad quadratic literal: " + str);
  };
  std::string s;
  for (char c : str)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) return fail();
  size_t rpos = s.find("sqrt(");
  if (rpos == std::string::npos) return QuadExt(rat_from_string(s));
  size_t close = s.find(')', rpos);
  if (close == std::string::npos || close != s.size() - 1) return fail();
  long d = std::stol(s.substr(rpos + 5, close - rpos - 5));
  // radical term starts at the sign that precedes it (or at 0)
  size_t term = rpos;
  if (term > 0 && s[term - 1] == '*') --term;
  size_t tstart = term;
  while (tstart > 0 && s[tstart - 1] != '+' && s[tstart - 1] != '-') --tstart;
  size_t sign_pos = (tstart > 0) ? tstart - 1 : std::string::npos;
  Rat b(1);
  if (term > tstart) {
    std::string coeff = s.substr(tstart, term - tstart);
    b = rat_from_string(coeff);
  }
  if (sign_pos != std::string::npos && s[sign_pos] == '-') b = -b;
  Rat a(0);
  size_t astop = (sign_pos == std::string::npos) ? 0 : sign_pos;
  if (astop > 0) a = rat_from_string(s.substr(0, astop));
  else if (sign_pos == std::string::npos && tstart == 0) a = 0;
  return QuadExt(a, b, d);
}

}  // namespace pitr
