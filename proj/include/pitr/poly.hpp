#pragma once
#include <pitr/quadext.hpp>

#include <algorithm>
#include <sstream>
#include <vector>

namespace pitr {

// dense univariate polynomial over a field T, coefficients ascending
template <class T>
struct Poly {
  std::vector<T> c;

  Poly() = default;
  explicit Poly(std::vector<T> coeffs) : c(std::move(coeffs)) { trim(); }
  static Poly constant(const T& v) { return Poly(std::vector<T>{v}); }
  static Poly var() { return Poly(std::vector<T>{T(0), T(1)}); }

  void trim() {
    while (!c.empty() && c.back() == T(0)) c.pop_back();
  }
  bool is_zero() const { return c.empty(); }
  long degree() const { return static_cast<long>(c.size()) - 1; }
  T coeff(size_t i) const { return i < c.size() ? c[i] : T(0); }
  T lead() const {
    if (c.empty()) throw std::domain_error("poly: lead of zero");
    return c.back();
  }

  T eval(const T& x) const {
    T acc(0);
    for (size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    return acc;
  }

  Poly derivative() const {
    if (c.size() <= 1) return Poly();
    std::vector<T> d(c.size() - 1);
    for (size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * T(static_cast<long>(i));
    return Poly(std::move(d));
  }
};

template <class T>
Poly<T> operator+(const Poly<T>& p, const Poly<T>& q) {
  std::vector<T> r(std::max(p.c.size(), q.c.size()), T(0));
  for (size_t i = 0; i < r.size(); ++i) r[i] = p.coeff(i) + q.coeff(i);
  return Poly<T>(std::move(r));
}

template <class T>
Poly<T> operator-(const Poly<T>& p, const Poly<T>& q) {
  std::vector<T> r(std::max(p.c.size(), q.c.size()), T(0));
  for (size_t i = 0; i < r.size(); ++i) r[i] = p.coeff(i) - q.coeff(i);
  return Poly<T>(std::move(r));
}

template <class T>
Poly<T> operator-(const Poly<T>& p) {
  std::vector<T> r(p.c);
  for (auto& x : r) x = -x;
  return Poly<T>(std::move(r));
}

template <class T>
Poly<T> operator*(const Poly<T>& p, const Poly<T>& q) {
  if (p.is_zero() || q.is_zero()) return Poly<T>();
  std::vector<T> r(p.c.size() + q.c.size() - 1, T(0));
  for (size_t i = 0; i < p.c.size(); ++i)
    for (size_t j = 0; j < q.c.size(); ++j) r[i + j] = r[i + j] + p.c[i] * q.c[j];
  return Poly<T>(std::move(r));
}

template <class T>
Poly<T> operator*(const T& s, const Poly<T>& p) {
  std::vector<T> r(p.c);
  for (auto& x : r) x = s * x;
  return Poly<T>(std::move(r));
}

template <class T>
bool operator==(const Poly<T>& p, const Poly<T>& q) {
  return p.c == q.c;
}

template <class T>
Poly<T> poly_pow(const Poly<T>& p, unsigned long e) {
  Poly<T> acc = Poly<T>::constant(T(1)), base = p;
  while (e) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

template <class T>
void poly_divmod(const Poly<T>& a, const Poly<T>& b, Poly<T>& q, Poly<T>& r) {
  if (b.is_zero()) throw std::domain_error("poly: divide by zero");
  r = a;
  q = Poly<T>();
  q.c.assign(a.c.size(), T(0));
  T binv = T(1) / b.lead();
  while (!r.is_zero() && r.degree() >= b.degree()) {
    long k = r.degree() - b.degree();
    T f = r.lead() * binv;
    q.c[k] = q.c[k] + f;
    for (long i = 0; i <= b.degree(); ++i)
      r.c[i + k] = r.c[i + k] - f * b.c[i];
    r.trim();
  }
  q.trim();
}

template <class T>
Poly<T> monic(const Poly<T>& p) {
  if (p.is_zero()) return p;
  T inv = T(1) / p.lead();
  return inv * p;
}

template <class T>
Poly<T> poly_gcd(Poly<T> a, Poly<T> b) {
  while (!b.is_zero()) {
    Poly<T> q, r;
    poly_divmod(a, b, q, r);
    a = b;
    b = monic(r);
  }
  return a.is_zero() ? a : monic(a);
}

using PolyQ = Poly<Rat>;

inline PolyQ poly_from_longs(std::initializer_list<long> v) {
  std::vector<Rat> c;
  for (long x : v) c.emplace_back(make_rat(x));
  return PolyQ(std::move(c));
}

// gcd of numerators over lcm of denominators, signed by the leading coeff
inline Rat content(const PolyQ& p) {
  if (p.is_zero()) return Rat(0);
  Int g(0), l(1);
  for (const Rat& q : p.c) {
    g = gcd(g, Int(q.get_num()));
    l = lcm(l, Int(q.get_den()));
  }
  Rat c = Rat(g) / Rat(l);
  if (sgn(p.lead()) < 0) c = -c;
  return c;
}

inline PolyQ primitive_part(const PolyQ& p) {
  if (p.is_zero()) return p;
  Rat c = content(p);
  PolyQ r = p;
  for (auto& x : r.c) x /= c;
  return r;
}

inline QuadExt eval_poly_quad(const PolyQ& p, const QuadExt& x) {
  QuadExt acc{Rat(0)};
  for (size_t i = p.c.size(); i-- > 0;)
    acc = acc * x + QuadExt(p.c[i]);
  return acc;
}

inline HReal eval_poly_hreal(const PolyQ& p, const HReal& x, const PrecisionCtx& ctx) {
  HReal acc = HReal::zero(ctx);
  for (size_t i = p.c.size(); i-- > 0;)
    acc = acc * x + HReal::from_rat(p.c[i], ctx);
  return acc;
}

inline std::string poly_to_string(const PolyQ& p) {
  std::string s = "[";
  for (size_t i = 0; i < p.c.size(); ++i) {
    if (i) s += ",";
    s += rat_to_string(p.c[i]);
  }
  return s + "]";
}

inline PolyQ poly_from_string(const std::string& s) {
  if (s.size() < 2 || s.front() != '[' || s.back() != ']')
    throw std::invalid_argument("bad polynomial literal: " + s);
  std::string body = s.substr(1, s.size() - 2);
  std::vector<Rat> c;
  if (!body.empty()) {
    std::stringstream ss(body);
    std::string tok;
    while (std::getline(ss, tok, ',')) c.push_back(rat_from_string(tok));
  }
  return PolyQ(std::move(c));
}

// rational function in lowest terms with monic denominator
struct RatFun {
  PolyQ num;
  PolyQ den = PolyQ::constant(Rat(1));

  RatFun() : num() {}
  RatFun(PolyQ n, PolyQ d) : num(std::move(n)), den(std::move(d)) { reduce(); }
  static RatFun from_rat(const Rat& q) {
    RatFun f;
    f.num = PolyQ::constant(q);
    return f;
  }
  static RatFun var() {
    RatFun f;
    f.num = PolyQ::var();
    return f;
  }
  static RatFun from_poly(PolyQ p) {
    RatFun f;
    f.num = std::move(p);
    return f;
  }

  void reduce() {
    if (den.is_zero()) throw std::domain_error("ratfun: zero denominator");
    if (num.is_zero()) {
      den = PolyQ::constant(Rat(1));
      return;
    }
    PolyQ g = poly_gcd(num, den);
    if (g.degree() > 0) {
      PolyQ q, r;
      poly_divmod(num, g, q, r);
      num = q;
      poly_divmod(den, g, q, r);
      den = q;
    }
    Rat inv = Rat(1) / den.lead();
    for (auto& x : num.c) x *= inv;
    for (auto& x : den.c) x *= inv;
  }

  bool is_zero() const { return num.is_zero(); }
  bool is_constant() const { return num.degree() <= 0 && den.degree() == 0; }
  Rat constant_value() const {
    if (!is_constant()) throw std::domain_error("ratfun: not constant");
    return num.is_zero() ? Rat(0) : num.c[0] / den.c[0];
  }
};

inline RatFun operator+(const RatFun& f, const RatFun& g) {
  return RatFun(f.num * g.den + g.num * f.den, f.den * g.den);
}
inline RatFun operator-(const RatFun& f, const RatFun& g) {
  return RatFun(f.num * g.den - g.num * f.den, f.den * g.den);
}
inline RatFun operator-(const RatFun& f) { return RatFun(-f.num, f.den); }
inline RatFun operator*(const RatFun& f, const RatFun& g) {
  return RatFun(f.num * g.num, f.den * g.den);
}
inline RatFun operator/(const RatFun& f, const RatFun& g) {
  if (g.is_zero()) throw std::domain_error("ratfun: divide by zero");
  return RatFun(f.num * g.den, f.den * g.num);
}

inline bool ratfun_equal(const RatFun& f, const RatFun& g) {
  return f.num == g.num && f.den == g.den;
}

inline RatFun ratfun_pow(const RatFun& f, long e) {
  if (e >= 0) return RatFun(poly_pow(f.num, e), poly_pow(f.den, e));
  if (f.is_zero()) throw std::domain_error("ratfun: negative power of zero");
  return RatFun(poly_pow(f.den, -e), poly_pow(f.num, -e));
}

inline RatFun ratfun_derivative(const RatFun& f) {
  return RatFun(f.num.derivative() * f.den - f.num * f.den.derivative(),
                f.den * f.den);
}

// theta f = x * f'
inline RatFun theta(const RatFun& f) {
  return RatFun::var() * ratfun_derivative(f);
}

inline Rat ratfun_eval(const RatFun& f, const Rat& x) {
  Rat d = f.den.eval(x);
  if (d == 0) throw std::domain_error("ratfun: pole at evaluation point");
  return f.num.eval(x) / d;
}

inline QuadExt ratfun_eval_quad(const RatFun& f, const QuadExt& x) {
  QuadExt d = eval_poly_quad(f.den, x);
  if (d.is_zero()) throw std::domain_error("ratfun: pole at evaluation point");
  return eval_poly_quad(f.num, x) / d;
}

inline HReal ratfun_eval_hreal(const RatFun& f, const HReal& x,
                               const PrecisionCtx& ctx) {
  HReal d = eval_poly_hreal(f.den, x, ctx);
  return eval_poly_hreal(f.num, x, ctx) / d;
}

// multiplicity of x0 as zero (positive) or pole (negative) of f
inline long poly_order_at(const PolyQ& p, const Rat& x0) {
  if (p.is_zero()) throw std::domain_error("order of zero polynomial");
  PolyQ lin(std::vector<Rat>{-x0, Rat(1)});
  PolyQ cur = p;
  long k = 0;
  while (cur.eval(x0) == 0) {
    PolyQ q, r;
    poly_divmod(cur, lin, q, r);
    cur = q;
    ++k;
  }
  return k;
}

inline long order_at(const RatFun& f, const Rat& x0) {
  if (f.is_zero()) throw std::domain_error("order of zero function");
  return poly_order_at(f.num, x0) - poly_order_at(f.den, x0);
}

// order at a quadratic irrational: count divisions by its minimal polynomial
inline long poly_order_at_quad(const PolyQ& p, const QuadExt& x0) {
  if (x0.is_rational()) return poly_order_at(p, x0.a);
  if (p.is_zero()) throw std::domain_error("order of zero polynomial");
  PolyQ minpoly(std::vector<Rat>{x0.norm(), -2 * x0.a, Rat(1)});
  PolyQ cur = p;
  long k = 0;
  while (eval_poly_quad(cur, x0).is_zero()) {
    PolyQ q, r;
    poly_divmod(cur, minpoly, q, r);
    if (!r.is_zero()) break;  // vanishes at x0 only through the residual factor
    cur = q;
    ++k;
  }
  return k;
}

inline long order_at(const RatFun& f, const QuadExt& x0) {
  if (f.is_zero()) throw std::domain_error("order of zero function");
  return poly_order_at_quad(f.num, x0) - poly_order_at_quad(f.den, x0);
}

inline std::string ratfun_to_string(const RatFun& f) {
  return poly_to_string(f.num) + "/" + poly_to_string(f.den);
}

inline RatFun ratfun_from_string(const std::string& s) {
  size_t mid = s.find("]/[");
  if (mid == std::string::npos)
    throw std::invalid_argument("bad rational function literal: " + s);
  return RatFun(poly_from_string(s.substr(0, mid + 1)),
                poly_from_string(s.substr(mid + 2)));
}

}  // namespace pitr
