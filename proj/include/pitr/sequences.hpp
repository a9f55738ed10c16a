#pragma once
#include <pitr/poly.hpp>

#include <string>
#include <utility>
#include <vector>

namespace pitr {

// hypergeometric coefficient family c_n = prod (a_i)_n / (prod (b_j)_n n!);
// the implicit n! is not listed among the lower parameters
struct HGParams {
  std::vector<Rat> upper;
  std::vector<Rat> lower;

  HGParams() = default;
  HGParams(std::vector<Rat> up, std::vector<Rat> lo)
      : upper(std::move(up)), lower(std::move(lo)) {
    for (const Rat& b : lower)
      if (is_nonpositive_int(b))
        throw std::domain_error("hypergeometric lower parameter is a nonpositive integer");
  }
};

inline std::vector<Rat> hg_coeffs(const HGParams& p, size_t n_terms) {
  std::vector<Rat> c;
  c.reserve(n_terms);
  Rat cur(1);
  for (size_t n = 0; n < n_terms; ++n) {
    c.push_back(cur);
    Rat num(1), den(make_rat(static_cast<long>(n) + 1));
    for (const Rat& a : p.upper) num *= a + static_cast<long>(n);
    for (const Rat& b : p.lower) den *= b + static_cast<long>(n);
    cur = cur * num / den;
  }
  return c;
}

// recurrence sum_j q[j](n) A_{n-j} = 0 with explicit seed terms
struct PRecurrence {
  std::vector<PolyQ> q;
  std::vector<Rat> initial;
};

inline std::vector<Rat> prec_terms(const PRecurrence& rec, size_t n_terms) {
  if (rec.q.empty() || rec.q[0].is_zero())
    throw std::domain_error("recurrence has no leading coefficient");
  std::vector<Rat> a;
  a.reserve(n_terms);
  for (size_t n = 0; n < n_terms; ++n) {
    if (n < rec.initial.size()) {
      a.push_back(rec.initial[n]);
      continue;
    }
    Rat lead = rec.q[0].eval(make_rat(static_cast<long>(n)));
    if (lead == 0)
      throw std::domain_error("recurrence leading coefficient vanishes at n=" +
                              std::to_string(n));
    Rat s(0);
    for (size_t j = 1; j < rec.q.size(); ++j) {
      if (j > n) break;
      s += rec.q[j].eval(make_rat(static_cast<long>(n))) * a[n - j];
    }
    a.push_back(-s / lead);
  }
  return a;
}

// operator sum_j x^j P_j(theta) annihilating sum a_n x^n
struct ThetaOperator {
  std::vector<std::pair<long, PolyQ>> terms;
};

inline PolyQ poly_shift(const PolyQ& p, const Rat& delta) {
  // p(x + delta) by Horner over polynomials
  PolyQ xs(std::vector<Rat>{delta, Rat(1)});
  PolyQ acc;
  for (size_t i = p.c.size(); i-- > 0;)
    acc = acc * xs + PolyQ::constant(p.c[i]);
  return acc;
}

// coefficient of x^m in x^j P_j(theta) A is P_j(m - j) a_{m-j}
inline PRecurrence theta_to_recurrence(const ThetaOperator& op,
                                       std::vector<Rat> initial) {
  long max_shift = 0;
  for (const auto& [j, p] : op.terms)
    if (j > max_shift) max_shift = j;
  PRecurrence rec;
  rec.q.assign(max_shift + 1, PolyQ());
  for (const auto& [j, p] : op.terms)
    rec.q[j] = rec.q[j] + poly_shift(p, make_rat(-j));
  rec.initial = std::move(initial);
  if (rec.q[0].is_zero())
    throw std::domain_error("theta operator has no order-zero part");
  return rec;
}

// solve the theta operator directly as a power series, coefficient by
// coefficient, using series-level theta application; independent of
// theta_to_recurrence
namespace detail {

inline std::vector<Rat> apply_theta_poly(const PolyQ& p,
                                         const std::vector<Rat>& s) {
  std::vector<Rat> out(s.size(), Rat(0));
  std::vector<Rat> cur = s;  // theta^k applied k times
  for (size_t k = 0; k < p.c.size(); ++k) {
    if (p.c[k] != 0)
      for (size_t m = 0; m < s.size(); ++m) out[m] += p.c[k] * cur[m];
    for (size_t m = 0; m < s.size(); ++m) cur[m] *= static_cast<long>(m);
  }
  return out;
}

}  // namespace detail

inline std::vector<Rat> series_solve_theta(const ThetaOperator& op,
                                           const Rat& a0, size_t n_terms) {
  std::vector<Rat> a(n_terms, Rat(0));
  if (n_terms == 0) return a;
  a[0] = a0;
  // factor multiplying the unknown a_m: operator applied to x^m, coeff m
  auto lead_factor = [&](size_t m) {
    std::vector<Rat> unit(m + 1, Rat(0));
    unit[m] = 1;
    Rat f(0);
    for (const auto& [j, p] : op.terms) {
      if (j != 0) continue;
      std::vector<Rat> t = detail::apply_theta_poly(p, unit);
      f += t[m];
    }
    return f;
  };
  for (size_t m = 1; m < n_terms; ++m) {
    std::vector<Rat> partial(a.begin(), a.begin() + m);
    partial.resize(m + 1, Rat(0));
    Rat residual(0);
    for (const auto& [j, p] : op.terms) {
      std::vector<Rat> t = detail::apply_theta_poly(p, partial);
      long idx = static_cast<long>(m) - j;
      if (idx >= 0 && idx <= static_cast<long>(m)) residual += t[idx];
    }
    Rat f = lead_factor(m);
    if (f == 0)
      throw std::domain_error("series solve stuck at m=" + std::to_string(m));
    a[m] = -residual / f;
  }
  return a;
}

// theta^3 - x(2theta+1)(11theta^2+11theta+5)
//   + x^2(theta+1)(121theta^2+242theta+141)
//   - 98 x^3(theta+1)(theta+2)(2theta+3);
// its unit-constant-term solution is the level-14 cubic sequence 1, 5, 33, ...
inline ThetaOperator theta_cubic_level14() {
  ThetaOperator op;
  op.terms.push_back({0, poly_from_longs({0, 0, 0, 1})});
  op.terms.push_back(
      {1, -(poly_from_longs({1, 2}) * poly_from_longs({5, 11, 11}))});
  op.terms.push_back(
      {2, poly_from_longs({1, 1}) * poly_from_longs({141, 242, 121})});
  op.terms.push_back({3, make_rat(-98) * (poly_from_longs({1, 1}) *
                                          poly_from_longs({2, 1}) *
                                          poly_from_longs({3, 2}))});
  return op;
}

inline std::vector<Rat> cubic_l14_seq(size_t n_terms) {
  PRecurrence rec = theta_to_recurrence(theta_cubic_level14(), {make_rat(1)});
  return prec_terms(rec, n_terms);
}

// sum_k C(n,k)^4; row of C(n,k) updated in place, so the whole table is O(N^2)
// bignum operations
inline std::vector<Rat> quartic_binomial(size_t n_terms) {
  std::vector<Rat> a;
  a.reserve(n_terms);
  std::vector<Int> row{Int(1)};
  for (size_t n = 0; n < n_terms; ++n) {
    if (n > 0) {
      row.push_back(Int(1));
      for (size_t k = n - 1; k >= 1; --k) row[k] += row[k - 1];
    }
    Int s(0);
    for (const Int& b : row) {
      Int b2 = b * b;
      s += b2 * b2;
    }
    a.emplace_back(Rat(s));
  }
  return a;
}

// n^3 C_n = (2n-1)(13n^2-13n+4) C_{n-1} + 3(n-1)(3n-2)(3n-4) C_{n-2}
inline std::vector<Rat> level7_seq(size_t n_terms) {
  std::vector<Rat> a;
  a.reserve(n_terms);
  for (size_t n = 0; n < n_terms; ++n) {
    if (n == 0) { a.emplace_back(1); continue; }
    if (n == 1) { a.emplace_back(4); continue; }
    long nl = static_cast<long>(n);
    Rat t1 = Rat(2 * nl - 1) * Rat(13 * nl * nl - 13 * nl + 4) * a[n - 1];
    Rat t2 = Rat(3) * Rat(nl - 1) * Rat(3 * nl - 2) * Rat(3 * nl - 4) * a[n - 2];
    a.push_back((t1 + t2) / Rat(nl * nl * nl));
  }
  return a;
}

// a_n = (1/4)_n (3/4)_n / n!^2 * sum_j (1/2)_j^3 (1/2)_{n-j} / (j!^3 (n-j)!)
inline std::vector<Rat> conv_seq_ex5(size_t n_terms) {
  std::vector<Rat> half_cubed, half_lin, invfact;
  Rat h3(1), h1(1), f(1);
  for (size_t j = 0; j < n_terms; ++j) {
    half_cubed.push_back(h3);
    half_lin.push_back(h1);
    invfact.push_back(Rat(1) / f);
    Rat hj = make_rat(1, 2) + static_cast<long>(j);
    h3 *= hj * hj * hj;
    h1 *= hj;
    f *= static_cast<long>(j) + 1;
  }
  for (size_t j = 0; j < n_terms; ++j) {
    Rat i = invfact[j];
    half_cubed[j] *= i * i * i;
    half_lin[j] *= i;
  }
  std::vector<Rat> a;
  a.reserve(n_terms);
  Rat outer(1);  // (1/4)_n (3/4)_n / n!^2
  for (size_t n = 0; n < n_terms; ++n) {
    Rat inner(0);
    for (size_t j = 0; j <= n; ++j) inner += half_cubed[j] * half_lin[n - j];
    a.push_back(outer * inner);
    Rat nl = make_rat(static_cast<long>(n));
    outer *= (make_rat(1, 4) + nl) * (make_rat(3, 4) + nl) /
             ((nl + 1) * (nl + 1));
  }
  return a;
}

// dense product of truncated series
inline std::vector<Rat> ser_mul(const std::vector<Rat>& x,
                                const std::vector<Rat>& y, size_t n) {
  std::vector<Rat> z(n, Rat(0));
  for (size_t i = 0; i < x.size() && i < n; ++i) {
    if (x[i] == 0) continue;
    for (size_t j = 0; i + j < n && j < y.size(); ++j) {
      if (y[j] == 0) continue;
      z[i + j] += x[i] * y[j];
    }
  }
  return z;
}

// (1 + c x)^alpha as a truncated series
inline std::vector<Rat> ser_binom_pow(const Rat& c, const Rat& alpha, size_t n) {
  std::vector<Rat> out(n, Rat(0));
  if (n == 0) return out;
  out[0] = 1;
  Rat cur(1);
  for (size_t m = 1; m < n; ++m) {
    cur *= (alpha - (static_cast<long>(m) - 1)) / static_cast<long>(m) * c;
    out[m] = cur;
  }
  return out;
}

// coefficients C_m of the pulled-back series sum C_m u^m where
// u = (256/9) x (1 + x/3)^{-4}; the source series is the weighted
// five-parameter family composed with its own cubic argument map
inline std::vector<Rat> ntr_c_seq(size_t n_out) {
  // C_m only depends on x-coefficients up to order m since u has a simple
  // zero at the origin
  size_t n = n_out + 4;
  const Rat h = make_rat(1, 2);
  std::vector<Rat> g = ser_mul(ser_binom_pow(make_rat(3), h, n),
                               ser_binom_pow(make_rat(1, 3), -h, n), n);
  std::vector<Rat> s(n, Rat(0));
  Rat cn(1);
  for (size_t k = 0; 3 * k < n; ++k) {
    long kl = static_cast<long>(k);
    std::vector<Rat> base = ser_binom_pow(make_rat(1, 3), make_rat(-4 * kl), n);
    Rat scale = cn;
    {
      Rat r = make_rat(256, 9) / make_rat(81);
      Rat p(1);
      for (long i = 0; i < kl; ++i) p *= r;
      scale *= p;
    }
    for (size_t m = 0; 3 * k + m < n; ++m) {
      if (base[m] == 0) continue;
      Rat c = scale * base[m];
      s[3 * k + m] += c * make_rat(5 + 30 * kl);
      if (3 * k + m + 1 < n) s[3 * k + m + 1] += c * make_rat(-54 * kl);
    }
    for (Rat f : {h, make_rat(1, 8), make_rat(3, 8), make_rat(5, 8), make_rat(7, 8)})
      cn *= f + kl;
    Rat k1 = make_rat(kl + 1);
    cn /= k1 * k1 * k1 * k1 * k1;
  }
  s = ser_mul(g, s, n);
  // u = (256/9) x (1 + 3x)^{-4}
  std::vector<Rat> ux(n, Rat(0));
  if (n > 1) ux[1] = make_rat(256, 9);
  std::vector<Rat> u = ser_mul(ser_binom_pow(make_rat(3), make_rat(-4), n), ux, n);
  std::vector<Rat> out;
  out.reserve(n_out);
  std::vector<Rat> p(n, Rat(0));
  p[0] = 1;
  std::vector<Rat> r = s;
  for (size_t m = 0; m < n_out; ++m) {
    Rat c = r[m] / p[m];
    out.push_back(c);
    for (size_t i = m; i < n; ++i) r[i] -= c * p[i];
    p = ser_mul(p, u, n);
  }
  return out;
}

}  // namespace pitr
