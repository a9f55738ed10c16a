#pragma once

// Exact big-integer / big-rational helpers: factorials, binomials,
// Pochhammer symbols, parsing and printing of rationals.

#include "pitr/mpcore.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace pitr {

inline Int factorial_int(unsigned long n) {
  Int r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

inline Int binomial_int(unsigned long n, unsigned long k) {
  if (k > n) return Int(0);
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

// (s)_n = s(s+1)...(s+n-1), exact; (s)_0 = 1
inline Rat pochhammer(const Rat& s, unsigned long n) {
  Rat acc(1);
  Rat t = s;
  for (unsigned long k = 0; k < n; ++k) {
    acc *= t;
    t += 1;
  }
  return acc;
}

inline bool is_nonpositive_int(const Rat& q) {
  return q.get_den() == 1 && sgn(q) <= 0;
}

inline std::string rat_to_string(const Rat& q) { return q.get_str(); }

inline Rat rat_from_string(const std::string& s) {
  Rat q;
  if (q.set_str(s, 10) != 0)
    throw std::invalid_argument("bad rational literal: " + s);
  if (mpz_sgn(mpq_denref(q.get_mpq_t())) == 0)
    throw std::invalid_argument("zero denominator: " + s);
  q.canonicalize();
  return q;
}

// squarefree decomposition q = (a/b)^2 * m with m squarefree positive integer;
// used to push square roots of rationals into canonical c*sqrt(m) form.
// Trial division up to a fixed bound; registry values stay far below it.
struct SqrtSplit {
  Rat outside;  // a/b
  Int inside;   // m, squarefree
};

inline void split_square_int(const Int& n_in, Int& outer, Int& inner) {
  Int n = n_in;
  outer = 1;
  inner = 1;
  if (n == 0) { outer = 0; return; }
  auto strip = [&](unsigned long p) {
    Int P(static_cast<long>(p));
    while (mpz_divisible_p(n.get_mpz_t(), P.get_mpz_t())) {
      Int p2 = P * P;
      if (mpz_divisible_p(n.get_mpz_t(), p2.get_mpz_t())) {
        n /= p2;
        outer *= P;
      } else {
        n /= P;
        inner *= P;
        break;
      }
    }
  };
  strip(2);
  for (unsigned long p = 3; p < 100000; p += 2) {
    Int P(static_cast<long>(p));
    if (P * P > n) break;
    strip(p);
  }
  // leftover: either 1, a prime, or a perfect square of something large
  if (n > 1) {
    Int root;
    if (mpz_perfect_square_p(n.get_mpz_t())) {
      mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
      outer *= root;
    } else {
      inner *= n;
    }
  }
}

inline SqrtSplit sqrt_split(const Rat& q) {
  if (sgn(q) < 0) throw std::domain_error("sqrt_split: negative");
  Int no, ni, do_, di;
  split_square_int(Int(q.get_num()), no, ni);
  split_square_int(Int(q.get_den()), do_, di);
  // sqrt(num/den) = sqrt(num*den)/den; keep it simple: multiply inside parts
  // num = no^2 ni, den = do^2 di => sqrt = (no/(do di)) sqrt(ni di)
  SqrtSplit s;
  s.inside = ni * di;
  s.outside = Rat(no, do_ * di);
  s.outside.canonicalize();
  return s;
}

// exact nth root of a rational if it is a perfect nth power
inline bool perfect_root(const Rat& q, unsigned long n, Rat& out) {
  if (sgn(q) < 0 && n % 2 == 0) return false;
  Int num = Int(q.get_num()), den = Int(q.get_den());
  bool negate = false;
  if (sgn(num) < 0) { negate = true; num = -num; }
  Int rn, rd;
  if (!mpz_root(rn.get_mpz_t(), num.get_mpz_t(), n)) return false;
  if (!mpz_root(rd.get_mpz_t(), den.get_mpz_t(), n)) return false;
  out = Rat(negate ? -rn : rn, rd);
  out.canonicalize();
  return true;
}

inline HReal rat_to_hreal(const Rat& q, const PrecisionCtx& ctx) {
  return HReal::from_rat(q, ctx);
}

}
