#pragma once
#include <pitr/closed_form.hpp>
#include <pitr/series_eval.hpp>

#include <optional>
#include <string>
#include <vector>

namespace pitr {

enum class IdStatus { kProven, kConjectural, kSideIdentity };

inline std::string id_status_to_string(IdStatus s) {
  switch (s) {
    case IdStatus::kProven: return "proven";
    case IdStatus::kConjectural: return "conjectural";
    case IdStatus::kSideIdentity: return "side-identity";
  }
  throw std::logic_error("identity: bad status");
}

inline IdStatus id_status_from_string(const std::string& s) {
  if (s == "proven") return IdStatus::kProven;
  if (s == "conjectural") return IdStatus::kConjectural;
  if (s == "side-identity") return IdStatus::kSideIdentity;
  throw std::invalid_argument("identity: unknown status " + s);
}

// sum_n a_n w(n) z^n = rhs, with a_n from seq and w a polynomial of degree
// at most 3 over the quadratic field of z
struct RamanujanIdentity {
  std::string name;
  std::string seq_name;
  SeriesSeq seq;
  WeightPoly weight;
  QuadExt z;
  ClosedForm rhs;
  IdStatus status = IdStatus::kProven;
  std::vector<std::string> tags;
  // decay exponent of the unweighted coefficients, recorded for boundary
  // (z = -1) entries where the plain ratio test gives nothing
  std::optional<Rat> decay;

  bool has_tag(const std::string& t) const {
    for (const auto& x : tags)
      if (x == t) return true;
    return false;
  }
};

struct VerifyResult {
  bool pass = false;
  long digits = 0;  // decimal digits of agreement actually certified
  long terms_used = 0;
};

// left-hand side only; boundary alternating entries go through the
// accelerator, everything else through the certified partial sum
inline EvalReport eval_identity_lhs(const RamanujanIdentity& id, long target_digits) {
  if (id.z.is_rational() && id.z.a == -1)
    return eval_alternating_unit(id.seq, id.weight, target_digits);
  return eval_series(id.seq, id.weight, id.z, target_digits);
}

inline VerifyResult verify_identity(const RamanujanIdentity& id, long target_digits) {
  EvalReport rep = eval_identity_lhs(id, target_digits);
  PrecisionCtx ctx(static_cast<long>((target_digits + 12) * 3.3219) + 96, 32);
  HReal rhs = eval_closed_form(id.rhs, ctx);
  const double kLog2Of10 = 3.321928094887362;
  VerifyResult res;
  res.terms_used = rep.terms_used;
  res.pass = rep.value.close_to(rhs, -static_cast<double>(target_digits - 2) * kLog2Of10);
  HReal diff = (rep.value - rhs).abs();
  double bound = log2_add(diff.log2_abs(), diff.err_log2());
  res.digits = (bound >= 0.0) ? 0 : static_cast<long>(std::floor(-bound / kLog2Of10));
  return res;
}

// base^e as an exact constant, integer part split off the fractional root
inline ClosedForm rat_power_cf(long base, const Rat& e) {
  if (base <= 0) throw std::domain_error("rat_power_cf: base must be positive");
  long num = static_cast<long>(e.get_num().get_si());
  long den = static_cast<long>(e.get_den().get_si());
  long q = num / den, r = num % den;
  if (r < 0) {
    r += den;
    q -= 1;
  }
  Rat ipow(1);
  {
    Int b(base), p(1);
    long n = (q >= 0) ? q : -q;
    mpz_pow_ui(p.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(n));
    ipow = (q >= 0) ? Rat(p) : Rat(1) / Rat(p);
  }
  if (r == 0) return cf_rat(ipow);
  Int b(base), p(1);
  mpz_pow_ui(p.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(r));
  ClosedForm root = cf_root(Rat(p), den);
  if (ipow == 1) return root;
  return cf_prod({cf_rat(ipow), root});
}

// parametric families; each instance is produced from a tuple drawn from the
// registered grid
enum class TemplateFamily { kWhippleNeg1, kGsNeg8, kGsQuarter };

inline std::string template_family_to_string(TemplateFamily f) {
  switch (f) {
    case TemplateFamily::kWhippleNeg1: return "whipple-neg1";
    case TemplateFamily::kGsNeg8: return "gs-neg8";
    case TemplateFamily::kGsQuarter: return "gs-quarter";
  }
  throw std::logic_error("template: bad family");
}

inline TemplateFamily template_family_from_string(const std::string& s) {
  if (s == "whipple-neg1") return TemplateFamily::kWhippleNeg1;
  if (s == "gs-neg8") return TemplateFamily::kGsNeg8;
  if (s == "gs-quarter") return TemplateFamily::kGsQuarter;
  throw std::invalid_argument("template: unknown family " + s);
}

struct IdentityTemplate {
  std::string name;
  TemplateFamily family;
  std::vector<std::vector<Rat>> grid;
  IdStatus status = IdStatus::kProven;
  std::vector<std::string> tags;

  size_t arity() const {
    return family == TemplateFamily::kWhippleNeg1 ? 3 : 2;
  }
};

namespace detail {

inline void require_positive(const Rat& x, const char* what) {
  if (!(x > 0))
    throw std::domain_error(std::string("template: ") + what + " not positive");
}

}  // namespace detail

inline RamanujanIdentity instantiate_template(const IdentityTemplate& t,
                                              const std::vector<Rat>& prm) {
  if (prm.size() != t.arity())
    throw std::invalid_argument("template: wrong parameter count for " + t.name);
  Rat half = make_rat(1, 2);
  RamanujanIdentity id;
  id.status = t.status;
  id.tags = t.tags;
  {
    std::string n = t.name + "(";
    for (size_t i = 0; i < prm.size(); ++i)
      n += (i ? "," : "") + rat_to_string(prm[i]);
    id.name = n + ")";
  }
  if (t.family == TemplateFamily::kWhippleNeg1) {
    Rat p = prm[0], q = prm[1], r = prm[2];
    detail::require_positive(half + p - q - r, "gamma argument");
    detail::require_positive(half + p, "gamma argument");
    HGParams hp({half + p, half + q, half + r}, {1 + p - q, 1 + p - r});
    id.seq_name = "whipple(" + rat_to_string(p) + "," + rat_to_string(q) + "," +
                  rat_to_string(r) + ")";
    id.seq = SeriesSeq::hyper(hp);
    id.weight = WeightPoly({QuadExt(1 + 2 * p), QuadExt(4)});
    id.z = QuadExt(Rat(-1));
    id.rhs = cf_quot(cf_prod({cf_rat(Rat(2)), cf_gamma(1 + p - q), cf_gamma(1 + p - r)}),
                     cf_prod({cf_gamma(half + p - q - r), cf_gamma(half + p)}));
    id.decay = make_rat(-3, 2);
    return id;
  }
  Rat p = prm[0], q = prm[1];
  Rat p23 = 2 * p / 3;
  HGParams hp({half + 2 * p, half - 2 * q, half + 2 * q}, {1 + p - q, 1 + p + q});
  id.seq_name = "gs(" + rat_to_string(p) + "," + rat_to_string(q) + ")";
  id.seq = SeriesSeq::hyper(hp);
  if (t.family == TemplateFamily::kGsNeg8) {
    detail::require_positive(half + p23, "gamma argument");
    detail::require_positive(make_rat(1, 6) + p23, "gamma argument");
    id.weight = WeightPoly({QuadExt(1 + 4 * p), QuadExt(6)});
    id.z = QuadExt(make_rat(-1, 8));
    // 2^(5/2+2p) sqrt(pi) 3^(-2p) G(1+p-q) G(1+p+q) /
    //   (G(1/2+2p/3) G(1/6+2p/3) G(5/6+2p/3))
    ClosedForm num = cf_prod({rat_power_cf(2, make_rat(5, 2) + 2 * p), cf_pi_pow(1),
                              cf_gamma(1 + p - q), cf_gamma(1 + p + q)});
    ClosedForm den = cf_prod({rat_power_cf(3, 2 * p), cf_gamma(half + p23),
                              cf_gamma(make_rat(1, 6) + p23),
                              cf_gamma(make_rat(5, 6) + p23)});
    id.rhs = cf_quot(num, den);
    return id;
  }
  detail::require_positive(half + p23, "gamma argument");
  detail::require_positive(make_rat(5, 6) + p / 3 - q, "gamma argument");
  detail::require_positive(make_rat(5, 6) + p / 3 + q, "gamma argument");
  id.weight = WeightPoly({QuadExt(Rat(1))});
  id.z = QuadExt(make_rat(1, 4));
  // 2^(4(1+p)/3) pi 3^(-1-2p) G(1+p-q) G(1+p+q) /
  //   (G(1/2+2p/3) G(5/6+2p/3) G(5/6+p/3-q) G(5/6+p/3+q))
  ClosedForm num = cf_prod({rat_power_cf(2, 4 * (1 + p) / 3), cf_pi_pow(2),
                            cf_gamma(1 + p - q), cf_gamma(1 + p + q)});
  ClosedForm den = cf_prod({rat_power_cf(3, 1 + 2 * p), cf_gamma(half + p23),
                            cf_gamma(make_rat(5, 6) + p23),
                            cf_gamma(make_rat(5, 6) + p / 3 - q),
                            cf_gamma(make_rat(5, 6) + p / 3 + q)});
  id.rhs = cf_quot(num, den);
  return id;
}

inline std::vector<RamanujanIdentity> instantiate_all(const IdentityTemplate& t) {
  std::vector<RamanujanIdentity> out;
  out.reserve(t.grid.size());
  for (const auto& prm : t.grid) out.push_back(instantiate_template(t, prm));
  return out;
}

}  // namespace pitr
