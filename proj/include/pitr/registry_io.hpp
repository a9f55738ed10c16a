#pragma once
#include <pitr/identities.hpp>
#include <pitr/transforms.hpp>

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace pitr {

inline constexpr const char* kRegistrySchemaLine = "# pitr registry schema 1";

// one "[kind name]" block with its key/value lines in file order; the file
// order is the canonical order, so serialization round-trips byte for byte
struct RegEntry {
  std::string kind, name, src;
  std::vector<std::pair<std::string, std::string>> fields;

  std::string where() const { return src + ", entry [" + kind + " " + name + "]"; }

  const std::string* find(const std::string& key) const {
    for (const auto& [k, v] : fields)
      if (k == key) return &v;
    return nullptr;
  }

  const std::string& need(const std::string& key) const {
    const std::string* v = find(key);
    if (!v) throw std::runtime_error(where() + ": missing field '" + key + "'");
    return *v;
  }
};

struct RegFile {
  std::string src;
  std::vector<RegEntry> entries;
};

namespace detail {

inline std::string reg_trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace detail

inline std::vector<std::string> split_list(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(detail::reg_trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(detail::reg_trim(cur));
  if (out.size() == 1 && out[0].empty()) out.clear();
  return out;
}

inline std::vector<Rat> rat_list(const std::string& s) {
  std::vector<Rat> out;
  for (const auto& t : split_list(s, ',')) out.push_back(rat_from_string(t));
  return out;
}

inline RegFile parse_registry_text(const std::string& text, const std::string& src) {
  RegFile f;
  f.src = src;
  std::istringstream in(text);
  std::string line;
  bool saw_schema = false;
  while (std::getline(in, line)) {
    std::string t = detail::reg_trim(line);
    if (!saw_schema) {
      if (t.empty()) continue;
      if (t != kRegistrySchemaLine)
        throw std::runtime_error(src + ": missing schema header '" +
                                 std::string(kRegistrySchemaLine) + "'");
      saw_schema = true;
      continue;
    }
    if (t.empty() || t[0] == '#') continue;
    if (t.front() == '[') {
      if (t.back() != ']')
        throw std::runtime_error(src + ": malformed entry header '" + t + "'");
      std::istringstream hs(t.substr(1, t.size() - 2));
      RegEntry e;
      e.src = src;
      std::string extra;
      if (!(hs >> e.kind >> e.name) || (hs >> extra))
        throw std::runtime_error(src + ": malformed entry header '" + t + "'");
      f.entries.push_back(std::move(e));
      continue;
    }
    size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error(src + ": expected 'key = value', got '" + t + "'");
    if (f.entries.empty())
      throw std::runtime_error(src + ": field before any entry: '" + t + "'");
    RegEntry& e = f.entries.back();
    std::string key = detail::reg_trim(t.substr(0, eq));
    std::string val = detail::reg_trim(t.substr(eq + 1));
    if (key.empty())
      throw std::runtime_error(e.where() + ": empty field key in '" + t + "'");
    if (e.find(key))
      throw std::runtime_error(e.where() + ": duplicate field '" + key + "'");
    e.fields.emplace_back(std::move(key), std::move(val));
  }
  if (!saw_schema)
    throw std::runtime_error(src + ": missing schema header '" +
                             std::string(kRegistrySchemaLine) + "'");
  return f;
}

inline std::string serialize_entry(const RegEntry& e) {
  std::string s = "[" + e.kind + " " + e.name + "]\n";
  for (const auto& [k, v] : e.fields) s += k + " = " + v + "\n";
  return s;
}

inline std::string serialize_registry(const RegFile& f) {
  std::string s = kRegistrySchemaLine;
  s += "\n";
  for (const auto& e : f.entries) {
    s += "\n";
    s += serialize_entry(e);
  }
  return s;
}

inline uint64_t fnv1a64(const std::string& bytes) {
  uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::string checksum_hex(uint64_t h) {
  static const char* kHex = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[static_cast<size_t>(i)] = kHex[h & 0xf];
    h >>= 4;
  }
  return s;
}

struct RegSequence {
  std::string name, kind;
  SeriesSeq seq;
  std::optional<PRecurrence> alt;  // recurrence form of a binomial sum
  long cutoff = 0;
};

struct RegistryRow {
  std::string name, kind;
  IdStatus status = IdStatus::kProven;
  std::vector<std::string> tags;
};

namespace detail {

inline SeqKind builtin_kind(const std::string& s, const RegEntry& e) {
  if (s == "quartic") return SeqKind::kQuartic;
  if (s == "level7") return SeqKind::kLevel7;
  if (s == "conv-ex5") return SeqKind::kConvEx5;
  if (s == "ntr-c") return SeqKind::kNtrC;
  if (s == "cubic-l14") return SeqKind::kCubicL14;
  throw std::runtime_error(e.where() + ": unknown builtin '" + s + "'");
}

inline PRecurrence parse_recurrence(const RegEntry& e) {
  PRecurrence rec;
  for (const auto& t : split_list(e.need("rows"), ';'))
    rec.q.push_back(poly_from_string(t));
  rec.initial = rat_list(e.need("initial"));
  return rec;
}

template <typename Fn>
auto named_guard(const RegEntry& e, Fn&& fn) {
  try {
    return fn();
  } catch (const std::exception& ex) {
    throw std::runtime_error(e.where() + ": " + ex.what());
  }
}

}  // namespace detail

inline RegSequence make_reg_sequence(const RegEntry& e) {
  return detail::named_guard(e, [&]() {
    RegSequence rs;
    rs.name = e.name;
    rs.kind = e.need("kind");
    if (const std::string* c = e.find("cutoff")) rs.cutoff = std::stol(*c);
    if (rs.kind == "hypergeometric") {
      std::vector<Rat> lo;
      if (const std::string* l = e.find("lower")) lo = rat_list(*l);
      rs.seq = SeriesSeq::hyper(HGParams(rat_list(e.need("upper")), lo));
    } else if (rs.kind == "binomial-sum") {
      rs.seq = SeriesSeq::named(detail::builtin_kind(e.need("builtin"), e));
      if (e.find("rows")) rs.alt = detail::parse_recurrence(e);
    } else if (rs.kind == "p-recursive") {
      rs.seq = SeriesSeq::recurrence(detail::parse_recurrence(e),
                                     rat_from_string(e.need("ratio-cap")));
    } else if (rs.kind == "series-extract") {
      rs.seq = SeriesSeq::named(detail::builtin_kind(e.need("builtin"), e));
    } else {
      throw std::runtime_error("unknown sequence kind '" + rs.kind + "'");
    }
    if (rat_from_string(e.need("ratio-cap")) != rs.seq.ratio_cap)
      throw std::runtime_error("declared ratio-cap disagrees with the sequence");
    return rs;
  });
}

struct Registry {
  RegFile seq_file, id_file, tr_file;
  std::vector<RegSequence> sequences;
  std::vector<RamanujanIdentity> identities;
  std::vector<IdentityTemplate> templates;
  std::vector<TransformRule> rules;
  std::vector<Certificate> certificates;
  std::vector<LimitSpec> limits;
  std::vector<PullbackSpec> pullbacks;

  const RegSequence& sequence(const std::string& n) const {
    for (const auto& s : sequences)
      if (s.name == n) return s;
    throw std::runtime_error("registry: no sequence named '" + n + "'");
  }
  const RamanujanIdentity* identity_ptr(const std::string& n) const {
    for (const auto& i : identities)
      if (i.name == n) return &i;
    return nullptr;
  }
  const IdentityTemplate* template_ptr(const std::string& n) const {
    for (const auto& t : templates)
      if (t.name == n) return &t;
    return nullptr;
  }
  const TransformRule& rule(const std::string& n) const {
    for (const auto& r : rules)
      if (r.name == n) return r;
    throw std::runtime_error("registry: no rule named '" + n + "'");
  }
  const Certificate* certificate_ptr(const std::string& n) const {
    for (const auto& c : certificates)
      if (c.name == n) return &c;
    return nullptr;
  }
  const LimitSpec& limit(const std::string& n) const {
    for (const auto& l : limits)
      if (l.name == n) return l;
    throw std::runtime_error("registry: no limit point named '" + n + "'");
  }
  const PullbackSpec& pullback(const std::string& n) const {
    for (const auto& p : pullbacks)
      if (p.name == n) return p;
    throw std::runtime_error("registry: no pullback check named '" + n + "'");
  }

  uint64_t checksum() const {
    return fnv1a64(serialize_registry(seq_file) + serialize_registry(id_file) +
                   serialize_registry(tr_file));
  }

  // filter: empty lists everything, a status name selects by status,
  // anything else selects by tag (unknown tags list nothing)
  std::vector<RegistryRow> list(const std::string& filter) const {
    std::vector<RegistryRow> rows;
    auto add = [&](const std::string& name, const std::string& kind, IdStatus st,
                   const std::vector<std::string>& tags) {
      if (!filter.empty()) {
        bool ok = false;
        try {
          ok = id_status_from_string(filter) == st;
        } catch (const std::invalid_argument&) {
          for (const auto& t : tags)
            if (t == filter) ok = true;
        }
        if (!ok) return;
      }
      rows.push_back({name, kind, st, tags});
    };
    for (const auto& i : identities) add(i.name, "identity", i.status, i.tags);
    for (const auto& t : templates) add(t.name, "template", t.status, t.tags);
    return rows;
  }
};

inline RamanujanIdentity make_reg_identity(const RegEntry& e, const Registry& reg) {
  return detail::named_guard(e, [&]() {
    RamanujanIdentity id;
    id.name = e.name;
    id.seq_name = e.need("seq");
    id.seq = reg.sequence(id.seq_name).seq;
    id.z = quad_from_string(e.need("z"));
    std::vector<QuadExt> w;
    for (const auto& t : split_list(e.need("weight"), ';'))
      w.push_back(quad_from_string(t));
    id.weight = WeightPoly(std::move(w));
    id.rhs = cf_from_string(e.need("rhs"));
    id.status = id_status_from_string(e.need("status"));
    if (const std::string* t = e.find("tags")) id.tags = split_list(*t, ',');
    if (const std::string* d = e.find("decay")) id.decay = rat_from_string(*d);
    return id;
  });
}

inline IdentityTemplate make_reg_template(const RegEntry& e) {
  return detail::named_guard(e, [&]() {
    IdentityTemplate t;
    t.name = e.name;
    t.family = template_family_from_string(e.need("family"));
    for (const auto& row : split_list(e.need("grid"), ';')) {
      std::vector<Rat> prm = rat_list(row);
      if (prm.size() != t.arity())
        throw std::runtime_error("grid point of wrong arity");
      t.grid.push_back(std::move(prm));
    }
    t.status = id_status_from_string(e.need("status"));
    if (const std::string* tg = e.find("tags")) t.tags = split_list(*tg, ',');
    return t;
  });
}

inline TransformRule make_reg_rule(const RegEntry& e, const Registry& reg) {
  return detail::named_guard(e, [&]() {
    TransformRule r;
    r.name = e.name;
    r.lhs_seq = e.need("lhs");
    r.rhs_seq = e.need("rhs");
    r.lhs = reg.sequence(r.lhs_seq).seq;
    r.rhs = reg.sequence(r.rhs_seq).seq;
    r.u = ratfun_from_string(e.need("u"));
    r.y = ratfun_from_string(e.need("y"));
    r.g = fp_from_string(e.need("g"));
    const std::string* w0 = e.find("w0");
    const std::string* w1 = e.find("w1");
    if (!!w0 != !!w1)
      throw std::runtime_error("w0 and w1 must be given together");
    if (w0) r.rhs_weight = {ratfun_from_string(*w0), ratfun_from_string(*w1)};
    r.validity = interval_from_string(e.need("validity"));
    r.samples = rat_list(e.need("samples"));
    validate_rule(r);
    return r;
  });
}

inline Certificate make_reg_certificate(const RegEntry& e) {
  return detail::named_guard(e, [&]() {
    Certificate c;
    c.name = e.name;
    c.rule = e.need("rule");
    c.target = ratfun_from_string(e.need("target"));
    c.factored = fp_from_string(e.need("factored"));
    return c;
  });
}

inline LimitSpec make_reg_limit(const RegEntry& e) {
  return detail::named_guard(e, [&]() {
    LimitSpec l;
    l.name = e.name;
    l.rule = e.need("rule");
    l.x0 = quad_from_string(e.need("x0"));
    l.archetype = archetype_from_string(e.need("archetype"));
    const std::string& side = e.need("side");
    if (side != "lhs" && side != "rhs")
      throw std::runtime_error("side must be lhs or rhs");
    l.singular_lhs = side == "lhs";
    if (const std::string* c = e.find("cert")) l.cert = *c;
    if (const std::string* g = e.find("gamma")) l.gamma = cf_from_string(*g);
    return l;
  });
}

inline PullbackSpec make_reg_pullback(const RegEntry& e) {
  return detail::named_guard(e, [&]() {
    PullbackSpec p;
    p.name = e.name;
    p.rule = e.need("rule");
    const std::string& side = e.need("side");
    if (side != "lhs" && side != "rhs")
      throw std::runtime_error("side must be lhs or rhs");
    p.singular_lhs = side == "lhs";
    if (const std::string* x0 = e.find("x0")) {
      p.x0 = quad_from_string(*x0);
    } else {
      p.root_poly = poly_from_string(e.need("x0-poly"));
      std::vector<Rat> br = rat_list(e.need("x0-bracket"));
      if (br.size() != 2 || !(br[0] < br[1]))
        throw std::runtime_error("x0-bracket needs an ordered pair");
      p.bracket_lo = br[0];
      p.bracket_hi = br[1];
    }
    const std::string& ap = e.need("approach");
    if (ap != "above" && ap != "below")
      throw std::runtime_error("approach must be above or below");
    p.from_above = ap == "above";
    if (const std::string* s = e.find("step")) p.step = rat_from_string(*s);
    return p;
  });
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(path + ": cannot open registry file");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline Registry load_registry(const std::string& dir) {
  Registry reg;
  reg.seq_file = parse_registry_text(read_text_file(dir + "/sequences.reg"),
                                     dir + "/sequences.reg");
  reg.id_file = parse_registry_text(read_text_file(dir + "/identities.reg"),
                                    dir + "/identities.reg");
  reg.tr_file = parse_registry_text(read_text_file(dir + "/transforms.reg"),
                                    dir + "/transforms.reg");
  for (const auto& e : reg.seq_file.entries) {
    if (e.kind != "sequence")
      throw std::runtime_error(e.where() + ": only sequence entries belong here");
    reg.sequences.push_back(make_reg_sequence(e));
  }
  for (const auto& e : reg.id_file.entries) {
    if (e.kind == "identity")
      reg.identities.push_back(make_reg_identity(e, reg));
    else if (e.kind == "template")
      reg.templates.push_back(make_reg_template(e));
    else
      throw std::runtime_error(e.where() + ": only identity and template entries belong here");
  }
  for (const auto& e : reg.tr_file.entries) {
    if (e.kind == "rule")
      reg.rules.push_back(make_reg_rule(e, reg));
    else if (e.kind == "certificate")
      reg.certificates.push_back(make_reg_certificate(e));
    else if (e.kind == "limit")
      reg.limits.push_back(make_reg_limit(e));
    else if (e.kind == "pullback")
      reg.pullbacks.push_back(make_reg_pullback(e));
    else
      throw std::runtime_error(e.where() + ": unknown entry kind '" + e.kind + "'");
  }
  return reg;
}

// registry text for a derived identity, as emitted by the translator
inline RegEntry identity_to_entry(const RamanujanIdentity& id) {
  RegEntry e;
  e.kind = "identity";
  e.name = id.name;
  e.fields.emplace_back("seq", id.seq_name);
  e.fields.emplace_back("z", quad_to_string(id.z));
  std::string w;
  for (long i = 0; i <= id.weight.degree(); ++i) {
    if (i) w += " ; ";
    w += quad_to_string(id.weight.coeff(static_cast<size_t>(i)));
  }
  e.fields.emplace_back("weight", w);
  e.fields.emplace_back("rhs", cf_to_string(id.rhs));
  e.fields.emplace_back("status", id_status_to_string(id.status));
  if (!id.tags.empty()) {
    std::string t;
    for (size_t i = 0; i < id.tags.size(); ++i) t += (i ? ", " : "") + id.tags[i];
    e.fields.emplace_back("tags", t);
  }
  if (id.decay) e.fields.emplace_back("decay", rat_to_string(*id.decay));
  return e;
}

}  // namespace pitr
