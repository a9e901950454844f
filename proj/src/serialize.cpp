#include "drinfeld/serialize.hpp"

#include <cctype>

namespace drinfeld {

namespace {

Json horizon_json(int64_t h) { return h == kExact ? Json("exact") : Json(h); }

void require(const Json& j, const char* key) {
  if (!j.contains(key)) raise(ErrorKind::Config, std::string("missing key '") + key + "'");
}

bool same_field(const Field& f, const Json& j) {
  return j.value("p", 0u) == f.p() && j.value("s", 1u) == f.config().s && j.value("m", 0u) == f.config().m &&
         j.value("e", int64_t{0}) == f.e() &&
         (!j.contains("modulus") || j["modulus"].get<std::vector<uint32_t>>() == f.modulus());
}

}  // namespace

Json field_to_json(const Field& f) {
  Json j;
  j["p"] = f.p();
  j["s"] = f.config().s;
  j["m"] = f.config().m;
  j["e"] = f.e();
  j["modulus"] = f.modulus();
  return j;
}

FieldPtr field_from_json(const Json& j) {
  try {
    require(j, "p");
    require(j, "m");
    require(j, "e");
    FieldConfig c;
    c.p = j["p"].get<uint32_t>();
    c.s = j.value("s", 1u);
    c.m = j["m"].get<uint32_t>();
    c.e = j["e"].get<int64_t>();
    if (j.contains("modulus")) c.modulus = j["modulus"].get<std::vector<uint32_t>>();
    if (j.contains("depth")) c.depth = j["depth"].get<int>();
    return Field::make(std::move(c));
  } catch (const Json::exception& ex) {
    raise(ErrorKind::Config, std::string("field record: ") + ex.what());
  }
}

Json to_json(const CInf& x) {
  const Field& f = *x.field();
  Json j = field_to_json(f);
  j["prec"] = x.exact() ? Json(nullptr) : Json(x.prec());
  Json terms = Json::array();
  for (const auto& [ex, c] : x.terms()) terms.push_back(Json::array({ex, f.to_vector(c)}));
  j["terms"] = std::move(terms);
  return j;
}

CInf cinf_from_json(const Json& j, const FieldPtr& f) {
  if (!same_field(*f, j)) raise(ErrorKind::Config, "value encoded over a different field or grid");
  try {
    require(j, "terms");
    std::vector<std::pair<int64_t, Fe>> terms;
    for (const auto& t : j["terms"]) {
      const auto v = t.at(1).get<std::vector<uint32_t>>();
      if (v.size() != f->degree()) raise(ErrorKind::Config, "coefficient vector has the wrong length");
      terms.emplace_back(t.at(0).get<int64_t>(), f->from_vector(v));
    }
    const int64_t prec = (!j.contains("prec") || j["prec"].is_null()) ? kExact : j["prec"].get<int64_t>();
    return CInf::from_terms(f, std::move(terms), prec);
  } catch (const Json::exception& ex) {
    raise(ErrorKind::Config, std::string("value record: ") + ex.what());
  }
}

CInf cinf_from_json(const Json& j) { return cinf_from_json(j, field_from_json(j)); }

Json to_json(const TailBound& tb) {
  Json j;
  j["offset"] = horizon_json(tb.offset);
  j["slope"] = tb.slope;
  return j;
}

Json to_json(const TSeries& s) {
  Json j;
  j["T"] = s.order();
  j["tailBound"] = s.tail() ? to_json(*s.tail()) : Json(nullptr);
  Json c = Json::array();
  for (const CInf& x : s.coeffs()) c.push_back(to_json(x));
  j["coeffs"] = std::move(c);
  return j;
}

TSeries tseries_from_json(const Json& j, const FieldPtr& f) {
  try {
    require(j, "coeffs");
    std::vector<CInf> c;
    for (const auto& x : j["coeffs"]) c.push_back(cinf_from_json(x, f));
    if (c.empty()) raise(ErrorKind::Config, "a series needs at least one coefficient");
    std::optional<TailBound> tb;
    if (j.contains("tailBound") && !j["tailBound"].is_null()) {
      const Json& t = j["tailBound"];
      tb = TailBound{t["offset"].is_string() ? kExact : t["offset"].get<int64_t>(), t["slope"].get<int64_t>()};
    }
    return TSeries(std::move(c), tb);
  } catch (const Json::exception& ex) {
    raise(ErrorKind::Config, std::string("series record: ") + ex.what());
  }
}

Json precision_to_json(const Precision& p, const Field& f) {
  Json j;
  j["valuation_terms"] = p.n;
  j["t_terms"] = p.t_terms;
  j["depth"] = f.depth();
  j["guard"] = p.guard;
  j["pole_count"] = p.pole_count;
  j["tower_cap"] = p.tower_cap;
  return j;
}

Precision precision_from_json(const Json& j) {
  Precision p;
  try {
    p.n = j.value("valuation_terms", p.n);
    p.t_terms = j.value("t_terms", p.t_terms);
    p.guard = j.value("guard", p.guard);
    p.pole_count = j.value("pole_count", p.pole_count);
    p.tower_cap = j.value("tower_cap", p.tower_cap);
  } catch (const Json::exception& ex) {
    raise(ErrorKind::Config, std::string("precision record: ") + ex.what());
  }
  if (p.n <= 0 || p.t_terms == 0 || p.guard < 0 || p.pole_count < 0 || p.tower_cap <= 0)
    raise(ErrorKind::Config, "precision parameters must be positive");
  return p;
}

Json module_to_json(const DrinfeldModule& rho, const Precision& prec) {
  const Field& f = *rho.field();
  Json j = field_to_json(f);
  j["rank"] = rho.rank();
  j["kappa"] = rho.rank() == 2 ? to_json(rho.kappa()) : Json(nullptr);
  j["u"] = to_json(rho.u());
  j["prec"] = precision_to_json(prec, f);
  return j;
}

ModuleSpec module_from_json(const Json& j) {
  Json fj = j;
  if (j.contains("prec") && j["prec"].is_object() && j["prec"].contains("depth")) fj["depth"] = j["prec"]["depth"];
  const FieldPtr f = field_from_json(fj);
  const int rank = j.value("rank", 2);
  const Precision prec = j.contains("prec") ? precision_from_json(j["prec"]) : Precision{};
  auto coeff = [&](const char* key, CInf dflt) {
    if (!j.contains(key) || j[key].is_null()) return dflt;
    Json x = j[key];
    if (x.is_number_integer()) return CInf::from_int(f, x.get<int64_t>());
    for (const char* k : {"p", "s", "m", "e", "modulus"})
      if (!x.contains(k)) x[k] = field_to_json(*f)[k];
    return cinf_from_json(x, f);
  };
  if (rank == 1) {
    const CInf u = coeff("u", CInf::one(f));
    return {DrinfeldModule(f, {u}), prec};
  }
  if (rank != 2) raise(ErrorKind::Config, "only ranks 1 and 2 are supported");
  return {DrinfeldModule::rank2(f, coeff("kappa", CInf::zero(f)), coeff("u", CInf::one(f))), prec};
}

Json to_json(const AGF& g, const Precision& prec) {
  const FieldPtr& f = g.rho.field();
  Json j;
  j["module"] = module_to_json(g.rho, prec);
  j["u"] = to_json(g.u);
  j["I"] = g.pole_count();
  Json terms = Json::array();
  for (size_t i = 0; i < g.pole_count(); ++i)
    terms.push_back(Json::array({to_json(agf_pole(f, i)), to_json(g.numerators[i])}));
  j["terms"] = std::move(terms);
  j["tailBound"] = horizon_json(g.tail_bound(0));
  return j;
}

Json to_json(const CheckReport& r, bool with_time) {
  Json j;
  j["check"] = r.check;
  Json params = Json::object();
  for (const auto& [k, v] : r.parameters) params[k] = v;
  j["parameters"] = std::move(params);
  Json res = Json::array();
  for (int64_t h : r.residual_valuations) res.push_back(horizon_json(h));
  j["residual_valuations"] = std::move(res);
  j["min_residual"] = horizon_json(r.min_residual());
  j["required"] = r.required;
  j["pass"] = r.pass;
  if (!r.note.empty()) j["note"] = r.note;
  if (with_time) j["wall_time"] = r.wall_time;
  return j;
}

Json to_json(const ExtendedSystem& x) {
  Json j;
  j["n"] = x.n;
  Json pts = Json::array();
  for (const GVector& g : x.g) {
    Json p;
    p["lambda"] = to_json(g.point.lambda);
    p["alpha"] = to_json(g.point.alpha);
    p["provenance"] = g.point.provenance;
    pts.push_back(std::move(p));
  }
  j["points"] = std::move(pts);
  j["residuals"] = Json::array({to_json(x.difference, false), to_json(x.reconstruction, false)});
  Json gens = Json::array();
  for (const auto& [name, v] : x.generators) gens.push_back(Json{{"name", name}, {"value", to_json(v)}});
  j["generators"] = std::move(gens);
  return j;
}

CInf parse_value(std::string_view text, const FieldPtr& f) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(c);
  if (!t.empty() && t.front() == '{') {
    try {
      return cinf_from_json(Json::parse(t), f);
    } catch (const Json::exception& ex) {
      raise(ErrorKind::Config, std::string("value record: ") + ex.what());
    }
  }
  size_t i = 0;
  auto fail = [&](const std::string& why) -> CInf {
    raise(ErrorKind::Config, "cannot parse value '" + std::string(text) + "': " + why);
  };
  auto integer = [&](int64_t& out) {
    const size_t start = i;
    if (i < t.size() && (t[i] == '-' || t[i] == '+')) ++i;
    while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) ++i;
    if (i == start || (i == start + 1 && !std::isdigit(static_cast<unsigned char>(t[start])))) return false;
    out = std::stoll(t.substr(start, i - start));
    return true;
  };
  if (t.empty()) return fail("empty");
  CInf acc = CInf::zero(f);
  bool first = true;
  while (i < t.size()) {
    int64_t sign = 1;
    if (t[i] == '+' || t[i] == '-') {
      sign = t[i] == '-' ? -1 : 1;
      ++i;
    } else if (!first) {
      return fail("expected '+' or '-'");
    }
    first = false;
    int64_t c = 1;
    bool have_c = false;
    if (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) {
      integer(c);
      have_c = true;
      if (i < t.size() && t[i] == '*') ++i;
    }
    int64_t num = 0, den = 1;
    if (t.compare(i, 5, "theta") == 0) {
      i += 5;
      num = 1;
      if (i < t.size() && t[i] == '^') {
        ++i;
        const bool paren = i < t.size() && t[i] == '(';
        if (paren) ++i;
        if (!integer(num)) return fail("bad exponent");
        if (i < t.size() && t[i] == '/') {
          ++i;
          if (!integer(den) || den <= 0) return fail("bad exponent denominator");
        }
        if (paren) {
          if (i >= t.size() || t[i] != ')') return fail("missing ')'");
          ++i;
        }
      }
    } else if (!have_c) {
      return fail("expected a coefficient or theta");
    }
    if ((num * f->e()) % den != 0)
      raise(ErrorKind::GridTooCoarse, "theta^(" + std::to_string(num) + "/" + std::to_string(den) +
                                          ") is not on the grid 1/" + std::to_string(f->e()));
    const Fe fc = f->from_int(sign * c);
    if (!fc.is_zero()) acc += CInf::monomial(f, fc, -(num * f->e()) / den);
  }
  return acc;
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Config: return 2;
    case ErrorKind::VerificationFailed: return 4;
    default: return 3;
  }
}

}  // namespace drinfeld
