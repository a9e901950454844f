#include "drinfeld/suite.hpp"

#include <chrono>
#include <numeric>
#include <random>

#include "drinfeld/agf.hpp"
#include "drinfeld/log_extension.hpp"
#include "drinfeld/motive.hpp"

#ifdef DRINFELD_HAVE_OPENMP
#include <omp.h>
#endif

namespace drinfeld {

namespace {

struct Frac {
  int64_t n = 0, d = 1;
};

Frac make_frac(int64_t n, int64_t d) {
  if (d < 0) n = -n, d = -d;
  const int64_t g = std::gcd(n, d);
  return g ? Frac{n / g, d / g} : Frac{0, 1};
}
Frac sub(Frac a, Frac b) { return make_frac(a.n * b.d - b.n * a.d, a.d * b.d); }
bool less(Frac a, Frac b) { return a.n * b.d < b.n * a.d; }

Json monomial_json(const MonomialSpec& m) { return Json{{"c", m.c}, {"num", m.num}, {"den", m.den}}; }
MonomialSpec monomial_from(const Json& j) {
  if (j.is_number_integer()) return {j.get<int64_t>(), 0, 1};
  MonomialSpec m{j.value("c", int64_t{1}), j.value("num", int64_t{0}), j.value("den", int64_t{1})};
  if (m.den <= 0) raise(ErrorKind::Config, "theta exponent denominators must be positive");
  return m;
}

uint64_t qof(const ModuleRecipe& r) { return ipow(r.p, r.s); }

template <class F>
CheckReport guarded(const std::string& check, const std::string& module, F&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  CheckReport rep;
  try {
    rep = fn();
  } catch (const Error& err) {
    rep = CheckReport{};
    rep.check = check;
    rep.note = "error " + std::string(to_string(err.kind())) + ": " + err.what();
    rep.pass = false;
  }
  if (rep.check.empty()) rep.check = check;
  if (!module.empty()) rep.parameters.insert(rep.parameters.begin(), {"module", module});
  rep.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

void drop_param(CheckReport& r, const std::string& key) {
  std::erase_if(r.parameters, [&](const auto& kv) { return kv.first == key; });
}

CheckReport named(CheckReport r, const std::string& check) {
  r.check = check;
  drop_param(r, "module");
  return r;
}

}  // namespace

Json to_json(const ModuleRecipe& r) {
  Json j;
  j["name"] = r.name;
  j["p"] = r.p;
  j["s"] = r.s;
  j["rank"] = r.rank;
  j["kappa"] = monomial_json(r.kappa);
  j["u"] = monomial_json(r.u);
  return j;
}

ModuleRecipe recipe_from_json(const Json& j) {
  try {
    ModuleRecipe r;
    r.name = j.value("name", std::string("custom"));
    r.p = j.value("p", 3u);
    r.s = j.value("s", 1u);
    r.rank = j.value("rank", 2);
    if (j.contains("kappa")) r.kappa = monomial_from(j["kappa"]);
    if (j.contains("u")) r.u = monomial_from(j["u"]);
    if (r.rank != 1 && r.rank != 2) raise(ErrorKind::Config, "only ranks 1 and 2 are supported");
    if (r.rank == 1) r.kappa = {0, 0, 1};
    if (!is_prime(r.p)) raise(ErrorKind::Config, "p must be prime");
    if (((r.u.c % static_cast<int64_t>(r.p)) + r.p) % r.p == 0)
      raise(ErrorKind::Config, "the leading coefficient must be nonzero");
    return r;
  } catch (const Json::exception& ex) {
    raise(ErrorKind::Config, std::string("module recipe: ") + ex.what());
  }
}

ModuleRecipe sample_recipe(const std::string& name, uint32_t q) {
  uint32_t p = q, s = 1;
  for (uint32_t c = 2; c <= q; ++c)
    if (q % c == 0) {
      p = c;
      break;
    }
  while (ipow(p, s) < q) ++s;
  if (ipow(p, s) != q) raise(ErrorKind::Config, "q must be a prime power");
  ModuleRecipe r{name, p, s, 2, {1, 0, 1}, {1, 0, 1}};
  if (name == "carlitz") {
    r.rank = 1;
    r.kappa = {0, 0, 1};
  } else if (name == "theta+tau+tau^2") {
  } else if (name == "theta+theta*tau+tau^2") {
    r.kappa = {1, 1, 1};
  } else if (name == "theta+tau^2") {
    r.kappa = {0, 0, 1};
  } else {
    raise(ErrorKind::Config, "unknown sample module '" + name + "'");
  }
  return r;
}

std::vector<ModuleRecipe> sample_recipes(uint32_t q) {
  if (q == 3) return {sample_recipe("carlitz", 3), sample_recipe("theta+tau+tau^2", 3)};
  if (q == 5)
    return {sample_recipe("carlitz", 5), sample_recipe("theta+theta*tau+tau^2", 5),
            sample_recipe("theta+tau+tau^2", 5)};
  raise(ErrorKind::Config, "sample modules exist for q = 3 and q = 5");
}

CInf monomial_value(const MonomialSpec& m, const FieldPtr& f) {
  const Fe c = f->from_int(m.c);
  if (c.is_zero()) return CInf::zero(f);
  if ((m.num * f->e()) % m.den != 0)
    raise(ErrorKind::GridTooCoarse, "theta^(" + std::to_string(m.num) + "/" + std::to_string(m.den) +
                                        ") is not on the grid 1/" + std::to_string(f->e()));
  return CInf::monomial(f, c, -(m.num * f->e()) / m.den);
}

DrinfeldModule build_module(const ModuleRecipe& r, const FieldPtr& f) {
  if (r.rank == 1) return DrinfeldModule(f, {monomial_value(r.u, f)});
  return DrinfeldModule::rank2(f, monomial_value(r.kappa, f), monomial_value(r.u, f));
}

FieldChoice choose_field(const ModuleRecipe& r, const Precision& prec, int depth) {
  const uint64_t q = qof(r);
  const int64_t p = r.p;
  // Newton polygon of theta + sum a_j x^(q^j - 1), valuations in theta units.
  std::vector<std::pair<int64_t, Frac>> pts{{0, Frac{-1, 1}}};
  auto nonzero = [&](const MonomialSpec& m) { return ((m.c % p) + p) % p != 0; };
  if (r.rank == 2 && nonzero(r.kappa))
    pts.push_back({static_cast<int64_t>(q - 1), make_frac(-r.kappa.num, r.kappa.den)});
  const int64_t top = static_cast<int64_t>(r.rank == 2 ? q * q - 1 : q - 1);
  pts.push_back({top, make_frac(-r.u.num, r.u.den)});
  std::vector<int64_t> extra{r.kappa.den, r.u.den};
  size_t i = 0;
  while (i + 1 < pts.size()) {
    size_t best = i + 1;
    Frac bs = make_frac(sub(pts[i + 1].second, pts[i].second).n, sub(pts[i + 1].second, pts[i].second).d *
                                                                      (pts[i + 1].first - pts[i].first));
    for (size_t j = i + 2; j < pts.size(); ++j) {
      const Frac dv = sub(pts[j].second, pts[i].second);
      const Frac sl = make_frac(dv.n, dv.d * (pts[j].first - pts[i].first));
      if (!less(bs, sl)) bs = sl, best = j;
    }
    extra.push_back(bs.d);
    i = best;
  }
  FieldChoice out;
  out.config.p = r.p;
  out.config.s = r.s;
  out.config.depth = depth;
  out.config.e = minimal_grid(q, depth, extra);
  FieldChoice best;
  bool have = false;
  for (uint32_t m = 2; ipow(q, m) <= 32768; m += 2) {
    FieldConfig c = out.config;
    c.m = m;
    const FieldPtr f = Field::make(c);
    const DrinfeldModule rho = build_module(r, f);
    const int64_t W = prec.working(*f);
    const TorsionReport tr = torsion_points(rho, sat_add(W, 2 * f->e()));
    const size_t seeds = lattice_seeds(rho, tr, static_cast<size_t>(r.rank)).size();
    if (!have || seeds > best.seeds) {
      have = true;
      best.config = f->config();
      best.seeds = seeds;
    }
    if (seeds == static_cast<size_t>(r.rank)) break;
  }
  if (!have) raise(ErrorKind::ResidueFieldTooSmall, "no admissible residue field found");
  best.note = "e = " + std::to_string(best.config.e) + ", m = " + std::to_string(best.config.m) + ", " +
              std::to_string(best.seeds) + " of " + std::to_string(r.rank) + " independent torsion seeds";
  return best;
}

bool SuiteResult::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

std::vector<CheckReport> module_checks(const ModuleRecipe& r, const Precision& prec) {
  std::vector<CheckReport> out;
  FieldChoice fc;
  FieldPtr f;
  out.push_back(guarded("field_choice", r.name, [&] {
    fc = choose_field(r, prec);
    f = Field::make(fc.config);
    CheckReport rep;
    rep.check = "field_choice";
    rep.param("field", f->describe());
    rep.note = fc.note;
    return rep.finish(0);
  }));
  if (!f) return out;
  const DrinfeldModule rho = build_module(r, f);
  const int64_t W = prec.working(*f);
  const int64_t e = f->e();
  const size_t rank = static_cast<size_t>(r.rank);
  const CInf theta_inv = CInf::theta_pow(f, -1);

  TorsionReport tr;
  std::vector<CInf> omega;
  out.push_back(guarded("lattice", r.name, [&] {
    tr = torsion_points(rho, sat_add(W, 2 * e));
    CheckReport rep;
    rep.check = "lattice";
    rep.param("expected_periods", std::to_string(rank));
    for (const CInf& s : lattice_seeds(rho, tr, rank)) {
      const Period per = period_from_seed(rho, s, prec);
      omega.push_back(per.omega);
      rep.add(exp_eval(rho, per.omega, W).horizon());
    }
    rep.param("found_periods", std::to_string(omega.size()));
    rep.note = std::to_string(tr.roots.size()) + " of " + std::to_string(tr.expected) + " torsion roots";
    for (const auto& u : tr.unresolved) rep.note += "; " + u;
    return rep.finish(prec.pass_level(), omega.size() == rank);
  }));

  OmegaSeries om;
  out.push_back(guarded("omega_difference", r.name, [&] {
    om = omega_series(f, prec.t_terms, sat_add(W, 2 * e));
    return verify_omega(om, prec);
  }));

  if (rank == 1) {
    out.push_back(guarded("carlitz_period", r.name, [&] {
      if (omega.empty()) raise(ErrorKind::GridTooCoarse, "no period available");
      const CInf ratio = omega[0] / pi_tilde(om);
      CheckReport rep;
      rep.check = "carlitz_period";
      const Fe lead = ratio.leading();
      rep.add((ratio - CInf::constant(f, lead)).horizon());
      rep.param("ratio_leading", CInf::constant(f, lead).to_string());
      rep.param("ratio_valuation", std::to_string(ratio.valuation()));
      return rep.finish(prec.pass_level(), ratio.valuation() == 0 && f->in_base_field(lead));
    }));
    return out;
  }

  std::vector<std::pair<std::string, CInf>> us;
  if (!tr.roots.empty()) us.emplace_back("torsion", tr.roots[0]);
  us.emplace_back("theta^-1", theta_inv);
  if (!omega.empty()) us.emplace_back("omega1", omega[0]);
  const size_t T_fu = std::min<size_t>(24, prec.t_terms);
  for (const auto& [label, u] : us) {
    out.push_back(guarded("fu1", r.name, [&, label = label, u = u] {
      CheckReport rep = verify_fu1(rho, u, T_fu, prec);
      drop_param(rep, "module");
      drop_param(rep, "u");
      rep.param("u", label);
      return rep;
    }));
    out.push_back(guarded("fu2", r.name, [&, label = label, u = u] {
      CheckReport rep = verify_fu2(rho, u, prec);
      drop_param(rep, "module");
      drop_param(rep, "u");
      rep.param("u", label);
      return rep;
    }));
  }

  const size_t T = std::min<size_t>(16, prec.t_terms);
  std::optional<LogPoint> lp;
  std::optional<GVector> gv;
  out.push_back(guarded("log_difference", r.name, [&] {
    lp = log_point_from_alpha(rho, theta_inv, prec);
    gv = g_vector(rho, *lp, prec, T);
    CheckReport rep = named(verify_log_fneq(rho, *gv, prec), "log_difference");
    drop_param(rep, "lambda");
    rep.param("alpha", "theta^-1");
    return rep;
  }));
  out.push_back(guarded("log_specialization", r.name, [&] {
    if (!gv) raise(ErrorKind::VerificationFailed, "no log point");
    CheckReport rep = named(verify_log_specialization(*gv, prec), "log_specialization");
    drop_param(rep, "lambda");
    rep.param("alpha", "theta^-1");
    return rep;
  }));

  if (omega.size() < 2) return out;
  std::vector<CInf> basis;
  CInf omt;
  out.push_back(guarded("legendre", r.name, [&] {
    omt = omega_at_theta(om);
    basis = orient_basis(rho, omega, omt, prec);
    CheckReport rep;
    rep.check = "legendre";
    const Fe minus_one = f->neg(f->one());
    bool ok = true;
    auto one = [&](const std::string& label, const CInf& w1, const CInf& w2) {
      const LegendreResult L = legendre_invariant(rho, w1, w2, omt, prec);
      rep.param(label, CInf::constant(f, L.invariant).to_string());
      rep.add(L.tail);
      ok = ok && L.invariant == minus_one;
    };
    one("basis", basis[0], basis[1]);
    for (uint64_t c = 1; c < qof(r); ++c) {
      const Fe cf = f->pow(f->generator(), static_cast<int64_t>((f->order() - 1) / (qof(r) - 1) * c));
      one("scaled_" + std::to_string(c), basis[0].scaled(cf), basis[1]);
    }
    one("unimodular", basis[0] + CInf::theta_pow(f, 1) * basis[1], basis[1]);
    rep.note = "values are the (q-1)-st power of the bracket's leading coefficient; residuals are bracket tails";
    return rep.finish(1, ok);
  }));
  if (basis.empty()) return out;

  std::optional<PsiSystem> sys;
  out.push_back(guarded("psi_difference", r.name, [&] {
    sys = psi_matrix(rho, basis, prec, T);
    return named(verify_psi(*sys, prec), "psi_difference");
  }));
  if (!sys) return out;
  out.push_back(guarded("det_psi_invariance", r.name, [&] {
    DetInvariance d = verify_det_invariance(*sys, prec);
    return named(d.report, "det_psi_invariance");
  }));
  std::optional<PeriodMatrix> pm;
  out.push_back(guarded("psi_specialization", r.name, [&] {
    pm = specialize_psi(*sys, prec);
    return named(pm->report, "psi_specialization");
  }));
  out.push_back(guarded("tensor", r.name, [&] { return named(verify_tensor(*sys, prec), "tensor"); }));
  if (lp) {
    for (size_t n = 1; n <= 2; ++n) {
      out.push_back(guarded("psi_n_difference", r.name, [&, n] {
        std::vector<LogPoint> pts{*lp};
        if (n == 2) pts.push_back(log_point_from_lambda(rho, lp->lambda * CInf::theta_pow(f, 1), prec));
        ExtendedSystem X = extended_system(*sys, pts, prec);
        CheckReport rep = named(X.difference, "psi_n_difference");
        for (int64_t h : X.reconstruction.residual_valuations) rep.add(h);
        rep.note = "includes the generator reconstruction of Psi_n(theta)";
        return rep.finish(prec.pass_level(), X.reconstruction.pass);
      }));
    }
  }
  if (!pm || !gv) return out;
  const CInf pi = pi_tilde(sys->om);
  out.push_back(guarded("relation_tautological", r.name, [&] {
    RelationData d{basis[0], basis[1], pm->quasi[0], pm->quasi[1], pi, sys->xi, {basis[0]}, {pm->quasi[0]}};
    RelationCertificate c =
        relation_certificate(d, {CInf::one(f), CInf::zero(f), {CInf::one(f)}}, prec, CInf::zero(f));
    CheckReport rep = c.report;
    rep.check = "relation_tautological";
    rep.param("relation", "lambda1 = omega1, l1 = l11 = 1, B = 0");
    rep.add(*c.spec1);
    rep.add(*c.spec2);
    return rep.finish(prec.pass_level());
  }));
  out.push_back(guarded("relation_battery", r.name, [&] {
    RelationData d{basis[0], basis[1], pm->quasi[0], pm->quasi[1], pi, sys->xi, {gv->point.lambda}, {gv->quasi}};
    std::mt19937_64 rng(0x5eed0001);
    auto small = [&] {
      CInf x = CInf::zero(f);
      for (int k = 0; k < 3; ++k)
        x += CInf::constant(f, f->from_int(static_cast<int64_t>(rng() % r.p))) * CInf::theta_pow(f, k);
      return x;
    };
    CheckReport rep;
    rep.check = "relation_battery";
    rep.param("trials", "20");
    bool ok = true;
    for (int k = 0; k < 20; ++k) {
      CInf l1;
      do l1 = small();
      while (l1.is_exact_zero());
      const RelationCertificate c = relation_certificate(d, {small(), small(), {l1}}, prec);
      rep.add(c.residual_valuation);
      ok = ok && !c.report.pass && 10 * c.residual_valuation < 3 * prec.n;
    }
    rep.note = "every random relation must be refuted with residual valuation below 0.3 N";
    rep.required = (3 * prec.n + 9) / 10;
    rep.pass = ok;
    return rep;
  }));
  return out;
}

std::vector<CheckReport> algebra_checks(uint32_t q, const Precision& prec) {
  std::vector<CheckReport> out;
  const std::string tag = "q=" + std::to_string(q);
  const ModuleRecipe base = sample_recipe("theta+tau+tau^2", q);
  if (q == 3) {
    out.push_back(guarded("ore_adjoint", tag, [&] {
      FieldConfig c;
      c.p = base.p;
      c.s = base.s;
      c.m = 2;
      c.depth = 8;
      c.e = minimal_grid(q, 8);
      c.rel_cap = 1024 * c.e;
      const FieldPtr f = Field::make(c);
      std::mt19937_64 rng(0x5eed0002);
      auto coeff = [&] {
        CInf x = CInf::constant(f, Fe{static_cast<int32_t>(rng() % (f->order() - 1))});
        if (rng() % 2) x += CInf::constant(f, Fe{static_cast<int32_t>(rng() % (f->order() - 1))}) *
                            CInf::theta_pow(f, static_cast<int64_t>(rng() % 3) - 1);
        return x;
      };
      auto poly = [&] {
        const size_t d = rng() % 5;
        std::vector<CInf> a;
        for (size_t i = 0; i <= d; ++i) a.push_back(coeff());
        return SkewPoly(std::move(a));
      };
      CheckReport rep;
      rep.check = "ore_adjoint";
      rep.param("pairs", "100");
      bool ok = true;
      for (int k = 0; k < 100; ++k) {
        const SkewPoly a = poly(), b = poly();
        const SigmaPoly d = adjoint(a * b) - adjoint(b) * adjoint(a);
        ok = ok && d.is_zero_to_precision() && d.horizon() == kExact;
        rep.add(d.horizon());
      }
      return rep.finish(0, ok);
    }));
  }
  FieldChoice fc;
  FieldPtr f;
  try {
    fc = choose_field(base, prec);
    f = Field::make(fc.config);
  } catch (const Error& err) {
    CheckReport rep;
    rep.check = "algebra";
    rep.param("module", tag);
    rep.note = std::string("error ") + std::string(to_string(err.kind())) + ": " + err.what();
    out.push_back(rep);
    return out;
  }
  const DrinfeldModule rho = build_module(base, f);
  out.push_back(guarded("exp_log_inverse", tag, [&] {
    const SkewPoly E(exp_coeffs(rho, 6)), L(log_coeffs(rho, 6));
    CheckReport rep;
    rep.check = "exp_log_inverse";
    rep.param("through", "z^(q^5)");
    const SkewPoly el = E * L, le = L * E;
    bool ok = true;
    for (size_t i = 0; i <= 5; ++i) {
      const CInf want = i == 0 ? CInf::one(f) : CInf::zero(f);
      const CInf r1 = el.coeff(i) - want, r2 = le.coeff(i) - want;
      rep.add(r1.horizon());
      rep.add(r2.horizon());
      ok = ok && r1.empty() && r2.empty();
    }
    return rep.finish(prec.pass_level(), ok);
  }));
  out.push_back(guarded("quasi_recursion", tag, [&] {
    const auto c = quasi_period_coeffs(rho, Biderivation::delta1(rho), 7);
    const auto a = exp_coeffs(rho, 7);
    CheckReport rep;
    rep.check = "quasi_recursion";
    rep.param("depth", "6");
    bool ok = true;
    for (size_t i = 0; i <= 6; ++i) {
      const CInf want = i == 0 ? CInf::one(f) - a[0] : -a[i];
      const CInf d = c[i] - want;
      rep.add(d.horizon());
      ok = ok && d.empty();
    }
    return rep.finish(prec.pass_level(), ok);
  }));
  if (q == 3) {
    out.push_back(guarded("cm_commutation", tag, [&] {
      FieldConfig cc;
      cc.p = 3;
      cc.m = 2;
      cc.e = minimal_grid(3, 2);
      const FieldPtr g = Field::make(cc);
      const SkewPoly rt = DrinfeldModule(g, {CInf::zero(g), CInf::one(g)}).rho_t();
      CheckReport rep;
      rep.check = "cm_commutation";
      rep.param("rho", "theta+tau^2");
      size_t tested = 0;
      bool ok = true;
      for (int32_t k = 0; k + 1 < static_cast<int32_t>(g->order()); ++k) {
        const Fe c{k};
        if (g->in_base_field(c)) continue;
        const SkewPoly cs = SkewPoly::constant(CInf::constant(g, c));
        const SkewPoly d = cs * rt - rt * cs;
        ok = ok && d.is_zero_to_precision() && d.horizon() == kExact;
        rep.add(d.horizon());
        ++tested;
      }
      rep.param("elements", std::to_string(tested));
      return rep.finish(0, ok && tested > 0);
    }));
  }
  return out;
}

SuiteResult run_suite(const SuiteOptions& opts) {
  struct Task {
    const ModuleRecipe* module = nullptr;
    uint32_t q = 0;
  };
  std::vector<Task> tasks;
  for (const auto& m : opts.modules) tasks.push_back({&m, 0});
  for (uint32_t q : opts.algebra_q) tasks.push_back({nullptr, q});
  std::vector<std::vector<CheckReport>> results(tasks.size());
#ifdef DRINFELD_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (size_t i = 0; i < tasks.size(); ++i)
    results[i] = tasks[i].module ? module_checks(*tasks[i].module, opts.prec) : algebra_checks(tasks[i].q, opts.prec);
  SuiteResult out;
  for (auto& v : results)
    for (auto& c : v) out.checks.push_back(std::move(c));
  return out;
}

Json suite_to_json(const SuiteOptions& opts, const SuiteResult& r, bool with_time) {
  Json j;
  Json cfg;
  Json mods = Json::array();
  for (const auto& m : opts.modules) mods.push_back(to_json(m));
  cfg["modules"] = std::move(mods);
  cfg["algebra_q"] = opts.algebra_q;
  cfg["prec"] = Json{{"valuation_terms", opts.prec.n},     {"t_terms", opts.prec.t_terms},
                     {"guard", opts.prec.guard},           {"pole_count", opts.prec.pole_count},
                     {"tower_cap", opts.prec.tower_cap}};
  j["command"] = "verify";
  j["config"] = std::move(cfg);
  Json checks = Json::array();
  size_t passed = 0;
  double total = 0;
  for (const auto& c : r.checks) {
    checks.push_back(to_json(c, with_time));
    passed += c.pass ? 1 : 0;
    total += c.wall_time;
  }
  j["checks"] = std::move(checks);
  Json summary{{"total", r.checks.size()}, {"passed", passed}, {"failed", r.checks.size() - passed},
               {"all_pass", r.all_pass()}};
  if (with_time) summary["check_time"] = total;
  j["summary"] = std::move(summary);
  return j;
}

}  // namespace drinfeld
