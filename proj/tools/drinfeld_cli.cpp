#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "drinfeld/agf.hpp"
#include "drinfeld/log_extension.hpp"
#include "drinfeld/motive.hpp"
#include "drinfeld/serialize.hpp"
#include "drinfeld/suite.hpp"

using namespace drinfeld;

namespace {

const std::vector<std::string> kCommands = {"exp-eval", "log-eval", "torsion", "periods",    "quasi-period", "agf",
                                            "omega",    "psi",      "specialize", "log-point", "extend",     "verify"};

struct Options {
  std::string command;
  std::string config_path, module_path, sample;
  std::optional<int64_t> prec_n;
  std::optional<size_t> prec_t;
  std::optional<uint32_t> q;
  std::optional<int> pole_count, tower_cap;
  std::optional<int64_t> guard;
  bool compact = false;
  bool timing = false;
  std::string z, lambda;
  std::vector<std::string> alpha;
  unsigned twist = 0;
};

struct Context {
  Json echo;
  std::optional<ModuleRecipe> recipe;
  DrinfeldModule rho;
  Precision prec;
  Json field_note;
};

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorKind::Config, "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& ex) {
    raise(ErrorKind::Config, "'" + path + "' is not valid JSON: " + ex.what());
  }
}

void apply_flags(Precision& p, const Options& o) {
  if (o.prec_n) p.n = *o.prec_n;
  if (o.prec_t) p.t_terms = *o.prec_t;
  if (o.pole_count) p.pole_count = *o.pole_count;
  if (o.tower_cap) p.tower_cap = *o.tower_cap;
  if (o.guard) p.guard = *o.guard;
  if (p.n <= 0 || p.t_terms == 0 || p.guard < 0 || p.pole_count < 0 || p.tower_cap <= 0)
    raise(ErrorKind::Config, "precision parameters must be positive");
}

Json load_config(const Options& o) {
  Json cfg = o.config_path.empty() ? Json::object() : read_json(o.config_path);
  if (!cfg.is_object()) raise(ErrorKind::Config, "the configuration must be a JSON object");
  return cfg;
}

std::optional<Json> module_record(const Options& o, const Json& cfg) {
  if (!o.module_path.empty()) return read_json(o.module_path);
  if (cfg.contains("module")) return cfg["module"];
  return std::nullopt;
}

uint32_t requested_q(const Options& o, const Json& cfg) {
  if (o.q) return *o.q;
  return cfg.value("q", 3u);
}

Context resolve(const Options& o, const Json& cfg) {
  Context ctx;
  ctx.prec = cfg.contains("prec") ? precision_from_json(cfg["prec"]) : Precision{};
  const auto rec = module_record(o, cfg);
  if (rec && rec->contains("e")) {
    ModuleSpec ms = module_from_json(*rec);
    ctx.rho = ms.rho;
    if (rec->contains("prec") && !cfg.contains("prec")) ctx.prec = ms.prec;
    ctx.field_note = "taken from the module descriptor";
  } else {
    ModuleRecipe r = rec ? recipe_from_json(*rec)
                         : sample_recipe(o.sample.empty() ? cfg.value("sample", std::string("theta+tau+tau^2"))
                                                          : o.sample,
                                         requested_q(o, cfg));
    apply_flags(ctx.prec, o);
    const FieldChoice fc = choose_field(r, ctx.prec);
    ctx.rho = build_module(r, Field::make(fc.config));
    ctx.field_note = fc.note;
    ctx.recipe = r;
  }
  apply_flags(ctx.prec, o);
  Json echo;
  echo["file"] = cfg;
  if (ctx.recipe) echo["recipe"] = to_json(*ctx.recipe);
  echo["module"] = module_to_json(ctx.rho, ctx.prec);
  echo["field_choice"] = ctx.field_note;
  ctx.echo = std::move(echo);
  return ctx;
}

std::string param(const Options& o, const Json& cfg, const std::string& flag, const char* key,
                  const std::string& dflt) {
  if (!flag.empty()) return flag;
  if (cfg.contains("params") && cfg["params"].contains(key)) return cfg["params"][key].get<std::string>();
  return dflt;
}

Json matrix_json(const CMatrix& m) {
  Json rows = Json::array();
  for (size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json matrix_json(const TMatrix& m) {
  Json rows = Json::array();
  for (size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

struct Outcome {
  Json result;
  bool verified = true;
  std::optional<Error> error;
};

void note_report(Outcome& out, Json& into, const CheckReport& r) {
  into.push_back(to_json(r, false));
  out.verified = out.verified && r.pass;
}

std::vector<CInf> lattice_or_throw(const DrinfeldModule& rho, const Precision& prec) {
  std::vector<CInf> w;
  for (const Period& p : periods(rho, prec).periods) w.push_back(p.omega);
  return w;
}

Outcome run_module_command(const Options& o, const Json& cfg, Context& ctx) {
  const DrinfeldModule& rho = ctx.rho;
  const FieldPtr& f = rho.field();
  const Precision& prec = ctx.prec;
  const int64_t W = prec.working(*f);
  const std::string& cmd = o.command;
  Outcome out;
  Json& res = out.result;
  if (cmd == "exp-eval" || cmd == "log-eval") {
    const CInf z = parse_value(param(o, cfg, o.z, "z", "theta^-1"), f);
    res["z"] = to_json(z);
    res["value"] = to_json(cmd == "exp-eval" ? exp_eval(rho, z, W) : log_eval(rho, z, W));
  } else if (cmd == "torsion") {
    const TorsionReport tr = torsion_points(rho, sat_add(W, 2 * f->e()));
    Json roots = Json::array();
    for (const CInf& r : tr.roots) roots.push_back(to_json(r));
    Json vals = Json::array();
    for (const Slope& s : tr.valuations) vals.push_back(Json::array({s.num, s.den}));
    res["expected"] = tr.expected;
    res["complete"] = tr.complete();
    res["valuations"] = std::move(vals);
    res["roots"] = std::move(roots);
    res["unresolved"] = tr.unresolved;
  } else if (cmd == "periods") {
    const TorsionReport tr = torsion_points(rho, sat_add(W, 2 * f->e()));
    const auto seeds = lattice_seeds(rho, tr, static_cast<size_t>(rho.rank()));
    Json list = Json::array();
    std::vector<CInf> w;
    for (const CInf& s : seeds) {
      const Period p = period_from_seed(rho, s, prec);
      w.push_back(p.omega);
      list.push_back(Json{{"omega", to_json(p.omega)},
                          {"seed", to_json(p.seed)},
                          {"depth", p.depth},
                          {"exp_residual", (exp_eval(rho, p.omega, W)).horizon()}});
    }
    res["periods"] = std::move(list);
    res["complete"] = w.size() == static_cast<size_t>(rho.rank());
    res["unresolved"] = tr.unresolved;
    if (rho.rank() == 1 && !w.empty()) {
      const OmegaSeries om = omega_series(f, prec.t_terms, sat_add(W, 2 * f->e()));
      const CInf ratio = w[0] / pi_tilde(om);
      res["pi_tilde"] = to_json(pi_tilde(om));
      res["ratio"] = Json{{"leading", to_json(CInf::constant(f, ratio.leading()))},
                          {"valuation", ratio.valuation()},
                          {"in_Fq", f->in_base_field(ratio.leading())},
                          {"tail", (ratio - CInf::constant(f, ratio.leading())).horizon()}};
    }
    if (w.size() != static_cast<size_t>(rho.rank())) {
      std::string why = "only " + std::to_string(w.size()) + " independent torsion seeds";
      res["error"] = why;
      out.error = Error(ErrorKind::GridTooCoarse, why);
    }
  } else if (cmd == "quasi-period") {
    std::vector<CInf> zs;
    const std::string zt = param(o, cfg, o.z, "z", "");
    if (zt.empty())
      zs = lattice_or_throw(rho, prec);
    else
      zs.push_back(parse_value(zt, f));
    Json list = Json::array();
    for (const CInf& z : zs) {
      const QuasiPeriodValue v = quasi_period_eval(rho, z, W);
      list.push_back(Json{{"z", to_json(z)},
                          {"displayed", to_json(v.displayed)},
                          {"series", to_json(v.series)},
                          {"agreement", v.agreement}});
    }
    res["values"] = std::move(list);
  } else if (cmd == "agf") {
    const CInf u = parse_value(param(o, cfg, o.z, "z", "theta^-1"), f);
    const AGF g = agf_build(rho, u, static_cast<size_t>(prec.pole_count), sat_add(W, f->e()));
    res["agf"] = to_json(g, prec);
    res["twist"] = o.twist;
    res["series"] = to_json(agf_series(g, prec.t_terms, o.twist));
    Json checks = Json::array();
    if (rho.rank() >= 1) {
      note_report(out, checks, verify_fu1(rho, u, prec.t_terms, prec));
      note_report(out, checks, verify_fu2(rho, u, prec));
    }
    res["checks"] = std::move(checks);
  } else if (cmd == "omega") {
    const OmegaSeries om = omega_series(f, prec.t_terms, sat_add(W, 2 * f->e()));
    res["series"] = to_json(om.series);
    res["factors"] = om.factors;
    res["omega_theta"] = to_json(omega_at_theta(om));
    res["pi_tilde"] = to_json(pi_tilde(om));
    Json checks = Json::array();
    note_report(out, checks, verify_omega(om, prec));
    res["checks"] = std::move(checks);
  } else if (cmd == "psi" || cmd == "specialize" || cmd == "extend") {
    const std::vector<CInf> w = lattice_or_throw(rho, prec);
    const size_t T = std::min<size_t>(prec.t_terms, 16);
    const OmegaSeries om = omega_series(f, T, sat_add(W, 2 * f->e()));
    const std::vector<CInf> basis = orient_basis(rho, w, omega_at_theta(om), prec);
    const PsiSystem sys = psi_matrix(rho, basis, prec, T);
    res["periods"] = Json::array({to_json(basis[0]), to_json(basis[1])});
    Json checks = Json::array();
    if (cmd == "psi") {
      res["psi"] = matrix_json(sys.psi);
      note_report(out, checks, verify_psi(sys, prec));
      const DetInvariance d = verify_det_invariance(sys, prec);
      res["det_over_xi_omega"] = to_json(d.d);
      note_report(out, checks, d.report);
      note_report(out, checks, verify_tensor(sys, prec));
    } else if (cmd == "specialize") {
      const PeriodMatrix pm = specialize_psi(sys, prec);
      res["psi_theta"] = matrix_json(pm.psi_theta);
      res["expected"] = matrix_json(pm.expected);
      res["P"] = matrix_json(pm.P);
      res["quasi_periods"] = Json::array({to_json(pm.quasi[0]), to_json(pm.quasi[1])});
      note_report(out, checks, pm.report);
      const LegendreResult L = legendre_invariant(rho, basis[0], basis[1], omega_at_theta(om), prec);
      res["legendre"] = Json{{"invariant", to_json(CInf::constant(f, L.invariant))}, {"tail", L.tail}};
    } else {
      std::vector<std::string> alphas = o.alpha;
      if (alphas.empty() && cfg.contains("params") && cfg["params"].contains("alpha"))
        alphas = cfg["params"]["alpha"].get<std::vector<std::string>>();
      if (alphas.empty()) alphas = {"theta^-1"};
      std::vector<LogPoint> pts;
      for (const auto& a : alphas) pts.push_back(log_point_from_alpha(rho, parse_value(a, f), prec));
      const ExtendedSystem X = extended_system(sys, pts, prec);
      res["system"] = to_json(X);
      note_report(out, checks, X.difference);
      note_report(out, checks, X.reconstruction);
    }
    res["checks"] = std::move(checks);
  } else if (cmd == "log-point") {
    const std::string lt = param(o, cfg, o.lambda, "lambda", "");
    const std::string at = o.alpha.empty() ? param(o, cfg, "", "alpha", "theta^-1") : o.alpha.front();
    const LogPoint p = lt.empty() ? log_point_from_alpha(rho, parse_value(at, f), prec)
                                  : log_point_from_lambda(rho, parse_value(lt, f), prec);
    res["lambda"] = to_json(p.lambda);
    res["alpha"] = to_json(p.alpha);
    res["provenance"] = p.provenance;
    if (rho.rank() == 2) {
      const GVector g = g_vector(rho, p, prec, std::min<size_t>(prec.t_terms, 16));
      res["g1_theta"] = to_json(g.g1_theta);
      res["g2_theta"] = to_json(g.g2_theta);
      res["F_lambda"] = to_json(g.quasi);
      Json checks = Json::array();
      note_report(out, checks, verify_log_fneq(rho, g, prec));
      note_report(out, checks, verify_log_specialization(g, prec));
      res["checks"] = std::move(checks);
    }
  }
  return out;
}

int emit(const Json& j, const Options& o) {
  std::cout << (o.compact ? j.dump() : j.dump(2)) << "\n";
  return 0;
}

int error_exit(ErrorKind kind, const std::string& msg, const std::string& command) {
  const int code = exit_code(kind);
  Json rec{{"error", std::string(to_string(kind))}, {"message", msg}, {"command", command}, {"exit_code", code}};
  std::cerr << rec.dump() << "\n";
  return code;
}

int run(const Options& o) {
  const Json cfg = load_config(o);
  if (o.command == "verify") {
    SuiteOptions so;
    so.prec = cfg.contains("prec") ? precision_from_json(cfg["prec"]) : Precision{};
    apply_flags(so.prec, o);
    const auto rec = module_record(o, cfg);
    if (rec) {
      if (rec->contains("e")) raise(ErrorKind::Config, "verify takes a module recipe, not a fixed-grid descriptor");
      so.modules.push_back(recipe_from_json(*rec));
    } else if (!o.sample.empty()) {
      so.modules.push_back(sample_recipe(o.sample, requested_q(o, cfg)));
    } else if (o.q || cfg.contains("q")) {
      so.modules = sample_recipes(requested_q(o, cfg));
    } else {
      so.modules = sample_recipes(3);
      for (auto& m : sample_recipes(5)) so.modules.push_back(m);
    }
    std::set<uint32_t> qs;
    for (const auto& m : so.modules) qs.insert(static_cast<uint32_t>(ipow(m.p, m.s)));
    so.algebra_q.assign(qs.begin(), qs.end());
    const SuiteResult r = run_suite(so);
    Json j = suite_to_json(so, r, o.timing);
    j["config"]["file"] = cfg;
    emit(j, o);
    if (!r.all_pass()) {
      std::string failed;
      for (const auto& c : r.checks)
        if (!c.pass) failed += (failed.empty() ? "" : ", ") + c.check;
      return error_exit(ErrorKind::VerificationFailed, "failed checks: " + failed, o.command);
    }
    return 0;
  }
  Context ctx = resolve(o, cfg);
  Outcome out = run_module_command(o, cfg, ctx);
  Json j;
  j["command"] = o.command;
  j["config"] = ctx.echo;
  j["module"] = ctx.rho.describe();
  j["result"] = std::move(out.result);
  emit(j, o);
  if (out.error) return error_exit(out.error->kind(), out.error->what(), o.command);
  if (!out.verified) return error_exit(ErrorKind::VerificationFailed, "a reported check failed", o.command);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Drinfeld modules, Anderson generating functions and t-motive checks"};
  Options o;
  app.add_option("command", o.command, "Command to run")->required()->check(CLI::IsMember(kCommands));
  app.add_option("--config", o.config_path, "Run configuration (JSON)");
  app.add_option("--module", o.module_path, "Module recipe or descriptor (JSON)");
  app.add_option("--sample", o.sample, "Sample module: carlitz, theta+tau+tau^2, theta+theta*tau+tau^2, theta+tau^2");
  app.add_option("--prec-n", o.prec_n, "Target absolute precision N in grid units");
  app.add_option("--prec-t", o.prec_t, "Number of t-coefficients T");
  app.add_option("--q", o.q, "Size of the constant field for sample modules");
  app.add_option("--pole-count", o.pole_count, "Poles kept in generating functions (0 = automatic)");
  app.add_option("--tower-cap", o.tower_cap, "Maximal division tower depth");
  app.add_option("--guard", o.guard, "Guard precision in units of |theta|");
  app.add_flag("--json", o.compact, "Compact single-line JSON output");
  app.add_flag("--timing", o.timing, "Include wall times (output is then not reproducible)");
  app.add_option("--z", o.z, "Argument value, e.g. theta^-1 or 2*theta^(1/8)");
  app.add_option("--lambda", o.lambda, "Logarithm for log-point");
  app.add_option("--alpha", o.alpha, "Algebraic points for log-point and extend");
  app.add_option("--twist", o.twist, "Twist order for agf");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return error_exit(ErrorKind::Config, e.what(), o.command);
  }
  try {
    return run(o);
  } catch (const Error& e) {
    return error_exit(e.kind(), e.what(), o.command);
  } catch (const std::exception& e) {
    return error_exit(ErrorKind::Config, e.what(), o.command);
  }
}
