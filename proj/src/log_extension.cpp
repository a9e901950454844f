#include "drinfeld/log_extension.hpp"

namespace drinfeld {

namespace {

RationalT rconst(const CInf& c) { return RationalT::from(TPoly::constant(c), c.field()); }
RationalT rzero(const FieldPtr& f) { return RationalT::from(TPoly(), f); }

void require_normalized_rank2(const DrinfeldModule& rho) {
  if (rho.rank() != 2) raise(ErrorKind::Config, "g-vectors are built for rank 2 modules");
  if (!(rho.u().exact() && rho.u().equals_to_precision(CInf::one(rho.field()))))
    raise(ErrorKind::Config, "g-vectors expect the normalized form u = 1");
}

void check_pair(const DrinfeldModule& rho, const LogPoint& p, const Precision& prec) {
  const int64_t W = prec.working(*rho.field());
  const int64_t h = (exp_eval(rho, p.lambda, W) - p.alpha).horizon();
  if (h < prec.pass_level())
    raise(ErrorKind::VerificationFailed,
          "exp(lambda) - alpha reaches only " + std::to_string(h) + " (need " +
              std::to_string(prec.pass_level()) + ")");
}

}  // namespace

LogPoint log_point_from_lambda(const DrinfeldModule& rho, const CInf& lambda, const Precision& prec) {
  const int64_t W = prec.working(*rho.field());
  LogPoint p{lambda, exp_eval(rho, lambda, W), "given-lambda"};
  check_pair(rho, p, prec);
  return p;
}

LogPoint log_point_from_alpha(const DrinfeldModule& rho, const CInf& alpha, const Precision& prec) {
  const int64_t W = prec.working(*rho.field());
  LogPoint p{log_eval(rho, alpha, sat_add(W, rho.field()->e())), alpha, "lifted-from-alpha"};
  check_pair(rho, p, prec);
  return p;
}

GVector g_vector(const DrinfeldModule& rho, const LogPoint& p, const Precision& prec, size_t T) {
  require_normalized_rank2(rho);
  const FieldPtr& f = rho.field();
  const int64_t W = prec.working(*f);
  GVector g{p, agf_build(rho, p.lambda, static_cast<size_t>(prec.pole_count), sat_add(W, 2 * f->e())),
            {}, {}, {}, {}, {}};
  const CInf kappa = rho.kappa();
  const TSeries f1 = agf_series(g.f, T, 1), f2 = agf_series(g.f, T, 2);
  g.g1 = -(f1.scaled(kappa) + f2);
  g.g2 = -f1;
  const CInf theta = rho.coeff(0);
  const CInf a1 = agf_eval_twisted(g.f, 1, theta, W);
  const CInf a2 = agf_eval_twisted(g.f, 2, theta, W);
  g.g1_theta = -(kappa * a1 + a2);
  g.g2_theta = -a1;
  g.quasi = p.lambda.is_exact_zero() ? CInf::zero(f) : quasi_period_eval(rho, p.lambda, W).series;
  return g;
}

CheckReport verify_log_fneq(const DrinfeldModule& rho, const GVector& g, const Precision& prec) {
  CheckReport rep;
  rep.check = "log_difference";
  rep.param("module", rho.describe());
  rep.param("lambda", g.point.lambda.to_string());
  const size_t T = g.g1.order();
  const TMatrix phi1t = to_series(twist(phi_matrix(rho), 1), T).transpose();
  const TMatrix gv(2, 1, {g.g1, g.g2});
  const TMatrix rhs(2, 1, {g.g1.twist(1) + TSeries::constant(g.point.alpha.frobenius(1), T), g.g2.twist(1)});
  const TMatrix r = phi1t * gv - rhs;
  for (const auto& s : r.data())
    for (const auto& c : s.coeffs()) rep.add(c.horizon());
  return rep.finish(prec.pass_level());
}

CheckReport verify_log_specialization(const GVector& g, const Precision& prec) {
  CheckReport rep;
  rep.check = "log_specialization";
  rep.param("module", g.f.rho.describe());
  rep.param("lambda", g.point.lambda.to_string());
  rep.add((g.g1_theta - (g.point.lambda - g.point.alpha)).horizon());
  rep.add((g.g2_theta + g.quasi).horizon());
  return rep.finish(prec.pass_level());
}

ExtendedSystem extended_system(const PsiSystem& sys, const std::vector<LogPoint>& points,
                               const Precision& prec) {
  const FieldPtr& f = sys.rho.field();
  const size_t n = points.size();
  const size_t N = n + 2;
  const size_t T = sys.T;
  ExtendedSystem out;
  out.n = n;
  for (const LogPoint& p : points) out.g.push_back(g_vector(sys.rho, p, prec, T));

  const RMatrix phi = phi_matrix(sys.rho);
  std::vector<RationalT> pd(N * N, rzero(f));
  std::vector<TSeries> sd(N * N, TSeries::zero(f, T));
  for (size_t i = 0; i < 2; ++i)
    for (size_t j = 0; j < 2; ++j) {
      pd[i * N + j] = phi(i, j);
      sd[i * N + j] = sys.psi(i, j);
    }
  for (size_t k = 0; k < n; ++k) {
    const size_t row = 2 + k;
    const GVector& g = out.g[k];
    pd[row * N + 0] = rconst(g.point.alpha);
    pd[row * N + row] = rconst(CInf::one(f));
    for (size_t j = 0; j < 2; ++j) sd[row * N + j] = g.g1 * sys.psi(0, j) + g.g2 * sys.psi(1, j);
    sd[row * N + row] = TSeries::constant(CInf::one(f), T);
  }
  out.phi_n = RMatrix(N, N, std::move(pd));
  out.psi_n = TMatrix(N, N, std::move(sd));

  out.difference.check = "psi_n_difference";
  out.difference.param("module", sys.rho.describe());
  out.difference.param("n", std::to_string(n));
  out.difference.param("T", std::to_string(T));
  const TMatrix r = out.psi_n - to_series(twist(out.phi_n, 1), T) * twist(out.psi_n, 1);
  for (const auto& s : r.data())
    for (const auto& c : s.coeffs()) out.difference.add(c.horizon());
  out.difference.finish(prec.pass_level());

  const PeriodMatrix pm = specialize_psi(sys, prec);
  const CMatrix& Y = pm.psi_theta;
  const CInf s = -(sys.xi * omega_at_theta(sys.om));
  const CInf& w1 = sys.omega[0];
  const CInf& w2 = sys.omega[1];
  const CInf& F1 = pm.quasi[0];
  const CInf& F2 = pm.quasi[1];
  out.generators = {{"xi/pi", s}, {"omega1", w1}, {"omega2", w2}, {"F(omega1)", F1}, {"F(omega2)", F2}};
  std::vector<CInf> yd(N * N, CInf::zero(f));
  std::vector<CInf> xd(N * N, CInf::zero(f));
  for (size_t i = 0; i < 2; ++i)
    for (size_t j = 0; j < 2; ++j) {
      yd[i * N + j] = Y(i, j);
      xd[i * N + j] = pm.expected(i, j);
    }
  for (size_t k = 0; k < n; ++k) {
    const size_t row = 2 + k;
    const GVector& g = out.g[k];
    const std::string id = std::to_string(k + 1);
    out.generators.emplace_back("lambda" + id, g.point.lambda);
    out.generators.emplace_back("alpha" + id, g.point.alpha);
    out.generators.emplace_back("F(lambda" + id + ")", g.quasi);
    for (size_t j = 0; j < 2; ++j) yd[row * N + j] = g.g1_theta * Y(0, j) + g.g2_theta * Y(1, j);
    const CInf la = g.point.lambda - g.point.alpha;
    xd[row * N + 0] = s * (la * F2 - g.quasi * w2);
    xd[row * N + 1] = s * (g.quasi * w1 - la * F1);
    yd[row * N + row] = CInf::one(f);
    xd[row * N + row] = CInf::one(f);
  }
  out.psi_n_theta = CMatrix(N, N, std::move(yd));
  out.reconstruction.check = "psi_n_generators";
  out.reconstruction.param("module", sys.rho.describe());
  out.reconstruction.param("n", std::to_string(n));
  for (const auto& c : (out.psi_n_theta - CMatrix(N, N, std::move(xd))).data())
    out.reconstruction.add(c.horizon());
  out.reconstruction.finish(prec.pass_level());
  return out;
}

RelationCertificate relation_certificate(const RelationData& d, const RelationCoefficients& ell,
                                         const Precision& prec, const std::optional<CInf>& B) {
  if (ell.ell.size() != d.lambda.size() || d.F_lambda.size() != d.lambda.size())
    raise(ErrorKind::ShapeMismatch, "one coefficient and one quasi-period per logarithm");
  const FieldPtr& f = d.omega1.field();
  RelationCertificate out;
  out.report.check = "relation";
  out.report.param("points", std::to_string(d.lambda.size()));
  CInf S = CInf::zero(f);
  CInf SF = CInf::zero(f);
  for (size_t i = 0; i < d.lambda.size(); ++i) {
    S += ell.ell[i] * d.lambda[i];
    SF += ell.ell[i] * d.F_lambda[i];
  }
  const CInf r = S - ell.ell11 * d.omega1 - ell.ell21 * d.omega2;
  out.residual_valuation = r.empty() ? kExact : r.valuation();
  out.report.add(r.horizon());
  if (B) {
    const CInf c = *B - SF;
    const CInf s1 = S * d.xi * d.F2 + c * d.xi * d.omega2 - ell.ell11 * d.pi;
    const CInf s2 = -(S * d.xi * d.F1) - c * d.xi * d.omega1 - ell.ell21 * d.pi;
    out.spec1 = s1.horizon();
    out.spec2 = s2.horizon();
    out.report.note = "spec1 " + std::to_string(*out.spec1) + ", spec2 " + std::to_string(*out.spec2);
  }
  out.report.finish(prec.pass_level());
  return out;
}

}  // namespace drinfeld
