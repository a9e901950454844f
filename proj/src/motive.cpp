#include "drinfeld/motive.hpp"

namespace drinfeld {

namespace {

int64_t qpow(const FieldPtr& f, size_t k) {
  int64_t r = 1;
  for (size_t i = 0; i < k; ++i) r = sat_mul(r, static_cast<int64_t>(f->q()));
  return r;
}

RationalT rconst(const CInf& c) { return RationalT::from(TPoly::constant(c), c.field()); }
RationalT rzero(const FieldPtr& f) { return RationalT::from(TPoly(), f); }

void add_all(CheckReport& rep, const TMatrix& m) {
  for (const auto& s : m.data())
    for (const auto& c : s.coeffs()) rep.add(c.horizon());
}

}  // namespace

OmegaSeries omega_series(const FieldPtr& f, size_t T, int64_t target) {
  const int64_t q = static_cast<int64_t>(f->q());
  const int64_t e = f->e();
  if (e % (q - 1) != 0) raise(ErrorKind::GridTooCoarse, "Omega needs a grid divisible by q - 1");
  auto c = f->nth_root(f->neg(f->one()), q - 1);
  if (!c) raise(ErrorKind::ResidueFieldTooSmall, "-1 has no (q-1)-st root in " + f->describe());
  OmegaSeries om;
  om.root = CInf::monomial(f, *c, -e / (q - 1));
  om.prefactor = om.root.pow(q).inverse();
  const int64_t vp = om.prefactor.valuation();
  size_t I = 1;
  while (I < 40 && sat_add(vp, sat_mul(qpow(f, I + 1) - q, e)) < target) ++I;
  om.factors = I;
  std::vector<CInf> c_(T, CInf::zero(f));
  c_[0] = om.prefactor;
  for (size_t i = 1; i <= I; ++i) {
    const int64_t shift = sat_mul(qpow(f, i), e);
    for (size_t j = T; j-- > 1;) c_[j] = c_[j] - c_[j - 1].shifted(shift);
  }
  // Dropped factors perturb coefficient j >= 1 at valuation >= vp + q^(I+1) e + (j-1) q e.
  for (size_t j = 1; j < T; ++j) {
    const int64_t err = sat_add(sat_add(vp, sat_mul(qpow(f, I + 1), e)),
                                sat_mul(static_cast<int64_t>(j) - 1, sat_mul(q, e)));
    c_[j] = c_[j].truncated(std::min(err, sat_add(target, sat_mul(static_cast<int64_t>(j), e))));
  }
  om.series = TSeries(std::move(c_), TailBound{vp, sat_mul(q, e)});
  return om;
}

CInf omega_at_theta(const OmegaSeries& om) {
  return specialize_t(om.series, CInf::theta_pow(om.prefactor.field(), 1));
}

CInf pi_tilde(const OmegaSeries& om) { return -omega_at_theta(om).inverse(); }

CheckReport verify_omega(const OmegaSeries& om, const Precision& prec) {
  const FieldPtr& f = om.prefactor.field();
  CheckReport rep;
  rep.check = "omega_difference";
  rep.param("q", std::to_string(f->q()));
  rep.param("T", std::to_string(om.series.order()));
  rep.param("factors", std::to_string(om.factors));
  const TSeries tw = om.series.twist(1);
  const CInf thq = CInf::theta_pow(f, static_cast<int64_t>(f->q()));
  const TSeries r = om.series - (tw.shifted(1) - tw.scaled(thq));
  for (const auto& c : r.coeffs()) rep.add(c.horizon());
  return rep.finish(prec.pass_level());
}

CInf xi_constant(const FieldPtr& f) {
  const int64_t q = static_cast<int64_t>(f->q());
  if (f->config().m % 2 != 0)
    raise(ErrorKind::ResidueFieldTooSmall, "xi lives in F_{q^2}; use an even extension degree m");
  auto c = f->nth_root(f->neg(f->one()), q - 1);
  if (!c) raise(ErrorKind::ResidueFieldTooSmall, "X^(q-1) = -1 has no root in " + f->describe());
  return CInf::constant(f, *c);
}

RMatrix phi_matrix(const DrinfeldModule& rho) {
  const FieldPtr& f = rho.field();
  const RationalT t_minus_theta =
      RationalT::from(TPoly({-rho.coeff(0), CInf::one(f)}), f);
  if (rho.rank() == 1) {
    if (!rho.u().equals_to_precision(CInf::one(f)))
      return RMatrix(1, 1, {RationalT{t_minus_theta.num, TPoly::constant(rho.u().frobenius(-1))}});
    return RMatrix(1, 1, {t_minus_theta});
  }
  const CInf u2 = rho.u().frobenius(-2);
  const CInf k1 = rho.kappa().frobenius(-1);
  const TPoly den = TPoly::constant(u2);
  return RMatrix(2, 2,
                 {rzero(f), rconst(CInf::one(f)), RationalT{t_minus_theta.num, den},
                  RationalT{TPoly::constant(-k1), den}});
}

PsiSystem psi_matrix(const DrinfeldModule& rho, const std::vector<CInf>& omega, const Precision& prec,
                     size_t T) {
  const FieldPtr& f = rho.field();
  if (rho.rank() != 2) raise(ErrorKind::Config, "Psi is built for rank 2 modules");
  if (!(rho.u().exact() && rho.u().equals_to_precision(CInf::one(f))))
    raise(ErrorKind::Config, "Psi expects the normalized form u = 1; normalize the module first");
  if (omega.size() != 2) raise(ErrorKind::ShapeMismatch, "Psi needs two periods");
  const int64_t W = prec.working(*f);
  PsiSystem sys{rho, omega, {}, omega_series(f, T, sat_add(W, 2 * f->e())), xi_constant(f), T, {}};
  for (const CInf& w : omega)
    sys.f.push_back(agf_build(rho, w, static_cast<size_t>(prec.pole_count), sat_add(W, 2 * f->e())));
  const TSeries xo = sys.om.series.scaled(sys.xi);
  const CInf kappa = rho.kappa();
  const TSeries f1a = agf_series(sys.f[0], T, 1), f1b = agf_series(sys.f[0], T, 2);
  const TSeries f2a = agf_series(sys.f[1], T, 1), f2b = agf_series(sys.f[1], T, 2);
  sys.psi = TMatrix(2, 2,
                    {-(xo * f2a), xo * f1a, xo * (f2a.scaled(kappa) + f2b),
                     -(xo * (f1a.scaled(kappa) + f1b))});
  return sys;
}

CheckReport verify_psi(const PsiSystem& sys, const Precision& prec) {
  CheckReport rep;
  rep.check = "psi_difference";
  rep.param("module", sys.rho.describe());
  rep.param("T", std::to_string(sys.T));
  const TMatrix phi1 = to_series(twist(phi_matrix(sys.rho), 1), sys.T);
  const TMatrix r = sys.psi - phi1 * twist(sys.psi, 1);
  add_all(rep, r);
  return rep.finish(prec.pass_level());
}

DetInvariance verify_det_invariance(const PsiSystem& sys, const Precision& prec) {
  DetInvariance out;
  out.report.check = "det_psi_sigma_invariance";
  out.report.param("module", sys.rho.describe());
  out.report.param("T", std::to_string(sys.T));
  const TSeries xo = sys.om.series.scaled(sys.xi);
  const TSeries f1a = agf_series(sys.f[0], sys.T, 1), f1b = agf_series(sys.f[0], sys.T, 2);
  const TSeries f2a = agf_series(sys.f[1], sys.T, 1), f2b = agf_series(sys.f[1], sys.T, 2);
  out.d = xo * (f2a * f1b - f1a * f2b);
  const TSeries r = out.d - out.d.twist(1);
  for (const auto& c : r.coeffs()) out.report.add(c.horizon());
  // Consistency with the determinant of the built matrix.
  const TSeries r2 = sys.psi.det() - xo * out.d;
  for (const auto& c : r2.coeffs()) out.report.add(c.horizon());
  out.report.note = "det Psi/(xi Omega) constant term " + out.d.coeff(0).to_string();
  out.report.finish(prec.pass_level());
  return out;
}

PeriodMatrix specialize_psi(const PsiSystem& sys, const Precision& prec) {
  const FieldPtr& f = sys.rho.field();
  const int64_t W = prec.working(*f);
  const CInf theta = CInf::theta_pow(f, 1);
  const CInf kappa = sys.rho.kappa();
  const CInf om = omega_at_theta(sys.om);
  const CInf xo = sys.xi * om;
  PeriodMatrix pm;
  pm.report.check = "psi_specialization";
  pm.report.param("module", sys.rho.describe());
  std::vector<CInf> a, b;
  for (const AGF& g : sys.f) {
    a.push_back(agf_eval_twisted(g, 1, theta, W));
    b.push_back(agf_eval_twisted(g, 2, theta, W));
  }
  pm.psi_theta = CMatrix(2, 2,
                         {-(xo * a[1]), xo * a[0], xo * (kappa * a[1] + b[1]), -(xo * (kappa * a[0] + b[0]))});
  for (const CInf& w : sys.omega) pm.quasi.push_back(quasi_period_eval(sys.rho, w, W).series);
  const CInf& w1 = sys.omega[0];
  const CInf& w2 = sys.omega[1];
  const CInf& F1 = pm.quasi[0];
  const CInf& F2 = pm.quasi[1];
  // xi/pi~ = -xi Omega(theta).
  const CInf s = -xo;
  pm.expected = CMatrix(2, 2, {s * F2, -(s * F1), s * w2, -(s * w1)});
  const CMatrix& Y = pm.psi_theta;
  const CInf det = Y(0, 0) * Y(1, 1) - Y(0, 1) * Y(1, 0);
  if (det.empty()) raise(ErrorKind::SingularSpecialization, "Psi(theta) is singular to precision");
  const CInf di = det.inverse();
  pm.P = CMatrix(2, 2, {Y(1, 1) * di, -(Y(0, 1) * di), -(Y(1, 0) * di), Y(0, 0) * di});
  for (const auto& c : (pm.psi_theta - pm.expected).data()) pm.report.add(c.horizon());
  for (const auto& c : (pm.P * pm.psi_theta - identity(f, 2)).data()) pm.report.add(c.horizon());
  const CMatrix defp(2, 2, {w1, -F1, w2, -F2});
  for (const auto& c : (pm.P - defp).data()) pm.report.add(c.horizon());
  pm.report.finish(prec.pass_level());
  return pm;
}

LegendreResult legendre_invariant(const DrinfeldModule& rho, const CInf& w1, const CInf& w2,
                                  const CInf& omega_theta, const Precision& prec) {
  const FieldPtr& f = rho.field();
  const int64_t W = prec.working(*f);
  const CInf F1 = quasi_period_eval(rho, w1, W).series;
  const CInf F2 = quasi_period_eval(rho, w2, W).series;
  LegendreResult out;
  out.bracket = (w1 * F2 - w2 * F1) * omega_theta;
  if (out.bracket.empty() || out.bracket.valuation() != 0)
    raise(ErrorKind::NotAUnit, "Legendre bracket is not a unit: " + out.bracket.to_string());
  const Fe lead = out.bracket.leading();
  out.tail = (out.bracket - CInf::constant(f, lead)).horizon();
  out.invariant = f->pow(lead, static_cast<int64_t>(f->q()) - 1);
  out.orientation = f->neg(f->mul(lead, xi_constant(f).leading()));
  return out;
}

std::vector<CInf> orient_basis(const DrinfeldModule& rho, const std::vector<CInf>& omega,
                               const CInf& omega_theta, const Precision& prec) {
  const FieldPtr& f = rho.field();
  const LegendreResult L = legendre_invariant(rho, omega.at(0), omega.at(1), omega_theta, prec);
  if (!f->in_base_field(L.orientation))
    raise(ErrorKind::IndependenceFailure, "Legendre bracket is not an F_q multiple of pi~/xi");
  return {omega[0], omega[1].scaled(f->inv(L.orientation))};
}

CheckReport verify_tensor(const PsiSystem& sys, const Precision& prec) {
  const FieldPtr& f = sys.rho.field();
  CheckReport rep;
  rep.check = "tensor_constructions";
  rep.param("module", sys.rho.describe());
  rep.param("T", std::to_string(sys.T));
  const RMatrix phi = phi_matrix(sys.rho);
  const RMatrix phi1 = twist(phi, 1);
  const TMatrix psi1 = twist(sys.psi, 1);
  const TMatrix pp = kronecker(sys.psi, sys.psi);
  const TMatrix r = pp - to_series(kronecker(phi1, phi1), sys.T) * kronecker(psi1, psi1);
  add_all(rep, r);

  const RationalT dphi = phi.det();
  const RationalT dk = kronecker(phi, phi).det();
  const RationalT d4 = dphi * dphi * dphi * dphi;
  const bool kron_det = dk.equals_to_precision(d4);
  const RationalT minus_t_theta = RationalT::from(TPoly({sys.rho.coeff(0), -CInf::one(f)}), f);
  const bool wedge_mult = dphi.equals_to_precision(minus_t_theta);

  const TSeries dpsi = sys.psi.det();
  const TSeries w = dpsi - phi1.det().to_series(sys.T) * psi1.det();
  for (const auto& c : w.coeffs()) rep.add(c.horizon());
  rep.note = std::string("det(Phi(x)Phi) = det(Phi)^4: ") + (kron_det ? "yes" : "no") +
             "; det Phi = -(t - theta): " + (wedge_mult ? "yes" : "no");
  return rep.finish(prec.pass_level(), kron_det && wedge_mult);
}

}  // namespace drinfeld
