#include "drinfeld/agf.hpp"

namespace drinfeld {

namespace {

int64_t qpow(const FieldPtr& f, size_t k) {
  int64_t r = 1;
  for (size_t i = 0; i < k; ++i) r = sat_mul(r, static_cast<int64_t>(f->q()));
  return r;
}

long double lower_valuation(const CInf& x) {
  return static_cast<long double>(x.empty() ? x.prec() : x.valuation());
}

}  // namespace

int64_t AGF::tail_bound(unsigned n) const {
  if (u.is_exact_zero()) return kExact;
  const long double e = static_cast<long double>(rho.field()->e());
  return rho.exp_tail(pole_count(), lower_valuation(u) + e, n, kHuge);
}

CInf agf_pole(const FieldPtr& f, size_t i, unsigned n) { return CInf::theta_pow(f, qpow(f, i + n)); }

AGF agf_build(const DrinfeldModule& rho, const CInf& u, size_t I, int64_t target) {
  const FieldPtr& f = rho.field();
  AGF out{rho, u, {}};
  if (u.is_exact_zero()) return out;
  const long double e = static_cast<long double>(f->e());
  if (I == 0) {
    I = 1;
    while (I < 64 && rho.exp_tail(I, lower_valuation(u) + e, 0, target) < target) ++I;
  }
  CInf uq = u;
  for (size_t i = 0; i < I; ++i) {
    if (i > 0) uq = uq.frobenius(1);
    CInf num = rho.alpha(i) * uq;
    out.numerators.push_back(target == kExact ? num : num.truncated(target));
  }
  return out;
}

CInf agf_eval_twisted(const AGF& f, unsigned n, const CInf& t0, int64_t target) {
  const FieldPtr& fp = f.rho.field();
  if (f.u.is_exact_zero()) return CInf::zero(fp);
  const int64_t w = t0.is_exact_zero() ? kExact : (t0.empty() ? t0.prec() : t0.valuation());
  const int64_t first_dropped = sat_mul(qpow(fp, f.pole_count() + n), fp->e());
  if (w != kExact && -w >= first_dropped)
    raise(ErrorKind::DivergentEvaluation,
          "evaluation point is not inside the disc cleared by the stored poles; raise the pole count");
  CInf acc = CInf::zero(fp);
  for (size_t i = 0; i < f.pole_count(); ++i) {
    const CInf den = agf_pole(fp, i, n) - t0;
    if (den.empty())
      raise(ErrorKind::PoleHit, "t0 coincides with the pole theta^(q^" + std::to_string(i + n) + ")");
    CInf term = f.numerators[i].frobenius(n) / den;
    if (target != kExact) term = term.truncated(target);
    acc += term;
  }
  return acc.truncated(std::min(target, f.tail_bound(n)));
}

CInf agf_residue(const AGF& f, size_t i) {
  if (i >= f.pole_count()) raise(ErrorKind::Config, "residue index beyond the stored poles");
  return -f.numerators[i];
}

TSeries agf_series(const AGF& f, size_t T, unsigned n) {
  const FieldPtr& fp = f.rho.field();
  if (f.u.is_exact_zero()) return TSeries::zero(fp, T);
  const int64_t e = fp->e();
  const long double vu = lower_valuation(f.u);
  std::vector<CInf> twisted;
  for (const CInf& num : f.numerators) twisted.push_back(num.frobenius(n));
  std::vector<CInf> c;
  for (size_t j = 0; j < T; ++j) {
    CInf acc = CInf::zero(fp);
    for (size_t i = 0; i < f.pole_count(); ++i) {
      const int64_t shift = sat_mul(sat_mul(qpow(fp, i + n), static_cast<int64_t>(j + 1)), e);
      if (shift >= kHuge) break;
      acc += twisted[i].shifted(shift);
    }
    const int64_t dropped = f.rho.exp_tail(f.pole_count(),
                                           vu + static_cast<long double>(j + 1) * static_cast<long double>(e),
                                           n, kHuge);
    c.push_back(acc.truncated(dropped));
  }
  const int64_t offset = f.rho.exp_tail(0, vu + static_cast<long double>(e), n, kHuge);
  return TSeries(std::move(c), TailBound{offset, sat_mul(qpow(fp, n), e)});
}

TSeries agf_series_direct(const DrinfeldModule& rho, const CInf& u, size_t T, int64_t target) {
  const FieldPtr& f = rho.field();
  std::vector<CInf> c;
  for (size_t j = 0; j < T; ++j)
    c.push_back(exp_eval(rho, u * CInf::theta_pow(f, -static_cast<int64_t>(j + 1)), target));
  return TSeries(std::move(c));
}

CheckReport verify_fu1(const DrinfeldModule& rho, const CInf& u, size_t T, const Precision& prec) {
  const FieldPtr& f = rho.field();
  const int64_t W = prec.working(*f);
  CheckReport rep;
  rep.check = "fu1";
  rep.param("module", rho.describe());
  rep.param("u", u.to_string());
  rep.param("T", std::to_string(T));
  const AGF g = agf_build(rho, u, static_cast<size_t>(prec.pole_count), sat_add(W, f->e()));
  rep.param("I", std::to_string(g.pole_count()));
  TSeries lhs = TSeries::zero(f, T);
  for (int j = 1; j <= rho.rank(); ++j)
    lhs = lhs + agf_series(g, T, static_cast<unsigned>(j)).scaled(rho.coeff(j));
  const TSeries s0 = agf_series(g, T, 0);
  const TSeries rhs = s0.shifted(1) - s0.scaled(rho.coeff(0)) +
                      TSeries::constant(exp_eval(rho, u, sat_add(W, f->e())), T);
  const TSeries r = lhs - rhs;
  for (const CInf& c : r.coeffs()) rep.add(c.horizon());
  return rep.finish(prec.pass_level());
}

CheckReport verify_fu2(const DrinfeldModule& rho, const CInf& u, const Precision& prec) {
  const FieldPtr& f = rho.field();
  const int64_t W = prec.working(*f);
  CheckReport rep;
  rep.check = "fu2";
  rep.param("module", rho.describe());
  rep.param("u", u.to_string());
  const AGF g = agf_build(rho, u, static_cast<size_t>(prec.pole_count), sat_add(W, f->e()));
  rep.param("I", std::to_string(g.pole_count()));
  const CInf theta = rho.coeff(0);
  CInf lhs = CInf::zero(f);
  for (int j = 1; j <= rho.rank(); ++j)
    lhs += rho.coeff(j) * agf_eval_twisted(g, static_cast<unsigned>(j), theta, W);
  const CInf r = lhs + u - exp_eval(rho, u, W);
  rep.add(r.horizon());
  return rep.finish(prec.pass_level());
}

}  // namespace drinfeld
