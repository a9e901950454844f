#include "drinfeld/drinfeld_module.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace drinfeld {

namespace {

int64_t clip(long double x) {
  if (x >= static_cast<long double>(kHuge)) return kHuge;
  if (x <= -static_cast<long double>(kHuge)) return -kHuge;
  return static_cast<int64_t>(std::floor(x));
}

// theta^(q^i) - theta, or nullopt once the exponent leaves the representable range.
std::optional<CInf> pole_gap(const FieldPtr& f, size_t i) {
  const long double qi = std::pow(static_cast<long double>(f->q()), static_cast<long double>(i));
  if (qi * static_cast<long double>(f->e()) >= static_cast<long double>(kHuge) / 4) return std::nullopt;
  const int64_t k = static_cast<int64_t>(ipow(f->q(), static_cast<unsigned>(i)));
  return CInf::theta_pow(f, k) - CInf::theta_pow(f, 1);
}

CInf theta_inv_pow(const FieldPtr& f, int64_t n) { return CInf::theta_pow(f, -n); }

}  // namespace

DrinfeldModule::DrinfeldModule(FieldPtr f, std::vector<CInf> coeffs)
    : f_(std::move(f)), tables_(std::make_shared<Tables>()) {
  if (!f_) raise(ErrorKind::Config, "Drinfeld module without a field");
  if (coeffs.empty() || coeffs.size() > 2)
    raise(ErrorKind::Config, "only ranks 1 and 2 are supported");
  if (coeffs.back().empty()) raise(ErrorKind::Config, "leading coefficient of rho_t must be nonzero");
  a_.push_back(CInf::theta_pow(f_, 1));
  for (auto& c : coeffs) a_.push_back(std::move(c));
}

DrinfeldModule DrinfeldModule::carlitz(FieldPtr f) {
  CInf one = CInf::one(f);
  return DrinfeldModule(std::move(f), {one});
}

DrinfeldModule DrinfeldModule::rank2(FieldPtr f, const CInf& kappa, const CInf& u) {
  return DrinfeldModule(std::move(f), {kappa, u});
}

CInf DrinfeldModule::kappa() const { return rank() >= 2 ? a_[1] : CInf::zero(f_); }

std::string DrinfeldModule::describe() const {
  std::ostringstream os;
  os << "rho_t = theta";
  for (int j = 1; j <= rank(); ++j) {
    if (a_[static_cast<size_t>(j)].is_exact_zero()) continue;
    os << " + (" << a_[static_cast<size_t>(j)].to_string() << ")*tau";
    if (j > 1) os << "^" << j;
  }
  return os.str();
}

std::vector<CInf> DrinfeldModule::exp_coeffs(size_t n) const {
  std::lock_guard<std::mutex> lock(tables_->mu);
  auto& al = tables_->alpha;
  while (al.size() < n) {
    const size_t i = al.size();
    if (i == 0) {
      al.push_back(CInf::one(f_));
      continue;
    }
    auto gap = pole_gap(f_, i);
    if (!gap) {
      al.push_back(CInf::zero_to(f_, kHuge));
      continue;
    }
    CInf rhs = CInf::zero(f_);
    for (size_t j = 1; j < a_.size() && j <= i; ++j) {
      if (a_[j].is_exact_zero()) continue;
      rhs += a_[j] * al[i - j].frobenius(static_cast<int64_t>(j));
    }
    al.push_back(rhs / *gap);
  }
  return {al.begin(), al.begin() + static_cast<std::ptrdiff_t>(n)};
}

CInf DrinfeldModule::alpha(size_t i) const {
  {
    std::lock_guard<std::mutex> lock(tables_->mu);
    if (i < tables_->alpha.size()) return tables_->alpha[i];
  }
  exp_coeffs(i + 1);
  std::lock_guard<std::mutex> lock(tables_->mu);
  return tables_->alpha[i];
}

CInf DrinfeldModule::beta(size_t i) const {
  {
    std::lock_guard<std::mutex> lock(tables_->mu);
    if (i < tables_->beta.size()) return tables_->beta[i];
  }
  log_coeffs(i + 1);
  std::lock_guard<std::mutex> lock(tables_->mu);
  return tables_->beta[i];
}

std::vector<CInf> DrinfeldModule::log_coeffs(size_t n) const {
  std::lock_guard<std::mutex> lock(tables_->mu);
  auto& be = tables_->beta;
  while (be.size() < n) {
    const size_t i = be.size();
    if (i == 0) {
      be.push_back(CInf::one(f_));
      continue;
    }
    auto gap = pole_gap(f_, i);
    if (!gap) {
      be.push_back(CInf::zero_to(f_, -kHuge / 2));
      continue;
    }
    CInf rhs = CInf::zero(f_);
    for (size_t j = 1; j < a_.size() && j <= i; ++j) {
      if (a_[j].is_exact_zero()) continue;
      rhs += be[i - j] * a_[j].frobenius(static_cast<int64_t>(i - j));
    }
    be.push_back(-(rhs / *gap));
  }
  return {be.begin(), be.begin() + static_cast<std::ptrdiff_t>(n)};
}

long double DrinfeldModule::alpha_bound(size_t i) const {
  std::lock_guard<std::mutex> lock(tables_->mu);
  const auto& al = tables_->alpha;
  auto& b = tables_->bound;
  const long double q = static_cast<long double>(f_->q());
  const long double e = static_cast<long double>(f_->e());
  while (b.size() <= i) {
    const size_t k = b.size();
    const long double qk = std::pow(q, static_cast<long double>(k));
    if (k == 0) {
      b.push_back(0);
      continue;
    }
    if (k < al.size() && !al[k].empty() && al[k].prec() < kHuge && pole_gap(f_, k)) {
      b.push_back(static_cast<long double>(al[k].valuation()) / qk);
      continue;
    }
    long double best = std::numeric_limits<long double>::infinity();
    for (size_t j = 1; j < a_.size() && j <= k; ++j) {
      if (a_[j].is_exact_zero()) continue;
      const long double va = static_cast<long double>(a_[j].horizon());
      best = std::min(best, va / qk + b[k - j]);
    }
    b.push_back(e + best);
  }
  return b[i];
}

int64_t DrinfeldModule::exp_tail(size_t I, long double offset, unsigned shift, int64_t threshold) const {
  const long double q = static_cast<long double>(f_->q());
  const long double e = static_cast<long double>(f_->e());
  long double negv = 0;
  for (size_t j = 1; j < a_.size(); ++j)
    if (!a_[j].is_exact_zero())
      negv = std::max(negv, -static_cast<long double>(a_[j].horizon()));
  const size_t r = a_.size() - 1;
  long double best = std::numeric_limits<long double>::infinity();
  for (size_t j = I; j < I + 400; ++j) {
    const long double qj = std::pow(q, static_cast<long double>(j + shift));
    const long double bj = alpha_bound(j);
    best = std::min(best, qj * (bj + offset));
    if (j + 1 < r) continue;
    if (std::pow(q, static_cast<long double>(j + 1)) * e < 2 * negv) continue;
    long double wmin = bj;
    for (size_t k = j + 1 - r; k <= j; ++k) wmin = std::min(wmin, alpha_bound(k));
    if (wmin + offset <= 0) continue;
    const long double rest = std::pow(q, static_cast<long double>(j + 1 + shift)) * (wmin + offset);
    if (rest >= static_cast<long double>(threshold) || rest >= static_cast<long double>(kHuge))
      return clip(std::min(best, rest));
  }
  raise(ErrorKind::NoConvergence, "exponential tail bound could not be certified");
}

Biderivation Biderivation::delta1(const DrinfeldModule& rho) {
  std::vector<CInf> c{CInf::zero(rho.field())};
  for (int j = 1; j <= rho.rank(); ++j) c.push_back(-rho.coeff(j));
  return {SkewPoly(std::move(c))};
}

Biderivation Biderivation::tau(FieldPtr f) { return {SkewPoly::var_pow(std::move(f), 1)}; }

std::vector<CInf> exp_coeffs(const DrinfeldModule& rho, size_t n) { return rho.exp_coeffs(n); }
std::vector<CInf> log_coeffs(const DrinfeldModule& rho, size_t n) { return rho.log_coeffs(n); }

std::vector<CInf> quasi_period_coeffs(const DrinfeldModule& rho, const Biderivation& d, size_t n) {
  const FieldPtr& f = rho.field();
  const auto& dc = d.delta_t.coeffs();
  if (!dc.empty() && !dc[0].is_exact_zero())
    raise(ErrorKind::Config, "biderivation must have zero constant term");
  const std::vector<CInf> al = rho.exp_coeffs(n);
  std::vector<CInf> c;
  for (size_t i = 0; i < n; ++i) {
    if (i == 0) {
      c.push_back(CInf::zero(f));
      continue;
    }
    auto gap = pole_gap(f, i);
    if (!gap) {
      c.push_back(CInf::zero_to(f, kHuge));
      continue;
    }
    CInf rhs = CInf::zero(f);
    for (size_t j = 1; j < dc.size() && j <= i; ++j) {
      if (dc[j].is_exact_zero()) continue;
      rhs += dc[j] * al[i - j].frobenius(static_cast<int64_t>(j));
    }
    c.push_back(rhs / *gap);
  }
  return c;
}

namespace {

CInf quasi_coeff(const DrinfeldModule& rho, const Biderivation& d, size_t i) {
  const FieldPtr& f = rho.field();
  if (i == 0) return CInf::zero(f);
  auto gap = pole_gap(f, i);
  if (!gap) return CInf::zero_to(f, kHuge);
  const auto& dc = d.delta_t.coeffs();
  CInf rhs = CInf::zero(f);
  for (size_t j = 1; j < dc.size() && j <= i; ++j) {
    if (dc[j].is_exact_zero()) continue;
    rhs += dc[j] * rho.alpha(i - j).frobenius(static_cast<int64_t>(j));
  }
  return rhs / *gap;
}

}  // namespace

CInf exp_eval(const DrinfeldModule& rho, const CInf& z, int64_t target) {
  const FieldPtr& f = rho.field();
  if (z.is_exact_zero()) return z;
  // exp is additive: the uncertainty in z costs exactly exp(O(z.prec)).
  const int64_t from_input = z.exact() ? kExact : rho.exp_tail(0, static_cast<long double>(z.prec()), 0, z.prec());
  if (z.empty()) return CInf::zero_to(f, from_input);
  const long double vz = static_cast<long double>(z.valuation());
  const int64_t goal = std::min(target, from_input);
  CInf acc = CInf::zero(f);
  CInf zq = z;
  for (size_t i = 0; i < 80; ++i) {
    if (i > 0) zq = zq.frobenius(1);
    const CInf alpha = rho.alpha(i);
    CInf term = alpha * zq;
    if (goal != kExact) term = term.truncated(goal);
    acc += term;
    const int64_t want = std::min(goal, acc.prec());
    const int64_t tail = rho.exp_tail(i + 1, vz, 0, want);
    if (tail >= want) return acc.truncated(std::min(goal, tail));
  }
  raise(ErrorKind::NoConvergence, "exponential series did not reach the requested precision");
}

CInf log_eval(const DrinfeldModule& rho, const CInf& z, int64_t target) {
  const FieldPtr& f = rho.field();
  const int64_t e = f->e();
  if (z.is_exact_zero()) return z;
  if (z.empty()) return CInf::zero_to(f, z.prec());
  CInf acc = CInf::zero(f);
  CInf zq = z;
  std::vector<int64_t> t;
  int falls = 0;
  for (size_t i = 0; i < 48; ++i) {
    if (i > 0) zq = zq.frobenius(1);
    const CInf beta = rho.beta(i);
    CInf term = beta * zq;
    t.push_back(term.horizon());
    if (target != kExact) term = term.truncated(target);
    acc += term;
    const size_t k = t.size();
    if (k >= 3 && t[k - 1] >= sat_add(t[k - 2], e) && t[k - 2] >= sat_add(t[k - 3], e)) {
      const int64_t tail = sat_add(t[k - 1], e);
      if (tail >= std::min(target, acc.prec())) return acc.truncated(std::min(target, tail));
    }
    if (k >= 2 && t[k - 1] < t[k - 2]) {
      if (++falls >= 3) break;
    } else {
      falls = 0;
    }
  }
  raise(ErrorKind::DivergentEvaluation,
        "logarithm terms do not decrease by a factor q at this argument");
}

CInf quasi_series_eval(const DrinfeldModule& rho, const Biderivation& d, const CInf& z, int64_t target) {
  const FieldPtr& f = rho.field();
  if (z.is_exact_zero() || d.delta_t.is_zero()) return CInf::zero(f);
  const auto& dc = d.delta_t.coeffs();
  const long double e = static_cast<long double>(f->e());
  auto tail_from = [&](size_t I, long double vz, int64_t threshold) {
    int64_t best = kHuge;
    for (size_t j = 1; j < dc.size(); ++j) {
      if (dc[j].is_exact_zero()) continue;
      const int64_t vd = dc[j].horizon();
      const size_t start = I > j ? I - j : 0;
      const int64_t tb = rho.exp_tail(start, vz + e, static_cast<unsigned>(j), sat_add(threshold, -vd));
      best = std::min(best, sat_add(tb, vd));
    }
    return best;
  };
  const int64_t from_input = z.exact() ? kExact : tail_from(1, static_cast<long double>(z.prec()), z.prec());
  if (z.empty()) return CInf::zero_to(f, from_input);
  const int64_t goal = std::min(target, from_input);
  const long double vz = static_cast<long double>(z.valuation());
  CInf acc = CInf::zero(f);
  CInf zq = z;
  for (size_t i = 1; i < 80; ++i) {
    zq = zq.frobenius(1);
    const CInf c = quasi_coeff(rho, d, i);
    CInf term = c * zq;
    if (goal != kExact) term = term.truncated(goal);
    acc += term;
    const int64_t want = std::min(goal, acc.prec());
    const int64_t tail = tail_from(i + 1, vz, want);
    if (tail >= want) return acc.truncated(std::min(goal, tail));
  }
  raise(ErrorKind::NoConvergence, "quasi-periodic series did not reach the requested precision");
}

QuasiPeriodValue quasi_period_eval(const DrinfeldModule& rho, const CInf& lambda, int64_t target) {
  const FieldPtr& f = rho.field();
  const int64_t e = f->e();
  const int64_t q = static_cast<int64_t>(f->q());
  QuasiPeriodValue out;
  out.series = quasi_series_eval(rho, Biderivation::tau(f), lambda, target);
  if (lambda.is_exact_zero()) {
    out.displayed = lambda;
    out.agreement = kExact;
    return out;
  }
  const int64_t vl = lambda.empty() ? lambda.prec() : lambda.valuation();
  CInf acc = CInf::zero(f);
  bool done = false;
  for (int64_t j = 0; j < 4000; ++j) {
    const CInf arg = lambda * theta_inv_pow(f, j + 1);
    CInf term = exp_eval(rho, arg, sat_add(target, sat_mul(j, e))).frobenius(1) * CInf::theta_pow(f, j);
    if (target != kExact) term = term.truncated(target);
    acc += term;
    // Tail over j' > j once exp is isometric on lambda/theta^(j'+1).
    const int64_t J = j + 1;
    const int64_t w = sat_add(vl, sat_mul(J + 1, e));
    if (w <= 0) continue;
    if (rho.exp_tail(0, static_cast<long double>(w), 0, w) < w) continue;
    const int64_t tail = sat_add(sat_mul(q, w), -sat_mul(J, e));
    const int64_t want = std::min(target, acc.prec());
    if (tail >= want) {
      acc = acc.truncated(std::min(target, tail));
      done = true;
      break;
    }
  }
  if (!done) raise(ErrorKind::DivergentEvaluation, "displayed quasi-period series could not be certified");
  out.displayed = acc;
  out.agreement = (out.displayed - out.series).horizon();
  return out;
}

HenselReport division_point(const DrinfeldModule& rho, const CInf& c, const CInf& seed, int64_t target) {
  const FieldPtr& f = rho.field();
  const int64_t e = f->e();
  const SkewPoly r = rho.rho_t();
  const CInf theta_inv = CInf::theta_pow(f, -1);
  HenselReport rep;
  CInf x = seed.truncated(target);
  int64_t best = INT64_MIN;
  for (int it = 0; it < 96; ++it) {
    const CInf fx = skew_eval(r, x) - c;
    const int64_t h = fx.horizon();
    if (it == 0 && !(h > -2 * e))
      raise(ErrorKind::NoConvergence, "seed fails the Newton criterion for rho_t(x) = c");
    const int64_t acc = std::min(sat_add(h, e), x.prec());
    rep.iterations = it;
    if (acc > best) {
      best = acc;
      rep.root = x.truncated(acc);
      rep.accuracy = acc;
    } else if (!fx.empty()) {
      break;
    }
    if (acc >= target || fx.empty()) break;
    x = (x - fx * theta_inv).truncated(target);
  }
  if (best < target && rep.iterations == 0)
    raise(ErrorKind::NoConvergence, "division point did not converge");
  return rep;
}

bool fq_proportional(const CInf& a, const CInf& b) {
  if (a.empty() || b.empty()) return false;
  if (a.valuation() != b.valuation()) return false;
  const Field& f = *a.field();
  const Fe c = f.div(b.leading(), a.leading());
  if (!f.in_base_field(c)) return false;
  return (b - a.scaled(c)).empty();
}

TorsionReport torsion_points(const DrinfeldModule& rho, int64_t target) {
  const FieldPtr& f = rho.field();
  TorsionReport tr;
  const uint64_t q = f->q();
  const size_t deg = static_cast<size_t>(ipow(q, static_cast<unsigned>(rho.rank()))) - 1;
  tr.expected = deg;
  Polynomial P(deg + 1, CInf::zero(f));
  P[0] = rho.coeff(0);
  for (int j = 1; j <= rho.rank(); ++j) {
    const size_t k = static_cast<size_t>(ipow(q, static_cast<unsigned>(j))) - 1;
    P[k] = P[k] + rho.coeff(j);
  }
  const NewtonPolygon np = newton_polygon(P);
  tr.valuations = np.root_valuations();
  for (const Segment& seg : np.segments) {
    std::vector<std::pair<CInf, int>> seeds;
    try {
      seeds = segment_seeds(P, seg);
    } catch (const Error& err) {
      tr.unresolved.push_back(std::to_string(seg.length) + " roots of valuation " +
                              std::to_string(-seg.slope.num) + "/" + std::to_string(seg.slope.den) +
                              ": " + err.what());
      continue;
    }
    for (const auto& [s, mult] : seeds) {
      if (mult > 1) {
        tr.unresolved.push_back("cluster of " + std::to_string(mult) + " roots near " + s.to_string() +
                                " has a repeated residual root; it is not resolvable in " +
                                f->describe() + " at grid e = " + std::to_string(f->e()));
        continue;
      }
      try {
        tr.roots.push_back(division_point(rho, CInf::zero(f), s, target).root);
      } catch (const Error&) {
        try {
          tr.roots.push_back(hensel_root(P, s, target).root);
        } catch (const Error& err) {
          tr.unresolved.push_back("root near " + s.to_string() + ": " + err.what());
        }
      }
    }
  }
  return tr;
}

std::vector<CInf> lattice_seeds(const DrinfeldModule&, const TorsionReport& tr, size_t count) {
  std::vector<CInf> out;
  for (const CInf& x : tr.roots) {
    if (out.size() == count) break;
    bool dep = false;
    for (const CInf& y : out) dep = dep || fq_proportional(y, x);
    if (!dep) out.push_back(x);
  }
  return out;
}

Period period_from_seed(const DrinfeldModule& rho, const CInf& seed, const Precision& prec) {
  const FieldPtr& f = rho.field();
  const int64_t W = prec.working(*f);
  const int64_t e = f->e();
  const CInf theta_inv = CInf::theta_pow(f, -1);
  CInf en = seed;
  for (int n = 1; n <= prec.tower_cap; ++n) {
    const int64_t goal = sat_add(W, sat_mul(n, e));
    try {
      const CInf L = log_eval(rho, en, goal);
      return {CInf::theta_pow(f, n) * L, seed, n};
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::DivergentEvaluation) throw;
    }
    const int64_t next_goal = sat_add(W, sat_mul(n + 2, e));
    en = division_point(rho, en, en * theta_inv, next_goal).root;
  }
  raise(ErrorKind::NoConvergence,
        "division tower reached its cap of " + std::to_string(prec.tower_cap) +
            " levels before the logarithm converged");
}

Lattice periods(const DrinfeldModule& rho, const Precision& prec) {
  const FieldPtr& f = rho.field();
  const int64_t W = prec.working(*f);
  const TorsionReport tr = torsion_points(rho, sat_add(W, 2 * f->e()));
  const auto seeds = lattice_seeds(rho, tr, static_cast<size_t>(rho.rank()));
  if (seeds.size() < static_cast<size_t>(rho.rank())) {
    std::string why = "only " + std::to_string(seeds.size()) + " independent torsion seeds found";
    for (const auto& u : tr.unresolved) why += "; " + u;
    raise(ErrorKind::GridTooCoarse, why);
  }
  Lattice lat;
  for (const CInf& s : seeds) lat.periods.push_back(period_from_seed(rho, s, prec));
  return lat;
}

Normalization normalize(const DrinfeldModule& rho) {
  const FieldPtr& f = rho.field();
  const int r = rho.rank();
  const int64_t n = static_cast<int64_t>(ipow(f->q(), static_cast<unsigned>(r))) - 1;
  if (rho.u().equals_to_precision(CInf::one(f)) && rho.u().exact()) return {rho, CInf::one(f)};
  const CInf x = nth_root(rho.u().inverse(), n);
  std::vector<CInf> c;
  for (int j = 1; j <= r; ++j) {
    const int64_t k = static_cast<int64_t>(ipow(f->q(), static_cast<unsigned>(j))) - 1;
    c.push_back(j == r ? CInf::one(f) : rho.coeff(j) * x.pow(k));
  }
  return {DrinfeldModule(f, std::move(c)), x};
}

MorphismReport verify_morphism(const SkewPoly& e, const DrinfeldModule& rho, const DrinfeldModule& rho2) {
  MorphismReport rep;
  const SkewPoly diff = e * rho.rho_t() - rho2.rho_t() * e;
  rep.residual_horizon = diff.horizon();
  rep.morphism = diff.is_zero_to_precision();
  if (rep.morphism) {
    const SigmaPoly es = adjoint(e);
    const SigmaPoly d2 = adjoint(rho.rho_t()) * es - es * adjoint(rho2.rho_t());
    rep.adjoint_horizon = d2.horizon();
    rep.adjoint_side = d2.is_zero_to_precision();
  }
  return rep;
}

}  // namespace drinfeld
