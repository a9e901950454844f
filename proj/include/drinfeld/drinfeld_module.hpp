#pragma once

// Drinfeld F_q[t]-modules over K_{m,e}: coefficient recursions for the
// exponential, logarithm and quasi-periodic functions, certified evaluation,
// torsion, periods via division towers, normalization and morphisms.

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "drinfeld/cinf.hpp"
#include "drinfeld/newton.hpp"
#include "drinfeld/skew.hpp"

namespace drinfeld {

struct Precision {
  /// Target absolute precision N in grid units.
  int64_t n = 240;
  /// Extra precision carried internally, in units of |theta| (e grid units each).
  int64_t guard = 4;
  size_t t_terms = 32;
  /// 0 picks the pole count automatically.
  int pole_count = 0;
  int tower_cap = 12;

  int64_t working(const Field& f) const { return sat_add(n, sat_mul(guard, f.e())); }
  /// ceil(0.8 N): the level a residual must reach to pass.
  int64_t pass_level() const { return (8 * n + 9) / 10; }
};

class DrinfeldModule {
 public:
  DrinfeldModule() = default;
  /// rho_t = theta + sum_{j>=1} coeffs[j-1] tau^j; the last coefficient must be nonzero.
  DrinfeldModule(FieldPtr f, std::vector<CInf> coeffs);
  static DrinfeldModule carlitz(FieldPtr f);
  static DrinfeldModule rank2(FieldPtr f, const CInf& kappa, const CInf& u);

  const FieldPtr& field() const { return f_; }
  int rank() const { return static_cast<int>(a_.size()) - 1; }
  /// a_j with a_0 = theta.
  const CInf& coeff(int j) const { return a_.at(static_cast<size_t>(j)); }
  /// Coefficient of tau (rank 2) or zero.
  CInf kappa() const;
  /// Leading coefficient.
  const CInf& u() const { return a_.back(); }
  SkewPoly rho_t() const { return SkewPoly(a_); }
  std::string describe() const;

  /// alpha_0..alpha_{n-1}, computed once and cached.
  std::vector<CInf> exp_coeffs(size_t n) const;
  std::vector<CInf> log_coeffs(size_t n) const;
  CInf alpha(size_t i) const;
  CInf beta(size_t i) const;
  /// Lower bound on v(alpha_i) / q^i (exact data where computed).
  long double alpha_bound(size_t i) const;
  /// min over j >= I of q^(j+shift) (alpha_bound(j) + offset), clipped to
  /// [-kHuge, kHuge] and at most `threshold` once the rest is certified.
  int64_t exp_tail(size_t I, long double offset, unsigned shift, int64_t threshold) const;

 private:
  struct Tables {
    std::mutex mu;
    std::vector<CInf> alpha;
    std::vector<CInf> beta;
    std::vector<long double> bound;
  };
  FieldPtr f_;
  std::vector<CInf> a_;
  std::shared_ptr<Tables> tables_;
};

/// delta_t with zero constant term; delta_1 is t -> theta - rho_t.
struct Biderivation {
  SkewPoly delta_t;
  static Biderivation delta1(const DrinfeldModule& rho);
  static Biderivation tau(FieldPtr f);
};

std::vector<CInf> exp_coeffs(const DrinfeldModule& rho, size_t n);
std::vector<CInf> log_coeffs(const DrinfeldModule& rho, size_t n);
/// c_0..c_{n-1} (c_0 = 0) of F_delta = sum c_i z^(q^i).
std::vector<CInf> quasi_period_coeffs(const DrinfeldModule& rho, const Biderivation& d, size_t n);

/// exp_rho(z) with the certified tail folded into the precision; `target`
/// caps the absolute precision that is worth computing.
CInf exp_eval(const DrinfeldModule& rho, const CInf& z, int64_t target = kExact);
/// log_rho(z); DivergentEvaluation unless the terms decrease by at least a
/// factor q at the point where the sum is cut.
CInf log_eval(const DrinfeldModule& rho, const CInf& z, int64_t target = kExact);
/// F_delta(z) from the coefficient table with a certified tail.
CInf quasi_series_eval(const DrinfeldModule& rho, const Biderivation& d, const CInf& z,
                       int64_t target = kExact);

struct QuasiPeriodValue {
  /// sum_j exp(lambda/theta^(j+1))^q theta^j
  CInf displayed;
  /// sum_i c_i lambda^(q^i) for delta_t = tau
  CInf series;
  /// Horizon of displayed - series.
  int64_t agreement = 0;
};
/// F_tau(lambda) two ways.
QuasiPeriodValue quasi_period_eval(const DrinfeldModule& rho, const CInf& lambda, int64_t target);

/// Solution of rho_t(x) = c near `seed` by the additive Newton step
/// x <- x - (rho_t(x) - c)/theta, certified to absolute precision `target`.
HenselReport division_point(const DrinfeldModule& rho, const CInf& c, const CInf& seed,
                            int64_t target);

struct TorsionReport {
  std::vector<CInf> roots;
  /// Root valuations from the Newton polygon, grid units, with multiplicity.
  std::vector<Slope> valuations;
  /// Clusters or segments that could not be resolved in K_{m,e}.
  std::vector<std::string> unresolved;
  size_t expected = 0;
  bool complete() const { return roots.size() == expected; }
};
TorsionReport torsion_points(const DrinfeldModule& rho, int64_t target);

/// Torsion roots that are pairwise independent over F_q, in order of discovery.
std::vector<CInf> lattice_seeds(const DrinfeldModule& rho, const TorsionReport& tr, size_t count);
/// True if b = c a for some c in F_q to precision.
bool fq_proportional(const CInf& a, const CInf& b);

struct Period {
  CInf omega;
  CInf seed;
  int depth = 0;
};
Period period_from_seed(const DrinfeldModule& rho, const CInf& seed, const Precision& prec);

struct Lattice {
  std::vector<Period> periods;
  const CInf& omega(size_t i) const { return periods.at(i).omega; }
};
/// One period per independent torsion seed. Throws if the torsion does not
/// provide rank-many independent seeds.
Lattice periods(const DrinfeldModule& rho, const Precision& prec);

struct Normalization {
  DrinfeldModule nu;
  CInf x;
};
/// nu_t = x^-1 rho_t x with x^(q^r - 1) = 1/u.
Normalization normalize(const DrinfeldModule& rho);

struct MorphismReport {
  bool morphism = false;
  bool adjoint_side = false;
  int64_t residual_horizon = 0;
  int64_t adjoint_horizon = 0;
};
MorphismReport verify_morphism(const SkewPoly& e, const DrinfeldModule& rho, const DrinfeldModule& rho2);

}  // namespace drinfeld
