#pragma once

// Anderson generating functions f_u(t) = sum_i alpha_i u^(q^i) / (theta^(q^i) - t)
// in partial-fraction form, their twists, residues and t-series.

#include <vector>

#include "drinfeld/drinfeld_module.hpp"
#include "drinfeld/report.hpp"
#include "drinfeld/tseries.hpp"

namespace drinfeld {

struct AGF {
  DrinfeldModule rho;
  CInf u;
  /// alpha_i u^(q^i) for i < I; the pole of term i is theta^(q^i).
  std::vector<CInf> numerators;
  size_t pole_count() const { return numerators.size(); }
  /// Lower bound on the valuation of every dropped term at t = 0 after an
  /// n-fold twist.
  int64_t tail_bound(unsigned n = 0) const;
};

/// I = 0 picks the smallest pole count whose dropped terms stay beyond `target`.
AGF agf_build(const DrinfeldModule& rho, const CInf& u, size_t I, int64_t target);
/// theta^(q^(i+n)).
CInf agf_pole(const FieldPtr& f, size_t i, unsigned n = 0);
/// f_u^(n)(t0). Throws PoleHit when t0 meets a pole to precision.
CInf agf_eval_twisted(const AGF& f, unsigned n, const CInf& t0, int64_t target);
/// Res_{t = theta^(q^i)} f_u = -alpha_i u^(q^i).
CInf agf_residue(const AGF& f, size_t i);
/// t-series of f_u^(n) from the partial fractions, T coefficients.
TSeries agf_series(const AGF& f, size_t T, unsigned n = 0);
/// t-series with coefficient j = exp(u / theta^(j+1)).
TSeries agf_series_direct(const DrinfeldModule& rho, const CInf& u, size_t T, int64_t target);

/// sum_{j>=1} a_j f^(j) - (t - theta) f - exp(u), coefficientwise.
CheckReport verify_fu1(const DrinfeldModule& rho, const CInf& u, size_t T, const Precision& prec);
/// sum_{j>=1} a_j f^(j)(theta) + u - exp(u).
CheckReport verify_fu2(const DrinfeldModule& rho, const CInf& u, const Precision& prec);

}  // namespace drinfeld
