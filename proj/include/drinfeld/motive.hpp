#pragma once

// The Carlitz objects Omega and pi~, the constant xi, the t-motive matrices
// Phi and Psi of a rank 2 module, their specialization at t = theta, the
// period matrix, the Legendre invariant and tensor constructions.

#include <vector>

#include "drinfeld/agf.hpp"
#include "drinfeld/drinfeld_module.hpp"
#include "drinfeld/report.hpp"
#include "drinfeld/tseries.hpp"

namespace drinfeld {

struct OmegaSeries {
  /// (-theta)^(-q/(q-1)) prod_{i=1..I} (1 - t/theta^(q^i)), T coefficients.
  TSeries series;
  CInf prefactor;
  /// The designated (q-1)-st root of -theta.
  CInf root;
  size_t factors = 0;
};

OmegaSeries omega_series(const FieldPtr& f, size_t T, int64_t target);
CInf omega_at_theta(const OmegaSeries& om);
/// -1/Omega(theta).
CInf pi_tilde(const OmegaSeries& om);
/// Omega - (t - theta^q) Omega^(1), coefficientwise.
CheckReport verify_omega(const OmegaSeries& om, const Precision& prec);

/// Designated root of X^(q-1) = -1 (smallest discrete log).
CInf xi_constant(const FieldPtr& f);

/// [[0, 1], [(t-theta)/u^(-2), -kappa^(-1)/u^(-2)]] for rank 2, [t - theta] for rank 1.
RMatrix phi_matrix(const DrinfeldModule& rho);

struct PsiSystem {
  DrinfeldModule rho;
  std::vector<CInf> omega;
  std::vector<AGF> f;
  OmegaSeries om;
  CInf xi;
  size_t T = 0;
  TMatrix psi;
};

/// Requires rank 2 with u = 1 and two periods.
PsiSystem psi_matrix(const DrinfeldModule& rho, const std::vector<CInf>& omega, const Precision& prec,
                     size_t T);
/// Psi - Phi^(1) Psi^(1).
CheckReport verify_psi(const PsiSystem& sys, const Precision& prec);

struct DetInvariance {
  CheckReport report;
  /// det Psi / (xi Omega) as a t-series.
  TSeries d;
};
DetInvariance verify_det_invariance(const PsiSystem& sys, const Precision& prec);

struct PeriodMatrix {
  CMatrix psi_theta;
  /// (xi/pi~) [[F(w2), -F(w1)], [w2, -w1]] from independent periods and quasi-periods.
  CMatrix expected;
  CMatrix P;
  std::vector<CInf> quasi;
  CheckReport report;
};
PeriodMatrix specialize_psi(const PsiSystem& sys, const Precision& prec);

struct LegendreResult {
  Fe invariant;
  CInf bracket;
  /// Horizon of bracket - leading term.
  int64_t tail = 0;
  /// bracket / (pi~/xi), an element of F_q^x for a lattice basis.
  Fe orientation;
};
LegendreResult legendre_invariant(const DrinfeldModule& rho, const CInf& w1, const CInf& w2,
                                  const CInf& omega_theta, const Precision& prec);
/// Rescales w2 so that w1 F(w2) - w2 F(w1) = pi~/xi.
std::vector<CInf> orient_basis(const DrinfeldModule& rho, const std::vector<CInf>& omega,
                               const CInf& omega_theta, const Precision& prec);

/// Psi (x) Psi against (Phi (x) Phi)^(1), det(Phi (x) Phi) = det(Phi)^4 and the
/// wedge line det Psi = (det Phi)^(1) (det Psi)^(1).
CheckReport verify_tensor(const PsiSystem& sys, const Precision& prec);

}  // namespace drinfeld
