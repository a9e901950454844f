#pragma once

// Logarithms of algebraic points: g-vectors, the block systems Phi_n / Psi_n
// and numeric certificates for linear relations among periods and logarithms.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "drinfeld/agf.hpp"
#include "drinfeld/motive.hpp"

namespace drinfeld {

struct LogPoint {
  CInf lambda;
  CInf alpha;
  /// "given-lambda" or "lifted-from-alpha".
  std::string provenance;
};

/// alpha = exp(lambda).
LogPoint log_point_from_lambda(const DrinfeldModule& rho, const CInf& lambda, const Precision& prec);
/// lambda = log(alpha) followed by the round trip exp(lambda) = alpha.
LogPoint log_point_from_alpha(const DrinfeldModule& rho, const CInf& alpha, const Precision& prec);

struct GVector {
  LogPoint point;
  AGF f;
  /// g1 = -kappa f^(1) - f^(2), g2 = -f^(1).
  TSeries g1, g2;
  CInf g1_theta, g2_theta;
  /// F_tau(lambda).
  CInf quasi;
};

/// Rank 2, u = 1.
GVector g_vector(const DrinfeldModule& rho, const LogPoint& p, const Precision& prec, size_t T);
/// (Phi^(1))^tr g - g^(1) - h^(1) with h = (alpha, 0).
CheckReport verify_log_fneq(const DrinfeldModule& rho, const GVector& g, const Precision& prec);
/// g1(theta) - (lambda - alpha) and g2(theta) + F_tau(lambda).
CheckReport verify_log_specialization(const GVector& g, const Precision& prec);

struct ExtendedSystem {
  size_t n = 0;
  std::vector<GVector> g;
  RMatrix phi_n;
  TMatrix psi_n;
  CMatrix psi_n_theta;
  std::vector<std::pair<std::string, CInf>> generators;
  /// Psi_n - Phi_n^(1) Psi_n^(1).
  CheckReport difference;
  /// Psi_n(theta) against its reconstruction from the generators.
  CheckReport reconstruction;
};

ExtendedSystem extended_system(const PsiSystem& sys, const std::vector<LogPoint>& points,
                               const Precision& prec);

struct RelationData {
  CInf omega1, omega2, F1, F2;
  CInf pi, xi;
  std::vector<CInf> lambda, F_lambda;
};

struct RelationCoefficients {
  CInf ell11, ell21;
  std::vector<CInf> ell;
};

struct RelationCertificate {
  CheckReport report;
  /// Valuation of sum ell_i lambda_i - ell11 omega1 - ell21 omega2 (kExact when zero to precision).
  int64_t residual_valuation = kExact;
  std::optional<int64_t> spec1, spec2;
};

RelationCertificate relation_certificate(const RelationData& d, const RelationCoefficients& ell,
                                         const Precision& prec, const std::optional<CInf>& B = std::nullopt);

}  // namespace drinfeld
