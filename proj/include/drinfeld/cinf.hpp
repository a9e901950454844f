#pragma once

// Precision-tracked Laurent series in X = theta^(-1/e) over F_{q^m}.
//
// A value stores its nonzero terms densely along an arithmetic progression
// of exponents (lo, lo + step, ...), plus an absolute precision `prec`:
// every exponent >= prec is unknown. Exponents are in grid units, so the
// term c*X^n is c*theta^(-n/e) and has absolute value q^(-n/e).
//
// Every operation propagates precision pessimistically and then caps the
// relative precision at Field::rel_cap(); a value never claims more than
// its inputs justify.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "drinfeld/error.hpp"
#include "drinfeld/field.hpp"

namespace drinfeld {

inline constexpr int64_t kExact = INT64_MAX;
inline constexpr int64_t kHuge = int64_t{1} << 61;

/// Saturating addition on precisions and exponents; kExact absorbs.
int64_t sat_add(int64_t a, int64_t b);
int64_t sat_mul(int64_t a, int64_t b);

class CInf {
 public:
  CInf() = default;

  static CInf zero(FieldPtr f);
  static CInf zero_to(FieldPtr f, int64_t prec);
  static CInf one(FieldPtr f);
  static CInf from_int(FieldPtr f, int64_t k);
  static CInf constant(FieldPtr f, Fe c);
  /// c * X^exponent, exact.
  static CInf monomial(FieldPtr f, Fe c, int64_t exponent);
  /// theta^k, exact.
  static CInf theta_pow(FieldPtr f, int64_t k);
  static CInf from_terms(FieldPtr f, std::vector<std::pair<int64_t, Fe>> terms,
                         int64_t prec = kExact);

  const FieldPtr& field() const { return field_; }
  bool valid() const { return field_ != nullptr; }
  int64_t prec() const { return prec_; }
  bool exact() const { return prec_ == kExact; }
  bool empty() const { return c_.empty(); }
  bool is_exact_zero() const { return c_.empty() && prec_ == kExact; }

  /// Smallest stored exponent; nullopt when no term is known.
  std::optional<int64_t> lowest() const;
  /// Valuation in grid units. Exact zero gives kExact; a value that is zero
  /// to its precision throws IndeterminateValuation.
  int64_t valuation() const;
  /// Exponent up to which the value is known to vanish: min(v, prec).
  int64_t horizon() const;
  /// |x| = q^(num/den): returns (-v, e).
  std::pair<int64_t, int64_t> abs_exponent() const;

  Fe leading() const;
  Fe coeff(int64_t exponent) const;
  size_t term_count() const;
  std::vector<std::pair<int64_t, Fe>> terms() const;

  CInf truncated(int64_t new_prec) const;
  /// Multiplies by X^k (i.e. by theta^(-k/e)); exact.
  CInf shifted(int64_t k) const;
  CInf scaled(Fe c) const;

  CInf operator-() const;
  friend CInf operator+(const CInf& a, const CInf& b);
  friend CInf operator-(const CInf& a, const CInf& b);
  friend CInf operator*(const CInf& a, const CInf& b);
  friend CInf operator/(const CInf& a, const CInf& b);
  CInf& operator+=(const CInf& b) { return *this = *this + b; }
  CInf& operator-=(const CInf& b) { return *this = *this - b; }
  CInf& operator*=(const CInf& b) { return *this = *this * b; }

  CInf inverse() const;
  CInf pow(int64_t k) const;
  /// x^(q^n) termwise; negative n requires the exponents to be divisible
  /// by q^|n| and |n| <= depth.
  CInf frobenius(int64_t n) const;

  /// Zero to the shared precision of the two operands.
  bool equals_to_precision(const CInf& b) const;
  /// Structural equality (terms and precision).
  bool identical(const CInf& b) const;

  std::string to_string() const;

 private:
  void normalize(std::vector<Fe> dense, int64_t lo, int64_t step, int64_t prec);
  int64_t exponent_at(size_t i) const { return lo_ + static_cast<int64_t>(i) * step_; }
  void check_same(const CInf& b) const;

  FieldPtr field_;
  int64_t lo_ = 0;
  int64_t step_ = 0;  // 0 when at most one term is stored
  std::vector<Fe> c_;
  int64_t prec_ = kExact;
};

// Operation-style entry points.
enum class ArithKind { Add, Sub, Mul, Div };
CInf arith(const CInf& a, const CInf& b, ArithKind kind);
CInf frobenius(const CInf& a, int64_t n);

/// Integer division rounding up / down, for b > 0.
int64_t ceil_div(int64_t a, int64_t b);
int64_t floor_div(int64_t a, int64_t b);

}  // namespace drinfeld
