#pragma once

// Twisted polynomial rings K[tau] (tau c = c^q tau) and K[sigma]
// (sigma c = c^(1/q) sigma), and Ore's adjoint between them.

#include <span>
#include <string>
#include <vector>

#include "drinfeld/cinf.hpp"

namespace drinfeld {

template <int Dir>
class TwistedPoly {
 public:
  TwistedPoly() = default;
  explicit TwistedPoly(std::vector<CInf> coeffs) : c_(std::move(coeffs)) { trim(); }

  static TwistedPoly constant(const CInf& c) { return TwistedPoly({c}); }
  /// The variable itself raised to k.
  static TwistedPoly var_pow(FieldPtr f, size_t k) {
    std::vector<CInf> c(k + 1, CInf::zero(f));
    c.back() = CInf::one(f);
    return TwistedPoly(std::move(c));
  }

  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<CInf>& coeffs() const { return c_; }
  const CInf& coeff(size_t i) const { return c_.at(i); }

  friend TwistedPoly operator+(const TwistedPoly& a, const TwistedPoly& b) {
    std::vector<CInf> r(std::max(a.c_.size(), b.c_.size()));
    for (size_t i = 0; i < r.size(); ++i) {
      if (i < a.c_.size() && i < b.c_.size())
        r[i] = a.c_[i] + b.c_[i];
      else
        r[i] = i < a.c_.size() ? a.c_[i] : b.c_[i];
    }
    return TwistedPoly(std::move(r));
  }
  TwistedPoly operator-() const {
    std::vector<CInf> r;
    for (const CInf& x : c_) r.push_back(-x);
    return TwistedPoly(std::move(r));
  }
  friend TwistedPoly operator-(const TwistedPoly& a, const TwistedPoly& b) { return a + (-b); }

  /// (a X^i)(b X^j) = a b^(q^(Dir i)) X^(i+j).
  friend TwistedPoly operator*(const TwistedPoly& a, const TwistedPoly& b) {
    if (a.c_.empty() || b.c_.empty()) return {};
    std::vector<CInf> r(a.c_.size() + b.c_.size() - 1);
    std::vector<bool> set(r.size(), false);
    for (size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_exact_zero()) continue;
      for (size_t j = 0; j < b.c_.size(); ++j) {
        if (b.c_[j].is_exact_zero()) continue;
        CInf term = a.c_[i] * b.c_[j].frobenius(Dir * static_cast<int64_t>(i));
        r[i + j] = set[i + j] ? r[i + j] + term : term;
        set[i + j] = true;
      }
    }
    const FieldPtr& f = a.c_.front().field();
    for (size_t k = 0; k < r.size(); ++k)
      if (!set[k]) r[k] = CInf::zero(f);
    return TwistedPoly(std::move(r));
  }

  /// Every coefficient zero to its precision.
  bool is_zero_to_precision() const {
    for (const CInf& x : c_)
      if (!x.empty()) return false;
    return true;
  }
  bool equals_to_precision(const TwistedPoly& b) const { return (*this - b).is_zero_to_precision(); }
  /// Smallest horizon over coefficients (kExact for the zero polynomial).
  int64_t horizon() const {
    int64_t h = kExact;
    for (const CInf& x : c_) h = std::min(h, x.horizon());
    return h;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_exact_zero()) c_.pop_back();
  }
  std::vector<CInf> c_;
};

using SkewPoly = TwistedPoly<1>;
using SigmaPoly = TwistedPoly<-1>;

enum class SkewMulKind { Tau, Sigma };
SkewPoly skew_mul(const SkewPoly& f, const SkewPoly& g);

/// f* = sum a_i^(-i) sigma^i.
SigmaPoly adjoint(const SkewPoly& f);

/// sum a_i x^(q^i).
CInf skew_eval(const SkewPoly& f, const CInf& x);

std::string to_string(const SkewPoly& f);

}  // namespace drinfeld
