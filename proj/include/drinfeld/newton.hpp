#pragma once

// Non-archimedean root finding over K_{m,e}: Newton polygons, residual
// equations of polygon segments, Newton/Hensel iteration and n-th roots.

#include <cstdint>
#include <span>
#include <vector>

#include "drinfeld/cinf.hpp"

namespace drinfeld {

/// Dense polynomial a_0 + a_1 x + ... with CInf coefficients.
using Polynomial = std::vector<CInf>;

CInf poly_eval(std::span<const CInf> coeffs, const CInf& x);
Polynomial poly_derivative(std::span<const CInf> coeffs);

/// Rational slope in grid units per unit of degree, reduced, den > 0.
struct Slope {
  int64_t num = 0;
  int64_t den = 1;
  friend bool operator==(const Slope&, const Slope&) = default;
};

/// One edge of the lower convex hull of {(i, v(a_i))}. Convention: an edge
/// of slope s and horizontal length l certifies l roots of valuation -s.
struct Segment {
  Slope slope;
  int64_t length = 0;
  size_t start = 0;
  size_t end = 0;
};

struct NewtonPolygon {
  std::vector<Segment> segments;
  /// Order of vanishing at x = 0 (leading exactly-zero coefficients).
  size_t zero_order = 0;
  size_t degree = 0;

  /// Root valuations (in grid units, as slopes negated) with multiplicity.
  std::vector<Slope> root_valuations() const;
};

NewtonPolygon newton_polygon(std::span<const CInf> coeffs);

/// Residual equation of a segment, as a polynomial over F_Q in the leading
/// coefficient c of a root c*X^r (r = -slope, required to be integral).
std::vector<Fe> residual_polynomial(std::span<const CInf> coeffs, const Segment& seg);

/// Seeds c*X^r for the distinct nonzero residual roots of a segment, with
/// their multiplicities. Throws GridTooCoarse for a non-integral slope and
/// ResidueFieldTooSmall when the residual equation has no root in F_Q.
std::vector<std::pair<CInf, int>> segment_seeds(std::span<const CInf> coeffs, const Segment& seg);

struct HenselReport {
  CInf root;
  int iterations = 0;
  /// Grid exponent to which the returned root is certified.
  int64_t accuracy = 0;
};

/// Newton iteration x <- x - f(x)/f'(x) from `seed`, until the root is
/// certified to absolute precision `target` or precision runs out. The seed
/// must satisfy v(f(seed)) > 2 v(f'(seed)).
HenselReport hensel_root(std::span<const CInf> coeffs, const CInf& seed, int64_t target,
                         int max_iterations = 64);

/// Designated n-th root (p does not divide n). The leading coefficient root
/// is the one with the smallest discrete log.
CInf nth_root(const CInf& a, int64_t n);

}  // namespace drinfeld
