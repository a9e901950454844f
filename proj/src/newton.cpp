#include "drinfeld/newton.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace drinfeld {

CInf poly_eval(std::span<const CInf> coeffs, const CInf& x) {
  if (coeffs.empty()) return CInf::zero(x.field());
  CInf acc = coeffs.back();
  for (size_t i = coeffs.size() - 1; i-- > 0;) acc = acc * x + coeffs[i];
  return acc;
}

Polynomial poly_derivative(std::span<const CInf> coeffs) {
  Polynomial out;
  for (size_t i = 1; i < coeffs.size(); ++i)
    out.push_back(coeffs[i].scaled(coeffs[i].field()->from_int(static_cast<int64_t>(i))));
  return out;
}

namespace {

Slope make_slope(int64_t num, int64_t den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  int64_t g = std::gcd(num, den);
  if (g == 0) g = 1;
  return {num / g, den / g};
}

// Sign of cross product (b - a) x (c - a) for hull construction.
__int128 cross(int64_t ax, int64_t ay, int64_t bx, int64_t by, int64_t cx, int64_t cy) {
  return static_cast<__int128>(bx - ax) * (cy - ay) - static_cast<__int128>(by - ay) * (cx - ax);
}

}  // namespace

std::vector<Slope> NewtonPolygon::root_valuations() const {
  std::vector<Slope> out;
  for (const auto& s : segments)
    for (int64_t k = 0; k < s.length; ++k) out.push_back(make_slope(-s.slope.num, s.slope.den));
  return out;
}

NewtonPolygon newton_polygon(std::span<const CInf> coeffs) {
  NewtonPolygon poly;
  size_t n = coeffs.size();
  while (n > 0 && coeffs[n - 1].is_exact_zero()) --n;
  if (n == 0) raise(ErrorKind::IndeterminateValuation, "Newton polygon of the zero polynomial");
  if (coeffs[n - 1].empty())
    raise(ErrorKind::IndeterminateValuation, "leading coefficient is zero to precision");
  size_t z = 0;
  while (z < n && coeffs[z].is_exact_zero()) ++z;
  if (coeffs[z].empty())
    raise(ErrorKind::IndeterminateValuation, "trailing coefficient is zero to precision");
  poly.zero_order = z;
  poly.degree = n - 1;

  struct Pt {
    int64_t x, y;
    size_t idx;
  };
  std::vector<Pt> pts;
  std::vector<Pt> undetermined;
  for (size_t i = z; i < n; ++i) {
    if (coeffs[i].is_exact_zero()) continue;
    if (coeffs[i].empty())
      undetermined.push_back({static_cast<int64_t>(i), coeffs[i].prec(), i});
    else
      pts.push_back({static_cast<int64_t>(i), coeffs[i].valuation(), i});
  }
  std::vector<Pt> hull;
  for (const Pt& p : pts) {
    while (hull.size() >= 2 &&
           cross(hull[hull.size() - 2].x, hull[hull.size() - 2].y, hull.back().x, hull.back().y,
                 p.x, p.y) <= 0)
      hull.pop_back();
    hull.push_back(p);
  }
  for (size_t k = 0; k + 1 < hull.size(); ++k) {
    Segment s;
    s.slope = make_slope(hull[k + 1].y - hull[k].y, hull[k + 1].x - hull[k].x);
    s.length = hull[k + 1].x - hull[k].x;
    s.start = hull[k].idx;
    s.end = hull[k + 1].idx;
    poly.segments.push_back(s);
  }
  // A coefficient known only to be small must sit strictly above the hull.
  for (const Pt& u : undetermined) {
    for (size_t k = 0; k + 1 < hull.size(); ++k) {
      if (u.x < hull[k].x || u.x > hull[k + 1].x) continue;
      if (cross(hull[k].x, hull[k].y, hull[k + 1].x, hull[k + 1].y, u.x, u.y) <= 0)
        raise(ErrorKind::IndeterminateValuation,
              "coefficient " + std::to_string(u.idx) + " is zero to precision but may lie on the polygon");
    }
  }
  return poly;
}

std::vector<Fe> residual_polynomial(std::span<const CInf> coeffs, const Segment& seg) {
  const int64_t v0 = coeffs[seg.start].valuation();
  std::vector<Fe> res(seg.end - seg.start + 1);
  for (size_t i = seg.start; i <= seg.end; ++i) {
    if (coeffs[i].empty()) continue;
    const __int128 lhs = static_cast<__int128>(coeffs[i].valuation() - v0) * seg.slope.den;
    const __int128 rhs = static_cast<__int128>(seg.slope.num) * static_cast<int64_t>(i - seg.start);
    if (lhs == rhs) res[i - seg.start] = coeffs[i].leading();
  }
  return res;
}

std::vector<std::pair<CInf, int>> segment_seeds(std::span<const CInf> coeffs, const Segment& seg) {
  const FieldPtr& f = coeffs[seg.start].field();
  if (seg.slope.den != 1)
    raise(ErrorKind::GridTooCoarse,
          "roots of valuation " + std::to_string(-seg.slope.num) + "/" +
              std::to_string(seg.slope.den) + " (grid units) need e multiplied by " +
              std::to_string(seg.slope.den));
  const int64_t r = -seg.slope.num;
  std::vector<Fe> res = residual_polynomial(coeffs, seg);
  std::vector<std::pair<CInf, int>> out;
  for (const auto& [c, mult] : f->roots(res)) {
    if (c.is_zero()) continue;
    out.emplace_back(CInf::monomial(f, c, r), mult);
  }
  if (out.empty())
    raise(ErrorKind::ResidueFieldTooSmall,
          "residual equation of a polygon segment has no root in " + f->describe() +
              "; increase m");
  return out;
}

HenselReport hensel_root(std::span<const CInf> coeffs, const CInf& seed, int64_t target,
                         int max_iterations) {
  const Polynomial deriv = poly_derivative(coeffs);
  HenselReport rep;
  CInf x = seed;
  int64_t best = INT64_MIN;
  int64_t first = INT64_MIN;
  int stalls = 0;
  for (int it = 0; it <= max_iterations; ++it) {
    const CInf fx = poly_eval(coeffs, x);
    const CInf dfx = poly_eval(deriv, x);
    if (dfx.empty())
      raise(ErrorKind::NoConvergence, "derivative vanishes to precision at the iterate");
    const int64_t vd = dfx.valuation();
    const int64_t hf = fx.horizon();
    if (it == 0) {
      if (!(static_cast<__int128>(hf) > 2 * static_cast<__int128>(vd)))
        raise(ErrorKind::NoConvergence,
              "seed fails the Newton criterion |f(x)| < |f'(x)|^2");
      first = hf - vd;
    }
    const int64_t acc = std::min(sat_add(hf, -vd), x.prec());
    rep.iterations = it;
    if (acc > best) {
      best = acc;
      stalls = 0;
      rep.root = x.truncated(acc);
      rep.accuracy = acc;
    } else if (++stalls >= 2) {
      break;
    }
    if (acc >= target || fx.empty()) break;
    x = x - fx / dfx;
  }
  if (best < target && best <= first)
    raise(ErrorKind::NoConvergence, "Newton iteration made no progress");
  return rep;
}

CInf nth_root(const CInf& a, int64_t n) {
  const FieldPtr& f = a.field();
  if (a.is_exact_zero()) return a;
  if (n % static_cast<int64_t>(f->p()) == 0)
    raise(ErrorKind::Config, "root index divisible by the characteristic");
  const int64_t v = a.valuation();
  if (v % n != 0)
    raise(ErrorKind::GridTooCoarse,
          "valuation " + std::to_string(v) + " is not divisible by " + std::to_string(n) +
              "; increase e");
  auto lead_root = f->nth_root(a.leading(), n);
  if (!lead_root)
    raise(ErrorKind::ResidueFieldTooSmall,
          "leading coefficient has no " + std::to_string(n) + "-th root in " + f->describe());
  const CInf lead = CInf::monomial(f, a.leading(), v);
  const CInf unit = a / lead;  // 1 + (positive valuation)
  CInf root_unit = CInf::one(f);
  if (!unit.equals_to_precision(CInf::one(f)) || !unit.exact()) {
    Polynomial poly(static_cast<size_t>(n) + 1, CInf::zero(f));
    poly[0] = -unit;
    poly.back() = CInf::one(f);
    const int64_t target = unit.exact() ? f->rel_cap() : unit.prec();
    root_unit = hensel_root(poly, CInf::one(f), target).root;
  }
  return root_unit * CInf::monomial(f, *lead_root, v / n);
}

}  // namespace drinfeld
