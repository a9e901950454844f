#include "drinfeld/tseries.hpp"

#include <algorithm>
#include <sstream>

namespace drinfeld {

namespace {

int64_t slope_of(const std::optional<TailBound>& a, const std::optional<TailBound>& b) {
  int64_t s = kExact;
  if (a && !a->polynomial()) s = std::min(s, a->slope);
  if (b && !b->polynomial()) s = std::min(s, b->slope);
  return s == kExact ? 0 : s;
}

std::optional<TailBound> combine_sum(const TSeries& a, const TSeries& b, size_t T) {
  if (!a.tail() || !b.tail()) return std::nullopt;
  if (a.tail()->polynomial() && b.tail()->polynomial() && T >= std::max(a.order(), b.order()))
    return TailBound{kExact, 0};
  const int64_t s = slope_of(a.tail(), b.tail());
  auto ga = global_bound(a, s), gb = global_bound(b, s);
  return TailBound{std::min(ga->offset, gb->offset), s};
}

}  // namespace

TSeries::TSeries(std::vector<CInf> coeffs, std::optional<TailBound> tail)
    : c_(std::move(coeffs)), tail_(tail) {
  if (c_.empty()) raise(ErrorKind::ShapeMismatch, "t-series of order 0");
}

TSeries TSeries::zero(FieldPtr f, size_t T) {
  return TSeries(std::vector<CInf>(T, CInf::zero(f)), TailBound{kExact, 0});
}

TSeries TSeries::constant(const CInf& c, size_t T) {
  std::vector<CInf> v(T, CInf::zero(c.field()));
  v[0] = c;
  return TSeries(std::move(v), TailBound{kExact, 0});
}

TSeries TSeries::t(FieldPtr f, size_t T) {
  std::vector<CInf> v(T, CInf::zero(f));
  if (T < 2) raise(ErrorKind::ShapeMismatch, "t needs order >= 2");
  v[1] = CInf::one(f);
  return TSeries(std::move(v), TailBound{kExact, 0});
}

std::optional<TailBound> global_bound(const TSeries& f, int64_t slope) {
  if (!f.tail()) return std::nullopt;
  int64_t off = f.tail()->polynomial() ? kExact : f.tail()->offset;
  if (!f.tail()->polynomial() && f.tail()->slope < slope)
    raise(ErrorKind::Config, "global bound slope exceeds the tail slope");
  // A tail with larger slope is dominated once shifted to the start of the tail.
  if (!f.tail()->polynomial() && f.tail()->slope > slope)
    off = sat_add(off, sat_mul(f.tail()->slope - slope, static_cast<int64_t>(f.order())));
  for (size_t i = 0; i < f.order(); ++i)
    off = std::min(off, sat_add(f.coeff(i).horizon(), -sat_mul(slope, static_cast<int64_t>(i))));
  return TailBound{off, slope};
}

TSeries operator+(const TSeries& a, const TSeries& b) {
  const size_t T = std::min(a.order(), b.order());
  std::vector<CInf> c;
  c.reserve(T);
  for (size_t i = 0; i < T; ++i) c.push_back(a.c_[i] + b.c_[i]);
  return TSeries(std::move(c), combine_sum(a, b, T));
}

TSeries TSeries::operator-() const {
  std::vector<CInf> c;
  for (const CInf& x : c_) c.push_back(-x);
  return TSeries(std::move(c), tail_);
}

TSeries operator-(const TSeries& a, const TSeries& b) { return a + (-b); }

TSeries operator*(const TSeries& a, const TSeries& b) {
  const size_t T = std::min(a.order(), b.order());
  std::vector<CInf> c(T, CInf::zero(a.field()));
  for (size_t i = 0; i < T; ++i) {
    if (a.c_[i].is_exact_zero()) continue;
    for (size_t j = 0; i + j < T; ++j) {
      if (b.c_[j].is_exact_zero()) continue;
      c[i + j] += a.c_[i] * b.c_[j];
    }
  }
  std::optional<TailBound> tb;
  if (a.tail() && b.tail()) {
    const int64_t s = slope_of(a.tail(), b.tail());
    auto ga = global_bound(a, s), gb = global_bound(b, s);
    tb = TailBound{sat_add(ga->offset, gb->offset), s};
  }
  return TSeries(std::move(c), tb);
}

TSeries TSeries::scaled(const CInf& k) const {
  std::vector<CInf> c;
  for (const CInf& x : c_) c.push_back(x * k);
  auto tb = tail_;
  if (tb && !tb->polynomial()) tb->offset = sat_add(tb->offset, k.horizon());
  return TSeries(std::move(c), tb);
}

TSeries TSeries::shifted(size_t k) const {
  std::vector<CInf> c(order(), CInf::zero(field()));
  for (size_t i = k; i < order(); ++i) c[i] = c_[i - k];
  std::optional<TailBound> tb;
  if (tail_) {
    const int64_t s = tail_->polynomial() ? 0 : tail_->slope;
    auto g = global_bound(*this, s);
    tb = TailBound{sat_add(g->offset, -sat_mul(s, static_cast<int64_t>(k))), s};
    if (k == 0) tb = tail_;
  }
  return TSeries(std::move(c), tb);
}

TSeries TSeries::truncated_order(size_t T) const {
  if (T >= order()) return *this;
  std::vector<CInf> c(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(T));
  std::optional<TailBound> tb;
  if (tail_) {
    const int64_t s = tail_->polynomial() ? 0 : tail_->slope;
    tb = global_bound(*this, s);
  }
  return TSeries(std::move(c), tb);
}

TSeries TSeries::truncated(int64_t prec) const {
  std::vector<CInf> c;
  for (const CInf& x : c_) c.push_back(x.truncated(prec));
  return TSeries(std::move(c), tail_);
}

TSeries TSeries::twist(int64_t n) const {
  std::vector<CInf> c;
  for (const CInf& x : c_) c.push_back(x.frobenius(n));
  auto tb = tail_;
  if (tb && !tb->polynomial()) {
    const int64_t qn = static_cast<int64_t>(ipow(field()->q(), static_cast<unsigned>(n < 0 ? -n : n)));
    if (n >= 0) {
      tb->offset = sat_mul(tb->offset, qn);
      tb->slope = sat_mul(tb->slope, qn);
    } else {
      tb->offset = floor_div(tb->offset, qn);
      tb->slope = floor_div(tb->slope, qn);
    }
  }
  return TSeries(std::move(c), tb);
}

TSeries TSeries::inverse() const {
  const CInf& c0 = c_[0];
  if (c0.empty()) raise(ErrorKind::NotAUnit, "constant term of a t-series is zero to precision");
  const CInf inv0 = c0.inverse();
  std::vector<CInf> y(order(), CInf::zero(field()));
  y[0] = inv0;
  for (size_t k = 1; k < order(); ++k) {
    CInf acc = CInf::zero(field());
    for (size_t j = 1; j <= k; ++j)
      if (!c_[j].is_exact_zero()) acc += c_[j] * y[k - j];
    y[k] = -(acc * inv0);
  }
  std::optional<TailBound> tb;
  if (tail_) {
    const int64_t v0 = c0.valuation();
    int64_t s = tail_->polynomial() ? 0 : tail_->slope;
    // b = min_{i>=1} v(c_i/c_0) - s i; lowering the slope by -b makes b >= 0.
    int64_t b = kExact;
    for (size_t i = 1; i < order(); ++i)
      b = std::min(b, sat_add(sat_add(c_[i].horizon(), -v0), -sat_mul(s, static_cast<int64_t>(i))));
    if (!tail_->polynomial())
      b = std::min(b, sat_add(tail_->offset, -v0));
    if (b < 0) s = sat_add(s, b);
    tb = TailBound{-v0, s};
  }
  return TSeries(std::move(y), tb);
}

int64_t TSeries::horizon() const {
  int64_t h = kExact;
  for (const CInf& x : c_) h = std::min(h, x.horizon());
  return h;
}

bool TSeries::is_zero_to_precision() const {
  return std::all_of(c_.begin(), c_.end(), [](const CInf& x) { return x.empty(); });
}

std::string TSeries::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_exact_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << c_[i].to_string() << ")";
    if (i > 0) os << "*t^" << i;
  }
  if (first) os << "0";
  if (!tail_ || !tail_->polynomial()) os << " + O(t^" << c_.size() << ")";
  return os.str();
}

CInf specialize_t(const TSeries& f, const CInf& t0) {
  const FieldPtr& fp = f.field();
  if (t0.is_exact_zero()) return f.coeff(0);
  int64_t tail_v = kExact;
  if (!f.tail())
    raise(ErrorKind::DivergentEvaluation, "t-series without a tail certificate cannot be specialized");
  if (!f.tail()->polynomial()) {
    const int64_t w = t0.valuation();
    const int64_t rate = sat_add(f.tail()->slope, w);
    if (rate <= 0)
      raise(ErrorKind::DivergentEvaluation,
            "tail bound does not make the dropped terms tend to zero at this t");
    tail_v = sat_add(f.tail()->offset, sat_mul(rate, static_cast<int64_t>(f.order())));
  }
  CInf acc = CInf::zero(fp);
  for (size_t i = f.order(); i-- > 0;) acc = acc * t0 + f.coeff(i);
  return acc.truncated(tail_v);
}

TPoly::TPoly(std::vector<CInf> coeffs) : c_(std::move(coeffs)) { trim(); }

TPoly TPoly::t(FieldPtr f) { return TPoly({CInf::zero(f), CInf::one(f)}); }

void TPoly::trim() {
  while (!c_.empty() && c_.back().is_exact_zero()) c_.pop_back();
}

TPoly operator+(const TPoly& a, const TPoly& b) {
  std::vector<CInf> r(std::max(a.c_.size(), b.c_.size()));
  for (size_t i = 0; i < r.size(); ++i) {
    if (i < a.c_.size() && i < b.c_.size())
      r[i] = a.c_[i] + b.c_[i];
    else
      r[i] = i < a.c_.size() ? a.c_[i] : b.c_[i];
  }
  return TPoly(std::move(r));
}

TPoly TPoly::operator-() const {
  std::vector<CInf> r;
  for (const CInf& x : c_) r.push_back(-x);
  return TPoly(std::move(r));
}

TPoly operator-(const TPoly& a, const TPoly& b) { return a + (-b); }

TPoly operator*(const TPoly& a, const TPoly& b) {
  if (a.c_.empty() || b.c_.empty()) return {};
  std::vector<CInf> r(a.c_.size() + b.c_.size() - 1, CInf::zero(a.c_[0].field()));
  for (size_t i = 0; i < a.c_.size(); ++i)
    for (size_t j = 0; j < b.c_.size(); ++j)
      if (!a.c_[i].is_exact_zero() && !b.c_[j].is_exact_zero()) r[i + j] += a.c_[i] * b.c_[j];
  return TPoly(std::move(r));
}

TPoly TPoly::twist(int64_t n) const {
  std::vector<CInf> r;
  for (const CInf& x : c_) r.push_back(x.frobenius(n));
  return TPoly(std::move(r));
}

CInf TPoly::eval(const CInf& t0) const {
  if (c_.empty()) return CInf::zero(t0.field());
  CInf acc = c_.back();
  for (size_t i = c_.size() - 1; i-- > 0;) acc = acc * t0 + c_[i];
  return acc;
}

TSeries TPoly::to_series(size_t T) const {
  if (c_.empty()) raise(ErrorKind::ShapeMismatch, "series of the zero polynomial needs a field");
  std::vector<CInf> v(T, CInf::zero(c_[0].field()));
  for (size_t i = 0; i < std::min(T, c_.size()); ++i) v[i] = c_[i];
  TSeries s(std::move(v), TailBound{kExact, 0});
  if (c_.size() > T) {
    TSeries full(c_, TailBound{kExact, 0});
    return full.truncated_order(T);
  }
  return s;
}

bool TPoly::is_zero_to_precision() const {
  return std::all_of(c_.begin(), c_.end(), [](const CInf& x) { return x.empty(); });
}

std::string TPoly::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_exact_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << c_[i].to_string() << ")";
    if (i > 0) os << "*t^" << i;
  }
  if (first) os << "0";
  return os.str();
}

RationalT RationalT::from(const TPoly& p, const FieldPtr& f) { return {p, TPoly::constant(CInf::one(f))}; }

TSeries RationalT::to_series(size_t T) const {
  if (den.degree() == 0) {
    if (num.is_zero()) return TSeries::zero(den.coeffs()[0].field(), T);
    return num.to_series(T).scaled(den.coeffs()[0].inverse());
  }
  TSeries n = num.is_zero() ? TSeries::zero(den.coeffs()[0].field(), T) : num.to_series(T);
  return n * den.to_series(T).inverse();
}

CInf RationalT::eval(const CInf& t0) const {
  const CInf d = den.eval(t0);
  if (d.empty()) raise(ErrorKind::PoleHit, "denominator vanishes at the specialization point");
  return num.eval(t0) / d;
}

RationalT operator+(const RationalT& a, const RationalT& b) {
  return {a.num * b.den + b.num * a.den, a.den * b.den};
}
RationalT operator-(const RationalT& a, const RationalT& b) { return a + (-b); }
RationalT operator*(const RationalT& a, const RationalT& b) { return {a.num * b.num, a.den * b.den}; }

bool RationalT::equals_to_precision(const RationalT& b) const {
  return (num * b.den - b.num * den).is_zero_to_precision();
}

TMatrix twist(const TMatrix& m, int64_t n) {
  return m.map([n](const TSeries& x) { return x.twist(n); });
}
RMatrix twist(const RMatrix& m, int64_t n) {
  return m.map([n](const RationalT& x) { return x.twist(n); });
}
TMatrix to_series(const RMatrix& m, size_t T) {
  std::vector<TSeries> out;
  for (const auto& x : m.data()) out.push_back(x.to_series(T));
  return TMatrix(m.rows(), m.cols(), std::move(out));
}
CMatrix specialize_t(const TMatrix& m, const CInf& t0) {
  std::vector<CInf> out;
  for (const auto& x : m.data()) out.push_back(specialize_t(x, t0));
  return CMatrix(m.rows(), m.cols(), std::move(out));
}
CMatrix specialize_t(const RMatrix& m, const CInf& t0) {
  std::vector<CInf> out;
  for (const auto& x : m.data()) out.push_back(x.eval(t0));
  return CMatrix(m.rows(), m.cols(), std::move(out));
}
int64_t horizon(const TMatrix& m) {
  int64_t h = kExact;
  for (const auto& x : m.data()) h = std::min(h, x.horizon());
  return h;
}
int64_t horizon(const CMatrix& m) {
  int64_t h = kExact;
  for (const auto& x : m.data()) h = std::min(h, x.horizon());
  return h;
}
TMatrix identity_series(FieldPtr f, size_t n, size_t T) {
  std::vector<TSeries> out;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      out.push_back(i == j ? TSeries::constant(CInf::one(f), T) : TSeries::zero(f, T));
  return TMatrix(n, n, std::move(out));
}
CMatrix identity(FieldPtr f, size_t n) {
  std::vector<CInf> out;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) out.push_back(i == j ? CInf::one(f) : CInf::zero(f));
  return CMatrix(n, n, std::move(out));
}

}  // namespace drinfeld
