#include "drinfeld/cinf.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "drinfeld/kernels.hpp"

namespace drinfeld {

int64_t sat_add(int64_t a, int64_t b) {
  if (a == kExact || b == kExact) return kExact;
  __int128 r = static_cast<__int128>(a) + b;
  if (r >= kExact) return kExact - 1;
  if (r <= -kExact) return -kExact + 1;
  return static_cast<int64_t>(r);
}

int64_t sat_mul(int64_t a, int64_t b) {
  __int128 r = static_cast<__int128>(a) * b;
  if (r >= kExact) return kExact - 1;
  if (r <= -kExact) return -kExact + 1;
  return static_cast<int64_t>(r);
}

int64_t floor_div(int64_t a, int64_t b) {
  int64_t d = a / b;
  if ((a % b != 0) && (a < 0)) --d;
  return d;
}

int64_t ceil_div(int64_t a, int64_t b) { return -floor_div(-a, b); }

namespace {

// Number of progression entries lo + i*step strictly below `limit`.
size_t count_below(int64_t lo, int64_t step, int64_t limit) {
  if (limit == kExact) return SIZE_MAX;
  if (limit <= lo) return 0;
  if (step == 0) return 1;
  __int128 n = (static_cast<__int128>(limit) - lo + step - 1) / step;
  return n > static_cast<__int128>(SIZE_MAX / 2) ? SIZE_MAX / 2 : static_cast<size_t>(n);
}

}  // namespace

void CInf::normalize(std::vector<Fe> dense, int64_t lo, int64_t step, int64_t prec) {
  prec_ = prec;
  if (dense.size() > 1 && step <= 0) step = 1;
  size_t keep = count_below(lo, step, prec);
  if (keep < dense.size()) dense.resize(keep);
  while (!dense.empty() && dense.back().is_zero()) dense.pop_back();
  size_t first = 0;
  while (first < dense.size() && dense[first].is_zero()) ++first;
  if (first == dense.size()) {
    c_.clear();
    lo_ = 0;
    step_ = 0;
    if (prec_ != kExact && prec_ > kHuge) prec_ = kHuge;
    return;
  }
  lo = sat_add(lo, sat_mul(static_cast<int64_t>(first), step));
  if (first > 0) dense.erase(dense.begin(), dense.begin() + static_cast<std::ptrdiff_t>(first));
  if (lo >= kHuge) {
    c_.clear();
    lo_ = 0;
    step_ = 0;
    prec_ = std::min(prec_, kHuge);
    return;
  }

  const int64_t cap = sat_add(lo, field_->rel_cap());
  const int64_t last = sat_add(lo, sat_mul(static_cast<int64_t>(dense.size() - 1), step));
  if ((prec_ != kExact && prec_ > cap) || last >= cap) {
    prec_ = std::min(prec_, cap);
    keep = count_below(lo, step, prec_);
    if (keep < dense.size()) dense.resize(keep);
    while (!dense.empty() && dense.back().is_zero()) dense.pop_back();
  }

  int64_t g = 0;
  for (size_t i = 1; i < dense.size(); ++i)
    if (!dense[i].is_zero()) g = std::gcd(g, static_cast<int64_t>(i));
  if (g > 1) {
    std::vector<Fe> packed;
    packed.reserve(dense.size() / static_cast<size_t>(g) + 1);
    for (size_t i = 0; i < dense.size(); i += static_cast<size_t>(g)) packed.push_back(dense[i]);
    dense = std::move(packed);
    step *= g;
  }
  lo_ = lo;
  step_ = dense.size() > 1 ? step : 0;
  c_ = std::move(dense);
}

void CInf::check_same(const CInf& b) const {
  if (!field_ || !b.field_) raise(ErrorKind::Config, "operation on an uninitialized value");
  if (field_ != b.field_ && field_->config().modulus != b.field_->config().modulus)
    raise(ErrorKind::Config, "operands live in different fields");
}

CInf CInf::zero(FieldPtr f) {
  CInf r;
  r.field_ = std::move(f);
  return r;
}

CInf CInf::zero_to(FieldPtr f, int64_t prec) {
  CInf r;
  r.field_ = std::move(f);
  r.prec_ = std::min(prec, kExact);
  if (r.prec_ != kExact && r.prec_ > kHuge) r.prec_ = kHuge;
  return r;
}

CInf CInf::one(FieldPtr f) { return monomial(std::move(f), Fe{0}, 0); }

CInf CInf::from_int(FieldPtr f, int64_t k) {
  Fe c = f->from_int(k);
  return monomial(std::move(f), c, 0);
}

CInf CInf::constant(FieldPtr f, Fe c) { return monomial(std::move(f), c, 0); }

CInf CInf::monomial(FieldPtr f, Fe c, int64_t exponent) {
  CInf r;
  r.field_ = std::move(f);
  if (!c.is_zero()) {
    r.c_ = {c};
    r.lo_ = exponent;
  }
  return r;
}

CInf CInf::theta_pow(FieldPtr f, int64_t k) {
  const int64_t e = f->e();
  return monomial(std::move(f), Fe{0}, sat_mul(-k, e));
}

CInf CInf::from_terms(FieldPtr f, std::vector<std::pair<int64_t, Fe>> terms, int64_t prec) {
  CInf r;
  r.field_ = std::move(f);
  std::erase_if(terms, [&](const auto& t) { return t.second.is_zero() || t.first >= prec; });
  if (terms.empty()) {
    r.prec_ = prec;
    return r;
  }
  std::sort(terms.begin(), terms.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  const int64_t lo = terms.front().first;
  int64_t g = 0;
  for (const auto& t : terms) g = std::gcd(g, t.first - lo);
  if (g == 0) g = 1;
  std::vector<Fe> dense(static_cast<size_t>((terms.back().first - lo) / g + 1));
  const Field& fld = *r.field_;
  for (const auto& [x, c] : terms) {
    auto& slot = dense[static_cast<size_t>((x - lo) / g)];
    slot = fld.add(slot, c);
  }
  r.normalize(std::move(dense), lo, g, prec);
  return r;
}

std::optional<int64_t> CInf::lowest() const {
  if (c_.empty()) return std::nullopt;
  return lo_;
}

int64_t CInf::valuation() const {
  if (c_.empty()) {
    if (exact()) return kExact;
    raise(ErrorKind::IndeterminateValuation,
          "value is zero to precision " + std::to_string(prec_) + "; valuation undetermined");
  }
  return lo_;
}

int64_t CInf::horizon() const { return c_.empty() ? prec_ : lo_; }

std::pair<int64_t, int64_t> CInf::abs_exponent() const {
  int64_t v = valuation();
  if (v == kExact) raise(ErrorKind::IndeterminateValuation, "absolute value of zero");
  int64_t e = field_->e();
  int64_t g = std::gcd(v, e);
  return {-v / g, e / g};
}

Fe CInf::leading() const {
  if (c_.empty()) raise(ErrorKind::IndeterminateValuation, "no known leading term");
  return c_.front();
}

Fe CInf::coeff(int64_t exponent) const {
  if (exponent >= prec_)
    raise(ErrorKind::PrecisionExhausted, "coefficient requested beyond precision");
  if (c_.empty() || exponent < lo_) return Fe{};
  if (step_ == 0) return exponent == lo_ ? c_.front() : Fe{};
  int64_t d = exponent - lo_;
  if (d % step_ != 0) return Fe{};
  size_t i = static_cast<size_t>(d / step_);
  return i < c_.size() ? c_[i] : Fe{};
}

size_t CInf::term_count() const {
  return static_cast<size_t>(std::count_if(c_.begin(), c_.end(), [](Fe c) { return !c.is_zero(); }));
}

std::vector<std::pair<int64_t, Fe>> CInf::terms() const {
  std::vector<std::pair<int64_t, Fe>> out;
  for (size_t i = 0; i < c_.size(); ++i)
    if (!c_[i].is_zero()) out.emplace_back(exponent_at(i), c_[i]);
  return out;
}

CInf CInf::truncated(int64_t new_prec) const {
  if (new_prec >= prec_) return *this;
  CInf r;
  r.field_ = field_;
  r.normalize(c_, lo_, step_, new_prec);
  return r;
}

CInf CInf::shifted(int64_t k) const {
  CInf r = *this;
  if (!r.c_.empty()) r.lo_ = sat_add(r.lo_, k);
  r.prec_ = sat_add(r.prec_, k);
  if (!r.c_.empty() && r.lo_ >= kHuge) return zero_to(field_, std::min(r.prec_, kHuge));
  return r;
}

CInf CInf::scaled(Fe c) const {
  if (c.is_zero()) return zero(field_);
  CInf r = *this;
  for (Fe& x : r.c_) x = field_->mul(x, c);
  return r;
}

CInf CInf::operator-() const { return scaled(field_->from_int(-1)); }

CInf operator+(const CInf& a, const CInf& b) {
  a.check_same(b);
  const int64_t prec = std::min(a.prec_, b.prec_);
  if (a.c_.empty()) return b.truncated(prec);
  if (b.c_.empty()) return a.truncated(prec);
  const Field& f = *a.field_;
  int64_t g = std::gcd(std::gcd(a.step_, b.step_),
                       a.lo_ > b.lo_ ? a.lo_ - b.lo_ : b.lo_ - a.lo_);
  if (g == 0) g = 1;
  const int64_t lo = std::min(a.lo_, b.lo_);
  const int64_t last_a = a.exponent_at(a.c_.size() - 1);
  const int64_t last_b = b.exponent_at(b.c_.size() - 1);
  int64_t limit = std::min(prec, sat_add(std::max(last_a, last_b), 1));
  int64_t eff_prec = prec;
  const int64_t span_cap = sat_add(lo, 2 * f.rel_cap());
  if (limit > span_cap) {
    limit = span_cap;
    eff_prec = std::min(eff_prec, span_cap);
  }
  std::vector<Fe> dense(count_below(lo, g, limit));
  auto place = [&](const CInf& x) {
    for (size_t i = 0; i < x.c_.size(); ++i) {
      int64_t ex = x.exponent_at(i);
      if (ex >= limit) break;
      if (x.c_[i].is_zero()) continue;
      auto& slot = dense[static_cast<size_t>((ex - lo) / g)];
      slot = f.add(slot, x.c_[i]);
    }
  };
  place(a);
  place(b);
  CInf r;
  r.field_ = a.field_;
  r.normalize(std::move(dense), lo, g, eff_prec);
  return r;
}

CInf operator-(const CInf& a, const CInf& b) { return a + (-b); }

CInf operator*(const CInf& a, const CInf& b) {
  a.check_same(b);
  if (a.is_exact_zero() || b.is_exact_zero()) return CInf::zero(a.field_);
  const int64_t va = a.c_.empty() ? a.prec_ : a.lo_;
  const int64_t vb = b.c_.empty() ? b.prec_ : b.lo_;
  const int64_t prec = std::min(sat_add(a.prec_, vb), sat_add(b.prec_, va));
  if (a.c_.empty() || b.c_.empty()) return CInf::zero_to(a.field_, prec);
  const Field& f = *a.field_;
  const int64_t lo = sat_add(a.lo_, b.lo_);
  if (lo >= kHuge) return CInf::zero_to(a.field_, std::min(prec, kHuge));
  int64_t g = std::gcd(a.step_, b.step_);
  if (g == 0) g = 1;
  const int64_t last = sat_add(a.exponent_at(a.c_.size() - 1), b.exponent_at(b.c_.size() - 1));
  const int64_t limit =
      std::min({prec, sat_add(lo, f.rel_cap()), sat_add(last, 1)});
  const size_t out_len = count_below(lo, g, limit);
  if (out_len == 0) return CInf::zero_to(a.field_, prec);

  auto upsample = [&](const CInf& x) {
    const size_t r = x.step_ == 0 ? 1 : static_cast<size_t>(x.step_ / g);
    const size_t len = std::min((x.c_.size() - 1) * r + 1, out_len);
    std::vector<Fe> up(len);
    for (size_t i = 0; i * r < len; ++i) up[i * r] = x.c_[i];
    return up;
  };
  std::vector<Fe> ua = upsample(a);
  std::vector<Fe> ub = upsample(b);
  std::vector<Fe> out = kernels::convolve(f, ua, ub, out_len);
  CInf r;
  r.field_ = a.field_;
  r.normalize(std::move(out), lo, g, prec);
  return r;
}

CInf CInf::inverse() const {
  if (c_.empty())
    raise(ErrorKind::DivisionByApparentZero,
          "division by a value that is zero to precision " + std::to_string(prec_));
  const Field& f = *field_;
  const int64_t v = lo_;
  const Fe cinv = f.inv(c_.front());
  const int64_t rel = exact() ? kExact : prec_ - v;
  const int64_t out_prec = rel == kExact ? kExact : sat_add(-v, rel);
  CInf r;
  r.field_ = field_;
  if (c_.size() == 1) {
    r.normalize({cinv}, -v, 0, out_prec);
    return r;
  }
  const int64_t rel_eff = std::min(rel, f.rel_cap());
  const size_t n = count_below(0, step_, rel_eff);
  std::vector<Fe> u(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) u[i] = f.mul(c_[i], cinv);
  std::vector<Fe> y(n);
  if (n > 0) y[0] = f.one();
  for (size_t k = 1; k < n; ++k) {
    Fe acc{};
    const size_t jmax = std::min(k, u.size() - 1);
    for (size_t j = 1; j <= jmax; ++j) {
      if (u[j].is_zero() || y[k - j].is_zero()) continue;
      acc = f.add(acc, f.mul(u[j], y[k - j]));
    }
    y[k] = f.neg(acc);
  }
  for (Fe& x : y) x = f.mul(x, cinv);
  const int64_t final_prec = rel == kExact ? sat_add(-v, rel_eff) : out_prec;
  r.normalize(std::move(y), -v, step_, final_prec);
  return r;
}

CInf operator/(const CInf& a, const CInf& b) {
  a.check_same(b);
  if (b.c_.empty())
    raise(ErrorKind::DivisionByApparentZero,
          "divisor is zero to precision " + std::to_string(b.prec_));
  if (a.is_exact_zero()) return CInf::zero(a.field_);
  return a * b.inverse();
}

CInf CInf::pow(int64_t k) const {
  if (k == 0) return one(field_);
  if (k < 0) return inverse().pow(-k);
  CInf result = one(field_);
  CInf base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

CInf CInf::frobenius(int64_t n) const {
  if (n == 0) return *this;
  const Field& f = *field_;
  if (n > 0) {
    int64_t mult = 1;
    for (int64_t i = 0; i < n; ++i) mult = sat_mul(mult, static_cast<int64_t>(f.q()));
    const int64_t prec = prec_ == kExact ? kExact : sat_mul(prec_, mult);
    if (c_.empty()) return zero_to(field_, prec);
    const int64_t lo = sat_mul(lo_, mult);
    const int64_t step = sat_mul(step_, mult);
    if (lo >= kHuge) return zero_to(field_, std::min(prec, kHuge));
    size_t keep = c_.size();
    if (step > 0) keep = std::min(keep, count_below(0, step, f.rel_cap()));
    std::vector<Fe> dense(keep);
    for (size_t i = 0; i < keep; ++i) dense[i] = f.frob(c_[i], n);
    int64_t out_prec = prec;
    if (keep < c_.size()) out_prec = std::min(out_prec, sat_add(lo, f.rel_cap()));
    CInf r;
    r.field_ = field_;
    r.normalize(std::move(dense), lo, step == 0 ? 1 : step, out_prec);
    return r;
  }
  const int64_t depth = -n;
  if (depth > f.depth())
    raise(ErrorKind::GridTooCoarse, "inverse twist of depth " + std::to_string(depth) +
                                        " exceeds configured depth " + std::to_string(f.depth()));
  int64_t div = 1;
  for (int64_t i = 0; i < depth; ++i) div *= static_cast<int64_t>(f.q());
  const int64_t prec = prec_ == kExact ? kExact : ceil_div(prec_, div);
  if (c_.empty()) return zero_to(field_, prec);
  if (lo_ % div != 0 || step_ % div != 0)
    raise(ErrorKind::GridTooCoarse,
          "inverse twist leaves the grid: exponents must be divisible by " + std::to_string(div) +
              " (increase e)");
  std::vector<Fe> dense(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) dense[i] = f.frob(c_[i], n);
  CInf r;
  r.field_ = field_;
  r.normalize(std::move(dense), lo_ / div, step_ == 0 ? 1 : step_ / div, prec);
  return r;
}

bool CInf::equals_to_precision(const CInf& b) const { return (*this - b).empty(); }

bool CInf::identical(const CInf& b) const {
  return lo_ == b.lo_ && step_ == b.step_ && c_ == b.c_ && prec_ == b.prec_;
}

std::string CInf::to_string() const {
  std::ostringstream os;
  const int64_t e = field_ ? field_->e() : 1;
  auto exponent = [&](int64_t n) {
    // theta^(-n/e)
    int64_t num = -n;
    int64_t g = std::gcd(num, e);
    if (g == 0) g = 1;
    std::ostringstream s;
    if (num / g == 0) return std::string{};
    s << "th^(" << num / g;
    if (e / g != 1) s << "/" << e / g;
    s << ")";
    return s.str();
  };
  bool first = true;
  for (const auto& [n, c] : terms()) {
    if (!first) os << " + ";
    first = false;
    uint32_t code = field_->encode(c);
    std::string x = exponent(n);
    if (x.empty())
      os << "[" << code << "]";
    else
      os << "[" << code << "]*" << x;
  }
  if (first) os << "0";
  if (!exact()) os << " + O(" << (exponent(prec_).empty() ? "1" : exponent(prec_)) << ")";
  return os.str();
}

CInf arith(const CInf& a, const CInf& b, ArithKind kind) {
  switch (kind) {
    case ArithKind::Add: return a + b;
    case ArithKind::Sub: return a - b;
    case ArithKind::Mul: return a * b;
    case ArithKind::Div: return a / b;
  }
  return a;
}

CInf frobenius(const CInf& a, int64_t n) { return a.frobenius(n); }

}  // namespace drinfeld
