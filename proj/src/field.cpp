#include "drinfeld/field.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "drinfeld/error.hpp"

namespace drinfeld {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Config: return "ConfigError";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::DivisionByApparentZero: return "DivisionByApparentZero";
    case ErrorKind::IndeterminateValuation: return "IndeterminateValuation";
    case ErrorKind::GridTooCoarse: return "GridTooCoarse";
    case ErrorKind::ResidueFieldTooSmall: return "ResidueFieldTooSmall";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::DivergentEvaluation: return "DivergentEvaluation";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::PoleHit: return "PoleHit";
    case ErrorKind::IndependenceFailure: return "IndependenceFailure";
    case ErrorKind::SingularSpecialization: return "SingularSpecialization";
    case ErrorKind::NotAUnit: return "NotAUnit";
    case ErrorKind::VerificationFailed: return "VerificationFailed";
  }
  return "Unknown";
}

bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

uint64_t ipow(uint64_t base, unsigned exp) {
  uint64_t r = 1;
  while (exp--) r *= base;
  return r;
}

namespace {

std::vector<uint64_t> prime_factors(uint64_t n) {
  std::vector<uint64_t> out;
  for (uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Dense polynomials over F_p, low to high, trimmed.
using Poly = std::vector<uint32_t>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

uint32_t inv_mod(uint32_t a, uint32_t p) {
  int64_t t = 0, nt = 1, r = p, nr = a % p;
  while (nr != 0) {
    int64_t qq = r / nr;
    std::tie(t, nt) = std::pair{nt, t - qq * nt};
    std::tie(r, nr) = std::pair{nr, r - qq * nr};
  }
  if (t < 0) t += p;
  return static_cast<uint32_t>(t);
}

Poly poly_mod(Poly a, const Poly& f, uint32_t p) {
  trim(a);
  const size_t df = f.size() - 1;
  const uint32_t lead_inv = inv_mod(f.back(), p);
  while (a.size() > df) {
    uint64_t c = static_cast<uint64_t>(a.back()) * lead_inv % p;
    size_t shift = a.size() - 1 - df;
    for (size_t i = 0; i <= df; ++i)
      a[shift + i] = static_cast<uint32_t>((a[shift + i] + (p - c) * f[i]) % p);
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<uint32_t>((r[i + j] + static_cast<uint64_t>(a[i]) * b[j]) % p);
  return poly_mod(std::move(r), f, p);
}

Poly poly_gcd(Poly a, Poly b, uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// x^(p^k) mod f by repeated p-th powering.
Poly frobenius_power_of_x(const Poly& f, uint32_t p, unsigned k) {
  Poly x = poly_mod(Poly{0, 1}, f, p);
  for (unsigned step = 0; step < k; ++step) {
    Poly acc{1};
    Poly base = x;
    for (uint32_t e = p; e > 0; e >>= 1) {
      if (e & 1) acc = poly_mulmod(acc, base, f, p);
      base = poly_mulmod(base, base, f, p);
    }
    x = std::move(acc);
  }
  return x;
}

std::vector<uint32_t> digits(uint64_t code, uint32_t p, uint32_t d) {
  std::vector<uint32_t> out(d);
  for (uint32_t i = 0; i < d; ++i) {
    out[i] = static_cast<uint32_t>(code % p);
    code /= p;
  }
  return out;
}

uint64_t undigits(const std::vector<uint32_t>& v, uint32_t p) {
  uint64_t code = 0;
  for (size_t i = v.size(); i-- > 0;) code = code * p + v[i];
  return code;
}

// Order of g in (F_p[x]/f)^x, or 0 if it exceeds `limit` (zero divisors).
uint64_t element_order(const Poly& g, const Poly& f, uint32_t p, uint64_t limit) {
  Poly acc = poly_mod(g, f, p);
  if (acc.empty()) return 0;
  for (uint64_t k = 1; k <= limit; ++k) {
    if (acc.size() == 1 && acc[0] == 1) return k;
    acc = poly_mulmod(acc, g, f, p);
    if (acc.empty()) return 0;
  }
  return 0;
}

}  // namespace

bool is_irreducible(std::span<const uint32_t> monic, uint32_t p) {
  Poly f(monic.begin(), monic.end());
  trim(f);
  if (f.size() < 2) return false;
  const unsigned d = static_cast<unsigned>(f.size() - 1);
  if (d == 1) return true;
  Poly x = poly_mod(Poly{0, 1}, f, p);
  if (frobenius_power_of_x(f, p, d) != x) return false;
  for (uint64_t r : prime_factors(d)) {
    Poly h = frobenius_power_of_x(f, p, d / static_cast<unsigned>(r));
    h.resize(std::max<size_t>(h.size(), 2), 0);
    h[1] = (h[1] + p - 1) % p;
    trim(h);
    Poly g = poly_gcd(f, h, p);
    if (g.size() != 1) return false;
  }
  return true;
}

int64_t minimal_grid(uint64_t q, int depth, std::span<const int64_t> extra) {
  int64_t e = static_cast<int64_t>((q - 1) * ipow(q, static_cast<unsigned>(depth)));
  for (int64_t d : extra)
    if (d > 0) e = std::lcm(e, d);
  return e;
}

uint32_t minimal_extension(uint64_t q, uint64_t n) {
  uint64_t acc = q % n;
  for (uint32_t m = 1; m <= 64; ++m) {
    if (acc == 1 % n) return m;
    acc = static_cast<uint64_t>((static_cast<unsigned __int128>(acc) * q) % n);
  }
  raise(ErrorKind::Config, "no extension of degree <= 64 contains the requested roots of unity");
}

std::shared_ptr<const Field> Field::make(FieldConfig cfg) {
  if (!is_prime(cfg.p)) raise(ErrorKind::Config, "p must be prime");
  if (cfg.p == 2 && !cfg.allow_char2)
    raise(ErrorKind::Config, "characteristic 2 is untested; pass allow_char2 to proceed");
  if (cfg.s == 0 || cfg.m == 0) raise(ErrorKind::Config, "s and m must be positive");
  if (cfg.e <= 0) raise(ErrorKind::Config, "grid denominator e must be positive");
  if (cfg.depth < 0) raise(ErrorKind::Config, "depth must be nonnegative");
  const uint64_t q = ipow(cfg.p, cfg.s);
  const int64_t need = static_cast<int64_t>((q - 1) * ipow(q, static_cast<unsigned>(cfg.depth)));
  if (cfg.e % need != 0)
    raise(ErrorKind::Config, "grid denominator e=" + std::to_string(cfg.e) +
                                 " must be divisible by (q-1)q^D=" + std::to_string(need));
  auto field = std::shared_ptr<Field>(new Field(std::move(cfg)));
  field->build_tables();
  return field;
}

void Field::build_tables() {
  const uint32_t p = cfg_.p;
  q_ = ipow(p, cfg_.s);
  degree_ = cfg_.s * cfg_.m;
  if (degree_ > 40) raise(ErrorKind::Config, "extension degree too large");
  order_ = ipow(p, degree_);
  if (order_ > (1u << 20)) raise(ErrorKind::Config, "field order above 2^20 is not supported");
  nm1_ = static_cast<int64_t>(order_ - 1);
  rel_cap_ = cfg_.rel_cap > 0 ? cfg_.rel_cap : 64 * cfg_.e;

  Poly generator;
  if (cfg_.modulus.empty()) {
    // First primitive polynomial: x itself generates the unit group.
    std::vector<uint32_t> low(degree_, 0);
    for (uint64_t code = 0; code < order_; ++code) {
      low = digits(code, p, degree_);
      if (low[0] == 0) continue;
      Poly f = low;
      f.push_back(1);
      if (element_order(Poly{0, 1}, f, p, static_cast<uint64_t>(nm1_)) == static_cast<uint64_t>(nm1_)) {
        cfg_.modulus = f;
        break;
      }
    }
    if (cfg_.modulus.empty()) raise(ErrorKind::Config, "no primitive polynomial found");
    generator = {0, 1};
  } else {
    Poly f = cfg_.modulus;
    trim(f);
    if (f.size() != degree_ + 1 || f.back() != 1)
      raise(ErrorKind::Config, "modulus must be monic of degree s*m over F_p");
    for (uint32_t c : f)
      if (c >= p) raise(ErrorKind::Config, "modulus coefficients must lie in [0, p)");
    if (!is_irreducible(f, p)) raise(ErrorKind::Config, "modulus is not irreducible over F_p");
    cfg_.modulus = f;
    for (uint64_t code = (degree_ == 1 ? 2 : p); code < order_; ++code) {
      Poly g = digits(code, p, degree_);
      trim(g);
      if (element_order(g, f, p, static_cast<uint64_t>(nm1_)) == static_cast<uint64_t>(nm1_)) {
        generator = g;
        break;
      }
    }
    if (generator.empty() && order_ == 2) generator = {1};
    if (generator.empty()) raise(ErrorKind::Config, "no primitive element found");
  }

  exp_.assign(static_cast<size_t>(nm1_), 0);
  log_.assign(order_, -1);
  Poly acc{1};
  for (int64_t k = 0; k < nm1_; ++k) {
    std::vector<uint32_t> full = acc;
    full.resize(degree_, 0);
    uint64_t code = undigits(full, p);
    exp_[static_cast<size_t>(k)] = static_cast<uint32_t>(code);
    log_[code] = static_cast<int32_t>(k);
    acc = poly_mulmod(acc, generator, cfg_.modulus, p);
  }
  zech_.assign(static_cast<size_t>(nm1_), -1);
  for (int64_t k = 0; k < nm1_; ++k) {
    uint64_t code = exp_[static_cast<size_t>(k)];
    uint64_t d0 = code % p;
    uint64_t plus_one = code - d0 + (d0 + 1) % p;
    zech_[static_cast<size_t>(k)] = log_[plus_one];
  }
  neg_one_ = log_[p - 1];
}

Fe Field::from_int(int64_t k) const {
  int64_t r = k % static_cast<int64_t>(cfg_.p);
  if (r < 0) r += cfg_.p;
  return Fe{log_[static_cast<size_t>(r)]};
}

Fe Field::inv(Fe a) const {
  if (a.is_zero()) raise(ErrorKind::DivisionByApparentZero, "inverse of zero in F_Q");
  return Fe{static_cast<int32_t>(a.log == 0 ? 0 : nm1_ - a.log)};
}

Fe Field::pow(Fe a, int64_t k) const {
  if (a.is_zero()) {
    if (k == 0) return one();
    if (k < 0) raise(ErrorKind::DivisionByApparentZero, "negative power of zero");
    return a;
  }
  __int128 r = static_cast<__int128>(a.log) * (k % nm1_);
  int64_t rr = static_cast<int64_t>(r % nm1_);
  if (rr < 0) rr += nm1_;
  return Fe{static_cast<int32_t>(rr)};
}

Fe Field::frob(Fe a, int64_t n) const {
  if (a.is_zero()) return a;
  const int64_t m = static_cast<int64_t>(degree_ / cfg_.s);
  int64_t nn = ((n % m) + m) % m;
  uint64_t mult = 1;
  for (int64_t i = 0; i < nn; ++i) mult = static_cast<uint64_t>((static_cast<unsigned __int128>(mult) * q_) % static_cast<uint64_t>(nm1_ == 0 ? 1 : nm1_));
  if (nm1_ <= 1) return a;
  return Fe{static_cast<int32_t>((static_cast<unsigned __int128>(a.log) * mult) % static_cast<uint64_t>(nm1_))};
}

std::vector<uint32_t> Field::to_vector(Fe a) const {
  return digits(encode(a), cfg_.p, degree_);
}

Fe Field::from_vector(std::span<const uint32_t> v) const {
  if (v.size() > degree_) raise(ErrorKind::Config, "coefficient vector longer than field degree");
  std::vector<uint32_t> full(v.begin(), v.end());
  full.resize(degree_, 0);
  for (uint32_t c : full)
    if (c >= cfg_.p) raise(ErrorKind::Config, "coefficient out of range for F_p");
  return decode(static_cast<uint32_t>(undigits(full, cfg_.p)));
}

uint32_t Field::encode(Fe a) const {
  return a.is_zero() ? 0u : exp_[static_cast<size_t>(a.log)];
}

Fe Field::decode(uint32_t code) const {
  if (code >= order_) raise(ErrorKind::Config, "field element code out of range");
  return Fe{log_[code]};
}

std::optional<Fe> Field::nth_root(Fe a, int64_t n) const {
  if (n <= 0) raise(ErrorKind::Config, "root index must be positive");
  if (a.is_zero()) return a;
  const int64_t g = std::gcd(n, nm1_);
  if (a.log % g != 0) return std::nullopt;
  const int64_t mod = nm1_ / g;
  if (mod == 1) return Fe{0};
  // Solve (n/g) x = log/g mod (Q-1)/g.
  int64_t t = 0, nt = 1, r = mod, nr = (n / g) % mod;
  while (nr != 0) {
    int64_t qq = r / nr;
    std::tie(t, nt) = std::pair{nt, t - qq * nt};
    std::tie(r, nr) = std::pair{nr, r - qq * nr};
  }
  if (t < 0) t += mod;
  int64_t x = static_cast<int64_t>((static_cast<__int128>(a.log / g) * t) % mod);
  return Fe{static_cast<int32_t>(x)};
}

Fe Field::eval(std::span<const Fe> poly, Fe x) const {
  Fe acc{};
  for (size_t i = poly.size(); i-- > 0;) acc = add(mul(acc, x), poly[i]);
  return acc;
}

std::vector<std::pair<Fe, int>> Field::roots(std::span<const Fe> poly) const {
  std::vector<std::pair<Fe, int>> out;
  std::vector<Fe> f(poly.begin(), poly.end());
  while (!f.empty() && f.back().is_zero()) f.pop_back();
  if (f.size() <= 1) return out;
  for (uint64_t code = 0; code < order_; ++code) {
    Fe x = decode(static_cast<uint32_t>(code));
    int mult = 0;
    std::vector<Fe> g = f;
    while (g.size() > 1 && eval(g, x).is_zero()) {
      ++mult;
      // Synthetic division by (X - x).
      std::vector<Fe> quo(g.size() - 1);
      Fe carry{};
      for (size_t i = g.size(); i-- > 1;) {
        carry = add(g[i], mul(carry, x));
        quo[i - 1] = carry;
      }
      g = std::move(quo);
    }
    if (mult > 0) out.emplace_back(x, mult);
  }
  return out;
}

std::string Field::describe() const {
  std::ostringstream os;
  os << "F_" << cfg_.p << "^" << degree_ << " = F_" << cfg_.p << "[x]/(";
  bool first = true;
  for (size_t i = cfg_.modulus.size(); i-- > 0;) {
    uint32_t c = cfg_.modulus[i];
    if (c == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (c != 1 || i == 0) os << c;
    if (i >= 1) os << "x";
    if (i >= 2) os << "^" << i;
  }
  os << ")";
  return os.str();
}

}  // namespace drinfeld
