#pragma once

// Finite field F_{q^m} (q = p^s) realized as F_p[x]/(modulus) with
// log/antilog and Zech tables. Elements are stored in logarithmic form
// with respect to a fixed primitive element, so products are index
// additions and sums are one Zech lookup.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace drinfeld {

/// A field element in log form. `log == -1` is zero.
struct Fe {
  int32_t log = -1;

  constexpr bool is_zero() const { return log < 0; }
  friend constexpr bool operator==(Fe, Fe) = default;
};

struct FieldConfig {
  uint32_t p = 3;
  uint32_t s = 1;
  uint32_t m = 2;
  /// Monic modulus over F_p of degree s*m, coefficients low to high.
  /// Left empty, the first primitive polynomial in lexicographic order is
  /// chosen, which keeps encodings stable across runs.
  std::vector<uint32_t> modulus;
  /// Grid denominator: exponents of theta are measured in units of 1/e.
  int64_t e = 18;
  /// Maximal depth of inverse twists that must stay on the grid.
  int depth = 2;
  /// Characteristic 2 is accepted only with this flag.
  bool allow_char2 = false;
  /// Maximal relative precision (grid units) carried by any value; 0 picks
  /// a default of 64 theta-units.
  int64_t rel_cap = 0;
};

class Field {
 public:
  static std::shared_ptr<const Field> make(FieldConfig cfg);

  const FieldConfig& config() const { return cfg_; }
  uint32_t p() const { return cfg_.p; }
  uint64_t q() const { return q_; }
  uint32_t degree() const { return degree_; }  // s*m, degree over F_p
  uint64_t order() const { return order_; }    // Q = p^(s m)
  int64_t e() const { return cfg_.e; }
  int depth() const { return cfg_.depth; }
  int64_t rel_cap() const { return rel_cap_; }
  const std::vector<uint32_t>& modulus() const { return cfg_.modulus; }

  Fe zero() const { return Fe{}; }
  Fe one() const { return Fe{0}; }
  Fe from_int(int64_t k) const;
  Fe generator() const { return Fe{1}; }

  Fe add(Fe a, Fe b) const {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    int64_t d = b.log - a.log;
    if (d < 0) d += nm1_;
    int32_t z = zech_[static_cast<size_t>(d)];
    if (z < 0) return Fe{};
    int64_t r = a.log + z;
    if (r >= nm1_) r -= nm1_;
    return Fe{static_cast<int32_t>(r)};
  }
  Fe neg(Fe a) const {
    if (a.is_zero()) return a;
    int64_t r = a.log + neg_one_;
    if (r >= nm1_) r -= nm1_;
    return Fe{static_cast<int32_t>(r)};
  }
  Fe sub(Fe a, Fe b) const { return add(a, neg(b)); }
  Fe mul(Fe a, Fe b) const {
    if (a.is_zero() || b.is_zero()) return Fe{};
    int64_t r = static_cast<int64_t>(a.log) + b.log;
    if (r >= nm1_) r -= nm1_;
    return Fe{static_cast<int32_t>(r)};
  }
  Fe inv(Fe a) const;
  Fe div(Fe a, Fe b) const { return mul(a, inv(b)); }
  Fe pow(Fe a, int64_t k) const;
  /// a^(q^n) for any integer n (negative n inverts the q-power map).
  Fe frob(Fe a, int64_t n) const;
  bool in_base_field(Fe a) const { return frob(a, 1) == a; }

  /// Power-basis coordinates over F_p, low to high.
  std::vector<uint32_t> to_vector(Fe a) const;
  Fe from_vector(std::span<const uint32_t> v) const;
  uint32_t encode(Fe a) const;
  Fe decode(uint32_t code) const;

  /// Designated n-th root (smallest log) or nullopt if none exists.
  std::optional<Fe> nth_root(Fe a, int64_t n) const;

  /// All roots in F_Q of sum c_i X^i, with multiplicities.
  std::vector<std::pair<Fe, int>> roots(std::span<const Fe> poly) const;
  Fe eval(std::span<const Fe> poly, Fe x) const;

  std::string describe() const;

 private:
  explicit Field(FieldConfig cfg) : cfg_(std::move(cfg)) {}
  void build_tables();

  FieldConfig cfg_;
  uint64_t q_ = 0;
  uint32_t degree_ = 0;
  uint64_t order_ = 0;
  int64_t nm1_ = 0;  // Q - 1
  int64_t neg_one_ = 0;
  int64_t rel_cap_ = 0;
  std::vector<uint32_t> exp_;
  std::vector<int32_t> log_;
  std::vector<int32_t> zech_;
};

using FieldPtr = std::shared_ptr<const Field>;

bool is_prime(uint64_t n);
uint64_t ipow(uint64_t base, unsigned exp);

/// Smallest grid denominator divisible by (q-1) q^depth and by every entry of
/// `extra` (denominators of root valuations that must be representable).
int64_t minimal_grid(uint64_t q, int depth, std::span<const int64_t> extra = {});

/// Smallest m such that F_{q^m} contains an element of order n.
uint32_t minimal_extension(uint64_t q, uint64_t n);

/// Irreducibility over F_p (Rabin's test).
bool is_irreducible(std::span<const uint32_t> monic, uint32_t p);

}  // namespace drinfeld
