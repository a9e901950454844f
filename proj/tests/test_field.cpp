#include <random>

#include "common.hpp"

namespace {

using namespace drinfeld;

// Schoolbook product in F_p[x]/(modulus), independent of the log tables.
std::vector<uint32_t> oracle_mul(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b,
                                 const std::vector<uint32_t>& mod, uint32_t p) {
  const size_t d = mod.size() - 1;
  std::vector<uint64_t> r(2 * d, 0);
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j) r[i + j] = (r[i + j] + uint64_t{a[i]} * b[j]) % p;
  for (size_t k = 2 * d - 1; k >= d; --k) {
    const uint64_t c = r[k];
    if (c == 0) continue;
    for (size_t i = 0; i <= d; ++i) r[k - d + i] = (r[k - d + i] + (p - c) * mod[i]) % p;
  }
  return std::vector<uint32_t>(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(d));
}

}  // namespace

TEST_SUITE("field") {
  TEST_CASE("sizes and modulus") {
    auto f = test::make_field(3, 4, 72);
    CHECK(f->q() == 3);
    CHECK(f->degree() == 4);
    CHECK(f->order() == 81);
    CHECK(f->modulus().size() == 5);
    CHECK(f->modulus().back() == 1);
    CHECK(is_irreducible(f->modulus(), 3));
  }

  TEST_CASE("multiplication matches polynomial arithmetic") {
    for (auto [p, m] : {std::pair{3u, 2u}, {3u, 4u}, {5u, 2u}, {5u, 4u}, {7u, 2u}}) {
      auto f = test::make_field(p, m, 2 * (p - 1) * p * p);
      std::mt19937_64 rng(p * 100 + m);
      std::uniform_int_distribution<uint32_t> d(0, p - 1);
      for (int trial = 0; trial < 200; ++trial) {
        std::vector<uint32_t> a(f->degree()), b(f->degree());
        for (auto& x : a) x = d(rng);
        for (auto& x : b) x = d(rng);
        const Fe fa = f->from_vector(a), fb = f->from_vector(b);
        CHECK(f->to_vector(f->mul(fa, fb)) == oracle_mul(a, b, f->modulus(), p));
        std::vector<uint32_t> s(a.size());
        for (size_t i = 0; i < a.size(); ++i) s[i] = (a[i] + b[i]) % p;
        CHECK(f->to_vector(f->add(fa, fb)) == s);
      }
    }
  }

  TEST_CASE("inverse, negation and Frobenius") {
    auto f = test::make_field(5, 4, 100);
    for (uint32_t code = 1; code < f->order(); ++code) {
      const Fe a = f->decode(code);
      CHECK(f->mul(a, f->inv(a)) == f->one());
      CHECK(f->add(a, f->neg(a)).is_zero());
      Fe a5 = a;
      for (int i = 0; i < 4; ++i) a5 = f->mul(a5, a);
      CHECK(f->frob(a, 1) == a5);
      CHECK(f->frob(f->frob(a, 3), -3) == a);
      CHECK(f->frob(a, 4) == a);
    }
  }

  TEST_CASE("base field and integers") {
    auto f = test::make_field(3, 4, 72);
    size_t fixed = 0;
    for (uint32_t code = 0; code < f->order(); ++code)
      if (f->in_base_field(f->decode(code))) ++fixed;
    CHECK(fixed == 3);
    CHECK(f->from_int(4) == f->one());
    CHECK(f->from_int(-1) == f->neg(f->one()));
    CHECK(f->from_int(3).is_zero());
  }

  TEST_CASE("nth roots") {
    auto f = test::make_field(3, 2, 18);
    const Fe m1 = f->neg(f->one());
    auto r = f->nth_root(m1, 2);
    REQUIRE(r.has_value());
    CHECK(f->mul(*r, *r) == m1);
    auto f3 = test::make_field(3, 1, 18);
    CHECK_FALSE(f3->nth_root(f3->neg(f3->one()), 2).has_value());
  }

  TEST_CASE("roots of a polynomial") {
    auto f = test::make_field(5, 2, 100);
    // x^4 - 1 splits over F_5 into the four nonzero constants
    std::vector<Fe> poly{f->neg(f->one()), Fe{}, Fe{}, Fe{}, f->one()};
    auto rs = f->roots(poly);
    CHECK(rs.size() == 4);
    for (auto [x, mult] : rs) {
      CHECK(mult == 1);
      CHECK(f->in_base_field(x));
      CHECK(f->eval(poly, x).is_zero());
    }
  }

  TEST_CASE("grids") {
    CHECK(minimal_grid(3, 2) == 18);
    CHECK(minimal_grid(5, 2) == 100);
    const int64_t extra[] = {8};
    CHECK(minimal_grid(3, 2, extra) == 72);
    CHECK(ipow(3, 4) == 81);
    CHECK(is_prime(7));
    CHECK_FALSE(is_prime(9));
  }

  TEST_CASE("invalid configurations") {
    FieldConfig c;
    c.p = 4;
    CHECK_THROWS_AS(Field::make(c), Error);
    c.p = 2;
    CHECK_THROWS_AS(Field::make(c), Error);
    c.p = 3;
    c.e = 7;
    CHECK_THROWS_AS(Field::make(c), Error);
  }
}
