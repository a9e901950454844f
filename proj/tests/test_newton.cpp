#include "common.hpp"

using namespace drinfeld;
using test::th;

TEST_SUITE("newton") {
  TEST_CASE("theta + Y + Y^4 has a single edge of slope 1/4") {
    auto f = test::make_field(3, 4, 72);
    const Polynomial P{th(f, 1), CInf::one(f), CInf::zero(f), CInf::zero(f), CInf::one(f)};
    const NewtonPolygon np = newton_polygon(P);
    REQUIRE(np.segments.size() == 1);
    CHECK(np.segments[0].length == 4);
    CHECK(np.segments[0].slope == Slope{18, 1});
    const auto v = np.root_valuations();
    REQUIRE(v.size() == 4);
    for (const Slope& s : v) CHECK(s == Slope{-18, 1});
  }

  TEST_CASE("two edges") {
    auto f = test::make_field(3, 2, 18);
    // (Y - theta)(Y - theta^-1) = Y^2 - (theta + theta^-1) Y + 1
    const Polynomial P{CInf::one(f), -(th(f, 1) + th(f, -1)), CInf::one(f)};
    const auto v = newton_polygon(P).root_valuations();
    REQUIRE(v.size() == 2);
    std::vector<int64_t> got{v[0].num, v[1].num};
    std::sort(got.begin(), got.end());
    CHECK(got == std::vector<int64_t>{-18, 18});
  }

  TEST_CASE("non-integral slope needs a finer grid") {
    auto f = test::make_field(3, 2, 18);
    const Polynomial P{th(f, 1), CInf::zero(f), CInf::zero(f), CInf::zero(f), CInf::one(f)};
    const NewtonPolygon np = newton_polygon(P);
    REQUIRE(np.segments.size() == 1);
    CHECK_THROWS_AS(segment_seeds(P, np.segments[0]), Error);
  }

  TEST_CASE("Hensel lifting a square root") {
    auto f = test::make_field(3, 2, 18);
    const CInf c = CInf::one(f) + th(f, -2);
    const Polynomial P{-c, CInf::zero(f), CInf::one(f)};
    const HenselReport h = hensel_root(P, CInf::one(f), 400);
    CHECK(h.accuracy >= 400);
    CHECK((h.root * h.root - c).horizon() >= 400);
    CHECK((h.root - CInf::one(f)).valuation() == 36);
    CHECK(h.iterations <= 6);
  }

  TEST_CASE("seeds and roots of a split quadratic") {
    auto f = test::make_field(5, 2, 100);
    const CInf r1 = th(f, 1) + CInf::one(f), r2 = CInf::from_int(f, 2) * th(f, -1);
    const Polynomial P{r1 * r2, -(r1 + r2), CInf::one(f)};
    const NewtonPolygon np = newton_polygon(P);
    std::vector<CInf> roots;
    for (const Segment& s : np.segments)
      for (auto& [seed, mult] : segment_seeds(P, s)) roots.push_back(hensel_root(P, seed, 500).root);
    REQUIRE(roots.size() == 2);
    int found = 0;
    for (const CInf& r : roots) found += ((r - r1).horizon() >= 500) + ((r - r2).horizon() >= 500);
    CHECK(found == 2);
  }

  TEST_CASE("nth roots of series") {
    auto f = test::make_field(3, 2, 72);
    const CInf a = th(f, 1) * (CInf::one(f) + th(f, -1));
    const CInf r = nth_root(a, 4);
    CHECK(r.valuation() == -18);
    CHECK(r.pow(4).equals_to_precision(a));
    CHECK(r.prec() - r.valuation() >= 32 * 72);
    CHECK_THROWS_AS(nth_root(a, 3), Error);
  }

  TEST_CASE("evaluation and derivative") {
    auto f = test::make_field(3, 2, 18);
    const Polynomial P{CInf::one(f), CInf::from_int(f, 2), CInf::one(f)};
    CHECK(poly_eval(P, CInf::from_int(f, -1)).is_exact_zero());
    const Polynomial d = poly_derivative(P);
    REQUIRE(d.size() == 2);
    CHECK(d[1].equals_to_precision(CInf::from_int(f, 2)));
  }
}
