#include "common.hpp"

using namespace drinfeld;
using test::th;

TEST_SUITE("cinf") {
  TEST_CASE("geometric series inverse") {
    auto f = test::make_field(3, 2, 18);
    const CInf x = CInf::one(f) - th(f, -1);
    const CInf inv = x.inverse();
    // oracle: 1/(1 - theta^-1) = sum theta^-k
    std::vector<std::pair<int64_t, Fe>> terms;
    for (int64_t k = 0; k * 18 < inv.prec(); ++k) terms.emplace_back(18 * k, f->one());
    const CInf oracle = CInf::from_terms(f, terms, inv.prec());
    CHECK(inv.equals_to_precision(oracle));
    CHECK(inv.prec() >= 64 * 18);
    CHECK((inv * x - CInf::one(f)).horizon() >= inv.prec());
  }

  TEST_CASE("valuations") {
    auto f = test::make_field(3, 2, 18);
    CHECK(th(f, 1).valuation() == -18);
    CHECK(th(f, -2).valuation() == 36);
    CHECK((th(f, 2) + th(f, -1)).valuation() == -36);
    CHECK(CInf::zero(f).is_exact_zero());
    CHECK(CInf::zero(f).horizon() == kExact);
    CHECK(CInf::zero_to(f, 50).horizon() == 50);
    CHECK_THROWS_AS(CInf::zero_to(f, 50).valuation(), Error);
    CHECK_THROWS_AS(CInf::zero_to(f, 50).inverse(), Error);
  }

  TEST_CASE("ultrametric inequality") {
    auto f = test::make_field(5, 2, 100);
    const CInf a = th(f, 3) + th(f, -1), b = CInf::from_int(f, 2) * th(f, 1) - CInf::one(f);
    CHECK((a + b).valuation() >= std::min(a.valuation(), b.valuation()));
    CHECK((a * b).valuation() == a.valuation() + b.valuation());
    const CInf c = a - th(f, 3);
    CHECK(c.valuation() == 100);
  }

  TEST_CASE("precision propagation") {
    auto f = test::make_field(3, 2, 18);
    const CInf a = (CInf::one(f) + th(f, -1)).truncated(100);
    CHECK(a.prec() == 100);
    const CInf b = a * th(f, 2);
    CHECK(b.prec() == 100 - 36);
    CHECK((a + CInf::one(f)).prec() == 100);
    CHECK(a.inverse().prec() == 100);
  }

  TEST_CASE("frobenius round trip") {
    auto f = test::make_field(3, 2, 18);
    const CInf x = CInf::monomial(f, f->generator(), -5) + th(f, -1);
    CHECK(x.frobenius(1).valuation() == -15);
    CHECK(x.frobenius(2).frobenius(-2).identical(x));
    CHECK(x.frobenius(1).equals_to_precision(x.pow(3)));
    CHECK_THROWS_AS(CInf::monomial(f, f->one(), 1).frobenius(-3), Error);
  }

  TEST_CASE("powers and division") {
    auto f = test::make_field(5, 2, 100);
    const CInf x = th(f, 1) + CInf::from_int(f, 3);
    CHECK((x.pow(3) / x).equals_to_precision(x * x));
    CHECK(x.pow(0).identical(CInf::one(f)));
    CHECK((x.pow(-2) * x.pow(2) - CInf::one(f)).horizon() > 0);
  }

  TEST_CASE("relative precision cap") {
    auto f = test::make_field(3, 2, 18);
    const CInf inv = (th(f, 1) - CInf::one(f)).inverse();
    CHECK(inv.prec() - inv.valuation() <= f->rel_cap());
  }
}
