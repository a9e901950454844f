#include "common.hpp"

using namespace drinfeld;
using test::th;

namespace {

SkewPoly tau_poly(std::vector<CInf> c) { return SkewPoly(std::move(c)); }

}  // namespace

TEST_SUITE("skew") {
  TEST_CASE("(theta + tau)^2") {
    auto f = test::make_field(3, 2, 18);
    const SkewPoly x = tau_poly({th(f, 1), CInf::one(f)});
    const SkewPoly sq = x * x;
    REQUIRE(sq.degree() == 2);
    CHECK(sq.coeff(0).equals_to_precision(th(f, 2)));
    CHECK(sq.coeff(1).equals_to_precision(th(f, 1) + th(f, 3)));
    CHECK(sq.coeff(2).equals_to_precision(CInf::one(f)));
  }

  TEST_CASE("tau c = c^q tau") {
    auto f = test::make_field(5, 2, 100);
    const CInf c = CInf::monomial(f, f->generator(), -7);
    const SkewPoly lhs = SkewPoly::var_pow(f, 1) * SkewPoly::constant(c);
    CHECK(lhs.equals_to_precision(tau_poly({CInf::zero(f), c.frobenius(1)})));
  }

  TEST_CASE("associativity and distributivity") {
    auto f = test::make_field(3, 2, 18);
    const SkewPoly a = tau_poly({th(f, 1), CInf::from_int(f, 2), th(f, -1)});
    const SkewPoly b = tau_poly({CInf::monomial(f, f->generator(), 3), th(f, 2)});
    const SkewPoly c = tau_poly({CInf::one(f), CInf::zero(f), CInf::monomial(f, f->generator(), -9)});
    CHECK(((a * b) * c).equals_to_precision(a * (b * c)));
    CHECK((a * (b + c)).equals_to_precision(a * b + a * c));
    CHECK_FALSE((a * b).equals_to_precision(b * a));
  }

  TEST_CASE("adjoint of a monomial and of a product") {
    auto f = test::make_field(3, 2, minimal_grid(3, 4), 4);
    const CInf a = th(f, 1);
    const SigmaPoly s = adjoint(tau_poly({CInf::zero(f), a}));
    REQUIRE(s.degree() == 1);
    CHECK(s.coeff(1).equals_to_precision(a.frobenius(-1)));
    const SkewPoly g = tau_poly({th(f, 1), CInf::one(f)});
    const SkewPoly h = tau_poly({CInf::one(f), CInf::monomial(f, f->generator(), 9), th(f, -1)});
    CHECK(adjoint(g * h).equals_to_precision(adjoint(h) * adjoint(g)));
  }

  TEST_CASE("evaluation") {
    auto f = test::make_field(3, 2, 18);
    const SkewPoly rho = tau_poly({th(f, 1), CInf::one(f), CInf::one(f)});
    const CInf x = th(f, -1);
    CHECK(skew_eval(rho, x).equals_to_precision(CInf::one(f) + th(f, -3) + th(f, -9)));
    // evaluation is a homomorphism for composition
    const SkewPoly g = tau_poly({CInf::from_int(f, 2), th(f, -1)});
    CHECK(skew_eval(rho * g, x).equals_to_precision(skew_eval(rho, skew_eval(g, x))));
  }

  TEST_CASE("printing") {
    auto f = test::make_field(3, 2, 18);
    CHECK_FALSE(to_string(tau_poly({th(f, 1), CInf::one(f)})).empty());
    CHECK(SkewPoly().is_zero());
    CHECK(SkewPoly().degree() == -1);
  }
}
