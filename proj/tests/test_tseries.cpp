#include "common.hpp"

using namespace drinfeld;
using test::th;

TEST_SUITE("tseries") {
  TEST_CASE("inverse of 1 - t/theta") {
    auto f = test::make_field(3, 2, 18);
    const TPoly p({CInf::one(f), -th(f, -1)});
    const TSeries inv = p.to_series(12).inverse();
    for (size_t i = 0; i < 12; ++i) CHECK(inv.coeff(i).equals_to_precision(th(f, -static_cast<int64_t>(i))));
    CHECK((inv * p.to_series(12) - TSeries::constant(CInf::one(f), 12)).is_zero_to_precision());
  }

  TEST_CASE("twisting is a ring homomorphism") {
    auto f = test::make_field(3, 2, 18);
    const TSeries a = TPoly({th(f, 1), CInf::one(f), th(f, -2)}).to_series(8);
    const TSeries b = TPoly({CInf::monomial(f, f->generator(), 5), th(f, 1)}).to_series(8);
    CHECK(((a * b).twist(1) - a.twist(1) * b.twist(1)).is_zero_to_precision());
    CHECK(((a + b).twist(2) - a.twist(2) - b.twist(2)).is_zero_to_precision());
    CHECK((a.twist(1).twist(-1) - a).is_zero_to_precision());
  }

  TEST_CASE("specialization of polynomials and rational functions") {
    auto f = test::make_field(5, 2, 100);
    const TPoly p({CInf::one(f), th(f, -1), CInf::from_int(f, 3)});
    const CInf t0 = th(f, 1);
    CHECK(p.eval(t0).equals_to_precision(CInf::from_int(f, 2) + CInf::from_int(f, 3) * th(f, 2)));
    CHECK(specialize_t(p.to_series(3), t0).equals_to_precision(p.eval(t0)));
    const RationalT r{TPoly::constant(CInf::one(f)), TPoly({CInf::one(f), -th(f, -3)})};
    CHECK((r.eval(t0) * (CInf::one(f) - th(f, -2)) - CInf::one(f)).horizon() > 500);
  }

  TEST_CASE("specialization needs a tail certificate") {
    auto f = test::make_field(3, 2, 18);
    TSeries s({CInf::one(f), CInf::one(f)});
    CHECK_THROWS_AS(specialize_t(s, th(f, -1)), Error);
    s.set_tail(TailBound{0, 18});
    CHECK_NOTHROW(specialize_t(s, th(f, -1)));
  }

  TEST_CASE("matrices") {
    auto f = test::make_field(3, 2, 18);
    const TMatrix I2 = identity_series(f, 2, 4);
    const TMatrix I4 = kronecker(I2, I2);
    CHECK(horizon(I4 - identity_series(f, 4, 4)) == kExact);
    const RMatrix phi(2, 2,
                      {RationalT::from(TPoly(), f), RationalT::from(TPoly::constant(CInf::one(f)), f),
                       RationalT::from(TPoly({-th(f, 1), CInf::one(f)}), f),
                       RationalT::from(TPoly::constant(-CInf::one(f)), f)});
    const RationalT d = phi.det();
    // det [[0,1],[t - theta, -1]] = theta - t
    CHECK(d.equals_to_precision(RationalT::from(TPoly({th(f, 1), -CInf::one(f)}), f)));
    const CMatrix at = specialize_t(phi, th(f, 1));
    CHECK(at(1, 0).horizon() == kExact);
    CHECK_THROWS_AS(I2 * identity_series(f, 3, 4), Error);
  }
}
