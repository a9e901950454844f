#include "common.hpp"
#include "drinfeld/motive.hpp"

using namespace drinfeld;
using test::th;

namespace {

CInf theta_q(const FieldPtr& f, int64_t i) { return th(f, static_cast<int64_t>(ipow(f->q(), static_cast<unsigned>(i)))); }

}  // namespace

TEST_SUITE("drinfeld") {
  TEST_CASE("Carlitz exponential and logarithm coefficients") {
    auto f = test::make_field(3, 2, 18);
    const DrinfeldModule C = DrinfeldModule::carlitz(f);
    const auto a = exp_coeffs(C, 5);
    const auto b = log_coeffs(C, 5);
    for (int64_t i = 0; i < 5; ++i) {
      // D_i = prod_{j<i} (theta^(q^i) - theta^(q^j)),  L_i = prod_{1<=j<=i} (theta - theta^(q^j))
      CInf D = CInf::one(f), L = CInf::one(f);
      for (int64_t j = 0; j < i; ++j) D *= theta_q(f, i) - theta_q(f, j);
      for (int64_t j = 1; j <= i; ++j) L *= th(f, 1) - theta_q(f, j);
      CHECK((a[static_cast<size_t>(i)] - D.inverse()).horizon() >= a[static_cast<size_t>(i)].prec());
      CHECK((b[static_cast<size_t>(i)] - L.inverse()).horizon() >= b[static_cast<size_t>(i)].prec());
    }
  }

  TEST_CASE("first coefficients of theta + tau + tau^2") {
    const DrinfeldModule& rho = test::sample("theta+tau+tau^2", 3);
    const FieldPtr& f = rho.field();
    const CInf a1 = (th(f, 3) - th(f, 1)).inverse();
    CHECK(rho.alpha(0).equals_to_precision(CInf::one(f)));
    CHECK(rho.alpha(1).equals_to_precision(a1));
    CHECK(rho.beta(1).equals_to_precision(-a1));
    const auto c = quasi_period_coeffs(rho, Biderivation::tau(f), 4);
    CHECK(c[0].is_exact_zero());
    CHECK(c[1].equals_to_precision(a1));
  }

  TEST_CASE("delta_1 quasi-periodic coefficients") {
    const DrinfeldModule& rho = test::sample("theta+tau+tau^2", 3);
    const FieldPtr& f = rho.field();
    const auto c = quasi_period_coeffs(rho, Biderivation::delta1(rho), 6);
    CHECK(c[0].equals_to_precision(CInf::zero(f)));
    for (size_t i = 1; i < 6; ++i) CHECK(c[i].equals_to_precision(-rho.alpha(i)));
  }

  TEST_CASE("exp and log are inverse near zero") {
    const DrinfeldModule& rho = test::sample("theta+tau+tau^2", 3);
    const FieldPtr& f = rho.field();
    const Precision prec;
    for (const CInf& z : {th(f, -1), CInf::from_int(f, 2) * th(f, -2) + th(f, -5)}) {
      const CInf e = exp_eval(rho, z, prec.working(*f));
      CHECK((log_eval(rho, e, prec.working(*f)) - z).horizon() >= prec.pass_level());
    }
    CHECK_THROWS_AS(log_eval(rho, th(f, 3), prec.working(*f)), Error);
  }

  TEST_CASE("exp is additive and F_q[t]-linear") {
    const DrinfeldModule& rho = test::sample("theta+tau+tau^2", 3);
    const FieldPtr& f = rho.field();
    const int64_t W = Precision{}.working(*f);
    const CInf x = th(f, 1), y = CInf::from_int(f, 2) * th(f, -1);
    CHECK((exp_eval(rho, x + y, W) - exp_eval(rho, x, W) - exp_eval(rho, y, W)).horizon() >= Precision{}.pass_level());
    const CInf ex = exp_eval(rho, x, W);
    CHECK((exp_eval(rho, th(f, 1) * x, W) - skew_eval(rho.rho_t(), ex)).horizon() >= Precision{}.pass_level());
  }

  TEST_CASE("torsion of theta + tau + tau^2") {
    const DrinfeldModule& rho = test::sample("theta+tau+tau^2", 3);
    const FieldPtr& f = rho.field();
    const Precision prec;
    const TorsionReport tr = torsion_points(rho, prec.working(*f));
    CHECK(tr.expected == 8);
    CHECK(tr.complete());
    REQUIRE(tr.valuations.size() == 8);
    for (const Slope& s : tr.valuations) CHECK(s.num * 8 == -f->e() * s.den);
    for (const CInf& x : tr.roots) {
      CHECK(x.valuation() * 8 == -f->e());
      CHECK(skew_eval(rho.rho_t(), x).horizon() >= prec.pass_level());
    }
  }

  TEST_CASE("Carlitz torsion") {
    const DrinfeldModule& C = test::sample("carlitz", 3);
    const FieldPtr& f = C.field();
    const TorsionReport tr = torsion_points(C, Precision{}.working(*f));
    CHECK(tr.complete());
    for (const CInf& x : tr.roots) CHECK((x * x + th(f, 1)).horizon() >= Precision{}.pass_level());
  }

  TEST_CASE("periods of theta + tau + tau^2") {
    for (uint32_t q : {3u, 5u}) {
      const DrinfeldModule& rho = test::sample("theta+tau+tau^2", q);
      const FieldPtr& f = rho.field();
      const Precision prec;
      const Lattice L = periods(rho, prec);
      REQUIRE(L.periods.size() == 2);
      const int64_t W = prec.working(*f);
      CHECK(exp_eval(rho, L.omega(0), W).horizon() >= prec.pass_level());
      CHECK(exp_eval(rho, L.omega(1), W).horizon() >= prec.pass_level());
      CHECK(exp_eval(rho, L.omega(0) + th(f, 1) * L.omega(1), W).horizon() >= prec.pass_level());
      CHECK_FALSE(fq_proportional(L.omega(0), L.omega(1)));
      CHECK(exp_eval(rho, L.omega(0) * th(f, -1), W).horizon() < prec.pass_level());
    }
  }

  TEST_CASE("Carlitz period is an F_q multiple of pi~") {
    for (uint32_t q : {3u, 5u}) {
      const DrinfeldModule& C = test::sample("carlitz", q);
      const FieldPtr& f = C.field();
      const Precision prec;
      const Lattice L = periods(C, prec);
      REQUIRE(L.periods.size() == 1);
      const CInf pi = pi_tilde(omega_series(f, 4, prec.working(*f) + 2 * f->e()));
      CHECK(fq_proportional(pi, L.omega(0)));
    }
  }

  TEST_CASE("second period of theta + theta tau + tau^2 over F_5 is out of reach") {
    const DrinfeldModule& rho = test::sample("theta+theta*tau+tau^2", 5);
    const TorsionReport tr = torsion_points(rho, Precision{}.working(*rho.field()));
    CHECK_FALSE(tr.complete());
    CHECK_FALSE(tr.unresolved.empty());
    CHECK_THROWS_AS(periods(rho, Precision{}), Error);
  }

  TEST_CASE("quasi-period displayed against series") {
    const DrinfeldModule& rho = test::sample("theta+tau+tau^2", 3);
    const FieldPtr& f = rho.field();
    const Precision prec;
    const QuasiPeriodValue v = quasi_period_eval(rho, th(f, -1), prec.working(*f));
    CHECK(v.agreement >= prec.pass_level());
  }

  TEST_CASE("normalization is an isomorphism") {
    auto f = test::make_field(3, 2, minimal_grid(3, 2, std::vector<int64_t>{8}));
    const DrinfeldModule rho = DrinfeldModule::rank2(f, th(f, 1), th(f, 1));
    const Normalization n = normalize(rho);
    CHECK(n.nu.u().equals_to_precision(CInf::one(f)));
    const MorphismReport m = verify_morphism(SkewPoly::constant(n.x), n.nu, rho);
    CHECK(m.morphism);
    CHECK(m.adjoint_side);
  }

  TEST_CASE("CM constants commute with theta + tau^2 but tau is no morphism") {
    auto f = test::make_field(3, 2, 18);
    const DrinfeldModule rho(f, {CInf::zero(f), CInf::one(f)});
    const MorphismReport cm = verify_morphism(SkewPoly::constant(CInf::constant(f, f->generator())), rho, rho);
    CHECK(cm.morphism);
    CHECK(cm.adjoint_side);
    CHECK(cm.residual_horizon == kExact);
    const DrinfeldModule& r2 = test::sample("theta+tau+tau^2", 3);
    CHECK_FALSE(verify_morphism(SkewPoly::var_pow(r2.field(), 1), r2, r2).morphism);
  }

  TEST_CASE("division points") {
    const DrinfeldModule& rho = test::sample("theta+tau+tau^2", 3);
    const FieldPtr& f = rho.field();
    const CInf c = th(f, -1);
    const HenselReport h = division_point(rho, c, th(f, -2), 400);
    CHECK(h.accuracy >= 400);
    CHECK((skew_eval(rho.rho_t(), h.root) - c).horizon() >= 400 - f->e());
  }
}
