#include "common.hpp"

using namespace drinfeld;
using test::th;

TEST_SUITE("motive") {
  TEST_CASE("xi") {
    for (uint32_t q : {3u, 5u}) {
      auto f = test::make_field(q, 2, minimal_grid(q, 2));
      const CInf xi = xi_constant(f);
      CHECK(xi.pow(q - 1).equals_to_precision(-CInf::one(f)));
      CHECK(xi.frobenius(1).equals_to_precision(-xi));
    }
    CHECK_THROWS_AS(xi_constant(test::make_field(3, 1, 18)), Error);
  }

  TEST_CASE("Omega") {
    for (uint32_t q : {3u, 5u}) {
      auto f = test::make_field(q, 2, minimal_grid(q, 2));
      const Precision prec;
      const OmegaSeries om = omega_series(f, 32, prec.working(*f) + 2 * f->e());
      CHECK(verify_omega(om, prec).pass);
      CHECK(om.root.pow(q - 1).equals_to_precision(-th(f, 1)));
      const CInf pi = pi_tilde(om);
      CHECK(pi.valuation() * static_cast<int64_t>(q - 1) == -f->e() * q);
      CHECK((pi * omega_at_theta(om) + CInf::one(f)).horizon() >= prec.pass_level());
      // pi~^(q-1) = -theta^q (1 + lower order): leading behaviour of the product formula
      const CInf lead = pi.pow(q - 1) / th(f, q);
      CHECK(lead.valuation() == 0);
      CHECK(f->in_base_field(lead.leading()));
    }
  }

  TEST_CASE("Phi") {
    const DrinfeldModule& rho = test::sample("theta+tau+tau^2", 3);
    const FieldPtr& f = rho.field();
    const RMatrix phi = phi_matrix(rho);
    CHECK(phi.det().equals_to_precision(RationalT::from(TPoly({th(f, 1), -CInf::one(f)}), f)));
    const RMatrix c = phi_matrix(DrinfeldModule::carlitz(f));
    CHECK(c.rows() == 1);
  }

  TEST_CASE("Psi satisfies the difference equation") {
    for (uint32_t q : {3u, 5u}) {
      const test::Motive& m = test::motive("theta+tau+tau^2", q);
      CHECK(verify_psi(m.sys, m.prec).pass);
      const TMatrix phi1 = to_series(twist(phi_matrix(m.rho), 1), m.sys.T);
      CHECK(horizon(m.sys.psi - phi1 * twist(m.sys.psi, 1)) >= m.prec.pass_level());
    }
  }

  TEST_CASE("a perturbed Phi is rejected") {
    const test::Motive& m = test::motive("theta+tau+tau^2", 3);
    const FieldPtr& f = m.rho.field();
    const DrinfeldModule wrong = DrinfeldModule::rank2(f, CInf::from_int(f, 2), CInf::one(f));
    const TMatrix phi1 = to_series(twist(phi_matrix(wrong), 1), m.sys.T);
    CHECK(horizon(m.sys.psi - phi1 * twist(m.sys.psi, 1)) < m.prec.pass_level());
  }

  TEST_CASE("determinant, specialization and tensor") {
    for (uint32_t q : {3u, 5u}) {
      const test::Motive& m = test::motive("theta+tau+tau^2", q);
      const FieldPtr& f = m.rho.field();
      const DetInvariance d = verify_det_invariance(m.sys, m.prec);
      CHECK(d.report.pass);
      CHECK((d.d.coeff(0) - CInf::one(f)).horizon() >= m.prec.pass_level());
      const PeriodMatrix pm = specialize_psi(m.sys, m.prec);
      CHECK(pm.report.pass);
      CHECK((pm.P(0, 0) - m.basis[0]).horizon() >= m.prec.pass_level());
      CHECK((pm.P(1, 0) - m.basis[1]).horizon() >= m.prec.pass_level());
      CHECK(verify_tensor(m.sys, m.prec).pass);
    }
  }

  TEST_CASE("Legendre relation") {
    const test::Motive& m = test::motive("theta+tau+tau^2", 3);
    const FieldPtr& f = m.rho.field();
    const Fe minus_one = f->neg(f->one());
    const LegendreResult L = legendre_invariant(m.rho, m.basis[0], m.basis[1], m.omega_theta, m.prec);
    CHECK(L.invariant == minus_one);
    CHECK(L.orientation == f->one());
    CHECK(L.tail >= m.prec.pass_level());
    const LegendreResult S = legendre_invariant(m.rho, m.basis[1], m.basis[0], m.omega_theta, m.prec);
    CHECK(S.orientation == minus_one);
    const LegendreResult U =
        legendre_invariant(m.rho, m.basis[0] + th(f, 1) * m.basis[1], m.basis[1], m.omega_theta, m.prec);
    CHECK(U.orientation == f->one());
    // a non-basis pair of periods scales the bracket by a polynomial in theta
    CHECK_THROWS_AS(legendre_invariant(m.rho, th(f, 1) * m.basis[0], m.basis[1], m.omega_theta, m.prec), Error);
  }

  TEST_CASE("Psi needs a normalized rank 2 module") {
    const DrinfeldModule& C = test::sample("carlitz", 3);
    CHECK_THROWS_AS(psi_matrix(C, {}, Precision{}, 4), Error);
  }
}
