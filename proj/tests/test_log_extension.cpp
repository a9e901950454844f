#include "common.hpp"

using namespace drinfeld;
using test::th;

TEST_SUITE("log_extension") {
  TEST_CASE("points from alpha and from lambda") {
    const test::Motive& m = test::motive("theta+tau+tau^2", 3);
    const FieldPtr& f = m.rho.field();
    const LogPoint a = log_point_from_alpha(m.rho, th(f, -1), m.prec);
    CHECK(a.provenance == "lifted-from-alpha");
    const LogPoint b = log_point_from_lambda(m.rho, a.lambda, m.prec);
    CHECK(b.provenance == "given-lambda");
    CHECK((b.alpha - th(f, -1)).horizon() >= m.prec.pass_level());
    const LogPoint c = log_point_from_lambda(m.rho, a.lambda + m.basis[0], m.prec);
    CHECK((c.alpha - a.alpha).horizon() >= m.prec.pass_level());
  }

  TEST_CASE("g-vector equations") {
    for (uint32_t q : {3u, 5u}) {
      const test::Motive& m = test::motive("theta+tau+tau^2", q);
      const FieldPtr& f = m.rho.field();
      for (const CInf& a : {th(f, -1), CInf::from_int(f, 2) * th(f, -2)}) {
        const GVector g = g_vector(m.rho, log_point_from_alpha(m.rho, a, m.prec), m.prec, 8);
        CHECK(verify_log_fneq(m.rho, g, m.prec).pass);
        CHECK(verify_log_specialization(g, m.prec).pass);
      }
    }
  }

  TEST_CASE("g is additive in the point and vanishes at zero") {
    const test::Motive& m = test::motive("theta+tau+tau^2", 3);
    const FieldPtr& f = m.rho.field();
    const LogPoint p1 = log_point_from_lambda(m.rho, th(f, -1), m.prec);
    const LogPoint p2 = log_point_from_lambda(m.rho, CInf::from_int(f, 2) * th(f, -2), m.prec);
    const LogPoint p12 = log_point_from_lambda(m.rho, p1.lambda + p2.lambda, m.prec);
    const GVector g1 = g_vector(m.rho, p1, m.prec, 8), g2 = g_vector(m.rho, p2, m.prec, 8),
                  g12 = g_vector(m.rho, p12, m.prec, 8);
    CHECK((g12.g1 - g1.g1 - g2.g1).horizon() >= m.prec.pass_level());
    CHECK((g12.g2 - g1.g2 - g2.g2).horizon() >= m.prec.pass_level());
    CHECK((g12.quasi - g1.quasi - g2.quasi).horizon() >= m.prec.pass_level());
    const GVector g0 = g_vector(m.rho, log_point_from_lambda(m.rho, CInf::zero(f), m.prec), m.prec, 8);
    CHECK(g0.g1.is_zero_to_precision());
    CHECK(g0.g2.is_zero_to_precision());
  }

  TEST_CASE("extended systems") {
    const test::Motive& m = test::motive("theta+tau+tau^2", 3);
    const FieldPtr& f = m.rho.field();
    const LogPoint p = log_point_from_alpha(m.rho, th(f, -1), m.prec);
    const ExtendedSystem x1 = extended_system(m.sys, {p}, m.prec);
    CHECK(x1.n == 1);
    CHECK(x1.psi_n.rows() == 3);
    CHECK(x1.difference.pass);
    CHECK(x1.reconstruction.pass);
    const LogPoint p2 = log_point_from_lambda(m.rho, p.lambda * th(f, 1), m.prec);
    const ExtendedSystem x2 = extended_system(m.sys, {p, p2}, m.prec);
    CHECK(x2.psi_n.rows() == 4);
    CHECK(x2.difference.pass);
    CHECK(x2.reconstruction.pass);
  }

  TEST_CASE("relation certificates") {
    const test::Motive& m = test::motive("theta+tau+tau^2", 3);
    const FieldPtr& f = m.rho.field();
    const PeriodMatrix pm = specialize_psi(m.sys, m.prec);
    const CInf pi = pi_tilde(m.sys.om);
    const RelationData taut{m.basis[0], m.basis[1], pm.quasi[0], pm.quasi[1], pi, m.sys.xi, {m.basis[0]},
                            {pm.quasi[0]}};
    const RelationCertificate ok =
        relation_certificate(taut, {CInf::one(f), CInf::zero(f), {CInf::one(f)}}, m.prec, CInf::zero(f));
    CHECK(ok.report.pass);
    CHECK(ok.residual_valuation >= m.prec.pass_level());
    REQUIRE(ok.spec1.has_value());
    CHECK(*ok.spec1 >= m.prec.pass_level());
    CHECK(*ok.spec2 >= m.prec.pass_level());

    const LogPoint p = log_point_from_alpha(m.rho, th(f, -1), m.prec);
    const GVector g = g_vector(m.rho, p, m.prec, 8);
    const RelationData d{m.basis[0], m.basis[1], pm.quasi[0], pm.quasi[1], pi, m.sys.xi, {p.lambda}, {g.quasi}};
    const RelationCertificate bad = relation_certificate(d, {th(f, 1), CInf::one(f), {CInf::one(f)}}, m.prec);
    CHECK_FALSE(bad.report.pass);
    CHECK(10 * bad.residual_valuation < 3 * m.prec.n);
  }
}
