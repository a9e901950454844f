#include "common.hpp"

using namespace drinfeld;
using test::th;

TEST_SUITE("serialize") {
  TEST_CASE("value round trip") {
    auto f = test::make_field(5, 2, 100);
    const CInf x = (th(f, 2) + CInf::monomial(f, f->generator(), 37)).inverse();
    const Json j = to_json(x);
    CHECK(j["p"] == 5);
    CHECK(j["e"] == 100);
    CHECK(cinf_from_json(j, f).identical(x));
    CHECK(cinf_from_json(Json::parse(j.dump())).identical(x));
    CHECK(to_json(CInf::one(f))["prec"].is_null());
    auto g = test::make_field(5, 2, 200);
    CHECK_THROWS_AS(cinf_from_json(j, g), Error);
  }

  TEST_CASE("series and module round trip") {
    const DrinfeldModule& rho = test::sample("theta+tau+tau^2", 3);
    const FieldPtr& f = rho.field();
    const TSeries s = TPoly({th(f, 1), CInf::one(f)}).to_series(4);
    const TSeries back = tseries_from_json(to_json(s), f);
    CHECK((back - s).horizon() == kExact);
    Precision p;
    p.n = 300;
    const ModuleSpec spec = module_from_json(module_to_json(rho, p));
    CHECK(spec.prec.n == 300);
    CHECK(spec.rho.rank() == 2);
    CHECK(spec.rho.kappa().identical(rho.kappa()));
    CHECK(spec.rho.field()->modulus() == f->modulus());
  }

  TEST_CASE("recipes") {
    const ModuleRecipe r = sample_recipe("theta+theta*tau+tau^2", 5);
    const ModuleRecipe b = recipe_from_json(to_json(r));
    CHECK(b.p == 5);
    CHECK(b.kappa.c == r.kappa.c);
    CHECK(b.kappa.num == r.kappa.num);
    CHECK_THROWS_AS(sample_recipe("nonsense", 3), Error);
    CHECK(sample_recipes(3).size() == 2);
    CHECK(sample_recipes(5).size() == 3);
  }

  TEST_CASE("parsing values") {
    auto f = test::make_field(3, 4, 72);
    CHECK(parse_value("theta^-1", f).identical(th(f, -1)));
    CHECK(parse_value("2*theta^(1/8) + 1", f).identical(CInf::from_int(f, 2) * CInf::monomial(f, f->one(), -9) +
                                                         CInf::one(f)));
    CHECK(parse_value("- theta + theta^2", f).identical(th(f, 2) - th(f, 1)));
    CHECK(parse_value(to_json(th(f, 3)).dump(), f).identical(th(f, 3)));
    CHECK_THROWS_AS(parse_value("thet", f), Error);
    CHECK_THROWS_AS(parse_value("", f), Error);
    try {
      parse_value("theta^(1/7)", f);
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::GridTooCoarse);
    }
  }

  TEST_CASE("reports") {
    CheckReport r;
    r.check = "x";
    r.add(kExact);
    r.add(200);
    r.finish(192);
    const Json j = to_json(r, false);
    CHECK(j["residual_valuations"][0] == "exact");
    CHECK(j["min_residual"] == 200);
    CHECK(j["pass"] == true);
    CHECK_FALSE(j.contains("wall_time"));
    CHECK(to_json(r, true).contains("wall_time"));
  }

  TEST_CASE("exit codes") {
    CHECK(exit_code(ErrorKind::Config) == 2);
    CHECK(exit_code(ErrorKind::PrecisionExhausted) == 3);
    CHECK(exit_code(ErrorKind::PoleHit) == 3);
    CHECK(exit_code(ErrorKind::VerificationFailed) == 4);
  }

  TEST_CASE("suite output is deterministic") {
    SuiteOptions o;
    o.modules = sample_recipes(3);
    o.algebra_q = {3};
    const std::string a = suite_to_json(o, run_suite(o), false).dump();
    const std::string b = suite_to_json(o, run_suite(o), false).dump();
    CHECK(a == b);
  }
}
