#include <random>

#include "common.hpp"
#include "drinfeld/kernels.hpp"

using namespace drinfeld;

TEST_SUITE("kernels") {
  TEST_CASE("serial and parallel convolution agree") {
    auto f = test::make_field(5, 4, 100);
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int32_t> d(-1, static_cast<int32_t>(f->order()) - 2);
    for (size_t n : {1u, 5u, 64u, 1000u, 3000u}) {
      std::vector<Fe> a(n), b(n + 3);
      for (Fe& x : a) x = Fe{d(rng)};
      for (Fe& x : b) x = Fe{d(rng)};
      const auto s = kernels::convolve_serial(*f, a, b, 2 * n);
      CHECK(s == kernels::convolve_parallel(*f, a, b, 2 * n));
      CHECK(s == kernels::convolve(*f, a, b, 2 * n));
    }
  }

  TEST_CASE("convolution of known polynomials") {
    auto f = test::make_field(3, 2, 18);
    const Fe one = f->one(), two = f->from_int(2);
    // (1 + x)(1 + 2x) = 1 + 0x + 2x^2 over F_3
    const std::vector<Fe> a{one, one}, b{one, two};
    const auto r = kernels::convolve_serial(*f, a, b, 3);
    CHECK(r[0] == one);
    CHECK(r[1].is_zero());
    CHECK(r[2] == two);
  }

  TEST_CASE("threshold switch") {
    const size_t old = kernels::parallel_threshold();
    kernels::set_parallel_threshold(0);
    auto f = test::make_field(3, 2, 18);
    const CInf x = (CInf::one(f) - CInf::theta_pow(f, -1)).inverse();
    kernels::set_parallel_threshold(old);
    const CInf y = (CInf::one(f) - CInf::theta_pow(f, -1)).inverse();
    CHECK(x.identical(y));
    CHECK(kernels::max_threads() >= 1);
  }
}
