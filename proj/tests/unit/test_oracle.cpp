#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

#include "cubicfe/oracle.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace cubicfe;
using cubicfe::testing::CubicCorpus;

namespace {

constexpr double kSqrt3 = std::numbers::sqrt3;

void check_roots(const std::vector<ComplexRoot>& got, const std::vector<ComplexRoot>& expected, double tol) {
  REQUIRE(got.size() == expected.size());
  for (std::size_t i = 0; i < got.size(); ++i) {
    CAPTURE(i);
    CHECK(std::abs(got[i].re - expected[i].re) <= tol);
    CHECK(std::abs(got[i].im - expected[i].im) <= tol);
  }
}

}  // namespace

TEST_CASE("durand_kerner examples") {
  SUBCASE("three distinct real roots") {
    const std::array<double, 4> f{1, -6, 11, -6};
    const auto res = durand_kerner(f);
    check_roots(res.roots, {{1, 0}, {2, 0}, {3, 0}}, 1e-12);
    CHECK_FALSE(res.clustered);
    CHECK(res.iterations >= 1);
  }
  SUBCASE("cube roots of unity") {
    const std::array<double, 4> f{1, 0, 0, -1};
    check_roots(durand_kerner(f).roots, {{-0.5, -kSqrt3 / 2}, {-0.5, kSqrt3 / 2}, {1, 0}}, 1e-12);
  }
  SUBCASE("triple root converges slowly and is flagged") {
    const std::array<double, 4> f{1, 0, 0, 0};
    const auto res = durand_kerner(f);
    for (const auto& r : res.roots) CHECK(std::abs(r.value()) <= 1e-4);
    CHECK(res.clustered);
  }
  SUBCASE("quadratic") {
    const std::array<double, 3> f{2, 0, -2};
    check_roots(durand_kerner(f).roots, {{-1, 0}, {1, 0}}, 1e-12);
  }
  SUBCASE("non-monic cubic") {
    const std::array<double, 4> f{-3, 18, -33, 18};
    check_roots(durand_kerner(f).roots, {{1, 0}, {2, 0}, {3, 0}}, 1e-12);
  }
}

TEST_CASE("durand_kerner errors") {
  const std::array<double, 4> f{1, -6, 11, -6};
  SUBCASE("iteration budget exhausted") {
    OracleConfig cfg;
    cfg.max_iterations = 1;
    try {
      (void)durand_kerner(f, cfg);
      FAIL("expected NonConvergence");
    } catch (const NonConvergence& e) {
      CHECK(e.iterations() == 1);
      CHECK(e.last_estimate().size() == 3);
    }
  }
  SUBCASE("invalid input") {
    const std::array<double, 4> zero_lead{0, 1, 2, 3};
    const std::array<double, 4> nan{1, std::numeric_limits<double>::quiet_NaN(), 0, 0};
    const std::array<double, 5> quartic{1, 0, 0, 0, 1};
    const std::array<double, 2> linear{1, 1};
    CHECK_THROWS_AS(durand_kerner(zero_lead), std::invalid_argument);
    CHECK_THROWS_AS(durand_kerner(nan), std::invalid_argument);
    CHECK_THROWS_AS(durand_kerner(quartic), std::invalid_argument);
    CHECK_THROWS_AS(durand_kerner(linear), std::invalid_argument);
  }
  SUBCASE("invalid config") {
    OracleConfig no_budget;
    no_budget.max_iterations = 0;
    OracleConfig no_tol;
    no_tol.convergence_tol = 0.0;
    CHECK_THROWS_AS(durand_kerner(f, no_budget), std::invalid_argument);
    CHECK_THROWS_AS(durand_kerner(f, no_tol), std::invalid_argument);
  }
  SUBCASE("wrong number of starting points") {
    const std::array<std::complex<double>, 2> start{{{0.4, 0.9}, {1.0, 0.0}}};
    CHECK_THROWS_AS(durand_kerner(f, start), std::invalid_argument);
  }
}

TEST_CASE("property: converged roots have small residuals") {
  CubicCorpus corpus(0x0ac1e1);
  int failures = 0;
  double worst = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const Cubic f = corpus.next();
    try {
      const auto res = durand_kerner(f.descending());
      if (res.clustered) continue;
      for (const auto& r : res.roots) worst = std::max(worst, normalized_residual(f, r));
    } catch (const NonConvergence&) {
      ++failures;
    }
  }
  INFO("non-convergent: " << failures);
  CHECK(worst <= 1e-10);
}

TEST_CASE("property: result does not depend on the order of starting points") {
  CubicCorpus corpus(0x0ac1e2);
  std::array<std::complex<double>, 3> start{{{1.0, 0.0}, {0.4, 0.9}, {-0.65, 0.72}}};
  for (int i = 0; i < 5000; ++i) {
    const Cubic f = corpus.next();
    auto perm = start;
    std::shuffle(perm.begin(), perm.end(), corpus.engine());
    const auto lhs = durand_kerner(f.descending(), start);
    const auto rhs = durand_kerner(f.descending(), perm);
    if (lhs.clustered || rhs.clustered) continue;
    REQUIRE(max_matched_distance(lhs.roots, rhs.roots) <= 1e-12);
    // Canonical sort: ascending real part, then imaginary part.
    for (std::size_t k = 0; k + 1 < rhs.roots.size(); ++k) {
      REQUIRE((rhs.roots[k].re < rhs.roots[k + 1].re ||
               (rhs.roots[k].re == rhs.roots[k + 1].re && rhs.roots[k].im <= rhs.roots[k + 1].im)));
    }
  }
}
