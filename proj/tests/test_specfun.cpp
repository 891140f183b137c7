#include <cmath>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "nomavlc/specfun.hpp"

using namespace nomavlc;

TEST_CASE("log_gamma matches factorials") {
  CHECK(log_gamma(5.0) == doctest::Approx(std::log(24.0)).epsilon(1e-14));
  CHECK(log_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(log_gamma(0.5) ==
        doctest::Approx(0.5 * std::log(4.0 * std::atan(1.0))).epsilon(1e-13));
}

TEST_CASE("pochhammer basic values") {
  CHECK(pochhammer(3.0, 4) == doctest::Approx(360.0).epsilon(1e-13));
  CHECK(pochhammer(5.0, 0) == doctest::Approx(1.0));
  CHECK(pochhammer(-3.0, 5) == doctest::Approx(0.0));
  CHECK(pochhammer(-3.0, 3) == doctest::Approx(-6.0).epsilon(1e-13));
  // consistency with the gamma route for larger n
  CHECK(pochhammer(2.5, 40) ==
        doctest::Approx(std::exp(log_gamma(42.5) - log_gamma(2.5)))
            .epsilon(1e-10));
}

TEST_CASE("hermite recurrences hold for both kinds") {
  const double xs[] = {-3.2, -1.0, -0.25, 0.0, 0.6, 1.7, 4.1};
  for (double x : xs) {
    for (int m = 1; m <= 20; ++m) {
      const double he_next = hermite(m + 1, x, HermiteKind::probabilists);
      const double he = hermite(m, x, HermiteKind::probabilists);
      const double he_prev = hermite(m - 1, x, HermiteKind::probabilists);
      const double scale =
          std::max({1.0, std::abs(he_next), std::abs(x * he)});
      CHECK(std::abs(he_next - (x * he - m * he_prev)) / scale < 1e-12);

      const double h_next = hermite(m + 1, x, HermiteKind::physicists);
      const double h = hermite(m, x, HermiteKind::physicists);
      const double h_prev = hermite(m - 1, x, HermiteKind::physicists);
      const double pscale =
          std::max({1.0, std::abs(h_next), std::abs(2.0 * x * h)});
      CHECK(std::abs(h_next - (2.0 * x * h - 2.0 * m * h_prev)) / pscale <
            1e-12);
    }
  }
}

TEST_CASE("hermite derivative identity via finite differences") {
  const double eps = 1e-6;
  for (int m = 1; m <= 12; ++m) {
    for (double x : {-2.0, -0.4, 0.3, 1.9}) {
      const double fd = (hermite(m, x + eps, HermiteKind::probabilists) -
                         hermite(m, x - eps, HermiteKind::probabilists)) /
                        (2.0 * eps);
      const double exact = m * hermite(m - 1, x, HermiteKind::probabilists);
      CHECK(std::abs(fd - exact) <=
            1e-6 * std::max(1.0, std::abs(exact)));
    }
  }
}

TEST_CASE("hermite kind conversion H_m(x) = 2^{m/2} He_m(x sqrt 2)") {
  for (int m = 0; m <= 15; ++m) {
    for (double x : {-1.3, 0.2, 2.4}) {
      const double lhs = hermite(m, x, HermiteKind::physicists);
      const double rhs = std::pow(2.0, 0.5 * m) *
                         hermite(m, x * std::sqrt(2.0),
                                 HermiteKind::probabilists);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11));
    }
  }
}

TEST_CASE("hermite argument guards") {
  CHECK_THROWS_AS(hermite(-1, 0.0, HermiteKind::probabilists),
                  std::invalid_argument);
  CHECK_THROWS_AS(hermite(500, 0.0, HermiteKind::probabilists),
                  std::out_of_range);
}

TEST_CASE("gauss_2f1 log identity over the full working range") {
  // 2F1(1,1;2;z) = -ln(1-z)/z
  for (double z = -10.0; z <= 0.99 + 1e-12; z += 0.01) {
    if (std::abs(z) < 1e-12) continue;
    const double got = gauss_2f1(1.0, 1.0, 2.0, z);
    const double want = -std::log1p(-z) / z;
    CHECK(std::abs(got - want) <= 1e-10 * std::max(1.0, std::abs(want)));
  }
}

TEST_CASE("gauss_2f1 basics and symmetry") {
  CHECK(gauss_2f1(0.3, 1.7, 2.2, 0.0) == doctest::Approx(1.0));
  CHECK(gauss_2f1(0.5, 1.25, 2.5, 0.4) ==
        doctest::Approx(gauss_2f1(1.25, 0.5, 2.5, 0.4)).epsilon(1e-13));
  // polynomial case terminates exactly: 2F1(-2, b; c; z)
  const double b = 1.3, c = 2.1, z = -0.7;
  const double poly = 1.0 + (-2.0) * b / c * z +
                      (-2.0) * (-1.0) * b * (b + 1.0) /
                          (c * (c + 1.0) * 2.0) * z * z;
  CHECK(gauss_2f1(-2.0, b, c, z) == doctest::Approx(poly).epsilon(1e-13));
}

TEST_CASE("gauss_2f1 euler transformation consistency across branches") {
  // (1-z)^(c-a-b) 2F1(c-a, c-b; c; z) = 2F1(a, b; c; z)
  const double a = 0.6, b = 1.1, c = 2.7;
  for (double z : {-8.0, -3.0, -1.2, -0.6, -0.2, 0.3, 0.8}) {
    const double lhs =
        std::pow(1.0 - z, c - a - b) * gauss_2f1(c - a, c - b, c, z);
    const double rhs = gauss_2f1(a, b, c, z);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
  }
}

TEST_CASE("gauss_2f1 domain guards") {
  CHECK_THROWS_AS(gauss_2f1(0.5, 0.5, 1.5, 1.0), std::domain_error);
  CHECK_THROWS_AS(gauss_2f1(0.5, 0.5, 1.5, 1.3), std::domain_error);
  CHECK_THROWS_AS(gauss_2f1(0.5, 0.5, -2.0, 0.3), std::domain_error);
  CHECK_THROWS_AS(gauss_2f1(-1.0, 0.7, -2.0, 0.5), std::domain_error);
}
