#include <algorithm>
#include <cmath>
#include <vector>

#include <doctest.h>

#include "nomavlc/channel.hpp"
#include "nomavlc/quad.hpp"

using namespace nomavlc;

namespace {

constexpr double kPi = 3.14159265358979323846;

double deg(double d) { return d * kPi / 180.0; }

std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i)
    g[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
  return g;
}

}  // namespace

TEST_CASE("lambertian_order reference angles") {
  CHECK(lambertian_order(deg(60.0)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(lambertian_order(deg(45.0)) == doctest::Approx(2.0).epsilon(1e-12));
  // second implementation path: m = 1 / log2(sec(angle))
  const double alt = 1.0 / std::log2(1.0 / std::cos(deg(50.0)));
  CHECK(lambertian_order(deg(50.0)) == doctest::Approx(alt).epsilon(1e-13));
  CHECK(lambertian_order(deg(50.0)) == doctest::Approx(1.5684).epsilon(1e-4));
  CHECK_THROWS_AS(lambertian_order(0.0), std::domain_error);
  CHECK_THROWS_AS(lambertian_order(kPi / 2.0), std::domain_error);
}

TEST_CASE("los_gain cutoff and closed-form values") {
  LedGeometry g;
  g.pd_area = 1e-4;
  g.distance = 2.25;
  g.fov = deg(60.0);
  g.half_angle = deg(60.0);  // m = 1

  g.led_angle = deg(75.0);
  CHECK(los_gain(g) == 0.0);

  g.led_angle = 1e-9;  // on-axis limit
  g.incidence_angle = 0.0;
  const double on_axis =
      1e-4 / (kPi * 2.25 * 2.25 * std::pow(std::sin(deg(60.0)), 2));
  CHECK(los_gain(g) == doctest::Approx(on_axis).epsilon(1e-6));

  // independent re-derivation at a generic interior point
  g.led_angle = deg(30.0);
  g.incidence_angle = deg(30.0);
  const double m = 1.0;
  const double radiant = (m + 1.0) / (2.0 * kPi) * std::cos(deg(30.0));
  const double expect = 1e-4 / (2.25 * 2.25 * std::pow(std::sin(deg(60.0)), 2)) *
                        radiant * std::cos(deg(30.0));
  CHECK(los_gain(g) == doctest::Approx(expect).epsilon(1e-13));
}

TEST_CASE("mobility model normalizer and frozen coefficients") {
  const auto model = MobilityModel::from_bounds(1.0, 3.0, 1.0);
  CHECK(model.k_norm() == doctest::Approx(1.1830127018922192).epsilon(1e-14));
  CHECK(model.f1() == doctest::Approx(-2.3660254037844384).epsilon(1e-14));
  CHECK(model.f2() == doctest::Approx(-2.3660254037844384).epsilon(1e-14));
  CHECK(model.exponent_c() == doctest::Approx(0.5).epsilon(1e-15));

  const double mass = integrate(
      [&](double h) { return mobility_pdf(model, h); }, 1.0, 3.0);
  CHECK(std::abs(mass - 1.0) < 1e-9);
  CHECK(mobility_pdf(model, 0.99) == 0.0);
  CHECK(mobility_pdf(model, 3.01) == 0.0);

  double prev = mobility_pdf(model, 1.0);
  for (double h = 1.05; h <= 3.0; h += 0.05) {
    const double cur = mobility_pdf(model, h);
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("geometric construction fixes the support endpoints") {
  const double area = 1e-4, L = 2.25, r_max = 2.5, m = 1.0;
  const auto model = MobilityModel::from_geometry(area, L, r_max, m);
  const double cbar = area / (2.0 * kPi) * (m + 1.0) * std::pow(L, m + 1.0);
  CHECK(model.h_max() ==
        doctest::Approx(cbar / std::pow(L, m + 3.0)).epsilon(1e-13));
  CHECK(model.h_min() ==
        doctest::Approx(cbar / std::pow(r_max * r_max + L * L,
                                        0.5 * (m + 3.0))).epsilon(1e-13));
  CHECK(model.h_min() < model.h_max());
  const double mass = integrate(
      [&](double h) { return mobility_pdf(model, h); }, model.h_min(),
      model.h_max());
  CHECK(std::abs(mass - 1.0) < 1e-9);
}

TEST_CASE("mobility cdf limits, inverse round trip") {
  const auto model = MobilityModel::from_bounds(1.0, 3.0, 1.5684);
  CHECK(mobility_cdf(model, model.h_min()) == doctest::Approx(0.0));
  CHECK(std::abs(mobility_cdf(model, model.h_max()) - 1.0) < 1e-9);
  CHECK(mobility_cdf(model, 0.5) == 0.0);
  CHECK(mobility_cdf(model, 9.0) == 1.0);
  CHECK(mobility_cdf(model, mobility_inverse_cdf(model, 0.5)) ==
        doctest::Approx(0.5).epsilon(1e-12));
  for (int i = 1; i <= 99; ++i) {
    const double q = i / 100.0;
    CHECK(std::abs(mobility_cdf(model, mobility_inverse_cdf(model, q)) - q) <=
          1e-12);
  }
}

TEST_CASE("sample_gains stays in support and matches the cdf") {
  const auto model = MobilityModel::from_bounds(1.0, 3.0, 1.0);
  auto draws = sample_gains(model, 1000000, 42);
  double lo = 1e9, hi = -1e9, mean = 0.0;
  for (double h : draws) {
    lo = std::min(lo, h);
    hi = std::max(hi, h);
    mean += h;
  }
  mean /= static_cast<double>(draws.size());
  CHECK(lo >= model.h_min());
  CHECK(hi <= model.h_max());

  std::sort(draws.begin(), draws.end());
  double ks = 0.0;
  const double n = static_cast<double>(draws.size());
  for (std::size_t i = 0; i < draws.size(); ++i) {
    const double emp_lo = static_cast<double>(i) / n;
    const double emp_hi = static_cast<double>(i + 1) / n;
    const double cdf = mobility_cdf(model, draws[i]);
    ks = std::max(ks, std::max(std::abs(cdf - emp_lo), std::abs(cdf - emp_hi)));
  }
  CHECK(ks <= 0.002);

  const double want_mean = integrate(
      [&](double h) { return h * mobility_pdf(model, h); }, 1.0, 3.0);
  CHECK(std::abs(mean - want_mean) <= 0.005 * want_mean);
}

TEST_CASE("ordered pdf identities") {
  const auto model = MobilityModel::from_bounds(1.0, 3.0, 1.5684);
  const auto grid = log_grid(1.0, 3.0, 50);

  // single user reduces to the plain pdf
  for (double h : grid)
    CHECK(ordered_pdf(model, 1, 1, h) ==
          doctest::Approx(mobility_pdf(model, h)).epsilon(1e-12));

  for (int users : {2, 4, 6}) {
    for (double h : grid) {
      double acc = 0.0;
      for (int u = 1; u <= users; ++u) acc += ordered_pdf(model, users, u, h);
      CHECK(std::abs(acc - users * mobility_pdf(model, h)) < 1e-8);
    }
  }

  // expansion equals the direct order-statistics form
  for (int u = 1; u <= 4; ++u) {
    for (double h : grid) {
      const double direct = ordered_pdf(model, 4, u, h);
      const double expanded = ordered_pdf_expanded(model, 4, u, h);
      CHECK(std::abs(direct - expanded) < 1e-9);
    }
  }
}

TEST_CASE("each ordered pdf integrates to one") {
  const auto model = MobilityModel::from_bounds(1.0, 5.0, 1.0);
  for (int users = 1; users <= 8; ++users) {
    for (int u = 1; u <= users; ++u) {
      const double mass = integrate(
          [&](double h) { return ordered_pdf(model, users, u, h); },
          model.h_min(), model.h_max());
      CHECK(std::abs(mass - 1.0) < 1e-6);
    }
  }
}

TEST_CASE("sorted samples reproduce each ordered pdf") {
  const auto model = MobilityModel::from_bounds(1.0, 3.0, 1.0);
  const int users = 4, tuples = 100000;
  auto draws = sample_gains(model, users * tuples, 4242);
  std::vector<std::vector<double>> comp(users);
  for (auto& c : comp) c.reserve(tuples);
  for (int t = 0; t < tuples; ++t) {
    std::vector<double> tup(draws.begin() + t * users,
                            draws.begin() + (t + 1) * users);
    std::sort(tup.begin(), tup.end());
    for (int u = 0; u < users; ++u) comp[u].push_back(tup[u]);
  }
  const int bins = 60;
  for (int u = 1; u <= users; ++u) {
    const auto& v = comp[u - 1];
    const auto [mn, mx] = std::minmax_element(v.begin(), v.end());
    const double lo = *mn, hi = *mx, width = (hi - lo) / bins;
    std::vector<double> counts(bins, 0.0);
    for (double x : v) {
      int idx = static_cast<int>((x - lo) / width);
      idx = std::clamp(idx, 0, bins - 1);
      counts[idx] += 1.0;
    }
    double l1 = 0.0;
    for (int b = 0; b < bins; ++b) {
      const double density = counts[b] / (tuples * width);
      const double center = lo + (b + 0.5) * width;
      l1 += std::abs(density - ordered_pdf(model, users, u, center)) * width;
    }
    CHECK(l1 <= 0.05);
  }
}

TEST_CASE("mean square gain oracles") {
  const auto tight = MobilityModel::from_bounds(2.0, 2.0001, 1.3);
  CHECK(mean_square_gain(tight) == doctest::Approx(4.0).epsilon(1e-3));

  const auto model = MobilityModel::from_bounds(1.0, 3.0, 1.0);
  const double mu2 = mean_square_gain(model);
  // closed form of the power-law moment
  const double c = model.exponent_c();
  const double k = model.k_norm();
  const double closed =
      k / (2.0 - c) * (std::pow(3.0, 2.0 - c) - std::pow(1.0, 2.0 - c));
  CHECK(mu2 == doctest::Approx(closed).epsilon(1e-10));
  CHECK(mu2 == doctest::Approx(3.309401076758503).epsilon(1e-9));

  const auto gains = sample_gains(model, 1000000, 7);
  double mc = 0.0;
  for (double g : gains) mc += g * g;
  mc /= static_cast<double>(gains.size());
  CHECK(std::abs(mc - mu2) <= 0.005 * mu2);

  const auto wider = MobilityModel::from_bounds(1.0, 3.5, 1.0);
  CHECK(mean_square_gain(wider) > mu2);
}

TEST_CASE("ordered moments: frozen values and averaging identity") {
  const auto m13 = MobilityModel::from_bounds(1.0, 3.0, 1.0);
  const double want_means_13[] = {1.21661, 1.49712, 1.86431, 2.35016};
  for (int u = 1; u <= 4; ++u)
    CHECK(ordered_moment(m13, 4, u, 1.0) ==
          doctest::Approx(want_means_13[u - 1]).epsilon(2e-5));

  const auto m15 = MobilityModel::from_bounds(1.0, 5.0, 1.0);
  const double want_rms_15[] = {1.35470056, 1.85435463, 2.56151692,
                                3.56651046};
  for (int u = 1; u <= 4; ++u)
    CHECK(std::sqrt(ordered_moment(m15, 4, u, 2.0)) ==
          doctest::Approx(want_rms_15[u - 1]).epsilon(1e-6));

  double acc = 0.0;
  for (int u = 1; u <= 4; ++u) acc += ordered_moment(m15, 4, u, 2.0);
  CHECK(acc / 4.0 ==
        doctest::Approx(mean_square_gain(m15)).epsilon(1e-8));
}

TEST_CASE("model construction guards") {
  CHECK_THROWS_AS(MobilityModel::from_bounds(3.0, 1.0, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(MobilityModel::from_bounds(0.0, 1.0, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(MobilityModel::from_bounds(1.0, 3.0, -1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(MobilityModel::from_geometry(0.0, 2.25, 2.5, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(ordered_pdf(MobilityModel::from_bounds(1.0, 3.0, 1.0), 4, 5,
                              2.0),
                  std::invalid_argument);
}
