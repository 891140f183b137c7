#include <algorithm>
#include <cmath>
#include <vector>

#include <doctest.h>

#include "nomavlc/channel.hpp"
#include "nomavlc/noise.hpp"
#include "nomavlc/quad.hpp"
#include "nomavlc/rate.hpp"
#include "nomavlc/rng.hpp"

using namespace nomavlc;

namespace {

const double kLn2 = std::log(2.0);

double interference(int layer, const PowerVector& p,
                    const std::vector<double>& h, double alpha) {
  double acc = alpha * alpha / (h[layer - 1] * h[layer - 1]);
  for (std::size_t l = layer; l < p.powers.size(); ++l) acc += p.powers[l];
  return acc;
}

struct RandomInstance {
  PowerVector p;
  std::vector<double> h;
  NoiseParams noise;
  int users;
};

RandomInstance draw_instance(Rng& rng, bool zero_beta) {
  RandomInstance inst;
  inst.users = 1 + static_cast<int>(rng.uniform() * 4.0);
  std::vector<double> h(inst.users), pw(inst.users);
  for (int i = 0; i < inst.users; ++i) {
    h[i] = 0.5 + 3.0 * rng.uniform();
    pw[i] = 0.05 + 5.0 * rng.uniform();
  }
  std::sort(h.begin(), h.end());
  inst.h = h;
  inst.p = make_power_vector(pw);
  inst.noise.alpha = 0.5 + 2.5 * rng.uniform();
  inst.noise.beta = zero_beta ? 0.0 : 0.9 * inst.noise.alpha * rng.uniform();
  inst.noise.nu = 10;
  return inst;
}

}  // namespace

TEST_CASE("power vector construction") {
  const auto p = make_power_vector({1.0, 2.5, 0.0});
  CHECK(p.total == doctest::Approx(3.5).epsilon(1e-15));
  CHECK_THROWS_AS(make_power_vector({}), std::invalid_argument);
  CHECK_THROWS_AS(make_power_vector({1.0, -0.1}), std::invalid_argument);
  CHECK(to_string(RateMethod::analytic) == "analytic");
  CHECK(to_string(RateMethod::quadrature) == "quadrature");
  CHECK(to_string(RateMethod::monte_carlo) == "monte_carlo");
}

TEST_CASE("rate basics and guards") {
  NoiseParams quiet{2.0, 0.0, 10, 10};
  // unity SINR gives half a bit
  const auto solo = make_power_vector({4.0});
  CHECK(rate_sh(1, solo, {1.0}, 2.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(rate_static(1, solo, {1.0}, quiet) ==
        doctest::Approx(0.5).epsilon(1e-14));

  // zero transmit power means zero rate
  const auto with_zero = make_power_vector({1.0, 0.0});
  CHECK(rate_static(2, with_zero, {1.0, 2.0}, quiet) == 0.0);
  CHECK(rate_sh(2, with_zero, {1.0, 2.0}, 2.0) == 0.0);

  // the strongest user decodes free of interference
  const auto p = make_power_vector({3.0, 1.0});
  const std::vector<double> h{1.0, 2.0};
  CHECK(rate_sh(2, p, h, 2.0) ==
        doctest::Approx(0.5 * std::log2(1.0 + 1.0 / 1.0)).epsilon(1e-14));

  CHECK_THROWS_AS(rate_static(1, p, {2.0, 1.0}, quiet), std::invalid_argument);
  CHECK_THROWS_AS(rate_static(3, p, h, quiet), std::invalid_argument);
  CHECK_THROWS_AS(rate_static(1, p, {1.0}, quiet), std::invalid_argument);
  CHECK_THROWS_AS(rate_static(1, p, {0.0, 1.0}, quiet), std::invalid_argument);
}

TEST_CASE("vanishing ambient weight recovers the reference rate") {
  Rng rng(311);
  for (int trial = 0; trial < 50; ++trial) {
    const auto inst = draw_instance(rng, true);
    for (int u = 1; u <= inst.users; ++u) {
      const double rs = rate_static(u, inst.p, inst.h, inst.noise);
      const double sh = rate_sh(u, inst.p, inst.h, inst.noise.alpha);
      CHECK(std::abs(rs - sh) <= 1e-12);
    }
  }
}

TEST_CASE("entropy difference identity") {
  NoiseParams noise{2.0, 2.0 / 3.0, 10, 10};
  const auto p = make_power_vector({0.25, 0.25, 0.25, 0.25});
  const std::vector<double> h{1.0, 1.5, 2.0, 3.0};
  for (int u = 1; u <= 4; ++u) {
    const double lhs = (entropy_y(u, p, h, noise) - entropy_p(u, p, h, noise)) / kLn2;
    CHECK(std::abs(lhs - rate_static(u, p, h, noise)) <= 1e-12);
  }

  Rng rng(1204);
  for (int trial = 0; trial < 200; ++trial) {
    const auto inst = draw_instance(rng, false);
    for (int u = 1; u <= inst.users; ++u) {
      const double lhs =
          (entropy_y(u, inst.p, inst.h, inst.noise) -
           entropy_p(u, inst.p, inst.h, inst.noise)) / kLn2;
      const double rhs = rate_static(u, inst.p, inst.h, inst.noise);
      CHECK(std::abs(lhs - rhs) <= 1e-12);
    }
  }
}

TEST_CASE("composite noise entropy closed form") {
  CHECK(entropy_phi({2.0, 0.0, 10, 10}) ==
        doctest::Approx(0.5 + 0.5 * std::log(8.0 * M_PI)).epsilon(1e-14));
  CHECK(entropy_phi({2.0, 2.0 / 3.0, 10, 10}) ==
        doctest::Approx((4.0 + 4.0 / 9.0) / 8.0 + 0.5 * std::log(8.0 * M_PI))
            .epsilon(1e-14));
  CHECK(entropy_phi({2.0, 2.0 / 3.0, 10, 10}) ==
        doctest::Approx(2.167641269320174).epsilon(1e-14));
}

TEST_CASE("ambient penalty is bounded and monotone") {
  Rng rng(907);
  for (int trial = 0; trial < 50; ++trial) {
    const auto inst = draw_instance(rng, false);
    for (int u = 1; u <= inst.users; ++u) {
      const double rs = rate_static(u, inst.p, inst.h, inst.noise);
      const double sh = rate_sh(u, inst.p, inst.h, inst.noise.alpha);
      const double iu = interference(u, inst.p, inst.h, inst.noise.alpha);
      const double cap = inst.noise.beta * inst.noise.beta / (kLn2 * iu);
      CHECK(sh - rs >= 0.0);
      CHECK(sh - rs <= cap + 1e-15);
      CHECK(rs >= -cap - 1e-15);
    }
  }

  NoiseParams noise{2.0, 0.0, 10, 10};
  const auto p = make_power_vector({2.0, 1.0});
  const std::vector<double> h{1.0, 2.0};
  double prev = rate_static(1, p, h, noise);
  for (double beta = 0.2; beta < 2.0; beta += 0.2) {
    noise.beta = beta;
    const double cur = rate_static(1, p, h, noise);
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("first antiderivative: derivative, definite values, limits") {
  // fundamental theorem at random interior points
  Rng rng(515);
  for (int trial = 0; trial < 20; ++trial) {
    const double theta = 1.05 + 0.9 * rng.uniform();
    const double b = 0.1 + 3.0 * rng.uniform();
    const double c = 0.5 + 3.5 * rng.uniform();
    const double x = 0.5 + 4.0 * rng.uniform();
    const double step = 1e-5 * x;
    const double fd =
        (lemma_i(x + step, theta, b, c) - lemma_i(x - step, theta, b, c)) /
        (2.0 * step);
    const double want = std::pow(x, -theta) * std::log(b * x + c);
    CHECK(fd == doctest::Approx(want).epsilon(1e-6));
  }

  const double direct = integrate(
      [](double x) { return std::pow(x, -1.4) * std::log(2.0 * x + 3.0); },
      1.0, 9.0);
  const double closed = lemma_i(9.0, 1.4, 2.0, 3.0) - lemma_i(1.0, 1.4, 2.0, 3.0);
  CHECK(closed == doctest::Approx(direct).epsilon(1e-8));

  // b -> 0 collapses to the bare power-law integral times log(c)
  const double theta = 1.3, c = 3.0;
  const double small = lemma_i(9.0, theta, 1e-12, c) - lemma_i(1.0, theta, 1e-12, c);
  const double limit = std::log(c) *
      (std::pow(9.0, 1.0 - theta) - std::pow(1.0, 1.0 - theta)) / (1.0 - theta);
  CHECK(small == doctest::Approx(limit).epsilon(1e-6));

  CHECK_THROWS_AS(lemma_i(2.0, 1.0, 1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(lemma_i(2.0, 2.0, 1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(lemma_i(-1.0, 1.4, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("second antiderivative: definite values and sign") {
  CHECK(lemma_b(3.0, 1.4, 0.5, 0.5, 2.0) == 0.0);

  const double theta = 1.4, k1 = 0.2, k2 = 0.7, zeta = 2.0;
  const double z2 = zeta * zeta;
  const double direct = integrate(
      [&](double x) {
        return std::pow(x, 1.0 - theta) *
               (1.0 / (z2 + k1 * x) - 1.0 / (z2 + k2 * x));
      },
      1.0, 9.0);
  const double closed = lemma_b(9.0, theta, k1, k2, zeta) -
                        lemma_b(1.0, theta, k1, k2, zeta);
  CHECK(closed == doctest::Approx(direct).epsilon(1e-8));
  CHECK(closed > 0.0);

  CHECK_THROWS_AS(lemma_b(3.0, 2.0, 0.2, 0.7, 2.0), std::domain_error);
  CHECK_THROWS_AS(lemma_b(3.0, 1.4, -0.1, 0.7, 2.0), std::invalid_argument);
}

TEST_CASE("antiderivatives match quadrature across the pole-free band") {
  Rng rng(626);
  for (int trial = 0; trial < 10; ++trial) {
    const double theta = 1.05 + 0.9 * rng.uniform();
    const double b = 0.1 + 2.9 * rng.uniform();
    const double c = 0.5 + 3.5 * rng.uniform();
    const double x1 = 0.5 + rng.uniform();
    const double x2 = 2.0 + 7.0 * rng.uniform();
    const double direct = integrate(
        [&](double x) { return std::pow(x, -theta) * std::log(b * x + c); },
        x1, x2);
    const double closed = lemma_i(x2, theta, b, c) - lemma_i(x1, theta, b, c);
    CHECK(closed == doctest::Approx(direct).epsilon(1e-8));

    const double k1 = 0.05 + 0.4 * rng.uniform();
    const double k2 = k1 + 0.05 + 0.5 * rng.uniform();
    const double zeta = 0.5 + 2.5 * rng.uniform();
    const double db = integrate(
        [&](double x) {
          return std::pow(x, 1.0 - theta) *
                 (1.0 / (zeta * zeta + k1 * x) - 1.0 / (zeta * zeta + k2 * x));
        },
        x1, x2);
    const double cb = lemma_b(x2, theta, k1, k2, zeta) -
                      lemma_b(x1, theta, k1, k2, zeta);
    CHECK(cb == doctest::Approx(db).epsilon(1e-8));
  }
}

TEST_CASE("moment-weighted rate integral") {
  const auto model = MobilityModel::from_bounds(1.0, 3.0, 1.5684);
  NoiseParams noise{2.0, 2.0 / 3.0, 10, 10};
  const auto p = make_power_vector({60.0, 25.0, 10.0, 5.0});
  const double theta = model.exponent_c() + 1.0;

  const auto tr = expected_rate_theta(model, theta, 2, p, noise);
  CHECK_FALSE(tr.pole_fallback);
  CHECK(tr.closed_form == doctest::Approx(tr.quadrature).epsilon(1e-8));
  CHECK_FALSE(std::isnan(tr.paper_form));

  // importance-sampled oracle for the weighted integral
  const auto draws = sample_gains(model, 1000000, 33);
  double mc = 0.0;
  for (double h : draws) {
    const double r =
        0.5 * std::log2(1.0 + p.powers[1] /
                                  (p.powers[2] + p.powers[3] +
                                   4.0 / (h * h))) -
        noise.beta * noise.beta * p.powers[1] /
            (kLn2 * (p.powers[2] + p.powers[3] + 4.0 / (h * h)) *
             (p.powers[1] + p.powers[2] + p.powers[3] + 4.0 / (h * h)));
    mc += std::pow(h, -theta) * r / mobility_pdf(model, h);
  }
  mc /= static_cast<double>(draws.size());
  CHECK(std::abs(mc - tr.quadrature) <= 0.01 * std::abs(tr.quadrature));

  // beta = 0 drops the correction lemma entirely
  NoiseParams quiet{2.0, 0.0, 10, 10};
  const auto tq = expected_rate_theta(model, theta, 2, p, quiet);
  CHECK(tq.closed_form == doctest::Approx(tq.quadrature).epsilon(1e-8));
}

TEST_CASE("mobility-averaged user rates") {
  NoiseParams noise{2.0, 2.0 / 3.0, 10, 10};
  const double total = 100.0 * (4.0 + 4.0 / 9.0);  // 20 dB over the noise power
  const auto p =
      make_power_vector({total / 4.0, total / 4.0, total / 4.0, total / 4.0});

  // 60 degree cell: expansion exponents hit an antiderivative pole
  const auto m60 = MobilityModel::from_bounds(1.0, 3.0, 1.0);
  const double frozen[] = {0.205488, 0.289363, 0.492864, 2.698928};
  double sum = 0.0;
  for (int u = 1; u <= 4; ++u) {
    const auto r = expected_rate_user(m60, 4, u, p, noise);
    CHECK(r.pole_fallback);
    CHECK(r.closed_form == r.quadrature);
    CHECK(std::isnan(r.paper_form));
    CHECK(std::abs(r.quadrature - frozen[u - 1]) < 1e-6);
    sum += r.quadrature;
  }
  CHECK(std::abs(sum - 3.6866441652497253) < 5e-8);

  // 50 degree cell: closed form is live and matches the direct integral
  const auto m50 = MobilityModel::from_bounds(1.0, 3.0, 1.5684);
  for (int u = 1; u <= 4; ++u) {
    const auto r = expected_rate_user(m50, 4, u, p, noise);
    CHECK_FALSE(r.pole_fallback);
    CHECK(r.closed_form == doctest::Approx(r.quadrature).epsilon(1e-6));
    CHECK_FALSE(std::isnan(r.paper_form));
  }

  // single user: plain average over the gain density
  const auto solo = make_power_vector({total});
  const auto r1 = expected_rate_user(m50, 1, 1, solo, noise);
  const double direct = integrate(
      [&](double h) {
        const double i = 4.0 / (h * h);
        return (0.5 * std::log2(1.0 + solo.powers[0] / i) -
                noise.beta * noise.beta * solo.powers[0] /
                    (kLn2 * i * (solo.powers[0] + i))) *
               mobility_pdf(m50, h);
      },
      1.0, 3.0);
  CHECK(r1.quadrature == doctest::Approx(direct).epsilon(1e-9));

  // a vanishing support pins the gain, recovering the static rate
  const auto tight = MobilityModel::from_bounds(2.0, 2.0 + 1e-6, 1.0);
  const auto rt = expected_rate_user(tight, 4, 2, p, noise);
  const std::vector<double> h{2.0, 2.0, 2.0, 2.0};
  CHECK(std::abs(rt.quadrature - rate_static(2, p, h, noise)) < 1e-3);

  CHECK_THROWS_AS(expected_rate_user(m50, 3, 1, p, noise),
                  std::invalid_argument);
}

TEST_CASE("sorted-sample average tracks the ordered-density integral") {
  NoiseParams noise{2.0, 2.0 / 3.0, 10, 10};
  const double total = 100.0 * (4.0 + 4.0 / 9.0);
  const auto p =
      make_power_vector({total / 4.0, total / 4.0, total / 4.0, total / 4.0});
  const auto model = MobilityModel::from_bounds(1.0, 3.0, 1.0);
  for (int u : {1, 4}) {
    const auto r = expected_rate_user(model, 4, u, p, noise);
    const double mc = mc_mobility_rate(model, 4, u, p, noise, 100000, 909);
    CHECK(std::abs(mc - r.quadrature) <= 0.02 * std::abs(r.quadrature));
  }

  const auto with_zero = make_power_vector({total, 0.0, 0.0, 0.0});
  CHECK(mc_mobility_rate(model, 4, 2, with_zero, noise, 1000, 1) == 0.0);
}

TEST_CASE("sum_rate accumulates") {
  CHECK(sum_rate({}) == 0.0);
  CHECK(sum_rate({0.5, 1.25, 0.25}) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("histogram entropy estimator") {
  const auto gauss = sample_phi({2.0, 0.0, 10, 10}, 200000, 21);
  const double want = 0.5 + 0.5 * std::log(8.0 * M_PI);
  CHECK(std::abs(mc_entropy(gauss) - want) < 0.02);

  const auto composite = sample_phi({2.0, 2.0 / 3.0, 10, 10}, 200000, 22);
  CHECK(std::abs(mc_entropy(composite) - entropy_phi({2.0, 2.0 / 3.0, 10, 10})) <
        0.02);

  CHECK_THROWS_AS(mc_entropy({}), std::invalid_argument);
  CHECK_THROWS_AS(mc_entropy({1.0, 2.0}, 1), std::invalid_argument);
}

TEST_CASE("simulated entropy-difference rate") {
  NoiseParams quiet{2.0, 0.0, 10, 10};
  const auto p = make_power_vector({12.0, 4.0});
  const std::vector<double> h{1.0, 2.0};

  for (int u = 1; u <= 2; ++u) {
    const double mc = mc_rate_entropy(u, p, h, quiet, 200000, 77);
    CHECK(std::abs(mc - rate_sh(u, p, h, 2.0)) < 0.05);
  }

  // sample-size growth does not worsen the estimate
  const double exact = rate_sh(1, p, h, 2.0);
  const double err_small =
      std::abs(mc_rate_entropy(1, p, h, quiet, 100000, 78) - exact);
  const double err_big =
      std::abs(mc_rate_entropy(1, p, h, quiet, 1000000, 78) - exact);
  CHECK(err_big <= err_small + 0.01);

  // deterministic in the seed
  NoiseParams noise{2.0, 2.0 / 3.0, 10, 10};
  const double a = mc_rate_entropy(2, p, h, noise, 100000, 5);
  const double b = mc_rate_entropy(2, p, h, noise, 100000, 5);
  const double c = mc_rate_entropy(2, p, h, noise, 100000, 6);
  CHECK(a == b);
  CHECK(a != c);

  const auto with_zero = make_power_vector({12.0, 0.0});
  CHECK(mc_rate_entropy(2, with_zero, h, noise, 100000, 7) == 0.0);

  CHECK_THROWS_AS(mc_rate_entropy(1, p, h, noise, 50000, 1),
                  std::invalid_argument);
}
