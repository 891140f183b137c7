#include "nomavlc/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "nomavlc/quad.hpp"
#include "nomavlc/rng.hpp"

namespace nomavlc {
namespace {

constexpr double kPi = 3.14159265358979323846;

double binom(int n, int k) {
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b *= static_cast<double>(n - k + i) / i;
  return b;
}

void check_layer(int total_users, int layer) {
  if (total_users < 1)
    throw std::invalid_argument("ordered_pdf: total_users must be >= 1");
  if (layer < 1 || layer > total_users)
    throw std::invalid_argument("ordered_pdf: layer must lie in [1, total_users]");
}

}  // namespace

double lambertian_order(double half_angle) {
  if (!(half_angle > 0.0) || !(half_angle < 0.5 * kPi))
    throw std::domain_error("lambertian_order: half_angle must be in (0, pi/2)");
  return -std::log(2.0) / std::log(std::cos(half_angle));
}

double los_gain(const LedGeometry& geom) {
  if (!(geom.pd_area > 0.0) || !(geom.distance > 0.0))
    throw std::invalid_argument("los_gain: pd_area and distance must be > 0");
  if (!(geom.fov > 0.0) || geom.fov > 0.5 * kPi)
    throw std::invalid_argument("los_gain: fov must be in (0, pi/2]");
  if (!(geom.led_angle > 0.0) || !(geom.led_angle < geom.fov)) return 0.0;
  const double m = lambertian_order(geom.half_angle);
  const double radiant = (m + 1.0) * std::pow(std::cos(geom.led_angle), m) /
                         (2.0 * kPi);
  const double s = std::sin(geom.fov);
  return geom.pd_area / (geom.distance * geom.distance * s * s) * radiant *
         std::cos(geom.incidence_angle);
}

MobilityModel MobilityModel::from_geometry(double pd_area, double led_height,
                                           double r_max, double lambertian_m) {
  if (!(pd_area > 0.0) || !(led_height > 0.0) || !(r_max > 0.0) ||
      !(lambertian_m > 0.0))
    throw std::invalid_argument("MobilityModel: geometry must be positive");
  MobilityModel mm;
  mm.pd_area_ = pd_area;
  mm.led_height_ = led_height;
  mm.r_max_ = r_max;
  mm.m_ = lambertian_m;
  mm.k1_ = pd_area / (2.0 * kPi);
  const double m = lambertian_m;
  const double cbar = mm.k1_ * (m + 1.0) * std::pow(led_height, m + 1.0);
  mm.h_min_ = cbar / std::pow(r_max * r_max + led_height * led_height,
                              0.5 * (m + 3.0));
  mm.h_max_ = cbar / std::pow(led_height, m + 3.0);
  mm.k_norm_ = 2.0 * std::pow(cbar, 2.0 / (m + 3.0)) /
               ((m + 3.0) * r_max * r_max);
  return mm;
}

MobilityModel MobilityModel::from_bounds(double h_min, double h_max,
                                         double lambertian_m) {
  if (!(h_min > 0.0) || !(h_max > h_min))
    throw std::invalid_argument("MobilityModel: requires 0 < h_min < h_max");
  if (!(lambertian_m > 0.0))
    throw std::invalid_argument("MobilityModel: lambertian_m must be > 0");
  MobilityModel mm;
  mm.m_ = lambertian_m;
  mm.h_min_ = h_min;
  mm.h_max_ = h_max;
  const double c = mm.exponent_c();
  mm.k_norm_ = c / (std::pow(h_min, -c) - std::pow(h_max, -c));
  return mm;
}

double MobilityModel::f2() const { return -k_norm_ / exponent_c(); }

double MobilityModel::f1() const {
  return f2() * std::pow(h_min_, -exponent_c());
}

double mobility_pdf(const MobilityModel& model, double h) {
  if (h < model.h_min() || h > model.h_max()) return 0.0;
  return model.k_norm() * std::pow(h, -model.exponent_c() - 1.0);
}

double mobility_cdf(const MobilityModel& model, double h) {
  if (h <= model.h_min()) return 0.0;
  if (h >= model.h_max()) return 1.0;
  return model.f2() * std::pow(h, -model.exponent_c()) - model.f1();
}

double mobility_inverse_cdf(const MobilityModel& model, double q) {
  if (!(q >= 0.0) || !(q <= 1.0))
    throw std::domain_error("mobility_inverse_cdf: q must be in [0,1]");
  if (q == 0.0) return model.h_min();
  if (q == 1.0) return model.h_max();
  const double x = (q + model.f1()) / model.f2();  // h^(-c)
  return std::pow(x, -1.0 / model.exponent_c());
}

std::vector<double> sample_gains(const MobilityModel& model, std::size_t count,
                                 std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("sample_gains: count must be >= 1");
  Rng rng(seed);
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i)
    out[i] = mobility_inverse_cdf(model, rng.uniform());
  return out;
}

double ordered_pdf(const MobilityModel& model, int total_users, int layer,
                   double h) {
  check_layer(total_users, layer);
  if (h < model.h_min() || h > model.h_max()) return 0.0;
  const double p = mobility_cdf(model, h);
  double scale = 1.0;
  for (int i = 1; i < layer; ++i) scale *= p;
  for (int i = 0; i < total_users - layer; ++i) scale *= 1.0 - p;
  double mult = 1.0;  // U! / ((u-1)!(U-u)!)
  for (int i = 0; i < total_users; ++i) mult *= i + 1;
  for (int i = 0; i < layer - 1; ++i) mult /= i + 1;
  for (int i = 0; i < total_users - layer; ++i) mult /= i + 1;
  return mult * mobility_pdf(model, h) * scale;
}

std::vector<OrderedTerm> ordered_terms(const MobilityModel& model,
                                       int total_users, int layer) {
  check_layer(total_users, layer);
  const double c = model.exponent_c();
  const double f1 = model.f1();
  const double f2 = model.f2();
  double mult = model.k_norm();
  for (int i = 0; i < total_users; ++i) mult *= i + 1;
  for (int i = 0; i < layer - 1; ++i) mult /= i + 1;
  for (int i = 0; i < total_users - layer; ++i) mult /= i + 1;
  std::vector<OrderedTerm> terms;
  terms.reserve(static_cast<std::size_t>(layer) * (total_users - layer + 1));
  for (int i = 0; i <= layer - 1; ++i) {
    for (int j = 0; j <= total_users - layer; ++j) {
      const double coeff = mult * binom(layer - 1, i) *
                           binom(total_users - layer, j) *
                           std::pow(-f1, layer - 1 - i) *
                           std::pow(1.0 + f1, total_users - layer - j) *
                           ((j % 2 == 0) ? 1.0 : -1.0) * std::pow(f2, i + j);
      terms.push_back({coeff, c * (i + j + 1) + 1.0});
    }
  }
  return terms;
}

double ordered_pdf_expanded(const MobilityModel& model, int total_users,
                            int layer, double h) {
  if (h < model.h_min() || h > model.h_max()) {
    check_layer(total_users, layer);
    return 0.0;
  }
  double acc = 0.0;
  for (const auto& t : ordered_terms(model, total_users, layer))
    acc += t.coeff * std::pow(h, -t.theta);
  return acc;
}

double mean_square_gain(const MobilityModel& model) {
  return integrate([&](double h) { return h * h * mobility_pdf(model, h); },
                   model.h_min(), model.h_max());
}

double ordered_moment(const MobilityModel& model, int total_users, int layer,
                      double power) {
  check_layer(total_users, layer);
  return integrate(
      [&](double h) {
        return std::pow(h, power) * ordered_pdf(model, total_users, layer, h);
      },
      model.h_min(), model.h_max());
}

}  // namespace nomavlc
