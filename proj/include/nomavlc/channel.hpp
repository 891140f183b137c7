#pragma once

#include <cstdint>
#include <vector>

namespace nomavlc {

struct LedGeometry {
  double pd_area = 1e-4;        // effective detector area, m^2
  double distance = 2.25;       // LED to detector, m
  double led_angle = 0.0;       // irradiance angle, rad
  double incidence_angle = 0.0; // rad
  double fov = 1.0471975511965976;        // receiver field of view, rad
  double half_angle = 1.0471975511965976; // LED semi-angle, rad
};

// m = -ln 2 / ln cos(half_angle)
double lambertian_order(double half_angle);

// LOS Lambertian gain with hard field-of-view cutoff
double los_gain(const LedGeometry& geom);

class MobilityModel {
 public:
  // geometric path: bounds and normalizer derived from the cell geometry
  static MobilityModel from_geometry(double pd_area, double led_height,
                                     double r_max, double lambertian_m);
  // direct path: explicit support, normalizer recomputed
  static MobilityModel from_bounds(double h_min, double h_max,
                                   double lambertian_m);

  double pd_area() const { return pd_area_; }
  double led_height() const { return led_height_; }
  double r_max() const { return r_max_; }
  double lambertian_m() const { return m_; }
  double h_min() const { return h_min_; }
  double h_max() const { return h_max_; }
  double k_norm() const { return k_norm_; }
  double k1() const { return k1_; }

  double exponent_c() const { return 2.0 / (m_ + 3.0); }
  double f1() const;  // CDF offset coefficient
  double f2() const;  // CDF power coefficient

 private:
  MobilityModel() = default;
  double pd_area_ = 0.0;
  double led_height_ = 0.0;
  double r_max_ = 0.0;
  double m_ = 1.0;
  double h_min_ = 0.0;
  double h_max_ = 0.0;
  double k_norm_ = 0.0;
  double k1_ = 0.0;
};

double mobility_pdf(const MobilityModel& model, double h);
double mobility_cdf(const MobilityModel& model, double h);
double mobility_inverse_cdf(const MobilityModel& model, double q);

std::vector<double> sample_gains(const MobilityModel& model, std::size_t count,
                                 std::uint64_t seed);

// density of the u-th smallest of U i.i.d. gains (direct order-statistics form)
double ordered_pdf(const MobilityModel& model, int total_users, int layer,
                   double h);

// same density via the double-binomial power-law expansion
double ordered_pdf_expanded(const MobilityModel& model, int total_users,
                            int layer, double h);

// expansion terms: ordered_pdf_expanded(h) = sum coeff * h^(-theta)
struct OrderedTerm {
  double coeff;
  double theta;
};
std::vector<OrderedTerm> ordered_terms(const MobilityModel& model,
                                       int total_users, int layer);

// E[h^2] under the mobility pdf
double mean_square_gain(const MobilityModel& model);

// E[h_(u)^p] under the ordered pdf
double ordered_moment(const MobilityModel& model, int total_users, int layer,
                      double power);

}  // namespace nomavlc
