#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "nomavlc/channel.hpp"
#include "nomavlc/noise.hpp"

namespace nomavlc {

struct PowerVector {
  std::vector<double> powers;  // ascending channel-gain order
  double total = 0.0;
};

// sets total from the entries and validates nonnegativity
PowerVector make_power_vector(std::vector<double> powers);

enum class RateMethod { analytic, quadrature, monte_carlo };
std::string to_string(RateMethod m);

struct RateReport {
  std::vector<double> per_user;  // bpcu
  double sum = 0.0;
  RateMethod method = RateMethod::analytic;
  std::map<std::string, double> diagnostics;
};

// ambient-corrected per-layer rate, bpcu; h must be ascending
double rate_static(int layer, const PowerVector& p,
                   const std::vector<double>& h, const NoiseParams& noise);

// Shannon-Hartley reference rate, bpcu
double rate_sh(int layer, const PowerVector& p, const std::vector<double>& h,
               double alpha);

// closed-form entropies in nats; entropy_y - entropy_p = ln2 * rate_static
double entropy_y(int layer, const PowerVector& p, const std::vector<double>& h,
                 const NoiseParams& noise);
double entropy_p(int layer, const PowerVector& p, const std::vector<double>& h,
                 const NoiseParams& noise);
double entropy_phi(const NoiseParams& noise);

// antiderivative of x^(-theta) * log(b x + c); poles at theta in {1, 2}
double lemma_i(double x, double theta, double b, double c);

// antiderivative of x^(1-theta) * [1/(zeta^2 + k1 x) - 1/(zeta^2 + k2 x)];
// pole at theta = 2
double lemma_b(double x, double theta, double k1, double k2, double zeta);

// rho1(theta) = integral of h^(-theta) R(h) dh over the mobility support
struct ThetaRate {
  double closed_form;   // corrected antiderivative evaluation
  double paper_form;    // printed combination, diagnostic only (NaN on pole)
  double quadrature;    // direct integral, runtime reference
  bool pole_fallback;   // closed_form replaced by quadrature at a lemma pole
};
ThetaRate expected_rate_theta(const MobilityModel& model, double theta,
                              int layer, const PowerVector& p,
                              const NoiseParams& noise);

// mobility-averaged per-layer rate, bpcu
struct MobilityRate {
  double quadrature;    // integral of R(h) * ordered_pdf, runtime default
  double closed_form;   // expansion-term combination of rho1 values
  double paper_form;    // printed double-binomial combination, diagnostic
  bool pole_fallback;
};
MobilityRate expected_rate_user(const MobilityModel& model, int total_users,
                                int layer, const PowerVector& p,
                                const NoiseParams& noise);

double sum_rate(const std::vector<double>& per_user);

// histogram plug-in differential entropy, nats
double mc_entropy(const std::vector<double>& samples, int bins = 400);

// simulated entropy-difference rate for one SIC layer, bpcu
double mc_rate_entropy(int layer, const PowerVector& p,
                       const std::vector<double>& h, const NoiseParams& noise,
                       std::size_t n, std::uint64_t seed);

// sorted-sample Monte Carlo of the mobility-averaged rate, bpcu
double mc_mobility_rate(const MobilityModel& model, int total_users, int layer,
                        const PowerVector& p, const NoiseParams& noise,
                        std::size_t tuples, std::uint64_t seed);

}  // namespace nomavlc
