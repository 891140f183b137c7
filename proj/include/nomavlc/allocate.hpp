#pragma once

#include <string>
#include <vector>

#include "nomavlc/channel.hpp"
#include "nomavlc/noise.hpp"
#include "nomavlc/rate.hpp"

namespace nomavlc {

struct QosSpec {
  std::vector<double> thresholds;  // bpcu, ascending channel-gain order
  double total_power = 1.0;
  double epsilon = 1e-8;
  int max_iterations = 10000;
};

struct AllocationResult {
  PowerVector powers;
  int iterations = 0;
  bool converged = false;
  std::vector<double> constraint_residuals;  // achieved - threshold, bpcu
  std::vector<double> achieved_rates;        // interference-free QoS rates
  std::string diagnostic;                    // empty when nothing to report
};

// gain-ratio baseline: weights (h1/hu)^u normalized to the budget
PowerVector grpa(const std::vector<double>& h, double total_power);

// printed fixed-point recursion for one layer (>= 2); thresholds enter the
// exponents verbatim, so callers working in bpcu pass doubled thresholds
double recursion_power(int layer, const std::vector<double>& powers,
                       const QosSpec& qos, const NoiseParams& noise);

// orthogonal projection onto the budget hyperplane
std::vector<double> project_budget(const std::vector<double>& p,
                                   double total_power);

// minimum-norm correction solving the projector system
std::vector<double> omega_update(const std::vector<double>& p,
                                 const std::vector<double>& p_proj,
                                 double total_power);

// smallest powers meeting every threshold with equality (backward cascade)
std::vector<double> min_power_cascade(const std::vector<double>& h,
                                      const QosSpec& qos, double alpha);

// converged means the budget is met exactly and every threshold holds; on
// failure the best iterate comes back with residuals and a diagnostic
AllocationResult allocate_static(const std::vector<double>& h,
                                 const QosSpec& qos, const NoiseParams& noise);

// same solver on mobility-effective gains; per_user_gains switches from the
// common root-mean-square gain to per-layer ordered moments
AllocationResult allocate_mobility(const MobilityModel& model, int total_users,
                                   const QosSpec& qos, const NoiseParams& noise,
                                   bool per_user_gains = false);

// designer ignores ambient light (beta = 0 inside the solver)
AllocationResult allocate_sh_baseline(const std::vector<double>& h,
                                      const QosSpec& qos,
                                      const NoiseParams& noise);

// exact partial derivative of the approximate sum-rate objective, nats
double sum_rate_gradient(int layer, const PowerVector& p,
                         const std::vector<double>& h,
                         const NoiseParams& noise);

}  // namespace nomavlc
