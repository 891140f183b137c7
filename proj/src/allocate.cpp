#include "nomavlc/allocate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "nomavlc/errors.hpp"

namespace nomavlc {
namespace {

constexpr double kLn2 = 0.69314718055994530942;

void check_gains(const std::vector<double>& h) {
  if (h.empty()) throw std::invalid_argument("allocate: empty gain vector");
  for (double g : h)
    if (!(g > 0.0)) throw std::domain_error("allocate: gains must be > 0");
  for (std::size_t i = 0; i + 1 < h.size(); ++i)
    if (h[i] > h[i + 1])
      throw std::invalid_argument("allocate: gains must be sorted ascending");
}

void check_qos(const QosSpec& qos, std::size_t users) {
  if (qos.thresholds.size() != users)
    throw std::invalid_argument("allocate: thresholds length != user count");
  for (double t : qos.thresholds)
    if (!(t >= 0.0))
      throw std::invalid_argument("allocate: thresholds must be >= 0");
  if (!(qos.total_power > 0.0))
    throw std::invalid_argument("allocate: total_power must be > 0");
  if (!(qos.epsilon > 0.0))
    throw std::invalid_argument("allocate: epsilon must be > 0");
  if (qos.max_iterations < 1)
    throw std::invalid_argument("allocate: max_iterations must be >= 1");
}

// SINR targets: rate thresholds in bpcu against the half-log capacity
std::vector<double> kappa_bpcu(const std::vector<double>& thresholds) {
  std::vector<double> k(thresholds.size());
  for (std::size_t i = 0; i < k.size(); ++i)
    k[i] = std::exp2(2.0 * thresholds[i]) - 1.0;
  return k;
}

std::vector<double> cascade(const std::vector<double>& h,
                            const std::vector<double>& kappa, double alpha) {
  const int users = static_cast<int>(h.size());
  std::vector<double> pmin(users, 0.0);
  for (int u = users - 1; u >= 0; --u) {
    double interference = alpha * alpha / (h[u] * h[u]);
    for (int l = u + 1; l < users; ++l) interference += pmin[l];
    pmin[u] = kappa[u] * interference;
  }
  return pmin;
}

// QoS rates (interference-free objective form), bpcu
std::vector<double> sh_rates(const std::vector<double>& p,
                             const std::vector<double>& h, double alpha) {
  const int users = static_cast<int>(p.size());
  std::vector<double> r(users);
  for (int u = 0; u < users; ++u) {
    double interference = alpha * alpha / (h[u] * h[u]);
    for (int l = u + 1; l < users; ++l) interference += p[l];
    r[u] = 0.5 * std::log2(1.0 + p[u] / interference);
  }
  return r;
}

double objective(const std::vector<double>& p, const std::vector<double>& h,
                 double alpha, double beta) {
  const int users = static_cast<int>(p.size());
  double acc = 0.0;
  for (int u = 0; u < users; ++u) {
    double interference = alpha * alpha / (h[u] * h[u]);
    for (int l = u + 1; l < users; ++l) interference += p[l];
    acc += 0.5 * std::log2(1.0 + p[u] / interference) -
           beta * beta * p[u] / (kLn2 * interference * (p[u] + interference));
  }
  return acc;
}

void clamp_and_repair(std::vector<double>& q, double total) {
  const int users = static_cast<int>(q.size());
  for (double& v : q) v = std::max(v, 0.0);
  for (int pass = 0; pass <= users; ++pass) {
    const double sum = std::accumulate(q.begin(), q.end(), 0.0);
    const double excess = sum - total;
    if (std::abs(excess) < 1e-13 * std::max(1.0, total)) break;
    int positive = 0;
    for (double v : q)
      if (v > 0.0) ++positive;
    if (positive == 0) {
      std::fill(q.begin(), q.end(), total / users);
      break;
    }
    const double shift = excess / positive;
    for (double& v : q)
      if (v > 0.0) v = std::max(v - shift, 0.0);
  }
}

AllocationResult finish(std::vector<double> p, const std::vector<double>& h,
                        const QosSpec& qos, double alpha, int iterations,
                        bool converged, std::string diagnostic) {
  AllocationResult out;
  out.iterations = iterations;
  out.converged = converged;
  out.diagnostic = std::move(diagnostic);
  out.achieved_rates = sh_rates(p, h, alpha);
  out.constraint_residuals.resize(p.size());
  for (std::size_t u = 0; u < p.size(); ++u)
    out.constraint_residuals[u] = out.achieved_rates[u] - qos.thresholds[u];
  out.powers.total = std::accumulate(p.begin(), p.end(), 0.0);
  out.powers.powers = std::move(p);
  return out;
}

// core loop shared by the static, baseline and mobility entry points;
// beta is the designer's belief, alpha the common noise scale
AllocationResult solve(const std::vector<double>& h, const QosSpec& qos,
                       double alpha, double beta) {
  check_gains(h);
  check_qos(qos, h.size());
  const int users = static_cast<int>(h.size());
  const double total = qos.total_power;
  const auto kappa = kappa_bpcu(qos.thresholds);
  const auto pmin = cascade(h, kappa, alpha);
  const double need = std::accumulate(pmin.begin(), pmin.end(), 0.0);

  if (need > total) {
    // QoS cannot all be met: report the best candidate under the solver's
    // own objective instead of iterating toward an unreachable region
    std::vector<std::vector<double>> candidates;
    std::vector<double> scaled(pmin);
    for (double& v : scaled) v *= total / need;
    candidates.push_back(std::move(scaled));
    for (int u = 0; u < users; ++u) {
      std::vector<double> vertex(users, 0.0);
      vertex[u] = total;
      candidates.push_back(std::move(vertex));
    }
    std::size_t best = 0;
    double best_value = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      const double value = objective(candidates[i], h, alpha, beta);
      if (value >= best_value) {
        best_value = value;
        best = i;
      }
    }
    return finish(candidates[best], h, qos, alpha, 0, false,
                  "infeasible: minimum QoS powers exceed the budget");
  }

  std::vector<double> p(pmin);
  if (need > 0.0) {
    for (double& v : p) v *= total / need;
  } else {
    std::fill(p.begin(), p.end(), total / users);
  }

  for (int it = 1; it <= qos.max_iterations; ++it) {
    std::vector<double> q(p);
    for (int u = 1; u < users; ++u) {
      double denom = 0.0;
      bool usable = true;
      for (int s = 0; s < u; ++s) {
        if (q[s] <= 0.0) {
          usable = false;
          break;
        }
        denom += kappa[s] / (2.0 * q[s]) -
                 beta * beta * kappa[s] * kappa[s] / (q[s] * q[s]);
      }
      if (usable && denom > 0.0)
        q[u] = kappa[u] / (2.0 * (kappa[u] + 1.0)) / denom;
    }
    const double shift =
        (std::accumulate(q.begin(), q.end(), 0.0) - total) / users;
    for (double& v : q) v -= shift;
    clamp_and_repair(q, total);
    double moved = 0.0;
    for (int u = 0; u < users; ++u) moved += (q[u] - p[u]) * (q[u] - p[u]);
    if (std::sqrt(moved) <= qos.epsilon) {
      // the recursion never sees the real interference, so the settled
      // point is only accepted if every threshold actually holds there
      const auto rates = sh_rates(q, h, alpha);
      bool met = true;
      for (int u = 0; u < users; ++u)
        if (rates[u] < qos.thresholds[u] - 1e-9) met = false;
      if (met) return finish(q, h, qos, alpha, it, true, "");
      return finish(q, h, qos, alpha, it, false,
                    "infeasible: fixed point misses a rate threshold");
    }
    for (int u = 0; u < users; ++u) p[u] = 0.5 * p[u] + 0.5 * q[u];
  }
  return finish(p, h, qos, alpha, qos.max_iterations, false,
                "iteration budget exhausted before the fixed point settled");
}

}  // namespace

PowerVector grpa(const std::vector<double>& h, double total_power) {
  check_gains(h);
  if (!(total_power > 0.0))
    throw std::invalid_argument("grpa: total_power must be > 0");
  const int users = static_cast<int>(h.size());
  std::vector<double> w(users);
  double sum = 0.0;
  for (int u = 0; u < users; ++u) {
    w[u] = std::pow(h[0] / h[u], u + 1);
    sum += w[u];
  }
  for (double& v : w) v *= total_power / sum;
  PowerVector out;
  out.powers = std::move(w);
  out.total = total_power;
  return out;
}

double recursion_power(int layer, const std::vector<double>& powers,
                       const QosSpec& qos, const NoiseParams& noise) {
  const int users = static_cast<int>(powers.size());
  if (layer < 2 || layer > users)
    throw std::invalid_argument("recursion_power: layer must lie in [2, U]");
  if (qos.thresholds.size() != powers.size())
    throw std::invalid_argument("recursion_power: thresholds length != U");
  double denom = 0.0;
  for (int q = 0; q < layer - 1; ++q) {
    if (!(powers[q] > 0.0))
      throw std::invalid_argument("recursion_power: powers below layer must be > 0");
    const double k = std::exp2(qos.thresholds[q]) - 1.0;
    denom += k / (2.0 * powers[q]) -
             noise.beta * noise.beta * k * k / (powers[q] * powers[q]);
  }
  if (!(denom > 0.0))
    throw degeneracy_error("recursion_power: nonpositive denominator");
  const double k = std::exp2(qos.thresholds[layer - 1]) - 1.0;
  return k / (2.0 * (k + 1.0)) / denom;
}

std::vector<double> project_budget(const std::vector<double>& p,
                                   double total_power) {
  if (p.empty()) throw std::invalid_argument("project_budget: empty vector");
  const double shift =
      (std::accumulate(p.begin(), p.end(), 0.0) - total_power) / p.size();
  std::vector<double> out(p);
  for (double& v : out) v -= shift;
  return out;
}

std::vector<double> omega_update(const std::vector<double>& p,
                                 const std::vector<double>& p_proj,
                                 double total_power) {
  if (p.size() != p_proj.size())
    throw std::invalid_argument("omega_update: size mismatch");
  const auto reference = project_budget(p, total_power);
  std::vector<double> bracket(p.size());
  double mean = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    bracket[i] = p_proj[i] - reference[i];
    mean += bracket[i];
  }
  mean /= static_cast<double>(p.size());
  for (double& v : bracket) v -= mean;  // discard the null-space component
  return bracket;
}

std::vector<double> min_power_cascade(const std::vector<double>& h,
                                      const QosSpec& qos, double alpha) {
  check_gains(h);
  check_qos(qos, h.size());
  return cascade(h, kappa_bpcu(qos.thresholds), alpha);
}

AllocationResult allocate_static(const std::vector<double>& h,
                                 const QosSpec& qos, const NoiseParams& noise) {
  return solve(h, qos, noise.alpha, noise.beta);
}

AllocationResult allocate_mobility(const MobilityModel& model, int total_users,
                                   const QosSpec& qos, const NoiseParams& noise,
                                   bool per_user_gains) {
  if (total_users < 1)
    throw std::invalid_argument("allocate_mobility: total_users must be >= 1");
  std::vector<double> effective(total_users);
  if (per_user_gains) {
    for (int u = 1; u <= total_users; ++u)
      effective[u - 1] =
          std::sqrt(ordered_moment(model, total_users, u, 2.0));
  } else {
    const double rms = std::sqrt(mean_square_gain(model));
    std::fill(effective.begin(), effective.end(), rms);
  }
  AllocationResult out = solve(effective, qos, noise.alpha, noise.beta);
  if (out.diagnostic.empty())
    out.diagnostic = per_user_gains ? "effective gains: per-layer rms"
                                    : "effective gains: common rms";
  return out;
}

AllocationResult allocate_sh_baseline(const std::vector<double>& h,
                                      const QosSpec& qos,
                                      const NoiseParams& noise) {
  return solve(h, qos, noise.alpha, 0.0);
}

double sum_rate_gradient(int layer, const PowerVector& p,
                         const std::vector<double>& h,
                         const NoiseParams& noise) {
  const int users = static_cast<int>(p.powers.size());
  if (static_cast<int>(h.size()) != users)
    throw std::invalid_argument("sum_rate_gradient: h length != U");
  if (layer < 1 || layer > users)
    throw std::invalid_argument("sum_rate_gradient: layer out of range");
  const double a2 = noise.alpha * noise.alpha;
  const double b2 = noise.beta * noise.beta;
  const auto interference = [&](int u) {
    double acc = a2 / (h[u] * h[u]);
    for (int l = u + 1; l < users; ++l) acc += p.powers[l];
    return acc;
  };
  const int u = layer - 1;
  const double iu = interference(u);
  double grad = 1.0 / (2.0 * (p.powers[u] + iu));
  for (int q = 0; q < u; ++q) {
    const double iq = interference(q);
    grad += 1.0 / (2.0 * (p.powers[q] + iq)) - 1.0 / (2.0 * iq) + b2 / (iq * iq);
  }
  return grad;
}

}  // namespace nomavlc
