#include "nomavlc/rate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "nomavlc/errors.hpp"
#include "nomavlc/quad.hpp"
#include "nomavlc/rng.hpp"
#include "nomavlc/specfun.hpp"

namespace nomavlc {
namespace {

constexpr double kLn2 = 0.69314718055994530942;
constexpr double kTwoPiE = 17.079468445347132;

void check_inputs(int layer, const PowerVector& p,
                  const std::vector<double>& h) {
  const int users = static_cast<int>(p.powers.size());
  if (users < 1) throw std::invalid_argument("rate: empty power vector");
  if (static_cast<int>(h.size()) != users)
    throw std::invalid_argument("rate: h and powers must have equal length");
  if (layer < 1 || layer > users)
    throw std::invalid_argument("rate: layer must lie in [1, U]");
  for (int i = 0; i + 1 < users; ++i)
    if (h[i] > h[i + 1])
      throw std::invalid_argument("rate: h must be sorted ascending");
  for (double g : h)
    if (!(g > 0.0)) throw std::invalid_argument("rate: gains must be > 0");
}

double tail_power(const PowerVector& p, int layer) {
  double acc = 0.0;
  for (std::size_t l = layer; l < p.powers.size(); ++l) acc += p.powers[l];
  return acc;
}

// ambient-corrected rate at one gain value, bpcu
double rate_at_gain(int layer, const PowerVector& p, double gain,
                    const NoiseParams& noise) {
  const double own = p.powers[layer - 1];
  const double interference =
      tail_power(p, layer) + noise.alpha * noise.alpha / (gain * gain);
  const double sh = 0.5 * std::log2(1.0 + own / interference);
  const double penalty = noise.beta * noise.beta * own /
                         (kLn2 * interference * (own + interference));
  return sh - penalty;
}

// corrected closed form of the support-restricted moment integral:
// with x = h^2 the exponent maps to (theta+1)/2 and the antiderivatives
// pick up a factor 1/2
double rho1_closed(const MobilityModel& model, double theta, int layer,
                   const PowerVector& p, const NoiseParams& noise) {
  const double th = 0.5 * (theta + 1.0);
  const double a2 = noise.alpha * noise.alpha;
  const double xlo = model.h_min() * model.h_min();
  const double xhi = model.h_max() * model.h_max();
  const double above = tail_power(p, layer);            // interferers only
  const double from = above + p.powers[layer - 1];      // signal included
  double acc = 0.25 * (lemma_i(xhi, th, from, a2) - lemma_i(xlo, th, from, a2) -
                       lemma_i(xhi, th, above, a2) + lemma_i(xlo, th, above, a2));
  if (noise.beta > 0.0) {
    acc -= 0.5 * noise.beta * noise.beta *
           (lemma_b(xhi, th, above, from, noise.alpha) -
            lemma_b(xlo, th, above, from, noise.alpha));
  }
  return acc / kLn2;
}

// printed combination kept verbatim as a diagnostic; theta enters unmapped
// and the bracket terms carry beta^2 directly
double rho1_paper(const MobilityModel& model, double theta, int layer,
                  const PowerVector& p, const NoiseParams& noise) {
  const double a2 = noise.alpha * noise.alpha;
  const double xlo = model.h_min() * model.h_min();
  const double xhi = model.h_max() * model.h_max();
  const double above = tail_power(p, layer);
  const double from = above + p.powers[layer - 1];
  double acc = lemma_i(xhi, theta, from, a2) - lemma_i(xhi, theta, above, a2) -
               lemma_i(xlo, theta, from, a2) + lemma_i(xlo, theta, above, a2);
  acc += noise.beta * noise.beta *
         (lemma_b(xhi, theta, above, from, noise.alpha) -
          lemma_b(xlo, theta, above, from, noise.alpha));
  return acc;
}

bool near_pole(double th) {
  return std::abs(th - 1.0) < 1e-6 || std::abs(th - 2.0) < 1e-6;
}

double binom(int n, int k) {
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b *= static_cast<double>(n - k + i) / i;
  return b;
}

}  // namespace

PowerVector make_power_vector(std::vector<double> powers) {
  if (powers.empty())
    throw std::invalid_argument("PowerVector: at least one user required");
  double total = 0.0;
  for (double v : powers) {
    if (!(v >= 0.0))
      throw std::invalid_argument("PowerVector: powers must be >= 0");
    total += v;
  }
  return {std::move(powers), total};
}

std::string to_string(RateMethod m) {
  switch (m) {
    case RateMethod::analytic: return "analytic";
    case RateMethod::quadrature: return "quadrature";
    case RateMethod::monte_carlo: return "monte_carlo";
  }
  return "unknown";
}

double rate_static(int layer, const PowerVector& p,
                   const std::vector<double>& h, const NoiseParams& noise) {
  check_inputs(layer, p, h);
  return rate_at_gain(layer, p, h[layer - 1], noise);
}

double rate_sh(int layer, const PowerVector& p, const std::vector<double>& h,
               double alpha) {
  check_inputs(layer, p, h);
  const double own = p.powers[layer - 1];
  const double gain = h[layer - 1];
  const double interference = tail_power(p, layer) + alpha * alpha / (gain * gain);
  return 0.5 * std::log2(1.0 + own / interference);
}

double entropy_y(int layer, const PowerVector& p, const std::vector<double>& h,
                 const NoiseParams& noise) {
  check_inputs(layer, p, h);
  const double gain = h[layer - 1];
  const double a = tail_power(p, layer) + p.powers[layer - 1] +
                   noise.alpha * noise.alpha / (gain * gain);
  return 0.5 * std::log(kTwoPiE * a) + noise.beta * noise.beta / a;
}

double entropy_p(int layer, const PowerVector& p, const std::vector<double>& h,
                 const NoiseParams& noise) {
  check_inputs(layer, p, h);
  const double gain = h[layer - 1];
  const double b =
      tail_power(p, layer) + noise.alpha * noise.alpha / (gain * gain);
  return 0.5 * std::log(kTwoPiE * b) + noise.beta * noise.beta / b;
}

double entropy_phi(const NoiseParams& noise) {
  const double a2 = noise.alpha * noise.alpha;
  return (a2 + noise.beta * noise.beta) / (2.0 * a2) +
         0.5 * std::log(2.0 * M_PI * a2);
}

double lemma_i(double x, double theta, double b, double c) {
  if (!(x > 0.0) || !(c > 0.0) || !(b >= 0.0))
    throw std::invalid_argument("lemma_i: requires x > 0, c > 0, b >= 0");
  if (near_pole(theta))
    throw std::domain_error(
        "lemma_i: theta at an antiderivative pole; integrate numerically");
  const double tm1 = theta - 1.0;
  const double f = gauss_2f1(1.0, 1.0 - theta, 2.0 - theta, -b * x / c);
  return std::pow(x, 1.0 - theta) *
         (f - tm1 * std::log(b * x + c) - 1.0) / (tm1 * tm1);
}

double lemma_b(double x, double theta, double k1, double k2, double zeta) {
  if (!(x > 0.0) || !(zeta > 0.0) || !(k1 >= 0.0) || !(k2 >= 0.0))
    throw std::invalid_argument("lemma_b: requires x, zeta > 0 and k >= 0");
  if (std::abs(theta - 2.0) < 1e-6)
    throw std::domain_error(
        "lemma_b: theta at an antiderivative pole; integrate numerically");
  if (k1 == k2) return 0.0;
  const double z2 = zeta * zeta;
  const double f1 = gauss_2f1(1.0, 2.0 - theta, 3.0 - theta, -k1 * x / z2);
  const double f2 = gauss_2f1(1.0, 2.0 - theta, 3.0 - theta, -k2 * x / z2);
  return std::pow(x, 2.0 - theta) / (z2 * (2.0 - theta)) * (f1 - f2);
}

ThetaRate expected_rate_theta(const MobilityModel& model, double theta,
                              int layer, const PowerVector& p,
                              const NoiseParams& noise) {
  if (layer < 1 || layer > static_cast<int>(p.powers.size()))
    throw std::invalid_argument("expected_rate_theta: layer out of range");
  ThetaRate out{};
  out.quadrature = integrate(
      [&](double h) {
        return std::pow(h, -theta) * rate_at_gain(layer, p, h, noise);
      },
      model.h_min(), model.h_max());
  const double th = 0.5 * (theta + 1.0);
  if (near_pole(th)) {
    out.pole_fallback = true;
    out.closed_form = out.quadrature;
  } else {
    out.pole_fallback = false;
    out.closed_form = rho1_closed(model, theta, layer, p, noise);
  }
  try {
    out.paper_form = rho1_paper(model, theta, layer, p, noise);
  } catch (const std::exception&) {
    out.paper_form = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

MobilityRate expected_rate_user(const MobilityModel& model, int total_users,
                                int layer, const PowerVector& p,
                                const NoiseParams& noise) {
  if (static_cast<int>(p.powers.size()) != total_users)
    throw std::invalid_argument("expected_rate_user: power vector length != U");
  MobilityRate out{};
  out.quadrature = integrate(
      [&](double h) {
        return rate_at_gain(layer, p, h, noise) *
               ordered_pdf(model, total_users, layer, h);
      },
      model.h_min(), model.h_max());

  const auto terms = ordered_terms(model, total_users, layer);
  out.pole_fallback = false;
  for (const auto& t : terms)
    if (near_pole(0.5 * (t.theta + 1.0))) out.pole_fallback = true;
  if (out.pole_fallback) {
    out.closed_form = out.quadrature;
  } else {
    double acc = 0.0;
    for (const auto& t : terms)
      acc += t.coeff * rho1_closed(model, t.theta, layer, p, noise);
    out.closed_form = acc;
  }

  // printed double-binomial combination, diagnostic only
  try {
    const double m = model.lambertian_m();
    const double f1 = model.f1();
    const double f2 = model.f2();
    double mult = model.k_norm();
    for (int i = 0; i < total_users; ++i) mult *= i + 1;
    for (int i = 0; i < layer - 1; ++i) mult /= i + 1;
    for (int i = 0; i < total_users - layer; ++i) mult /= i + 1;
    double acc = 0.0;
    for (int i = 0; i <= layer - 1; ++i) {
      for (int j = 0; j <= total_users - layer; ++j) {
        const int e = total_users - j - i - 1;
        const double theta = (total_users - j - i) / (m + 3.0) + 1.0;
        acc += binom(layer - 1, i) * binom(total_users - layer, j) *
               std::pow(-f1, i) * ((e % 2 == 0) ? 1.0 : -1.0) *
               std::pow(1.0 + f1, j) * std::pow(f2, e) *
               rho1_paper(model, theta, layer, p, noise);
      }
    }
    out.paper_form = mult * acc;
  } catch (const std::exception&) {
    out.paper_form = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

double sum_rate(const std::vector<double>& per_user) {
  double acc = 0.0;
  for (double r : per_user) acc += r;
  return acc;
}

double mc_entropy(const std::vector<double>& samples, int bins) {
  if (samples.empty()) throw std::invalid_argument("mc_entropy: empty input");
  if (bins < 2) throw std::invalid_argument("mc_entropy: bins must be >= 2");
  double mean = 0.0;
  for (double s : samples) mean += s;
  mean /= static_cast<double>(samples.size());
  double var = 0.0;
  for (double s : samples) var += (s - mean) * (s - mean);
  var /= static_cast<double>(samples.size());
  const double sd = std::sqrt(var);
  const double lo = mean - 8.0 * sd;
  const double hi = mean + 8.0 * sd;
  const double width = (hi - lo) / bins;
  std::vector<std::uint64_t> counts(bins, 0);
  std::uint64_t kept = 0;
  for (double s : samples) {
    if (s < lo || s >= hi) continue;
    ++counts[static_cast<int>((s - lo) / width)];
    ++kept;
  }
  double acc = 0.0;
  for (int i = 0; i < bins; ++i) {
    if (counts[i] == 0) continue;
    const double pk = static_cast<double>(counts[i]) / kept;
    acc -= pk * std::log(pk / width);
  }
  return acc;
}

double mc_rate_entropy(int layer, const PowerVector& p,
                       const std::vector<double>& h, const NoiseParams& noise,
                       std::size_t n, std::uint64_t seed) {
  check_inputs(layer, p, h);
  if (n < 100000)
    throw std::invalid_argument("mc_rate_entropy: n must be >= 1e5");
  if (p.powers[layer - 1] == 0.0) return 0.0;  // no signal, no rate
  const double gain = h[layer - 1];
  const double g2 = gain * gain;
  // simulate in transmit-referred units: the thermal floor maps to
  // alpha^2/g^2 and the ambient term keeps its doubled variance
  const double in = tail_power(p, layer) + noise.alpha * noise.alpha / g2;
  const double with_signal = std::sqrt(p.powers[layer - 1] + in);
  const double without_signal = std::sqrt(in);
  const double bp = noise.beta / std::sqrt(noise.nu);
  const auto simulate = [&](double scale, std::uint64_t s) {
    Rng rng(s);
    std::vector<double> draws(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double w = rng.chi_squared(noise.nu);
      draws[i] = scale * rng.normal() + bp * (w - noise.nu);
    }
    return mc_entropy(draws);
  };
  const double hy = simulate(with_signal, seed);
  const double hp = simulate(without_signal, seed ^ 0x9e3779b97f4a7c15ull);
  return (hy - hp) / kLn2;
}

double mc_mobility_rate(const MobilityModel& model, int total_users, int layer,
                        const PowerVector& p, const NoiseParams& noise,
                        std::size_t tuples, std::uint64_t seed) {
  if (static_cast<int>(p.powers.size()) != total_users)
    throw std::invalid_argument("mc_mobility_rate: power vector length != U");
  if (layer < 1 || layer > total_users)
    throw std::invalid_argument("mc_mobility_rate: layer out of range");
  Rng rng(seed);
  std::vector<double> tuple(total_users);
  double acc = 0.0;
  for (std::size_t t = 0; t < tuples; ++t) {
    for (int i = 0; i < total_users; ++i)
      tuple[i] = mobility_inverse_cdf(model, rng.uniform());
    std::sort(tuple.begin(), tuple.end());
    acc += rate_at_gain(layer, p, tuple[layer - 1], noise);
  }
  return acc / static_cast<double>(tuples);
}

}  // namespace nomavlc
