#include "nomavlc/noise.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "nomavlc/errors.hpp"
#include "nomavlc/quad.hpp"
#include "nomavlc/rng.hpp"
#include "nomavlc/specfun.hpp"

namespace nomavlc {
namespace {

constexpr double kSqrt2Pi = 2.5066282746310005024;

void check_base(const NoiseParams& p) {
  if (!(p.alpha > 0.0)) throw std::invalid_argument("noise: alpha must be > 0");
  if (!(p.beta >= 0.0)) throw std::invalid_argument("noise: beta must be >= 0");
  if (p.nu < 1) throw std::invalid_argument("noise: nu must be >= 1");
  if (p.truncation_m < 1)
    throw std::invalid_argument("noise: truncation_m must be >= 1");
}

void check_series(const NoiseParams& p) {
  check_base(p);
  if (p.beta >= p.alpha)
    throw divergence_error(
        "noise: Hermite series diverges for beta >= alpha; "
        "use pdf_oracle or pdf_high_nu instead");
}

// series weights theta_m = (nu/2)_m / m! * (2 beta'/alpha)^m
std::vector<double> series_weights(const NoiseParams& p) {
  const double ratio = 2.0 * p.beta_prime() / p.alpha;
  std::vector<double> theta(p.truncation_m + 1);
  theta[0] = 1.0;
  for (int m = 1; m <= p.truncation_m; ++m)
    theta[m] = theta[m - 1] * (0.5 * p.nu + m - 1) / m * ratio;
  return theta;
}

// unnormalized series value at phi
double series_raw(const NoiseParams& p, const std::vector<double>& theta,
                  double phi) {
  const double y = phi + p.beta_prime() * p.nu;
  const double x = y / p.alpha;
  const double w = std::exp(-0.5 * x * x);
  double acc = 0.0;
  for (int m = 0; m <= p.truncation_m; ++m)
    acc += theta[m] * hermite(m, x, HermiteKind::probabilists);
  return acc * w;
}

double series_normalizer(const NoiseParams& p) {
  static std::mutex mu;
  static std::map<std::tuple<double, double, int, int>, double> cache;
  const auto key = std::make_tuple(p.alpha, p.beta, p.nu, p.truncation_m);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  const auto theta = series_weights(p);
  const double shift = p.beta_prime() * p.nu;
  const double half = 20.0 * p.alpha;
  const double c = integrate(
      [&](double phi) { return series_raw(p, theta, phi); }, -shift - half,
      -shift + half);
  std::lock_guard<std::mutex> lock(mu);
  cache[key] = c;
  return c;
}

double chi2_log_pdf(double w, int nu) {
  const double k = 0.5 * nu;
  return (k - 1.0) * std::log(w) - 0.5 * w - k * std::log(2.0) -
         std::lgamma(k);
}

}  // namespace

double NoiseParams::beta_prime() const { return beta / std::sqrt(2.0 * nu); }

std::vector<double> sample_phi(const NoiseParams& params, std::size_t n,
                               std::uint64_t seed) {
  check_base(params);
  if (n < 1) throw std::invalid_argument("sample_phi: n must be >= 1");
  Rng rng(seed);
  const double bp = params.beta_prime();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double g = params.alpha * rng.normal();
    const double w = rng.chi_squared(params.nu);
    out[i] = g + bp * (w - params.nu);
  }
  return out;
}

double mgf(const NoiseParams& params, double t) {
  check_base(params);
  if (params.beta > 0.0 && t >= 1.0 / (2.0 * params.beta))
    throw std::domain_error("mgf: requires t < 1/(2 beta)");
  const double gauss = std::exp(0.5 * t * t * params.alpha * params.alpha);
  if (params.beta == 0.0) return gauss;
  return gauss * std::pow(1.0 - 2.0 * params.beta * t, -0.5 * params.nu);
}

double pdf_series(const NoiseParams& params, double phi) {
  check_series(params);
  const auto theta = series_weights(params);
  return series_raw(params, theta, phi) / series_normalizer(params);
}

double pdf_high_nu(const NoiseParams& params, double phi) {
  check_base(params);
  const double bp = params.beta_prime();
  const double a2 = params.alpha * params.alpha;
  const double y = phi + bp * params.nu;
  const double log_z =
      0.5 * bp * bp * params.nu * params.nu / a2 + std::log(kSqrt2Pi * params.alpha);
  return std::exp((2.0 * params.nu * bp * y - y * y) / (2.0 * a2) - log_z);
}

double cdf_series(const NoiseParams& params, double psi) {
  check_series(params);
  const auto theta = series_weights(params);
  const double a = params.alpha;
  const double y = psi + params.beta_prime() * params.nu;
  const double x = y / a;
  // term-by-term integral of the series from the far left tail
  double acc = theta[0] * a * kSqrt2Pi * 0.5 * std::erfc(-x / std::sqrt(2.0));
  const double w = std::exp(-0.5 * x * x);
  for (int m = 1; m <= params.truncation_m; ++m)
    acc -= theta[m] * a * hermite(m - 1, x, HermiteKind::probabilists) * w;
  return acc / series_normalizer(params);
}

double pdf_oracle(const NoiseParams& params, double phi) {
  check_base(params);
  const double a = params.alpha;
  if (params.beta == 0.0) {
    return std::exp(-0.5 * phi * phi / (a * a)) / (kSqrt2Pi * a);
  }
  const double bp = params.beta_prime();
  const double nu = params.nu;
  // integrand in w: N(phi - bp*(w-nu); 0, a^2) * chi2_nu(w); it is peaked at
  // the chi-squared bulk and at the Gaussian ridge w = nu + phi/bp
  const double spread = 12.0 * std::sqrt(2.0 * nu);
  double lo = std::max(1e-12, nu - spread);
  double hi = nu + spread;
  const double ridge = nu + phi / bp;
  const double ridge_w = 10.0 * a / bp;
  lo = std::min(lo, std::max(1e-12, ridge - ridge_w));
  hi = std::max(hi, ridge + ridge_w);
  const auto f = [&](double w) {
    const double z = (phi - bp * (w - nu)) / a;
    return std::exp(-0.5 * z * z + chi2_log_pdf(w, params.nu)) /
           (kSqrt2Pi * a);
  };
  QuadratureSpec spec;
  spec.abs_tol = 1e-12;
  spec.rel_tol = 1e-10;
  return integrate(f, lo, hi, spec);
}

EmpiricalPdf histogram(const std::vector<double>& samples, int bins) {
  if (samples.empty()) throw std::invalid_argument("histogram: empty input");
  if (bins < 2) throw std::invalid_argument("histogram: bins must be >= 2");
  const auto [mn_it, mx_it] = std::minmax_element(samples.begin(), samples.end());
  double lo = *mn_it, hi = *mx_it;
  if (lo == hi) {  // constant input: center a unit-width bin pair
    lo -= 0.5;
    hi += 0.5;
    bins = 2;
  }
  EmpiricalPdf out;
  out.sample_count = samples.size();
  out.bin_edges.resize(bins + 1);
  const double width = (hi - lo) / bins;
  for (int i = 0; i <= bins; ++i) out.bin_edges[i] = lo + width * i;
  out.bin_edges.back() = hi;
  std::vector<std::uint64_t> counts(bins, 0);
  for (double s : samples) {
    int idx = static_cast<int>((s - lo) / width);
    idx = std::clamp(idx, 0, bins - 1);
    ++counts[idx];
  }
  out.densities.resize(bins);
  const double norm = 1.0 / (static_cast<double>(samples.size()) * width);
  for (int i = 0; i < bins; ++i) out.densities[i] = counts[i] * norm;
  return out;
}

}  // namespace nomavlc
