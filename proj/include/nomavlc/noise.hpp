#pragma once

#include <cstdint>
#include <vector>

namespace nomavlc {

struct NoiseParams {
  double alpha = 1.0;      // Gaussian component std-dev
  double beta = 0.0;       // ambient-light weight after blue filtering
  int nu = 1;              // chi-squared degrees of freedom
  int truncation_m = 10;   // series length

  double beta_prime() const;
};

struct EmpiricalPdf {
  std::vector<double> bin_edges;  // ascending, size = densities.size() + 1
  std::vector<double> densities;
  std::uint64_t sample_count = 0;
};

std::vector<double> sample_phi(const NoiseParams& params, std::size_t n,
                               std::uint64_t seed);

// MGF of the unshifted sum psi = alpha*n + beta*w
double mgf(const NoiseParams& params, double t);

// truncated Hermite-series density of phi, normalized numerically
double pdf_series(const NoiseParams& params, double phi);

// closed-form large-nu approximation
double pdf_high_nu(const NoiseParams& params, double phi);

// distribution function matching pdf_series' normalization
double cdf_series(const NoiseParams& params, double psi);

// independent ground truth: convolution of the Gaussian component with the
// scaled chi-squared component, by adaptive quadrature
double pdf_oracle(const NoiseParams& params, double phi);

EmpiricalPdf histogram(const std::vector<double>& samples, int bins);

}  // namespace nomavlc
