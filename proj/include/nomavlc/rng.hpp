#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace nomavlc {

// Deterministic sampler: fixed mt19937_64 stream with hand-rolled variate
// transforms so results are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform() {
    // 53-bit mantissa uniform in [0,1)
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double mul = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * mul;
    have_spare_ = true;
    return u * mul;
  }

  // chi-square with integer dof
  double chi_squared(int nu) {
    if (nu <= 64) {
      double acc = 0.0;
      for (int i = 0; i < nu; ++i) {
        const double n = normal();
        acc += n * n;
      }
      return acc;
    }
    return 2.0 * gamma_shape(0.5 * nu);
  }

  std::uint64_t raw() { return gen_(); }

 private:
  // Marsaglia-Tsang for shape >= 1 (always true on the >64 dof path)
  double gamma_shape(double k) {
    const double d = k - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
      if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v)))
        return d * v;
    }
  }

  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace nomavlc
