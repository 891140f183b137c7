#pragma once
#include <functional>

namespace nomavlc {

struct QuadratureSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-9;
  int max_subdivisions = 1 << 16;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;     // estimated absolute error
  int subdivisions = 0;
};

// Adaptive Gauss-Kronrod 7/15 on a finite interval. Throws accuracy_error
// (carrying the best estimate) if max_subdivisions is exhausted.
QuadResult integrate_full(const std::function<double(double)>& f, double a,
                          double b, const QuadratureSpec& spec = {});

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec = {});

}  // namespace nomavlc
