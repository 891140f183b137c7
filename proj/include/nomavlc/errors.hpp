#pragma once
#include <stdexcept>
#include <string>

namespace nomavlc {

// Quadrature ran out of subdivisions; carries the best estimate so callers
// can decide whether the partial answer is usable.
class accuracy_error : public std::runtime_error {
 public:
  accuracy_error(const std::string& msg, double best, double err)
      : std::runtime_error(msg), best_estimate_(best), error_estimate_(err) {}
  double best_estimate() const { return best_estimate_; }
  double error_estimate() const { return error_estimate_; }

 private:
  double best_estimate_;
  double error_estimate_;
};

// Series pdf/cdf requested with beta >= alpha, where the expansion diverges.
class divergence_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A series failed to meet tolerance within its term budget.
class convergence_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Fixed-point recursion hit a nonpositive denominator; the solver responds
// by keeping the previous iterate and letting the projection repair it.
class degeneracy_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nomavlc
