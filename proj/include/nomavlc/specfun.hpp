#pragma once

namespace nomavlc {

// log Gamma(x) for x > 0
double log_gamma(double x);

// rising factorial (a)_n = a (a+1) ... (a+n-1), n >= 0
double pochhammer(double a, int n);

enum class HermiteKind {
  probabilists,  // He_m, weight exp(-x^2/2)
  physicists     // H_m, weight exp(-x^2)
};

double hermite(int m, double x, HermiteKind kind = HermiteKind::probabilists);

// Gauss hypergeometric 2F1(a, b; c; z) for real arguments, z < 1
double gauss_2f1(double a, double b, double c, double z);

}  // namespace nomavlc
