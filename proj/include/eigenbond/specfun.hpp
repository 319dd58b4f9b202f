#pragma once

#include <vector>

namespace eigenbond::specfun {

/// Generalized Laguerre polynomials L_0^{(alpha)}(x), ..., L_{n_max}^{(alpha)}(x)
/// by the three-term recursion. Requires alpha > -1 and finite x.
std::vector<double> laguerre_sequence(int n_max, double alpha, double x);

/// Physicists' Hermite polynomials H_0(x), ..., H_{n_max}(x).
std::vector<double> hermite_sequence(int n_max, double x);

/// Orthonormal Laguerre sequence L_n^{(alpha)}(x) * sqrt(n! / Gamma(n + alpha + 1)).
/// Same recursion rescaled term by term; stays finite for large n.
std::vector<double> laguerre_orthonormal_sequence(int n_max, double alpha, double x);

/// Orthonormal Hermite sequence H_n(x) / sqrt(2^n n!).
std::vector<double> hermite_orthonormal_sequence(int n_max, double x);

/// Lower incomplete gamma gamma(a, x) = int_0^x e^{-y} y^{a-1} dy, a > 0, x >= 0.
/// x = +inf returns Gamma(a).
double lower_incomplete_gamma(double a, double x);

/// Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a).
double regularized_lower_gamma(double a, double x);

struct ErfNormal {
    double erf;
    double normal_cdf;
};

/// Error function and standard normal CDF at the same abscissa.
ErfNormal erf_and_normal_cdf(double x);

double normal_cdf(double x);

} // namespace eigenbond::specfun
