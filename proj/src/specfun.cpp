#include "eigenbond/specfun.hpp"

#include "eigenbond/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace eigenbond::specfun {

namespace {

void require_finite(double x, const char* what)
{
    if (!std::isfinite(x)) {
        throw DomainError(std::string(what) + ": non-finite abscissa");
    }
}

void require_order(int n_max, const char* what)
{
    if (n_max < 0) {
        throw DomainError(std::string(what) + ": negative degree");
    }
}

constexpr int kMaxIterations = 10000;

// Series expansion, converges fast for x < a + 1. Returns log of gamma(a, x).
double log_lower_gamma_series(double a, double x)
{
    double term = 1.0 / a;
    double sum = term;
    for (int k = 1; k < kMaxIterations; ++k) {
        term *= x / (a + k);
        sum += term;
        if (std::abs(term) < std::abs(sum) * 1e-17) {
            break;
        }
    }
    return -x + a * std::log(x) + std::log(sum);
}

// Modified Lentz continued fraction for the upper incomplete gamma. Returns log Gamma(a, x).
double log_upper_gamma_cf(double a, double x)
{
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int k = 1; k < kMaxIterations; ++k) {
        const double an = -k * (k - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) {
            break;
        }
    }
    return -x + a * std::log(x) + std::log(h);
}

} // namespace

std::vector<double> laguerre_sequence(int n_max, double alpha, double x)
{
    require_order(n_max, "laguerre_sequence");
    if (!(alpha > -1.0)) {
        throw DomainError("laguerre_sequence: alpha must exceed -1");
    }
    require_finite(x, "laguerre_sequence");

    std::vector<double> values(static_cast<std::size_t>(n_max) + 1);
    values[0] = 1.0;
    if (n_max >= 1) {
        values[1] = -x + alpha + 1.0;
    }
    for (int n = 2; n <= n_max; ++n) {
        const double dn = n;
        values[n] = (2.0 + (alpha - 1.0 - x) / dn) * values[n - 1]
                  - (1.0 + (alpha - 1.0) / dn) * values[n - 2];
    }
    return values;
}

std::vector<double> hermite_sequence(int n_max, double x)
{
    require_order(n_max, "hermite_sequence");
    require_finite(x, "hermite_sequence");

    std::vector<double> values(static_cast<std::size_t>(n_max) + 1);
    values[0] = 1.0;
    if (n_max >= 1) {
        values[1] = 2.0 * x;
    }
    for (int n = 2; n <= n_max; ++n) {
        values[n] = 2.0 * x * values[n - 1] - 2.0 * (n - 1) * values[n - 2];
    }
    return values;
}

std::vector<double> laguerre_orthonormal_sequence(int n_max, double alpha, double x)
{
    require_order(n_max, "laguerre_orthonormal_sequence");
    if (!(alpha > -1.0)) {
        throw DomainError("laguerre_orthonormal_sequence: alpha must exceed -1");
    }
    require_finite(x, "laguerre_orthonormal_sequence");

    std::vector<double> values(static_cast<std::size_t>(n_max) + 1);
    values[0] = std::exp(-0.5 * std::lgamma(alpha + 1.0));
    if (n_max >= 1) {
        values[1] = (alpha + 1.0 - x) / std::sqrt(alpha + 1.0) * values[0];
    }
    for (int n = 2; n <= n_max; ++n) {
        const double dn = n;
        const double a1 = (2.0 * dn + alpha - 1.0 - x) / std::sqrt(dn * (dn + alpha));
        const double a2 = std::sqrt((dn - 1.0) * (dn + alpha - 1.0) / (dn * (dn + alpha)));
        values[n] = a1 * values[n - 1] - a2 * values[n - 2];
    }
    return values;
}

std::vector<double> hermite_orthonormal_sequence(int n_max, double x)
{
    require_order(n_max, "hermite_orthonormal_sequence");
    require_finite(x, "hermite_orthonormal_sequence");

    std::vector<double> values(static_cast<std::size_t>(n_max) + 1);
    values[0] = 1.0;
    if (n_max >= 1) {
        values[1] = std::numbers::sqrt2 * x;
    }
    for (int n = 2; n <= n_max; ++n) {
        const double dn = n;
        values[n] = std::sqrt(2.0 / dn) * x * values[n - 1]
                  - std::sqrt((dn - 1.0) / dn) * values[n - 2];
    }
    return values;
}

double lower_incomplete_gamma(double a, double x)
{
    if (!(a > 0.0) || std::isnan(x) || x < 0.0) {
        throw DomainError("lower_incomplete_gamma: requires a > 0 and x >= 0");
    }
    if (x == 0.0) {
        return 0.0;
    }
    if (std::isinf(x)) {
        return std::tgamma(a);
    }
    if (x < a + 1.0) {
        return std::exp(log_lower_gamma_series(a, x));
    }
    const double upper = std::exp(log_upper_gamma_cf(a, x));
    return std::tgamma(a) - upper;
}

double regularized_lower_gamma(double a, double x)
{
    if (!(a > 0.0) || std::isnan(x) || x < 0.0) {
        throw DomainError("regularized_lower_gamma: requires a > 0 and x >= 0");
    }
    if (x == 0.0) {
        return 0.0;
    }
    if (std::isinf(x)) {
        return 1.0;
    }
    if (x < a + 1.0) {
        return std::exp(log_lower_gamma_series(a, x) - std::lgamma(a));
    }
    return -std::expm1(log_upper_gamma_cf(a, x) - std::lgamma(a));
}

ErfNormal erf_and_normal_cdf(double x)
{
    if (std::isnan(x)) {
        throw DomainError("erf_and_normal_cdf: NaN argument");
    }
    return {std::erf(x), normal_cdf(x)};
}

double normal_cdf(double x)
{
    if (std::isnan(x)) {
        throw DomainError("normal_cdf: NaN argument");
    }
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

} // namespace eigenbond::specfun
