#pragma once

#include "eigenbond/models.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace eigenbond {

enum class SubordinatorFamily { None, TemperedStable, Gamma, InverseGaussian };

std::string_view to_string(SubordinatorFamily family);
SubordinatorFamily subordinator_family_from_string(std::string_view name);

/// Levy subordinator T_t used as a stochastic clock.
///
/// Tempered stable: nu(ds) = C s^{-p-1} e^{-eta s} ds, p < 1, p != 0.
/// Gamma:           the p = 0 member of the same family.
/// Inverse Gaussian: parameterized by mean mu and variance nu of T_1 - drift.
/// None:            T_t = t, phi(lambda) = lambda.
struct SubordinatorSpec {
    SubordinatorFamily family = SubordinatorFamily::None;
    double drift = 0.0;
    double C = 0.0;
    double p = 0.0;
    double eta = 0.0;
    double mu = 0.0;
    double nu = 0.0;

    static SubordinatorSpec none() { return {}; }
    static SubordinatorSpec inverse_gaussian(double drift, double mu, double nu);
    static SubordinatorSpec gamma(double drift, double C, double eta);
    static SubordinatorSpec tempered_stable(double drift, double C, double p, double eta);

    bool is_trivial() const noexcept { return family == SubordinatorFamily::None; }

    // Throws DomainError on inconsistent parameters.
    void validate() const;

    bool operator==(const SubordinatorSpec&) const = default;
};

/// Laplace exponent phi(lambda). Defined for negative lambda as long as the
/// analytic formula stays real.
double laplace_exponent(const SubordinatorSpec& sub, double lambda);

/// Levy density nu(s) for s > 0 (zero for the trivial clock).
double levy_density(const SubordinatorSpec& sub, double s);

/// phi(lambda_n).
double subordinate_eigenvalue(const DiffusionModel& model, const SubordinatorSpec& sub, int n);

/// E[T_1] = drift + int s nu(ds).
double mean_rate(const SubordinatorSpec& sub);

/// r^phi(x) = drift * x + int_0^inf (1 - P(s, x)) nu(ds). Requires the affine
/// closed-form bond (CIR, Vasicek) unless the clock is trivial.
double short_rate_map(const DiffusionModel& model, const SubordinatorSpec& sub, double x);

/// Rejects model/subordinator pairs whose subordinate spectrum is undefined
/// (e.g. negative Vasicek lambda_0 outside the domain of phi).
void validate_pair(const DiffusionModel& model, const SubordinatorSpec& sub);

/// Per-index spectral quantities shared by every pricing route.
struct SpectralData {
    std::vector<double> eigenvalues;    // lambda_n of the diffusion
    std::vector<double> decay_rates;    // phi(lambda_n)
    std::vector<double> unit_coeffs;    // p_n
    std::vector<double> log_norms;      // log N_n

    int size() const noexcept { return static_cast<int>(eigenvalues.size()); }
};

SpectralData make_spectral_data(const DiffusionModel& model, const SubordinatorSpec& sub, int n_max);

} // namespace eigenbond
