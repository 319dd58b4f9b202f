#include "eigenbond/subordinators.hpp"

#include "eigenbond/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace eigenbond {

std::string_view to_string(SubordinatorFamily family)
{
    switch (family) {
    case SubordinatorFamily::None: return "none";
    case SubordinatorFamily::TemperedStable: return "tempered_stable";
    case SubordinatorFamily::Gamma: return "gamma";
    case SubordinatorFamily::InverseGaussian: return "ig";
    }
    return "unknown";
}

SubordinatorFamily subordinator_family_from_string(std::string_view name)
{
    if (name == "none") return SubordinatorFamily::None;
    if (name == "tempered_stable") return SubordinatorFamily::TemperedStable;
    if (name == "gamma") return SubordinatorFamily::Gamma;
    if (name == "ig") return SubordinatorFamily::InverseGaussian;
    throw ValidationError("unknown subordinator family '" + std::string(name) + "'");
}

SubordinatorSpec SubordinatorSpec::inverse_gaussian(double drift, double mu, double nu)
{
    SubordinatorSpec s;
    s.family = SubordinatorFamily::InverseGaussian;
    s.drift = drift;
    s.mu = mu;
    s.nu = nu;
    s.validate();
    return s;
}

SubordinatorSpec SubordinatorSpec::gamma(double drift, double C, double eta)
{
    SubordinatorSpec s;
    s.family = SubordinatorFamily::Gamma;
    s.drift = drift;
    s.C = C;
    s.eta = eta;
    s.validate();
    return s;
}

SubordinatorSpec SubordinatorSpec::tempered_stable(double drift, double C, double p, double eta)
{
    SubordinatorSpec s;
    s.family = SubordinatorFamily::TemperedStable;
    s.drift = drift;
    s.C = C;
    s.p = p;
    s.eta = eta;
    s.validate();
    return s;
}

void SubordinatorSpec::validate() const
{
    if (family == SubordinatorFamily::None) {
        return;
    }
    if (!(drift >= 0.0) || !std::isfinite(drift)) {
        throw DomainError("subordinator drift must be finite and non-negative");
    }
    switch (family) {
    case SubordinatorFamily::InverseGaussian:
        if (!(mu > 0.0) || !(nu > 0.0)) {
            throw DomainError("inverse Gaussian subordinator requires mu > 0 and nu > 0");
        }
        break;
    case SubordinatorFamily::Gamma:
        if (!(C > 0.0) || !(eta > 0.0)) {
            throw DomainError("gamma subordinator requires C > 0 and eta > 0");
        }
        break;
    case SubordinatorFamily::TemperedStable:
        if (!(C > 0.0) || !(p < 1.0) || p == 0.0 || !(eta >= 0.0)) {
            throw DomainError("tempered stable subordinator requires C > 0, p < 1, p != 0, eta >= 0");
        }
        if (eta == 0.0 && p < 0.0) {
            throw DomainError("tempered stable subordinator with eta = 0 requires 0 < p < 1");
        }
        break;
    case SubordinatorFamily::None:
        break;
    }
}

double laplace_exponent(const SubordinatorSpec& sub, double lambda)
{
    if (std::isnan(lambda)) {
        throw DomainError("laplace_exponent: NaN argument");
    }
    switch (sub.family) {
    case SubordinatorFamily::None:
        return lambda;
    case SubordinatorFamily::InverseGaussian: {
        const double arg = 1.0 + 2.0 * sub.nu / sub.mu * lambda;
        if (arg < 0.0) {
            throw DomainError("inverse Gaussian Laplace exponent undefined: 1 + 2 nu lambda / mu < 0");
        }
        // (mu^2/nu)(sqrt(arg) - 1) written without cancellation near lambda = 0.
        return sub.drift * lambda + 2.0 * sub.mu * lambda / (std::sqrt(arg) + 1.0);
    }
    case SubordinatorFamily::Gamma:
        if (lambda <= -sub.eta) {
            throw DomainError("gamma Laplace exponent undefined for lambda <= -eta");
        }
        return sub.drift * lambda + sub.C * std::log1p(lambda / sub.eta);
    case SubordinatorFamily::TemperedStable:
        if (lambda + sub.eta < 0.0) {
            throw DomainError("tempered stable Laplace exponent undefined for lambda < -eta");
        }
        return sub.drift * lambda
             - sub.C * std::tgamma(-sub.p) * (std::pow(lambda + sub.eta, sub.p) - std::pow(sub.eta, sub.p));
    }
    return lambda;
}

double levy_density(const SubordinatorSpec& sub, double s)
{
    if (!(s > 0.0)) {
        throw DomainError("levy_density: s must be positive");
    }
    switch (sub.family) {
    case SubordinatorFamily::None:
        return 0.0;
    case SubordinatorFamily::InverseGaussian:
        return sub.mu * std::sqrt(sub.mu / (2.0 * std::numbers::pi * sub.nu)) * std::pow(s, -1.5)
             * std::exp(-sub.mu / (2.0 * sub.nu) * s);
    case SubordinatorFamily::Gamma:
        return sub.C / s * std::exp(-sub.eta * s);
    case SubordinatorFamily::TemperedStable:
        return sub.C * std::pow(s, -sub.p - 1.0) * std::exp(-sub.eta * s);
    }
    return 0.0;
}

double subordinate_eigenvalue(const DiffusionModel& model, const SubordinatorSpec& sub, int n)
{
    return laplace_exponent(sub, eigenvalue(model, n));
}

double mean_rate(const SubordinatorSpec& sub)
{
    switch (sub.family) {
    case SubordinatorFamily::None:
        return 1.0;
    case SubordinatorFamily::InverseGaussian:
        return sub.drift + sub.mu;
    case SubordinatorFamily::Gamma:
        return sub.drift + sub.C / sub.eta;
    case SubordinatorFamily::TemperedStable:
        if (sub.eta == 0.0) {
            throw DomainError("stable subordinator (eta = 0) has no finite mean");
        }
        return sub.drift + sub.C * std::tgamma(1.0 - sub.p) * std::pow(sub.eta, sub.p - 1.0);
    }
    return 1.0;
}

namespace {

// Exponential tilt of the Levy density, used for truncating the upper tail.
double tail_rate(const SubordinatorSpec& sub)
{
    switch (sub.family) {
    case SubordinatorFamily::InverseGaussian: return sub.mu / (2.0 * sub.nu);
    case SubordinatorFamily::Gamma:
    case SubordinatorFamily::TemperedStable: return sub.eta;
    case SubordinatorFamily::None: break;
    }
    return 0.0;
}

} // namespace

double short_rate_map(const DiffusionModel& model, const SubordinatorSpec& sub, double x)
{
    if (!model.contains(x)) {
        throw DomainError("short_rate_map: state outside the model state space");
    }
    if (sub.is_trivial()) {
        return x;
    }
    if (!model.has_affine_bond()) {
        throw UnsupportedModelError("short_rate_map needs a closed-form bond price; not available for the 3/2 model");
    }
    const double eta = tail_rate(sub);
    if (!(eta > 0.0)) {
        throw UnsupportedModelError("short_rate_map requires an exponentially tempered Levy measure");
    }

    auto one_minus_bond = [&](double s) {
        const AffineBond ab = affine_bond_coefficients(model, s);
        return -std::expm1(std::log(ab.A) - ab.B * x);
    };

    using boost::math::quadrature::gauss_kronrod;
    // s = u^2 on (0, 1] removes the s^{-p-1} singularity at the origin.
    auto near = [&](double u) {
        if (u == 0.0) return 0.0;
        const double s = u * u;
        return one_minus_bond(s) * levy_density(sub, s) * 2.0 * u;
    };
    auto far = [&](double s) { return one_minus_bond(s) * levy_density(sub, s); };

    // Truncate where e^{-eta s} < 1e-16.
    const double s_max = 1.0 + 16.0 * std::numbers::ln10 / eta;
    const double head = gauss_kronrod<double, 31>::integrate(near, 0.0, 1.0, 8, 1e-11);
    const double tail = gauss_kronrod<double, 31>::integrate(far, 1.0, s_max, 8, 1e-11);
    return sub.drift * x + head + tail;
}

void validate_pair(const DiffusionModel& model, const SubordinatorSpec& sub)
{
    sub.validate();
    const double lambda0 = eigenvalue(model, 0);
    try {
        (void)laplace_exponent(sub, lambda0);
    } catch (const DomainError&) {
        throw DomainError("subordinate spectrum undefined: lambda_0 = " + std::to_string(lambda0)
                          + " lies outside the domain of the Laplace exponent");
    }
}

SpectralData make_spectral_data(const DiffusionModel& model, const SubordinatorSpec& sub, int n_max)
{
    validate_pair(model, sub);
    SpectralData data;
    const auto size = static_cast<std::size_t>(n_max) + 1;
    data.eigenvalues.resize(size);
    data.decay_rates.resize(size);
    data.unit_coeffs.resize(size);
    data.log_norms.resize(size);
    for (int n = 0; n <= n_max; ++n) {
        data.eigenvalues[n] = eigenvalue(model, n);
        data.decay_rates[n] = laplace_exponent(sub, data.eigenvalues[n]);
        data.unit_coeffs[n] = unit_payoff_coefficient(model, n);
        data.log_norms[n] = log_norm_constant(model, n);
    }
    return data;
}

} // namespace eigenbond
