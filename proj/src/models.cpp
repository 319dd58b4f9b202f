#include "eigenbond/models.hpp"

#include "eigenbond/errors.hpp"
#include "eigenbond/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace eigenbond {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_index(int n)
{
    if (n < 0) {
        throw DomainError("eigen index must be non-negative");
    }
}

void require_state(const DiffusionModel& model, double x)
{
    if (!model.contains(x)) {
        throw DomainError("state " + std::to_string(x) + " outside the state space of the "
                          + std::string(to_string(model.kind())) + " model");
    }
}

} // namespace

std::string_view to_string(ModelKind kind)
{
    switch (kind) {
    case ModelKind::CIR: return "cir";
    case ModelKind::Vasicek: return "vasicek";
    case ModelKind::ThreeHalves: return "three_halves";
    }
    return "unknown";
}

ModelKind model_kind_from_string(std::string_view name)
{
    if (name == "cir") return ModelKind::CIR;
    if (name == "vasicek") return ModelKind::Vasicek;
    if (name == "three_halves" || name == "3/2") return ModelKind::ThreeHalves;
    throw ValidationError("unknown model kind '" + std::string(name) + "'");
}

DiffusionModel::DiffusionModel(ModelKind kind, double kappa, double theta, double sigma)
    : kind_(kind), kappa_(kappa), theta_(theta), sigma_(sigma)
{
    if (!(kappa > 0.0) || !(theta > 0.0) || !(sigma > 0.0)
        || !std::isfinite(kappa) || !std::isfinite(theta) || !std::isfinite(sigma)) {
        throw DomainError("model parameters kappa, theta, sigma must be finite and positive");
    }
}

double DiffusionModel::cir_gamma() const
{
    return std::sqrt(kappa_ * kappa_ + 2.0 * sigma_ * sigma_);
}

double DiffusionModel::cir_b() const
{
    return 2.0 * kappa_ * theta_ / (sigma_ * sigma_);
}

double DiffusionModel::vasicek_a() const
{
    return sigma_ / std::pow(kappa_, 1.5);
}

double DiffusionModel::vasicek_xi(double x) const
{
    return std::sqrt(kappa_) / sigma_ * (x - theta_);
}

double DiffusionModel::tt_alpha() const
{
    return kappa_ / (sigma_ * sigma_) + 1.0;
}

double DiffusionModel::tt_beta() const
{
    return 2.0 * kappa_ * theta_ / (sigma_ * sigma_);
}

double DiffusionModel::tt_m() const
{
    const double s2 = sigma_ * sigma_;
    const double c = kappa_ / s2 + 0.5;
    return std::sqrt(c * c + 2.0 / s2);
}

double DiffusionModel::lower_bound() const noexcept
{
    return kind_ == ModelKind::Vasicek ? -kInf : 0.0;
}

double DiffusionModel::upper_bound() const noexcept
{
    return kInf;
}

bool DiffusionModel::contains(double x) const noexcept
{
    if (!std::isfinite(x)) return false;
    switch (kind_) {
    case ModelKind::CIR: return x >= 0.0;
    case ModelKind::Vasicek: return true;
    case ModelKind::ThreeHalves: return x > 0.0;
    }
    return false;
}

double eigenvalue(const DiffusionModel& model, int n)
{
    require_index(n);
    const double kappa = model.kappa();
    const double theta = model.theta();
    const double sigma = model.sigma();
    switch (model.kind()) {
    case ModelKind::CIR: {
        const double gamma = model.cir_gamma();
        return gamma * n + 0.5 * model.cir_b() * (gamma - kappa);
    }
    case ModelKind::Vasicek:
        return theta - sigma * sigma / (2.0 * kappa * kappa) + kappa * n;
    case ModelKind::ThreeHalves:
        return kappa * theta * (n + model.tt_m() - model.tt_alpha() + 0.5);
    }
    return 0.0;
}

double eigenvalue_gap(const DiffusionModel& model)
{
    switch (model.kind()) {
    case ModelKind::CIR: return model.cir_gamma();
    case ModelKind::Vasicek: return model.kappa();
    case ModelKind::ThreeHalves: return model.kappa() * model.theta();
    }
    return 0.0;
}

double log_norm_constant(const DiffusionModel& model, int n)
{
    require_index(n);
    const double ls = std::log(model.sigma());
    const double lfact = std::lgamma(n + 1.0);
    switch (model.kind()) {
    case ModelKind::CIR: {
        const double b = model.cir_b();
        const double s2 = model.sigma() * model.sigma();
        return 0.5 * (2.0 * ls + lfact - std::numbers::ln2 - std::lgamma(b + n))
             + 0.5 * b * std::log(2.0 * model.cir_gamma() / s2);
    }
    case ModelKind::Vasicek:
        return 0.5 * (0.5 * std::log(model.kappa() / std::numbers::pi) + ls
                      - (n + 1.0) * std::numbers::ln2 - lfact);
    case ModelKind::ThreeHalves: {
        const double m = model.tt_m();
        return 0.5 * (2.0 * ls + (2.0 * m + 1.0) * std::log(model.tt_beta()) + lfact
                      - std::numbers::ln2 - std::lgamma(2.0 * m + n + 1.0));
    }
    }
    return 0.0;
}

double norm_constant(const DiffusionModel& model, int n)
{
    return std::exp(log_norm_constant(model, n));
}

std::vector<double> eigenfunctions(const DiffusionModel& model, int n_max, double x)
{
    require_index(n_max);
    require_state(model, x);
    const double s2 = model.sigma() * model.sigma();

    // N_n times the orthonormalizing factor of the polynomial is independent of n,
    // so only the prefactor needs log-space care.
    std::vector<double> values;
    double log_prefactor = 0.0;
    switch (model.kind()) {
    case ModelKind::CIR: {
        const double gamma = model.cir_gamma();
        const double b = model.cir_b();
        values = specfun::laguerre_orthonormal_sequence(n_max, b - 1.0, 2.0 * gamma * x / s2);
        log_prefactor = 0.5 * std::log(0.5 * s2) + 0.5 * b * std::log(2.0 * gamma / s2)
                      + (model.kappa() - gamma) * x / s2;
        break;
    }
    case ModelKind::Vasicek: {
        const double a = model.vasicek_a();
        const double xi = model.vasicek_xi(x);
        values = specfun::hermite_orthonormal_sequence(n_max, xi + a);
        log_prefactor = 0.5 * std::log(0.5 * std::sqrt(model.kappa() / std::numbers::pi) * model.sigma())
                      - a * xi - 0.5 * a * a;
        break;
    }
    case ModelKind::ThreeHalves: {
        const double beta = model.tt_beta();
        const double m = model.tt_m();
        values = specfun::laguerre_orthonormal_sequence(n_max, 2.0 * m, beta / x);
        log_prefactor = 0.5 * std::log(0.5 * s2) + (m + 0.5) * std::log(beta)
                      + (model.tt_alpha() - m - 0.5) * std::log(x);
        break;
    }
    }
    const double prefactor = std::exp(log_prefactor);
    for (double& v : values) {
        v *= prefactor;
    }
    return values;
}

double eigenfunction(const DiffusionModel& model, int n, double x)
{
    require_index(n);
    return eigenfunctions(model, n, x).back();
}

double unit_payoff_coefficient(const DiffusionModel& model, int n)
{
    require_index(n);
    const double log_norm = log_norm_constant(model, n);
    const double sigma = model.sigma();
    const double s2 = sigma * sigma;
    const double lfact = std::lgamma(n + 1.0);
    switch (model.kind()) {
    case ModelKind::CIR: {
        const double kappa = model.kappa();
        const double gamma = model.cir_gamma();
        const double b = model.cir_b();
        const double ratio = (kappa - gamma) / (kappa + gamma);
        const double log_abs = std::numbers::ln2 + log_norm + std::lgamma(b + n) - std::log(s2) - lfact
                             + b * std::log(s2 / (gamma + kappa)) + n * std::log(std::abs(ratio));
        const double sign = (ratio < 0.0 && n % 2 == 1) ? -1.0 : 1.0;
        return sign * std::exp(log_abs);
    }
    case ModelKind::Vasicek: {
        const double a = model.vasicek_a();
        const double log_val = std::log(2.0 / sigma) + 0.5 * std::log(std::numbers::pi / model.kappa())
                             + log_norm + n * std::log(a) - 0.25 * a * a;
        return std::exp(log_val);
    }
    case ModelKind::ThreeHalves: {
        const double alpha = model.tt_alpha();
        const double beta = model.tt_beta();
        const double m = model.tt_m();
        const double log_val = std::log(2.0 / s2) + log_norm - (alpha + m + 0.5) * std::log(beta)
                             + std::lgamma(alpha + m + 0.5) + std::lgamma(m + n - alpha + 0.5)
                             - lfact - std::lgamma(m - alpha + 0.5);
        return std::exp(log_val);
    }
    }
    return 0.0;
}

std::vector<double> unit_payoff_coefficients(const DiffusionModel& model, int n_max)
{
    require_index(n_max);
    std::vector<double> out(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) {
        out[n] = unit_payoff_coefficient(model, n);
    }
    return out;
}

AffineBond affine_bond_coefficients(const DiffusionModel& model, double t)
{
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw DomainError("bond maturity must be finite and non-negative");
    }
    const double kappa = model.kappa();
    const double theta = model.theta();
    const double sigma = model.sigma();
    switch (model.kind()) {
    case ModelKind::CIR: {
        const double gamma = model.cir_gamma();
        const double b = model.cir_b();
        const double em1 = std::expm1(gamma * t);
        const double denom = (gamma + kappa) * em1 + 2.0 * gamma;
        const double log_a = b * (std::log(2.0 * gamma) + 0.5 * (kappa + gamma) * t - std::log(denom));
        return {std::exp(log_a), 2.0 * em1 / denom};
    }
    case ModelKind::Vasicek: {
        const double B = -std::expm1(-kappa * t) / kappa;
        const double log_a = (B - t) * (kappa * kappa * theta - 0.5 * sigma * sigma) / (kappa * kappa)
                           - sigma * sigma * B * B / (4.0 * kappa);
        return {std::exp(log_a), B};
    }
    case ModelKind::ThreeHalves:
        break;
    }
    throw UnsupportedModelError("no affine closed-form bond price for the 3/2 model");
}

double closed_form_bond(const DiffusionModel& model, double t, double x)
{
    const AffineBond ab = affine_bond_coefficients(model, t);
    require_state(model, x);
    return ab.A * std::exp(-ab.B * x);
}

double speed_density(const DiffusionModel& model, double x)
{
    const double s2 = model.sigma() * model.sigma();
    switch (model.kind()) {
    case ModelKind::CIR:
        if (!(x > 0.0) || !std::isfinite(x)) {
            throw DomainError("CIR speed density requires x > 0");
        }
        return 2.0 / s2 * std::exp((model.cir_b() - 1.0) * std::log(x) - 2.0 * model.kappa() * x / s2);
    case ModelKind::Vasicek: {
        if (!std::isfinite(x)) {
            throw DomainError("Vasicek speed density requires finite x");
        }
        const double d = model.theta() - x;
        return 2.0 / s2 * std::exp(-model.kappa() * d * d / s2);
    }
    case ModelKind::ThreeHalves:
        if (!(x > 0.0) || !std::isfinite(x)) {
            throw DomainError("3/2 speed density requires x > 0");
        }
        return 2.0 / s2 * std::exp((-2.0 * model.tt_alpha() - 1.0) * std::log(x) - model.tt_beta() / x);
    }
    return 0.0;
}

} // namespace eigenbond
