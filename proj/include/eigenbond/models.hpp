#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace eigenbond {

enum class ModelKind { CIR, Vasicek, ThreeHalves };

std::string_view to_string(ModelKind kind);
ModelKind model_kind_from_string(std::string_view name);

/// Short-rate diffusion with r(x) = x.
///
///   CIR:      dX = kappa (theta - X) dt + sigma sqrt(X) dW,   I = [0, inf)
///   Vasicek:  dX = kappa (theta - X) dt + sigma dW,           I = (-inf, inf)
///   3/2:      dX = kappa (theta - X) X dt + sigma X^{3/2} dW, I = (0, inf)
///
/// Derived constants are recomputed from (kappa, theta, sigma) on every call.
class DiffusionModel {
public:
    DiffusionModel(ModelKind kind, double kappa, double theta, double sigma);

    static DiffusionModel cir(double kappa, double theta, double sigma)
    {
        return {ModelKind::CIR, kappa, theta, sigma};
    }
    static DiffusionModel vasicek(double kappa, double theta, double sigma)
    {
        return {ModelKind::Vasicek, kappa, theta, sigma};
    }
    static DiffusionModel three_halves(double kappa, double theta, double sigma)
    {
        return {ModelKind::ThreeHalves, kappa, theta, sigma};
    }

    ModelKind kind() const noexcept { return kind_; }
    double kappa() const noexcept { return kappa_; }
    double theta() const noexcept { return theta_; }
    double sigma() const noexcept { return sigma_; }

    // CIR: gamma = sqrt(kappa^2 + 2 sigma^2), b = 2 kappa theta / sigma^2.
    double cir_gamma() const;
    double cir_b() const;

    // Vasicek: a = sigma / kappa^{3/2}.
    double vasicek_a() const;
    // Vasicek state coordinate xi = sqrt(kappa)/sigma (x - theta).
    double vasicek_xi(double x) const;

    // 3/2: alpha = kappa/sigma^2 + 1, beta = 2 kappa theta / sigma^2,
    // m = sqrt((kappa/sigma^2 + 1/2)^2 + 2/sigma^2).
    double tt_alpha() const;
    double tt_beta() const;
    double tt_m() const;

    // Closure endpoints of the state space (may be infinite).
    double lower_bound() const noexcept;
    double upper_bound() const noexcept;
    // True if x is an admissible evaluation state.
    bool contains(double x) const noexcept;

    bool has_affine_bond() const noexcept { return kind_ != ModelKind::ThreeHalves; }

    bool operator==(const DiffusionModel&) const = default;

private:
    ModelKind kind_;
    double kappa_;
    double theta_;
    double sigma_;
};

/// lambda_n; affine in n for all three models.
double eigenvalue(const DiffusionModel& model, int n);

/// Constant spacing lambda_{n+1} - lambda_n.
double eigenvalue_gap(const DiffusionModel& model);

/// log N_n of the normalization constant.
double log_norm_constant(const DiffusionModel& model, int n);
double norm_constant(const DiffusionModel& model, int n);

/// phi_0(x), ..., phi_{n_max}(x), orthonormal in L^2(I, m).
std::vector<double> eigenfunctions(const DiffusionModel& model, int n_max, double x);
double eigenfunction(const DiffusionModel& model, int n, double x);

/// p_n = (1, phi_n).
double unit_payoff_coefficient(const DiffusionModel& model, int n);
std::vector<double> unit_payoff_coefficients(const DiffusionModel& model, int n_max);

struct AffineBond {
    double A;
    double B;
};

/// P(t, x) = A(t) exp(-B(t) x) for CIR and Vasicek.
AffineBond affine_bond_coefficients(const DiffusionModel& model, double t);
double closed_form_bond(const DiffusionModel& model, double t, double x);

/// Speed density m(x).
double speed_density(const DiffusionModel& model, double x);

} // namespace eigenbond
