#include "eigenbond/coeffs.hpp"

#include "eigenbond/errors.hpp"
#include "eigenbond/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace eigenbond {

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;

void require_alpha(double alpha)
{
    if (!(alpha > -1.0)) {
        throw DomainError("Laguerre order alpha must exceed -1");
    }
}

void require_nonneg_arg(double x)
{
    if (std::isnan(x) || x < 0.0) {
        throw DomainError("Laguerre integral upper limit must be non-negative");
    }
}

void require_index(int n)
{
    if (n < 0) {
        throw DomainError("polynomial index must be non-negative");
    }
}

// e^{-s x} x^{order}, evaluated in log space.
double weight(double s, double x, double order)
{
    return std::exp(-s * x + order * std::log(x));
}

} // namespace

Matrix laguerre_a_table(int n_max, double alpha, double x)
{
    require_index(n_max);
    require_alpha(alpha);
    require_nonneg_arg(x);

    const int size = n_max + 1;
    Matrix a(size, size);
    if (x == 0.0) {
        return a;
    }
    if (std::isinf(x)) {
        for (int n = 0; n <= n_max; ++n) {
            a(n, n) = std::exp(std::lgamma(n + alpha + 1.0) - std::lgamma(n + 1.0));
        }
        return a;
    }

    const std::vector<double> l0 = specfun::laguerre_sequence(n_max, alpha, x);
    const std::vector<double> l1 = specfun::laguerre_sequence(n_max, alpha + 1.0, x);
    const double w = weight(1.0, x, alpha + 1.0);

    for (int m = 1; m <= n_max; ++m) {
        const double v = w * l1[m - 1] / m;
        a(0, m) = v;
        a(m, 0) = v;
    }
    for (int n = 1; n <= n_max; ++n) {
        for (int m = n + 1; m <= n_max; ++m) {
            const double v = w * (l0[n] * l1[m - 1] - l0[m] * l1[n - 1]) / (m - n);
            a(n, m) = v;
            a(m, n) = v;
        }
    }

    // Diagonal: a_{0,0}^{(alpha+N)}; then a_{0,0}, a_{1,1} at alpha+N-1; ...;
    // finally a_{0,0}..a_{N,N} at alpha.
    std::vector<double> prev_diag;
    std::vector<double> prev_poly; // L^{(order + 1)}_k(x), k = 0..n_max - j - 1
    for (int j = n_max; j >= 0; --j) {
        const double order = alpha + j;
        const int top = n_max - j;
        std::vector<double> diag(static_cast<std::size_t>(top) + 1);
        diag[0] = specfun::lower_incomplete_gamma(order + 1.0, x);
        std::vector<double> poly = specfun::laguerre_sequence(top, order, x);
        const double wj = weight(1.0, x, order + 1.0);
        for (int k = 1; k <= top; ++k) {
            diag[k] = (poly[k] * prev_poly[k - 1] * wj + prev_diag[k - 1]) / k;
        }
        prev_diag = std::move(diag);
        prev_poly = std::move(poly);
    }
    for (int n = 0; n <= n_max; ++n) {
        a(n, n) = prev_diag[n];
    }
    return a;
}

double laguerre_a(int n, int m, double alpha, double x)
{
    require_index(n);
    require_index(m);
    return laguerre_a_table(std::max(n, m), alpha, x)(n, m);
}

std::vector<double> laguerre_b_sequence(int n_max, double alpha, double s, double x)
{
    require_index(n_max);
    require_alpha(alpha);
    require_nonneg_arg(x);
    if (!(s > 0.0)) {
        throw DomainError("laguerre_b requires s > 0");
    }

    std::vector<double> b(static_cast<std::size_t>(n_max) + 1, 0.0);
    if (x == 0.0) {
        return b;
    }
    if (std::isinf(x)) {
        const double sm1 = s - 1.0;
        for (int n = 0; n <= n_max; ++n) {
            if (sm1 == 0.0 && n > 0) {
                b[n] = 0.0;
                continue;
            }
            const double log_abs = std::lgamma(alpha + n + 1.0) - std::lgamma(n + 1.0)
                                 - (alpha + n + 1.0) * std::log(s) + (n > 0 ? n * std::log(std::abs(sm1)) : 0.0);
            const double sign = (sm1 < 0.0 && n % 2 == 1) ? -1.0 : 1.0;
            b[n] = sign * std::exp(log_abs);
        }
        return b;
    }

    std::vector<double> prev; // b_k^{(order + 1)}
    for (int j = n_max; j >= 0; --j) {
        const double order = alpha + j;
        const int top = n_max - j;
        std::vector<double> cur(static_cast<std::size_t>(top) + 1);
        cur[0] = specfun::lower_incomplete_gamma(order + 1.0, s * x) * std::pow(s, -(order + 1.0));
        if (top >= 1) {
            const std::vector<double> poly = specfun::laguerre_sequence(top - 1, order + 1.0, x);
            const double wj = weight(s, x, order + 1.0);
            for (int k = 1; k <= top; ++k) {
                cur[k] = wj * poly[k - 1] / k + (s - 1.0) / k * prev[k - 1];
            }
        }
        prev = std::move(cur);
    }
    return prev;
}

double laguerre_b(int n, double alpha, double s, double x)
{
    require_index(n);
    return laguerre_b_sequence(n, alpha, s, x)[n];
}

Matrix hermite_a_table(int n_max, double x)
{
    require_index(n_max);
    if (std::isnan(x)) {
        throw DomainError("hermite_a: NaN argument");
    }
    const int size = n_max + 1;
    Matrix a(size, size);
    if (x == -std::numeric_limits<double>::infinity()) {
        return a;
    }
    if (std::isinf(x)) {
        for (int n = 0; n <= n_max; ++n) {
            a(n, n) = kSqrtPi * std::exp(n * std::numbers::ln2 + std::lgamma(n + 1.0));
        }
        return a;
    }

    const std::vector<double> h = specfun::hermite_sequence(n_max + 1, x);
    const double e = std::exp(-x * x);
    for (int n = 0; n <= n_max; ++n) {
        for (int m = n + 1; m <= n_max; ++m) {
            const double v = (h[n] * h[m + 1] - h[m] * h[n + 1]) / (2.0 * (m - n)) * e;
            a(n, m) = v;
            a(m, n) = v;
        }
    }
    a(0, 0) = kSqrtPi * specfun::normal_cdf(std::numbers::sqrt2 * x);
    for (int n = 1; n <= n_max; ++n) {
        a(n, n) = -h[n - 1] * h[n] * e + 2.0 * n * a(n - 1, n - 1);
    }
    return a;
}

double hermite_a(int n, int m, double x)
{
    require_index(n);
    require_index(m);
    return hermite_a_table(std::max(n, m), x)(n, m);
}

std::vector<double> hermite_b_sequence(int n_max, double s, double x)
{
    require_index(n_max);
    if (std::isnan(x) || !std::isfinite(s)) {
        throw DomainError("hermite_b: invalid argument");
    }
    std::vector<double> b(static_cast<std::size_t>(n_max) + 1, 0.0);
    if (x == -std::numeric_limits<double>::infinity()) {
        return b;
    }
    const double scale = std::exp(0.25 * s * s) * kSqrtPi;
    if (std::isinf(x)) {
        // int e^{s y - y^2} H_n(y) dy = sqrt(pi) e^{s^2/4} s^n
        double power = 1.0;
        for (int n = 0; n <= n_max; ++n) {
            b[n] = scale * power;
            power *= s;
        }
        return b;
    }
    const std::vector<double> h = specfun::hermite_sequence(n_max, x);
    const double e = std::exp(s * x - x * x);
    b[0] = 0.5 * scale * std::erfc(-(2.0 * x - s) / 2.0);
    for (int n = 1; n <= n_max; ++n) {
        b[n] = -e * h[n - 1] + s * b[n - 1];
    }
    return b;
}

double hermite_b(int n, double s, double x)
{
    require_index(n);
    return hermite_b_sequence(n, s, x)[n];
}

namespace {

void check_interval(const DiffusionModel& model, double x_lo, double x_hi)
{
    if (std::isnan(x_lo) || std::isnan(x_hi)) {
        throw IntervalError("interval endpoints must not be NaN");
    }
    if (x_lo > x_hi) {
        throw IntervalError("interval requires x_lo <= x_hi");
    }
    if (x_lo < model.lower_bound() || x_hi > model.upper_bound()) {
        throw IntervalError("interval extends beyond the state space");
    }
}

// Substituted integration variable for each model.
double cir_arg(const DiffusionModel& model, double x)
{
    if (std::isinf(x)) return x;
    return 2.0 * model.cir_gamma() * x / (model.sigma() * model.sigma());
}

double vasicek_arg(const DiffusionModel& model, double x)
{
    if (std::isinf(x)) return x;
    return model.vasicek_xi(x) + model.vasicek_a();
}

double tt_arg(const DiffusionModel& model, double x)
{
    if (x == 0.0) return std::numeric_limits<double>::infinity();
    if (std::isinf(x)) return 0.0;
    return model.tt_beta() / x;
}

} // namespace

OverlapMatrix overlap_matrix(const DiffusionModel& model, int n_max, double x_lo, double x_hi)
{
    require_index(n_max);
    check_interval(model, x_lo, x_hi);

    OverlapMatrix out;
    out.x_lo = x_lo;
    out.x_hi = x_hi;
    out.model = model.kind();
    const int size = n_max + 1;
    out.entries = Matrix(size, size);
    if (x_lo == x_hi) {
        return out;
    }

    std::vector<double> log_norm(static_cast<std::size_t>(size));
    for (int n = 0; n <= n_max; ++n) {
        log_norm[n] = log_norm_constant(model, n);
    }

    Matrix upper;
    Matrix lower;
    double log_scale = 0.0;
    const double s2 = model.sigma() * model.sigma();
    switch (model.kind()) {
    case ModelKind::CIR: {
        const double gamma = model.cir_gamma();
        const double alpha = model.cir_b() - 1.0;
        upper = laguerre_a_table(n_max, alpha, cir_arg(model, x_hi));
        lower = laguerre_a_table(n_max, alpha, cir_arg(model, x_lo));
        log_scale = alpha * std::log(s2 / (2.0 * gamma)) - std::log(gamma);
        break;
    }
    case ModelKind::Vasicek:
        upper = hermite_a_table(n_max, vasicek_arg(model, x_hi));
        lower = hermite_a_table(n_max, vasicek_arg(model, x_lo));
        log_scale = std::log(2.0 / (model.sigma() * std::sqrt(model.kappa())));
        break;
    case ModelKind::ThreeHalves: {
        // y -> beta / y reverses orientation.
        const double m = model.tt_m();
        upper = laguerre_a_table(n_max, 2.0 * m, tt_arg(model, x_lo));
        lower = laguerre_a_table(n_max, 2.0 * m, tt_arg(model, x_hi));
        log_scale = std::log(2.0 / s2) - (2.0 * m + 1.0) * std::log(model.tt_beta());
        break;
    }
    }

    for (int m = 0; m <= n_max; ++m) {
        for (int n = m; n <= n_max; ++n) {
            const double diff = upper(m, n) - lower(m, n);
            const double v = diff == 0.0 ? 0.0 : diff * std::exp(log_scale + log_norm[m] + log_norm[n]);
            out.entries(m, n) = v;
            out.entries(n, m) = v;
        }
    }
    return out;
}

ProjectionRoute default_route(const DiffusionModel& model, const SubordinatorSpec& sub)
{
    return (sub.is_trivial() && model.has_affine_bond()) ? ProjectionRoute::ClosedFormAffine
                                                         : ProjectionRoute::EigenExpansion;
}

StrikeProjection strike_projection(const DiffusionModel& model, const SubordinatorSpec& sub, int n_max,
                                   double x_lo, double x_hi, double delta, ProjectionRoute route,
                                   const TruncationRule& rule)
{
    require_index(n_max);
    if (!(delta >= 0.0) || !std::isfinite(delta)) {
        throw DomainError("notice period must be finite and non-negative");
    }
    check_interval(model, x_lo, x_hi);

    StrikeProjection out;
    out.notice_delta = delta;
    out.route = route;
    out.entries.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
    if (x_lo == x_hi) {
        return out;
    }

    if (route == ProjectionRoute::ClosedFormAffine) {
        if (!sub.is_trivial() || !model.has_affine_bond()) {
            throw UnsupportedModelError(
                "closed-form strike projection requires a non-subordinated CIR or Vasicek model");
        }
        const AffineBond ab = affine_bond_coefficients(model, delta);
        if (model.kind() == ModelKind::CIR) {
            const double gamma = model.cir_gamma();
            const double s2 = model.sigma() * model.sigma();
            const double alpha = model.cir_b() - 1.0;
            const double s = ab.B * s2 / (2.0 * gamma) + (model.kappa() + gamma) / (2.0 * gamma);
            const auto hi = laguerre_b_sequence(n_max, alpha, s, cir_arg(model, x_hi));
            const auto lo = laguerre_b_sequence(n_max, alpha, s, cir_arg(model, x_lo));
            const double log_scale = std::log(ab.A) - std::log(gamma) + alpha * std::log(s2 / (2.0 * gamma));
            for (int n = 0; n <= n_max; ++n) {
                out.entries[n] = std::exp(log_scale + log_norm_constant(model, n)) * (hi[n] - lo[n]);
            }
        } else {
            const double a = model.vasicek_a();
            const double rk = std::sqrt(model.kappa());
            const double sigma = model.sigma();
            const double s = -ab.B * sigma / rk + a;
            const auto hi = hermite_b_sequence(n_max, s, vasicek_arg(model, x_hi));
            const auto lo = hermite_b_sequence(n_max, s, vasicek_arg(model, x_lo));
            const double log_scale = std::log(2.0 * ab.A / (sigma * rk)) - 0.5 * a * a
                                   - ab.B * (model.theta() - a * sigma / rk);
            for (int n = 0; n <= n_max; ++n) {
                out.entries[n] = std::exp(log_scale + log_norm_constant(model, n)) * (hi[n] - lo[n]);
            }
        }
        return out;
    }

    // Expansion route: sum_m p_m e^{-phi(lambda_m) delta} pi_{m,n}. Since |pi_{m,n}| <= 1,
    // the inner sum is cut with the truncation rule applied to |p_m e^{-phi(lambda_m) delta}|.
    auto weight_at = [&](int m) {
        return unit_payoff_coefficient(model, m) * std::exp(-subordinate_eigenvalue(model, sub, m) * delta);
    };
    std::vector<double> weights;
    KahanSum scale;
    for (int m = 0; m < rule.min_terms; ++m) {
        weights.push_back(weight_at(m));
        scale.add(std::abs(weights.back()));
    }
    double next = weight_at(rule.min_terms);
    double next2 = weight_at(rule.min_terms + 1);
    while (!should_stop(rule, scale.value(), std::abs(next), std::abs(next2), static_cast<int>(weights.size()))) {
        weights.push_back(next);
        scale.add(std::abs(next));
        if (static_cast<int>(weights.size()) + 1 >= rule.max_terms) {
            throw ConvergenceError("strike projection inner sum did not converge");
        }
        next = next2;
        next2 = weight_at(static_cast<int>(weights.size()) + 1);
    }
    const int inner = static_cast<int>(weights.size()) - 1;
    out.inner_terms = inner;

    const OverlapMatrix pi = overlap_matrix(model, std::max(inner, n_max), x_lo, x_hi);
    for (int n = 0; n <= n_max; ++n) {
        KahanSum acc;
        for (int m = 0; m <= inner; ++m) {
            acc.add(weights[m] * pi.entries(m, n));
        }
        out.entries[n] = acc.value();
    }
    return out;
}

} // namespace eigenbond
