#include "properties.hpp"

#include "eigenbond/coeffs.hpp"
#include "eigenbond/specfun.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

namespace eigenbond::testing {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

const auto& gl30() { return boost::math::quadrature::gauss<double, 30>::abscissa(); }
const auto& gl30w() { return boost::math::quadrature::gauss<double, 30>::weights(); }

// Visits the 30-point Gauss-Legendre nodes of [a, b] with their weights.
template <class V>
void gauss_panel(double a, double b, V&& visit)
{
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    const auto& x = gl30();
    const auto& w = gl30w();
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0.0) {
            visit(c, h * w[i]);
        } else {
            visit(c - h * x[i], h * w[i]);
            visit(c + h * x[i], h * w[i]);
        }
    }
}

// Panels for int_a^b: geometric grading towards a (x^p singularities), then
// panels of at most `width`.
std::vector<std::pair<double, double>> graded_panels(double a, double b, double width)
{
    std::vector<std::pair<double, double>> out;
    const double first = std::min(b, a + width);
    double lo = a + (first - a) * 1e-200;
    out.emplace_back(a, lo);
    for (double hi = lo * 10.0; hi < first; lo = hi, hi *= 10.0) out.emplace_back(lo, hi);
    out.emplace_back(lo, first);
    const int n = static_cast<int>(std::ceil((b - first) / width));
    for (int i = 0; i < n; ++i) out.emplace_back(first + (b - first) * i / n, first + (b - first) * (i + 1) / n);
    return out;
}

std::vector<std::pair<double, double>> uniform_panels(double a, double b, int n)
{
    std::vector<std::pair<double, double>> out;
    for (int i = 0; i < n; ++i) out.emplace_back(a + (b - a) * i / n, a + (b - a) * (i + 1) / n);
    return out;
}

template <class F>
double integrate_graded(F f, double a, double b, double width)
{
    double total = 0.0;
    for (const auto& [lo, hi] : graded_panels(a, b, width)) {
        gauss_panel(lo, hi, [&](double x, double w) { total += w * f(x); });
    }
    return total;
}

template <class F>
double integrate_uniform(F f, double a, double b, int panels)
{
    double total = 0.0;
    for (const auto& [lo, hi] : uniform_panels(a, b, panels)) {
        gauss_panel(lo, hi, [&](double x, double w) { total += w * f(x); });
    }
    return total;
}

double vasicek_sd(const DiffusionModel& m) { return m.sigma() / std::sqrt(2.0 * m.kappa()); }

// Finite interval carrying the state-space integrals; the Laguerre variable is
// capped at 700 where e^{-z} z^60 is far below double precision.
std::pair<double, double> quadrature_span(const DiffusionModel& m)
{
    switch (m.kind()) {
    case ModelKind::Vasicek: return {m.theta() - 20.0 * vasicek_sd(m), m.theta() + 20.0 * vasicek_sd(m)};
    case ModelKind::CIR: return {0.0, 700.0 * m.sigma() * m.sigma() / (2.0 * m.cir_gamma())};
    case ModelKind::ThreeHalves: break;
    }
    return {m.tt_beta() / 700.0, m.tt_beta() * 1e12};
}

// G_{n,k} = int_lo^hi phi_n phi_k m dx for n, k <= n_max.
std::vector<std::vector<double>> gram(const DiffusionModel& m, int n_max, double lo, double hi)
{
    const auto [sa, sb] = quadrature_span(m);
    const double a = std::max(lo, sa), b = std::min(hi, sb);
    const std::size_t size = static_cast<std::size_t>(n_max) + 1;
    std::vector<std::vector<double>> G(size, std::vector<double>(size, 0.0));
    if (!(a < b)) return G;
    auto add = [&](double x, double w) {
        const auto phi = eigenfunctions(m, n_max, x);
        const double wm = w * speed_density(m, x);
        for (std::size_t i = 0; i < size; ++i)
            for (std::size_t j = 0; j <= i; ++j) G[i][j] += wm * phi[i] * phi[j];
    };
    switch (m.kind()) {
    case ModelKind::Vasicek:
        for (const auto& [p, q] : uniform_panels(a, b, std::max(1, static_cast<int>(std::ceil(200.0 * (b - a) / (sb - sa))))))
            gauss_panel(p, q, add);
        break;
    case ModelKind::CIR: {
        const double width = (sb - sa) / 400.0;
        for (const auto& [p, q] : graded_panels(0.0, sb, width)) {
            if (q > a && p < b) gauss_panel(std::max(p, a), std::min(q, b), add);
        }
        break;
    }
    case ModelKind::ThreeHalves: {
        const double la = std::log(a), lb = std::log(b);
        const double width = (std::log(sb) - std::log(sa)) / 600.0;
        for (const auto& [p, q] : uniform_panels(la, lb, std::max(1, static_cast<int>(std::ceil((lb - la) / width)))))
            gauss_panel(p, q, [&](double u, double w) { add(std::exp(u), w * std::exp(u)); });
        break;
    }
    }
    for (std::size_t i = 0; i < size; ++i)
        for (std::size_t j = i + 1; j < size; ++j) G[i][j] = G[j][i];
    return G;
}

// h_n = int L_n^2 y^alpha e^{-y} dy
double laguerre_norm(int n, double alpha) { return std::exp(std::lgamma(n + alpha + 1.0) - std::lgamma(n + 1.0)); }

double hermite_norm(int n) { return std::exp(0.5 * std::log(std::numbers::pi) + n * std::numbers::ln2 + std::lgamma(n + 1.0)); }

std::string describe(const char* what, std::initializer_list<std::pair<const char*, double>> args)
{
    std::ostringstream os;
    os << what;
    for (const auto& [k, v] : args) os << ' ' << k << '=' << v;
    return os.str();
}

void record(RandomCheck& r, double err, std::string what)
{
    ++r.cases;
    if (!(err <= r.max_error)) {
        r.max_error = err;
        r.worst = std::move(what);
    }
}

} // namespace

DiffusionModel cir_benchmark() { return DiffusionModel::cir(0.14294371, 0.133976855, 0.38757496); }
DiffusionModel vasicek_benchmark() { return DiffusionModel::vasicek(0.44178462, 0.098397028, 0.13264223); }
DiffusionModel three_halves_sample() { return DiffusionModel::three_halves(2.0, 0.08, 0.6); }

double orthonormality_error(const DiffusionModel& m, int n_max)
{
    const auto G = gram(m, n_max, m.lower_bound(), m.upper_bound());
    double worst = 0.0;
    for (std::size_t n = 0; n < G.size(); ++n)
        for (std::size_t k = 0; k < G.size(); ++k) worst = std::max(worst, std::abs(G[n][k] - (n == k ? 1.0 : 0.0)));
    return worst;
}

RandomCheck laguerre_a_check(std::uint64_t seed, int cases)
{
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> deg(0, 30);
    std::uniform_real_distribution<double> ua(-0.9, 4.0), ux(0.05, 60.0);
    RandomCheck r;
    for (int c = 0; c < cases; ++c) {
        const int n = deg(rng), k = deg(rng);
        const double alpha = ua(rng), x = ux(rng);
        const double got = laguerre_a(n, k, alpha, x);
        const double ref = integrate_graded(
            [&](double y) {
                const auto L = specfun::laguerre_sequence(std::max(n, k), alpha, y);
                return L[static_cast<std::size_t>(n)] * L[static_cast<std::size_t>(k)] * std::exp(alpha * std::log(y) - y);
            },
            0.0, x, 1.0);
        const double scale = std::sqrt(laguerre_norm(n, alpha) * laguerre_norm(k, alpha));
        record(r, std::abs(got - ref) / scale, describe("laguerre_a", {{"n", n}, {"m", k}, {"alpha", alpha}, {"x", x}}));
    }
    return r;
}

RandomCheck laguerre_b_check(std::uint64_t seed, int cases)
{
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> deg(0, 30);
    std::uniform_real_distribution<double> ua(-0.9, 4.0), ux(0.05, 60.0), us(0.6, 4.0);
    RandomCheck r;
    for (int c = 0; c < cases; ++c) {
        const int n = deg(rng);
        const double alpha = ua(rng), x = ux(rng), s = us(rng);
        const double got = laguerre_b(n, alpha, s, x);
        const double ref = integrate_graded(
            [&](double y) {
                const auto L = specfun::laguerre_sequence(n, alpha, y);
                return L[static_cast<std::size_t>(n)] * std::exp(alpha * std::log(y) - s * y);
            },
            0.0, x, 1.0);
        const double scale =
            std::sqrt(laguerre_norm(n, alpha) * std::exp(std::lgamma(alpha + 1.0) - (alpha + 1.0) * std::log(2.0 * s - 1.0)));
        record(r, std::abs(got - ref) / scale, describe("laguerre_b", {{"n", n}, {"alpha", alpha}, {"s", s}, {"x", x}}));
    }
    return r;
}

RandomCheck hermite_a_check(std::uint64_t seed, int cases)
{
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> deg(0, 30);
    std::uniform_real_distribution<double> ux(-7.0, 7.0);
    RandomCheck r;
    for (int c = 0; c < cases; ++c) {
        const int n = deg(rng), k = deg(rng);
        const double x = ux(rng);
        const double got = hermite_a(n, k, x);
        const double ref = integrate_uniform(
            [&](double y) {
                const auto H = specfun::hermite_sequence(std::max(n, k), y);
                return H[static_cast<std::size_t>(n)] * H[static_cast<std::size_t>(k)] * std::exp(-y * y);
            },
            -14.0, x, 64);
        const double scale = std::sqrt(hermite_norm(n) * hermite_norm(k));
        record(r, std::abs(got - ref) / scale, describe("hermite_a", {{"n", n}, {"m", k}, {"x", x}}));
    }
    return r;
}

RandomCheck hermite_b_check(std::uint64_t seed, int cases)
{
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> deg(0, 30);
    std::uniform_real_distribution<double> ux(-7.0, 7.0), us(-2.5, 2.5);
    RandomCheck r;
    for (int c = 0; c < cases; ++c) {
        const int n = deg(rng);
        const double x = ux(rng), s = us(rng);
        const double got = hermite_b(n, s, x);
        const double ref = integrate_uniform(
            [&](double y) {
                const auto H = specfun::hermite_sequence(n, y);
                return H[static_cast<std::size_t>(n)] * std::exp(s * y - y * y);
            },
            -16.0, x, 64);
        const double scale = std::sqrt(hermite_norm(n)) * std::pow(std::numbers::pi, 0.25) * std::exp(0.5 * s * s);
        record(r, std::abs(got - ref) / scale, describe("hermite_b", {{"n", n}, {"s", s}, {"x", x}}));
    }
    return r;
}

RandomCheck overlap_check(const DiffusionModel& m, std::uint64_t seed, int cases)
{
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> deg(0, 30);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    RandomCheck r;
    const double scale = m.kind() == ModelKind::Vasicek ? 4.0 * vasicek_sd(m) : 2.0 * m.theta();
    for (int c = 0; c < cases; ++c) {
        double lo, hi;
        if (m.kind() == ModelKind::Vasicek) {
            lo = u01(rng) < 0.2 ? -inf : m.theta() + scale * (2.0 * u01(rng) - 1.0);
            hi = u01(rng) < 0.2 ? inf : (std::isinf(lo) ? m.theta() : lo) + scale * u01(rng);
        } else {
            lo = u01(rng) < 0.2 ? 0.0 : scale * u01(rng);
            hi = u01(rng) < 0.2 ? inf : lo + scale * u01(rng) + 1e-4;
        }
        const int n = deg(rng), k = deg(rng);
        const OverlapMatrix pi = overlap_matrix(m, 30, lo, hi);
        const double ref = gram(m, 30, lo, hi)[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
        record(r, std::abs(pi.entries(n, k) - ref),
               describe("overlap", {{"model", static_cast<double>(m.kind())}, {"n", n}, {"m", k}, {"lo", lo}, {"hi", hi}}));
    }
    return r;
}

double zero_coupon_error(const DiffusionModel& m, const std::vector<double>& times, const std::vector<double>& states)
{
    TruncationRule rule;
    rule.eps = 1e-13;
    double worst = 0.0;
    for (double t : times) {
        for (double x : states) {
            const double e = zero_coupon_price(m, SubordinatorSpec{}, t, x, rule).value;
            worst = std::max(worst, std::abs(e - closed_form_bond(m, t, x)));
        }
    }
    return worst;
}

BondSchedule reduced_schedule(bool with_put)
{
    BondSchedule s;
    s.coupon = 0.0425;
    for (int i = 1; i <= 11; ++i) s.coupon_times.push_back(0.172 + (i - 1));
    s.protection_index = 8;
    s.notice_delta = 0.1666;
    s.call_prices = std::vector<double>{1.015, 1.01, 1.005};
    if (with_put) s.put_prices = std::vector<double>{1.0, 0.995, 0.99};
    return s;
}

} // namespace eigenbond::testing
