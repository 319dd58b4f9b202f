#include "eigenbond/oracle.hpp"

#include "eigenbond/errors.hpp"

#include <boost/math/distributions/gamma.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <functional>
#include <cmath>
#include <random>
#include <string>
#include <thread>

namespace eigenbond::oracle {

namespace {

constexpr double kTail = 1e-11;

using Rule = boost::math::quadrature::gauss<double, 8>;

// Nodes and weights of the 8-point rule on [-1, 1].
void reference_rule(std::vector<double>& x, std::vector<double>& w)
{
    const auto& a = Rule::abscissa();
    const auto& wt = Rule::weights();
    for (std::size_t j = 0; j < a.size(); ++j) {
        x.push_back(-a[j]);
        w.push_back(wt[j]);
        x.push_back(a[j]);
        w.push_back(wt[j]);
    }
}

} // namespace

QuadratureGrid make_grid(const DiffusionModel& model, int grid_size)
{
    if (grid_size < 200) {
        throw ValidationError("quadrature grid needs at least 200 nodes");
    }
    std::vector<double> ref_x;
    std::vector<double> ref_w;
    reference_rule(ref_x, ref_w);
    const int panels = std::max(1, grid_size / static_cast<int>(ref_x.size()));

    // Integration variable u on [u0, u1]; state y(u) and dy/du.
    double u0 = 0.0;
    double u1 = 0.0;
    std::function<double(double)> state;
    std::function<double(double)> jacobian;
    QuadratureGrid grid;
    const double kappa = model.kappa();
    const double sigma = model.sigma();
    switch (model.kind()) {
    case ModelKind::CIR: {
        // y = u^{1/b} absorbs the y^{b-1} singularity of m at the origin.
        const double b = model.cir_b();
        const boost::math::gamma_distribution<double> stat(b, sigma * sigma / (2.0 * kappa));
        grid.lower = 0.0;
        grid.upper = boost::math::quantile(boost::math::complement(stat, kTail));
        u1 = std::pow(grid.upper, b);
        state = [b](double u) { return std::pow(u, 1.0 / b); };
        jacobian = [b](double u) { return std::pow(u, 1.0 / b - 1.0) / b; };
        break;
    }
    case ModelKind::Vasicek: {
        const boost::math::normal_distribution<double> stat(model.theta(), sigma / std::sqrt(2.0 * kappa));
        grid.lower = boost::math::quantile(stat, kTail);
        grid.upper = boost::math::quantile(boost::math::complement(stat, kTail));
        u0 = grid.lower;
        u1 = grid.upper;
        state = [](double u) { return u; };
        jacobian = [](double) { return 1.0; };
        break;
    }
    case ModelKind::ThreeHalves: {
        // beta / X is Gamma(2 alpha, 1) distributed under m.
        const double beta = model.tt_beta();
        const boost::math::gamma_distribution<double> stat(2.0 * model.tt_alpha(), 1.0);
        grid.lower = beta / boost::math::quantile(boost::math::complement(stat, kTail));
        grid.upper = beta / boost::math::quantile(stat, kTail);
        u0 = std::log(grid.lower);
        u1 = std::log(grid.upper);
        state = [](double u) { return std::exp(u); };
        jacobian = [](double u) { return std::exp(u); };
        break;
    }
    }

    const double width = (u1 - u0) / panels;
    for (int p = 0; p < panels; ++p) {
        const double mid = u0 + (p + 0.5) * width;
        for (std::size_t j = 0; j < ref_x.size(); ++j) {
            const double u = mid + 0.5 * width * ref_x[j];
            const double y = state(u);
            grid.nodes.push_back(y);
            grid.weights.push_back(0.5 * width * ref_w[j] * jacobian(u) * speed_density(model, y));
        }
    }
    return grid;
}

namespace {

class DensityExpansion {
public:
    DensityExpansion(const DiffusionModel& model, const SubordinatorSpec& sub, int n_density)
        : model_(model), sub_(sub), n_(n_density)
    {
        for (int n = 0; n < n_; ++n) {
            decay_.push_back(subordinate_eigenvalue(model, sub, n));
            unit_.push_back(unit_payoff_coefficient(model, n));
        }
    }

    void require_resolved(double t) const
    {
        const double spread = decay_.back() - decay_.front();
        if (std::exp(-spread * t) > 1e-12) {
            throw ConvergenceError("density expansion with " + std::to_string(n_)
                                   + " terms is not resolved at t = " + std::to_string(t)
                                   + "; minimum valid t is " + std::to_string(std::log(1e12) / spread));
        }
    }

    int size() const { return n_; }
    double decay(int n) const { return decay_[n]; }

    double bond(double t, double x) const
    {
        if (t == 0.0) return 1.0;
        if (sub_.is_trivial() && model_.has_affine_bond()) {
            return closed_form_bond(model_, t, x);
        }
        require_resolved(t);
        const std::vector<double> phi = eigenfunctions(model_, n_ - 1, x);
        double s = 0.0;
        for (int n = 0; n < n_; ++n) {
            s += unit_[n] * std::exp(-decay_[n] * t) * phi[n];
        }
        return s;
    }

private:
    const DiffusionModel& model_;
    const SubordinatorSpec& sub_;
    int n_;
    std::vector<double> decay_;
    std::vector<double> unit_;
};

} // namespace

double quadrature_dp_price(const DiffusionModel& model, const SubordinatorSpec& sub, const BondSchedule& schedule,
                           double x0, int grid_size, int n_density)
{
    schedule.validate();
    validate_pair(model, sub);
    if (!model.contains(x0)) {
        throw DomainError("initial state outside the model state space");
    }
    if (n_density < 1) {
        throw ValidationError("density expansion needs at least one term");
    }
    const QuadratureGrid grid = make_grid(model, grid_size);
    const DensityExpansion density(model, sub, n_density);
    const int G = static_cast<int>(grid.nodes.size());
    const int N = density.size();

    std::vector<std::vector<double>> phi(static_cast<std::size_t>(G));
    for (int j = 0; j < G; ++j) {
        phi[j] = eigenfunctions(model, N - 1, grid.nodes[j]);
    }
    auto project = [&](const std::vector<double>& v) {
        std::vector<double> d(static_cast<std::size_t>(N), 0.0);
        for (int j = 0; j < G; ++j) {
            const double wv = grid.weights[j] * v[j];
            for (int n = 0; n < N; ++n) {
                d[n] += wv * phi[j][n];
            }
        }
        return d;
    };

    const int k = schedule.coupon_count();
    const int kstar = schedule.protection_index;
    const double C = schedule.coupon;
    const double delta = schedule.notice_delta;

    std::vector<double> notice(static_cast<std::size_t>(G));
    for (int j = 0; j < G; ++j) {
        notice[j] = density.bond(delta, grid.nodes[j]);
    }

    std::vector<double> value(static_cast<std::size_t>(G), 1.0 + C);
    for (int i = k - 1; i >= kstar; --i) {
        const double h = schedule.holding_period(i);
        density.require_resolved(h);
        const std::vector<double> d = project(value);
        const auto kc = schedule.call_price(i);
        const auto kp = schedule.put_price(i);
        for (int j = 0; j < G; ++j) {
            double cont = 0.0;
            for (int n = 0; n < N; ++n) {
                cont += std::exp(-density.decay(n) * h) * d[n] * phi[j][n];
            }
            double v = cont;
            if (kc) v = std::min(v, *kc * notice[j]);
            if (kp) v = std::max(v, *kp * notice[j]);
            value[j] = v + C * notice[j];
        }
    }

    const double horizon = kstar == k ? schedule.maturity() : schedule.decision_time(kstar);
    density.require_resolved(horizon);
    const std::vector<double> d = project(value);
    const std::vector<double> phi0 = eigenfunctions(model, N - 1, x0);
    double v0 = 0.0;
    for (int n = 0; n < N; ++n) {
        v0 += std::exp(-density.decay(n) * horizon) * d[n] * phi0[n];
    }
    for (int i = 1; i < kstar; ++i) {
        v0 += C * density.bond(schedule.coupon_time(i), x0);
    }
    return v0;
}

namespace {

double inverse_gaussian_sample(std::mt19937_64& rng, double mean, double shape)
{
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> uniform;
    const double z = normal(rng);
    const double y = z * z;
    const double x = mean + mean * mean * y / (2.0 * shape)
                   - mean / (2.0 * shape) * std::sqrt(4.0 * mean * shape * y + mean * mean * y * y);
    return uniform(rng) <= mean / (mean + x) ? x : mean * mean / x;
}

struct BlockResult {
    double sum = 0.0;
    double sum_sq = 0.0;
};

BlockResult simulate_block(const DiffusionModel& model, const SubordinatorSpec& sub, double t, double x0,
                           int paths, int steps_per_year, std::uint64_t seed, int block)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(block)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal;
    const double kappa = model.kappa();
    const double theta = model.theta();
    const double sigma = model.sigma();

    BlockResult out;
    for (int p = 0; p < paths; ++p) {
        double horizon = t;
        if (!sub.is_trivial()) {
            if (sub.family != SubordinatorFamily::InverseGaussian) {
                throw UnsupportedModelError("Monte Carlo clock sampling is implemented for the IG subordinator only");
            }
            const double mean = sub.mu * t;
            horizon = sub.drift * t + inverse_gaussian_sample(rng, mean, sub.mu * sub.mu * sub.mu * t * t / sub.nu);
        }
        const int steps = std::max(1, static_cast<int>(std::ceil(horizon * steps_per_year)));
        const double dt = horizon / steps;
        const double sdt = std::sqrt(dt);
        double x = x0;
        double integral = 0.0;
        double r_prev = model.kind() == ModelKind::CIR ? std::max(x, 0.0) : x;
        for (int s = 0; s < steps; ++s) {
            const double dw = sdt * normal(rng);
            switch (model.kind()) {
            case ModelKind::CIR: {
                const double xp = std::max(x, 0.0);
                x = x + kappa * (theta - xp) * dt + sigma * std::sqrt(xp) * dw;
                break;
            }
            case ModelKind::Vasicek:
                x = x + kappa * (theta - x) * dt + sigma * dw;
                break;
            case ModelKind::ThreeHalves: {
                const double xp = std::max(x, 0.0);
                x = x + kappa * (theta - xp) * xp * dt + sigma * std::pow(xp, 1.5) * dw;
                break;
            }
            }
            const double r = model.kind() == ModelKind::Vasicek ? x : std::max(x, 0.0);
            integral += 0.5 * (r_prev + r) * dt;
            r_prev = r;
        }
        const double disc = std::exp(-integral);
        out.sum += disc;
        out.sum_sq += disc * disc;
    }
    return out;
}

} // namespace

McEstimate mc_zero_coupon(const DiffusionModel& model, const SubordinatorSpec& sub, double t, double x0, int paths,
                          int steps_per_year, std::uint64_t seed, int threads)
{
    if (steps_per_year < 250) {
        throw ValidationError("Monte Carlo needs at least 250 steps per year");
    }
    if (paths < 2) {
        throw ValidationError("Monte Carlo needs at least two paths");
    }
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw DomainError("maturity must be finite and non-negative");
    }
    if (!model.contains(x0)) {
        throw DomainError("initial state outside the model state space");
    }
    validate_pair(model, sub);
    if (t == 0.0) {
        return {1.0, 0.0};
    }

    constexpr int kBlocks = 64;
    std::vector<BlockResult> blocks(kBlocks);
    auto block_paths = [&](int b) { return paths / kBlocks + (b < paths % kBlocks ? 1 : 0); };
    const int workers = std::clamp(threads, 1, kBlocks);
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (int b = w; b < kBlocks; b += workers) {
                blocks[b] = simulate_block(model, sub, t, x0, block_paths(b), steps_per_year, seed, b);
            }
        });
    }
    for (auto& th : pool) th.join();

    double sum = 0.0;
    double sum_sq = 0.0;
    for (const auto& b : blocks) {
        sum += b.sum;
        sum_sq += b.sum_sq;
    }
    const double n = paths;
    const double mean = sum / n;
    const double var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
    return {mean, std::sqrt(var / n)};
}

} // namespace eigenbond::oracle
