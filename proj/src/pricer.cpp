#include "eigenbond/pricer.hpp"

#include "eigenbond/errors.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <string>

namespace eigenbond {

// ---------------------------------------------------------------------------
// Schedule
// ---------------------------------------------------------------------------

double BondSchedule::holding_period(int i) const
{
    const int k = coupon_count();
    if (i < protection_index || i > k - 1) {
        throw ValidationError("holding period index out of range");
    }
    if (i == k - 1) {
        return maturity() - decision_time(i);
    }
    return decision_time(i + 1) - decision_time(i);
}

std::optional<double> BondSchedule::call_price(int i) const
{
    if (!call_prices || i < protection_index || i >= coupon_count()) {
        return std::nullopt;
    }
    return (*call_prices)[static_cast<std::size_t>(i - protection_index)];
}

std::optional<double> BondSchedule::put_price(int i) const
{
    if (!put_prices || i < protection_index || i >= coupon_count()) {
        return std::nullopt;
    }
    return (*put_prices)[static_cast<std::size_t>(i - protection_index)];
}

void BondSchedule::validate() const
{
    if (!std::isfinite(coupon) || coupon < 0.0) {
        throw ValidationError("coupon must be finite and non-negative");
    }
    if (coupon_times.empty()) {
        throw ValidationError("schedule needs at least one coupon date");
    }
    double prev = 0.0;
    double min_gap = std::numeric_limits<double>::infinity();
    for (double t : coupon_times) {
        if (!std::isfinite(t) || t <= prev) {
            throw ValidationError("coupon times must be positive and strictly increasing");
        }
        min_gap = std::min(min_gap, t - prev);
        prev = t;
    }
    const int k = coupon_count();
    if (protection_index < 1 || protection_index > k) {
        throw ValidationError("protection index must lie in [1, k]");
    }
    if (!std::isfinite(notice_delta) || notice_delta < 0.0 || notice_delta >= min_gap) {
        throw ValidationError("notice period must be non-negative and shorter than every coupon spacing");
    }
    const auto expected = static_cast<std::size_t>(k - protection_index);
    auto check_ladder = [&](const std::optional<std::vector<double>>& ladder, const char* name) {
        if (!ladder) return;
        if (ladder->size() != expected) {
            throw ValidationError(std::string(name) + " ladder must hold k - k* = " + std::to_string(expected)
                                  + " prices");
        }
        for (double v : *ladder) {
            if (!std::isfinite(v) || v <= 0.0) {
                throw ValidationError(std::string(name) + " prices must be positive");
            }
        }
    };
    check_ladder(call_prices, "call");
    check_ladder(put_prices, "put");
    if (call_prices && put_prices) {
        for (std::size_t j = 0; j < expected; ++j) {
            if (!((*call_prices)[j] > (*put_prices)[j])) {
                throw ValidationError("call price must exceed put price on every exercise date");
            }
        }
    }
}

BondSchedule BondSchedule::swiss1987(bool with_put)
{
    BondSchedule s;
    s.coupon = 0.0425;
    for (int i = 0; i < 21; ++i) {
        s.coupon_times.push_back(0.172 + i);
    }
    s.protection_index = 11;
    s.notice_delta = 0.1666;
    s.call_prices = std::vector<double>{1.025, 1.020, 1.015, 1.010, 1.005, 1.0, 1.0, 1.0, 1.0, 1.0};
    if (with_put) {
        s.put_prices = std::vector<double>{1.015, 1.010, 1.005, 1.000, 0.995, 0.990, 0.990, 0.990, 0.990, 0.990};
    }
    return s;
}

// ---------------------------------------------------------------------------
// Series helpers
// ---------------------------------------------------------------------------

namespace {

// phi_0(x), phi_1(x), ... grown on demand.
class EigenCursor {
public:
    EigenCursor(const DiffusionModel& model, double x) : model_(model), x_(x) {}

    double operator()(int n)
    {
        if (n >= static_cast<int>(values_.size())) {
            const int target = std::max({n, 15, 2 * static_cast<int>(values_.size()) - 1});
            values_ = eigenfunctions(model_, target, x_);
        }
        return values_[static_cast<std::size_t>(n)];
    }

private:
    const DiffusionModel& model_;
    double x_;
    std::vector<double> values_;
};

void require_state(const DiffusionModel& model, double x)
{
    if (!model.contains(x)) {
        throw DomainError("state " + std::to_string(x) + " lies outside the model state space");
    }
}

SeriesSum zero_coupon_with(const DiffusionModel& model, const SubordinatorSpec& sub, double t, EigenCursor& phi,
                           const TruncationRule& rule)
{
    auto term = [&](int n) {
        return unit_payoff_coefficient(model, n) * std::exp(-subordinate_eigenvalue(model, sub, n) * t) * phi(n);
    };
    return adaptive_series(term, rule);
}

} // namespace

SeriesSum zero_coupon_price(const DiffusionModel& model, const SubordinatorSpec& sub, double t, double x,
                            const TruncationRule& rule)
{
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw DomainError("maturity must be finite and non-negative");
    }
    require_state(model, x);
    if (t == 0.0) {
        return {1.0, 0};
    }
    validate_pair(model, sub);
    EigenCursor phi(model, x);
    return zero_coupon_with(model, sub, t, phi, rule);
}

SeriesSum continuation_value(const DiffusionModel& model, const CoefficientState& state,
                             const std::vector<double>& decay_rates, double h, double x, const TruncationRule& rule)
{
    require_state(model, x);
    const int available = static_cast<int>(std::min(state.coeffs.size(), decay_rates.size()));
    EigenCursor phi(model, x);
    auto term = [&](int n) {
        if (n >= available) {
            throw ConvergenceError("continuation value needs more than " + std::to_string(available)
                                   + " coefficients at decision " + std::to_string(state.decision_index));
        }
        return state.coeffs[static_cast<std::size_t>(n)] * std::exp(-decay_rates[static_cast<std::size_t>(n)] * h)
             * phi(n);
    };
    return adaptive_series(term, rule);
}

// ---------------------------------------------------------------------------
// Break-even search
// ---------------------------------------------------------------------------

BreakEvenResult find_break_even(OptionKind kind, const std::function<double(double)>& gap, const RootSearch& search)
{
    if (!(search.lower < search.upper) || !(search.tolerance > 0.0) || !(search.step > 0.0)) {
        throw ValidationError("invalid root search settings");
    }
    BreakEvenResult out;
    auto eval = [&](double x) {
        ++out.evaluations;
        return gap(x);
    };
    auto all_nonnegative = [&]() -> BreakEvenResult {
        if (kind == OptionKind::Put) {
            throw BracketError("put region covers the whole search interval");
        }
        return out;
    };
    auto all_negative = [&]() -> BreakEvenResult {
        if (kind == OptionKind::Call) {
            throw BracketError("call region covers the whole search interval");
        }
        return out;
    };

    if (search.check_lower_boundary && eval(search.lower) >= 0.0) {
        return all_nonnegative();
    }

    const double seed = std::clamp(search.seed, search.lower, search.upper);
    double lo = seed;
    double hi = seed;
    double step = search.step;
    if (eval(seed) < 0.0) {
        for (;;) {
            if (hi >= search.upper) {
                return all_negative();
            }
            lo = hi;
            hi = std::min(hi + step, search.upper);
            step *= 2.0;
            if (eval(hi) >= 0.0) break;
        }
    } else {
        for (;;) {
            if (lo <= search.lower) {
                if (search.check_lower_boundary) {
                    // gap(lower) < 0 was established above.
                    break;
                }
                return all_nonnegative();
            }
            hi = lo;
            lo = std::max(lo - step, search.lower);
            step *= 2.0;
            if (lo == search.lower && search.check_lower_boundary) break;
            if (eval(lo) < 0.0) break;
        }
    }

    out.bracket_lo = lo;
    out.bracket_hi = hi;
    while (hi - lo >= search.tolerance) {
        const double mid = 0.5 * (lo + hi);
        if (eval(mid) < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    out.state = 0.5 * (lo + hi);
    return out;
}

int count_sign_changes(const std::function<double(double)>& f, double a, double b, int points)
{
    if (points < 2 || !(a < b)) {
        throw ValidationError("sign scan needs at least two points on a non-empty interval");
    }
    int changes = 0;
    bool prev = f(a) >= 0.0;
    for (int j = 1; j < points; ++j) {
        const double x = a + (b - a) * j / (points - 1);
        const bool cur = f(x) >= 0.0;
        if (cur != prev) ++changes;
        prev = cur;
    }
    return changes;
}

// ---------------------------------------------------------------------------
// Backward recursion
// ---------------------------------------------------------------------------

namespace {

struct Stage {
    int index = 0;
    bool terminal = false;
    double h = 0.0;
    std::optional<double> call_strike;
    std::optional<double> put_strike;
    double x_lo = 0.0;
    double x_hi = 0.0;
    bool full_interval = true;
    int inner_terms = 0;
    Stage* next = nullptr;
    std::vector<double> coeffs;
};

class Engine {
public:
    Engine(const DiffusionModel& model, const SubordinatorSpec& sub, const BondSchedule& schedule,
           const PricerOptions& options, const SpectralData& spectral, ProjectionRoute route)
        : model_(model), sub_(sub), schedule_(schedule), options_(options), spectral_(spectral), route_(route)
    {}

    PricingResult run(const std::vector<double>& states);

private:
    double coefficient(Stage& stage, int n);
    void assemble(Stage& stage, int n_max);
    double notice_bond(double x, EigenCursor& phi);
    void search_stage(Stage& stage, DecisionRecord& record, const DecisionRecord* later);
    double short_rate(double x) const;

    const DiffusionModel& model_;
    const SubordinatorSpec& sub_;
    const BondSchedule& schedule_;
    const PricerOptions& options_;
    const SpectralData& spectral_;
    ProjectionRoute route_;
};

double Engine::coefficient(Stage& stage, int n)
{
    const int cap = options_.max_coefficient_index;
    if (n > cap) {
        throw ConvergenceError("expansion at decision " + std::to_string(stage.index) + " needs more than "
                               + std::to_string(cap + 1) + " coefficients");
    }
    if (n >= static_cast<int>(stage.coeffs.size())) {
        const int target = std::min(cap, std::max({n, 31, 2 * static_cast<int>(stage.coeffs.size()) - 1}));
        assemble(stage, target);
    }
    return stage.coeffs[static_cast<std::size_t>(n)];
}

void Engine::assemble(Stage& stage, int n_max)
{
    const double C = schedule_.coupon;
    const double delta = schedule_.notice_delta;
    std::vector<double> c(static_cast<std::size_t>(n_max) + 1, 0.0);
    if (stage.terminal) {
        for (int n = 0; n <= n_max; ++n) {
            c[n] = (1.0 + C) * spectral_.unit_coeffs[n];
        }
        stage.coeffs = std::move(c);
        return;
    }

    for (int n = 0; n <= n_max; ++n) {
        c[n] = C * spectral_.unit_coeffs[n] * std::exp(-spectral_.decay_rates[n] * delta);
    }

    Stage& next = *stage.next;
    if (stage.full_interval) {
        for (int n = 0; n <= n_max; ++n) {
            c[n] += coefficient(next, n) * std::exp(-spectral_.decay_rates[n] * stage.h);
        }
    } else {
        const int M = stage.inner_terms;
        std::vector<double> carried(static_cast<std::size_t>(M) + 1);
        for (int m = 0; m <= M; ++m) {
            carried[m] = coefficient(next, m) * std::exp(-spectral_.decay_rates[m] * stage.h);
        }
        const OverlapMatrix pi = overlap_matrix(model_, std::max(M, n_max), stage.x_lo, stage.x_hi);
        for (int n = 0; n <= n_max; ++n) {
            KahanSum acc;
            for (int m = 0; m <= M; ++m) {
                acc.add(carried[m] * pi.entries(m, n));
            }
            c[n] += acc.value();
        }
    }

    const double l = model_.lower_bound();
    const double r = model_.upper_bound();
    if (stage.call_strike && stage.x_lo > l) {
        const auto proj = strike_projection(model_, sub_, n_max, l, stage.x_lo, delta, route_, options_.truncation);
        for (int n = 0; n <= n_max; ++n) {
            c[n] += *stage.call_strike * proj.entries[n];
        }
    }
    if (stage.put_strike && stage.x_hi < r) {
        const auto proj = strike_projection(model_, sub_, n_max, stage.x_hi, r, delta, route_, options_.truncation);
        for (int n = 0; n <= n_max; ++n) {
            c[n] += *stage.put_strike * proj.entries[n];
        }
    }
    for (double v : c) {
        if (!std::isfinite(v)) {
            throw ConvergenceError("non-finite expansion coefficient at decision " + std::to_string(stage.index));
        }
    }
    stage.coeffs = std::move(c);
}

double Engine::notice_bond(double x, EigenCursor& phi)
{
    if (sub_.is_trivial() && model_.has_affine_bond()) {
        return closed_form_bond(model_, schedule_.notice_delta, x);
    }
    return zero_coupon_with(model_, sub_, schedule_.notice_delta, phi, options_.truncation).value;
}

double Engine::short_rate(double x) const
{
    if (sub_.is_trivial()) {
        return x;
    }
    if (!model_.has_affine_bond()) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    return short_rate_map(model_, sub_, x);
}

struct SearchLimits {
    double lower;
    double upper;
    double scale;
    bool lower_admissible;
};

SearchLimits search_limits(const DiffusionModel& model)
{
    const double theta = model.theta();
    switch (model.kind()) {
    case ModelKind::CIR:
        return {0.0, 50.0 * theta, theta, true};
    case ModelKind::Vasicek: {
        const double sd = model.sigma() / std::sqrt(2.0 * model.kappa());
        return {theta - 12.0 * sd, theta + 12.0 * sd, sd, false};
    }
    case ModelKind::ThreeHalves:
        // The Laguerre argument is beta / x; above ~40 the expansion loses all digits.
        return {std::max(1e-3 * theta, model.tt_beta() / 40.0), 10.0 * theta, theta, false};
    }
    return {0.0, 1.0, 1.0, false};
}

void Engine::search_stage(Stage& stage, DecisionRecord& record, const DecisionRecord* later)
{
    Stage& next = *stage.next;
    const double delta = schedule_.notice_delta;
    (void)delta;

    std::vector<int> terms;
    bool recording = true;
    struct Probe {
        double bond;
        double continuation;
    };
    auto probe = [&](double x) {
        EigenCursor phi(model_, x);
        auto term = [&](int n) {
            return coefficient(next, n) * std::exp(-spectral_.decay_rates[n] * stage.h) * phi(n);
        };
        const SeriesSum cont = adaptive_series(term, options_.truncation);
        if (recording) {
            terms.push_back(cont.n);
        }
        return Probe{notice_bond(x, phi), cont.value};
    };

    const SearchLimits lim = search_limits(model_);
    RootSearch base;
    base.lower = lim.lower;
    base.upper = lim.upper;
    base.step = 1e-2 * lim.scale;
    base.tolerance = options_.root_tolerance;

    auto scan = [&](const std::function<double(double)>& gap, const std::optional<double>& root, double centre) {
        if (!options_.verify_single_crossing) return true;
        recording = false;
        const double w = lim.scale;
        const double mid = root ? *root : centre;
        const double a = std::max(lim.lower, mid - w);
        const double b = std::min(lim.upper, mid + w);
        const int changes = count_sign_changes(gap, a, b, options_.sign_scan_points);
        recording = true;
        return changes == (root ? 1 : 0);
    };

    stage.x_lo = model_.lower_bound();
    stage.x_hi = model_.upper_bound();

    if (stage.call_strike) {
        const double K = *stage.call_strike;
        auto gap = [&](double x) {
            const Probe p = probe(x);
            return K * p.bond - p.continuation;
        };
        RootSearch search = base;
        search.check_lower_boundary = lim.lower_admissible;
        search.seed = (later && later->call_state) ? *later->call_state : model_.theta();
        const BreakEvenResult res = find_break_even(OptionKind::Call, gap, search);
        if (!scan(gap, res.state, search.seed)) {
            record.single_crossing_ok = false;
        }
        if (res.state) {
            stage.x_lo = *res.state;
            record.call_state = res.state;
            record.call_rate = short_rate(*res.state);
        }
    }
    if (stage.put_strike) {
        const double K = *stage.put_strike;
        auto gap = [&](double x) {
            const Probe p = probe(x);
            return K * p.bond - p.continuation;
        };
        RootSearch search = base;
        if (later && later->put_state) {
            search.seed = *later->put_state;
        } else {
            search.seed = std::max(model_.theta(), record.call_state.value_or(model_.theta()));
        }
        const BreakEvenResult res = find_break_even(OptionKind::Put, gap, search);
        if (!scan(gap, res.state, search.seed)) {
            record.single_crossing_ok = false;
        }
        if (res.state) {
            stage.x_hi = *res.state;
            record.put_state = res.state;
            record.put_rate = short_rate(*res.state);
        }
    }
    if (!record.single_crossing_ok) {
        throw BracketError("exercise boundary at decision " + std::to_string(stage.index)
                           + " is not a single crossing");
    }
    if (record.call_state && record.put_state && !(*record.call_state < *record.put_state)) {
        throw BracketError("call boundary does not lie below the put boundary at decision "
                           + std::to_string(stage.index));
    }

    stage.full_interval = stage.x_lo == model_.lower_bound() && stage.x_hi == model_.upper_bound();
    record.evaluations = static_cast<int>(terms.size());
    if (!terms.empty()) {
        long total = 0;
        for (int t : terms) total += t;
        record.mean_terms = static_cast<double>(total) / static_cast<double>(terms.size());
        record.max_terms = *std::max_element(terms.begin(), terms.end());
    }
    stage.inner_terms = record.max_terms;
    record.coefficient_terms = stage.full_interval ? 0 : stage.inner_terms;
}

PricingResult Engine::run(const std::vector<double>& states)
{
    const int k = schedule_.coupon_count();
    const int kstar = schedule_.protection_index;

    // stages[j] holds stage i = kstar + j; the last entry is the terminal stage k.
    std::vector<std::unique_ptr<Stage>> stages;
    for (int i = kstar; i <= k; ++i) {
        auto s = std::make_unique<Stage>();
        s->index = i;
        s->terminal = i == k;
        stages.push_back(std::move(s));
    }
    for (std::size_t j = 0; j + 1 < stages.size(); ++j) {
        stages[j]->next = stages[j + 1].get();
    }

    PricingResult result;
    result.eps = options_.truncation.eps;
    const DecisionRecord* later = nullptr;
    for (int i = k - 1; i >= kstar; --i) {
        Stage& stage = *stages[static_cast<std::size_t>(i - kstar)];
        stage.h = schedule_.holding_period(i);
        stage.call_strike = schedule_.call_price(i);
        stage.put_strike = schedule_.put_price(i);
        DecisionRecord record;
        record.index = i;
        record.time = schedule_.decision_time(i);
        try {
            search_stage(stage, record, later);
        } catch (const BracketError& e) {
            throw BracketError(std::string(e.what()) + " (decision " + std::to_string(i) + ")");
        } catch (const ConvergenceError& e) {
            throw ConvergenceError(std::string(e.what()) + " (decision " + std::to_string(i) + ")");
        }
        result.decisions.push_back(record);
        later = &result.decisions.back();
        // Freeze nothing yet: coefficients are assembled on demand by the earlier stage.
    }

    Stage& first = *stages.front();
    const double horizon = kstar == k ? schedule_.maturity() : schedule_.decision_time(kstar);
    for (double x : states) {
        require_state(model_, x);
        EigenCursor phi(model_, x);
        auto term = [&](int n) {
            return coefficient(first, n) * std::exp(-spectral_.decay_rates[n] * horizon) * phi(n);
        };
        const SeriesSum lead = adaptive_series(term, options_.truncation);
        double coupons = 0.0;
        for (int i = 1; i < kstar; ++i) {
            const double t = schedule_.coupon_time(i);
            if (sub_.is_trivial() && model_.has_affine_bond()) {
                coupons += closed_form_bond(model_, t, x);
            } else {
                coupons += zero_coupon_with(model_, sub_, t, phi, options_.truncation).value;
            }
        }
        result.states.push_back(x);
        result.values.push_back(lead.value + schedule_.coupon * coupons);
        result.initial_terms.push_back(lead.n);
    }
    return result;
}

} // namespace

BondPricer::BondPricer(DiffusionModel model, SubordinatorSpec sub, BondSchedule schedule, PricerOptions options)
    : model_(model), sub_(sub), schedule_(std::move(schedule)), options_(options)
{
    schedule_.validate();
    validate_pair(model_, sub_);
    if (!(options_.truncation.eps > 0.0) || options_.truncation.eps > 1e-3) {
        throw ValidationError("truncation tolerance must lie in (0, 1e-3]");
    }
    if (!(options_.root_tolerance > 0.0)) {
        throw ValidationError("root tolerance must be positive");
    }
    if (options_.sign_scan_points < 2) {
        throw ValidationError("sign scan needs at least two points");
    }
    if (options_.max_coefficient_index < options_.truncation.min_terms + 2) {
        throw ValidationError("coefficient cap too small for the truncation rule");
    }
    route_ = options_.route.value_or(default_route(model_, sub_));
    if (route_ == ProjectionRoute::ClosedFormAffine && default_route(model_, sub_) != route_) {
        throw UnsupportedModelError("closed-form strike projection requires a non-subordinated CIR or Vasicek model");
    }
    spectral_ = make_spectral_data(model_, sub_, options_.max_coefficient_index);
}

PricingResult BondPricer::price(const std::vector<double>& states) const
{
    Engine engine(model_, sub_, schedule_, options_, spectral_, route_);
    return engine.run(states);
}

PricingResult price_bond(const DiffusionModel& model, const SubordinatorSpec& sub, const BondSchedule& schedule,
                         const std::vector<double>& states, double eps, const PricerOptions& options)
{
    PricerOptions opts = options;
    opts.truncation.eps = eps;
    return BondPricer(model, sub, schedule, opts).price(states);
}

double straight_bond_price(const DiffusionModel& model, const SubordinatorSpec& sub, const BondSchedule& schedule,
                           double x, const TruncationRule& rule)
{
    schedule.validate();
    auto bond = [&](double t) {
        if (sub.is_trivial() && model.has_affine_bond()) {
            return closed_form_bond(model, t, x);
        }
        return zero_coupon_price(model, sub, t, x, rule).value;
    };
    double value = bond(schedule.maturity());
    for (double t : schedule.coupon_times) {
        value += schedule.coupon * bond(t);
    }
    return value;
}

double state_for_rate(const DiffusionModel& model, const SubordinatorSpec& sub, double rate)
{
    if (!std::isfinite(rate)) {
        throw DomainError("short rate must be finite");
    }
    if (sub.is_trivial()) {
        return rate;
    }
    if (!model.has_affine_bond()) {
        throw UnsupportedModelError("r^phi needs a closed-form bond price; use rate_convention \"state\" for the subordinated 3/2 model");
    }
    auto f = [&](double x) { return short_rate_map(model, sub, x) - rate; };
    const double l = model.lower_bound();
    double lo = std::isfinite(l) ? l : rate - 1.0;
    if (std::isfinite(l) && f(l) > 0.0) {
        throw DomainError("short rate " + std::to_string(rate) + " lies below r^phi at the boundary");
    }
    double hi = std::max(rate, lo) + 0.1;
    double width = 1.0;
    while (f(lo) > 0.0) {
        lo -= width;
        width *= 2.0;
    }
    width = 0.1;
    while (f(hi) < 0.0) {
        hi += width;
        width *= 2.0;
        if (hi > 1e3) throw DomainError("could not bracket the state for the requested short rate");
    }
    boost::uintmax_t iters = 200;
    const auto bracket = boost::math::tools::toms748_solve(f, lo, hi, boost::math::tools::eps_tolerance<double>(50),
                                                           iters);
    return 0.5 * (bracket.first + bracket.second);
}

} // namespace eigenbond
