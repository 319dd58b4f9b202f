#pragma once

#include "eigenbond/coeffs.hpp"
#include "eigenbond/models.hpp"
#include "eigenbond/subordinators.hpp"
#include "eigenbond/truncation.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace eigenbond {

/// Coupon bond with optional call/put ladders. Face value is 1.
///
/// Coupon dates t_1 < ... < t_k (t_k = maturity). Options are exercisable at
/// t_i for i = k*..k-1 with the decision taken at tau_i = t_i - delta. Ladders
/// hold k - k* prices, the first one for t_{k*}.
struct BondSchedule {
    double coupon = 0.0;
    std::vector<double> coupon_times;
    int protection_index = 1;
    std::optional<std::vector<double>> call_prices;
    std::optional<std::vector<double>> put_prices;
    double notice_delta = 0.0;

    int coupon_count() const noexcept { return static_cast<int>(coupon_times.size()); }
    double maturity() const { return coupon_times.back(); }
    // 1-based coupon index.
    double coupon_time(int i) const { return coupon_times.at(static_cast<std::size_t>(i) - 1); }
    double decision_time(int i) const { return coupon_time(i) - notice_delta; }
    // h_i = tau_{i+1} - tau_i, and h_{k-1} = t_k - tau_{k-1}.
    double holding_period(int i) const;
    std::optional<double> call_price(int i) const;
    std::optional<double> put_price(int i) const;

    // Throws ValidationError.
    void validate() const;

    /// Swiss Confederation 4.25% bond: 21 annual coupons, t_k = 20.172,
    /// k* = 11, two-month notice (0.1666), declining call ladder, optional put ladder.
    static BondSchedule swiss1987(bool with_put = false);

    bool operator==(const BondSchedule&) const = default;
};

struct PricerOptions {
    TruncationRule truncation{};
    double root_tolerance = 1e-7;
    bool verify_single_crossing = true;
    int sign_scan_points = 64;
    // Largest expansion index for which c_n^i are assembled. The raw
    // Laguerre/Hermite integral recursions overflow a little above 150.
    int max_coefficient_index = 140;
    std::optional<ProjectionRoute> route; // default_route() if unset
};

/// Expansion coefficients c_n^i at one stage of the backward recursion.
struct CoefficientState {
    std::vector<double> coeffs;
    int decision_index = 0;
    int truncation_used = 0; // highest m kept in the overlap sum
};

/// P(t, x) = sum_n p_n e^{-phi(lambda_n) t} phi_n(x).
SeriesSum zero_coupon_price(const DiffusionModel& model, const SubordinatorSpec& sub, double t, double x,
                            const TruncationRule& rule = {});

/// C(x) = sum_n c_n e^{-decay_n h} phi_n(x) with the coefficients of `state`.
SeriesSum continuation_value(const DiffusionModel& model, const CoefficientState& state,
                             const std::vector<double>& decay_rates, double h, double x,
                             const TruncationRule& rule = {});

enum class OptionKind { Call, Put };

struct RootSearch {
    double lower = 0.0;       // admissible search limits
    double upper = 0.0;
    double seed = 0.0;        // first probe
    double step = 1e-3;       // initial bracket growth step
    double tolerance = 1e-7;  // bisection stops below this width
    bool check_lower_boundary = false; // probe `lower` before the seed
};

struct BreakEvenResult {
    std::optional<double> state;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    int evaluations = 0;
};

/// Solves gap(x) = K P(delta, x) - C(x) = 0 where gap is negative to the left
/// of the root. Returns no state when the option is never exercised inside
/// [lower, upper]: a call when gap >= 0 throughout, a put when gap < 0 throughout.
/// Throws BracketError when the exercise region covers the whole search range.
BreakEvenResult find_break_even(OptionKind kind, const std::function<double(double)>& gap,
                                const RootSearch& search);

/// Number of sign changes of f over `points` equally spaced abscissas in [a, b].
int count_sign_changes(const std::function<double(double)>& f, double a, double b, int points);

struct DecisionRecord {
    int index = 0;               // i
    double time = 0.0;           // tau_i
    std::optional<double> call_state;
    std::optional<double> put_state;
    std::optional<double> call_rate; // r(x) or r^phi(x); NaN when the map is unavailable
    std::optional<double> put_rate;
    double mean_terms = 0.0;     // over root-search evaluations of C^i
    int max_terms = 0;
    int evaluations = 0;
    int coefficient_terms = 0;   // truncation of the overlap sum
    bool single_crossing_ok = true;
};

struct PricingResult {
    std::vector<double> states;
    std::vector<double> values;
    std::vector<int> initial_terms;       // N of the t_0 expansion per state
    std::vector<DecisionRecord> decisions; // tau_{k-1} first
    double eps = 0.0;
};

/// Backward recursion for the callable / putable bond. The engine is immutable
/// after construction apart from internal caches that are rebuilt per call, so
/// one instance may be shared between threads.
class BondPricer {
public:
    BondPricer(DiffusionModel model, SubordinatorSpec sub, BondSchedule schedule, PricerOptions options = {});

    PricingResult price(const std::vector<double>& states) const;

    const DiffusionModel& model() const noexcept { return model_; }
    const SubordinatorSpec& subordinator() const noexcept { return sub_; }
    const BondSchedule& schedule() const noexcept { return schedule_; }
    const PricerOptions& options() const noexcept { return options_; }

private:
    DiffusionModel model_;
    SubordinatorSpec sub_;
    BondSchedule schedule_;
    PricerOptions options_;
    SpectralData spectral_;
    ProjectionRoute route_;
};

PricingResult price_bond(const DiffusionModel& model, const SubordinatorSpec& sub, const BondSchedule& schedule,
                         const std::vector<double>& states, double eps, const PricerOptions& options = {});

/// Straight coupon bond: C sum_i P(t_i, x) + P(t_k, x).
double straight_bond_price(const DiffusionModel& model, const SubordinatorSpec& sub, const BondSchedule& schedule,
                           double x, const TruncationRule& rule = {});

/// State whose short rate equals `rate`: x itself without subordination,
/// otherwise the root of r^phi(x) = rate.
double state_for_rate(const DiffusionModel& model, const SubordinatorSpec& sub, double rate);

} // namespace eigenbond
