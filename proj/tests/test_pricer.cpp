#include "eigenbond/errors.hpp"
#include "eigenbond/oracle.hpp"
#include "eigenbond/pricer.hpp"
#include "support/properties.hpp"

#include <doctest.h>

#include <cmath>

using namespace eigenbond;
using namespace eigenbond::testing;

namespace {

RootSearch unit_search()
{
    RootSearch s;
    s.lower = 0.0;
    s.upper = 1.0;
    s.seed = 0.5;
    s.step = 0.01;
    s.tolerance = 1e-9;
    return s;
}

const std::vector<double> kRates{0.01, 0.03, 0.05, 0.07, 0.1};

} // namespace

TEST_CASE("break-even search on synthetic gaps")
{
    const auto hit = find_break_even(OptionKind::Call, [](double x) { return x - 0.3; }, unit_search());
    REQUIRE(hit.state);
    CHECK(*hit.state == doctest::Approx(0.3).epsilon(1e-8));
    CHECK(hit.bracket_lo <= 0.3);
    CHECK(hit.bracket_hi >= 0.3);

    const auto never_called = find_break_even(OptionKind::Call, [](double x) { return 1.0 + x; }, unit_search());
    CHECK_FALSE(never_called.state);
    const auto never_put = find_break_even(OptionKind::Put, [](double x) { return -1.0 - x; }, unit_search());
    CHECK_FALSE(never_put.state);
    CHECK_THROWS_AS(find_break_even(OptionKind::Call, [](double x) { return -1.0 - x; }, unit_search()), BracketError);
}

TEST_CASE("sign changes")
{
    CHECK(count_sign_changes([](double x) { return x - 0.5; }, 0.0, 1.0, 64) == 1);
    CHECK(count_sign_changes([](double x) { return std::sin(20.0 * x); }, 0.0, 1.0, 64) == 6);
}

TEST_CASE("a single coupon-free payment prices as a zero-coupon bond")
{
    BondSchedule s;
    s.coupon = 0.0;
    s.coupon_times = {3.5};
    s.protection_index = 1;
    for (const auto& model : {cir_benchmark(), vasicek_benchmark()}) {
        const auto res = price_bond(model, SubordinatorSpec::none(), s, kRates, 1e-10);
        for (std::size_t i = 0; i < kRates.size(); ++i) {
            CHECK(res.values[i] == doctest::Approx(closed_form_bond(model, 3.5, kRates[i])).epsilon(1e-8));
        }
        CHECK(res.decisions.empty());
    }
}

TEST_CASE("option orderings and monotonicity")
{
    const std::vector<SubordinatorSpec> clocks{SubordinatorSpec::none(), SubordinatorSpec::inverse_gaussian(0.5, 0.5, 1.0)};
    for (const auto& model : {cir_benchmark(), vasicek_benchmark()}) {
        for (const auto& sub : clocks) {
            BondSchedule straight = BondSchedule::swiss1987(false);
            straight.call_prices.reset();
            const BondSchedule callable = BondSchedule::swiss1987(false);
            const BondSchedule both = BondSchedule::swiss1987(true);

            std::vector<double> states;
            for (double r : kRates) states.push_back(state_for_rate(model, sub, r));
            const auto v0 = price_bond(model, sub, straight, states, 1e-8);
            const auto vc = price_bond(model, sub, callable, states, 1e-8);
            const auto vcp = price_bond(model, sub, both, states, 1e-8);
            for (std::size_t i = 0; i < states.size(); ++i) {
                CHECK(vc.values[i] <= v0.values[i] + 1e-9);
                CHECK(vcp.values[i] >= vc.values[i] - 1e-9);
                if (sub.is_trivial()) {
                    CHECK(v0.values[i] == doctest::Approx(straight_bond_price(model, sub, straight, states[i])).epsilon(1e-8));
                }
                if (i > 0) {
                    CHECK(v0.values[i] < v0.values[i - 1]);
                    CHECK(vc.values[i] < vc.values[i - 1]);
                }
            }
            for (const auto& d : vcp.decisions) {
                CHECK(d.single_crossing_ok);
                if (d.call_state && d.put_state) CHECK(*d.put_state > *d.call_state);
            }
        }
    }
}

TEST_CASE("state for rate inverts the subordinate short rate")
{
    const auto sub = SubordinatorSpec::inverse_gaussian(0.0, 1.0, 1.0);
    for (const auto& model : {cir_benchmark(), vasicek_benchmark()}) {
        for (double r : kRates) {
            CHECK(short_rate_map(model, sub, state_for_rate(model, sub, r)) == doctest::Approx(r).epsilon(1e-10));
        }
    }
    CHECK(state_for_rate(cir_benchmark(), SubordinatorSpec::none(), 0.04) == 0.04);
}

TEST_CASE("schedule and state validation")
{
    BondSchedule s = BondSchedule::swiss1987(false);
    s.call_prices->pop_back();
    CHECK_THROWS_AS(s.validate(), ValidationError);
    BondSchedule unsorted = BondSchedule::swiss1987(false);
    std::swap(unsorted.coupon_times[2], unsorted.coupon_times[3]);
    CHECK_THROWS_AS(unsorted.validate(), ValidationError);
    CHECK_THROWS_AS(price_bond(cir_benchmark(), SubordinatorSpec::none(), BondSchedule::swiss1987(), {-0.01}, 1e-7),
                    DomainError);
}

TEST_CASE("3/2 model: expansion bond against Monte Carlo and option ordering")
{
    const auto model = three_halves_sample();
    const auto none = SubordinatorSpec::none();
    const auto mc = oracle::mc_zero_coupon(model, none, 1.0, 0.05, 20000, 500, 11, 1);
    const double zcb = zero_coupon_price(model, none, 1.0, 0.05).value;
    CHECK(std::abs(mc.mean - zcb) < 4.0 * mc.standard_error + 2e-4);

    BondSchedule straight = BondSchedule::swiss1987(false);
    straight.call_prices.reset();
    const std::vector<double> states{0.03, 0.05, 0.08};
    const auto v0 = price_bond(model, none, straight, states, 1e-7);
    const auto vc = price_bond(model, none, BondSchedule::swiss1987(false), states, 1e-7);
    for (std::size_t i = 0; i < states.size(); ++i) {
        CHECK(vc.values[i] <= v0.values[i] + 1e-9);
        CHECK(v0.values[i] == doctest::Approx(straight_bond_price(model, none, straight, states[i])).epsilon(1e-7));
    }
    for (const auto& d : vc.decisions) CHECK(d.single_crossing_ok);
    CHECK_THROWS_AS(state_for_rate(model, SubordinatorSpec::inverse_gaussian(0.5, 0.5, 1.0), 0.05),
                    UnsupportedModelError);
}
