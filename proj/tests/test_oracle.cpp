#include "eigenbond/oracle.hpp"
#include "support/properties.hpp"

#include <doctest.h>

#include <cmath>

using namespace eigenbond;
using namespace eigenbond::testing;

TEST_CASE("quadrature dynamic programming agrees with the expansion pricer")
{
    for (const auto& model : {cir_benchmark(), vasicek_benchmark()}) {
        for (bool with_put : {false, true}) {
            const BondSchedule s = reduced_schedule(with_put);
            const std::vector<double> states{0.02, 0.06, 0.1};
            const auto res = price_bond(model, SubordinatorSpec::none(), s, states, 1e-9);
            for (std::size_t i = 0; i < states.size(); ++i) {
                const double dp = oracle::quadrature_dp_price(model, SubordinatorSpec::none(), s, states[i]);
                CHECK(std::abs(dp - res.values[i]) < 1e-4);
            }
        }
    }
}

TEST_CASE("Monte Carlo is reproducible and thread independent")
{
    const auto model = cir_benchmark();
    const auto a = oracle::mc_zero_coupon(model, SubordinatorSpec::none(), 1.0, 0.05, 4000, 250, 7, 1);
    const auto b = oracle::mc_zero_coupon(model, SubordinatorSpec::none(), 1.0, 0.05, 4000, 250, 7, 3);
    const auto c = oracle::mc_zero_coupon(model, SubordinatorSpec::none(), 1.0, 0.05, 4000, 250, 8, 1);
    CHECK(a.mean == b.mean);
    CHECK(a.standard_error == b.standard_error);
    CHECK(a.mean != c.mean);
    CHECK(std::abs(a.mean - closed_form_bond(model, 1.0, 0.05)) < 4.0 * a.standard_error);
}

TEST_CASE("subordinated Monte Carlo is close to the expansion")
{
    const auto model = vasicek_benchmark();
    const auto sub = SubordinatorSpec::inverse_gaussian(0.5, 0.5, 1.0);
    const auto mc = oracle::mc_zero_coupon(model, sub, 2.0, 0.05, 20000, 250, 3, 1);
    const double ref = zero_coupon_price(model, sub, 2.0, 0.05).value;
    CHECK(std::abs(mc.mean - ref) < 4.0 * mc.standard_error + 1e-3);
}
