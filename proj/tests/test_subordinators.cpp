#include "eigenbond/errors.hpp"
#include "eigenbond/subordinators.hpp"
#include "support/properties.hpp"

#include <doctest.h>

#include <boost/math/quadrature/exp_sinh.hpp>

#include <cmath>

using namespace eigenbond;
using namespace eigenbond::testing;

namespace {

std::vector<SubordinatorSpec> samples()
{
    return {SubordinatorSpec::inverse_gaussian(0.5, 0.5, 1.0), SubordinatorSpec::inverse_gaussian(0.0, 1.0, 1.0),
            SubordinatorSpec::gamma(0.2, 1.5, 2.0), SubordinatorSpec::tempered_stable(0.1, 0.8, 0.5, 1.2),
            SubordinatorSpec::tempered_stable(0.0, 0.6, -0.7, 0.9)};
}

double levy_integral(const std::function<double(double)>& f)
{
    boost::math::quadrature::exp_sinh<double> integrator;
    return integrator.integrate(
        [&](double u) {
            if (u * u == 0.0) return 0.0;
            const double v = 2.0 * u * f(u * u);
            return std::isfinite(v) ? v : 0.0;
        },
        1e-13);
}

} // namespace

TEST_CASE("laplace exponent equals drift plus the Levy integral")
{
    for (const auto& sub : samples()) {
        for (double lambda : {0.05, 0.4, 3.0, 25.0}) {
            const double jumps = levy_integral([&](double s) { return -std::expm1(-lambda * s) * levy_density(sub, s); });
            const double ref = sub.drift * lambda + jumps;
            CHECK(laplace_exponent(sub, lambda) == doctest::Approx(ref).epsilon(1e-9));
        }
    }
}

TEST_CASE("mean rate of the benchmark clocks is one")
{
    CHECK(mean_rate(SubordinatorSpec::inverse_gaussian(0.5, 0.5, 1.0)) == doctest::Approx(1.0));
    CHECK(mean_rate(SubordinatorSpec::inverse_gaussian(0.0, 1.0, 1.0)) == doctest::Approx(1.0));
    const auto g = SubordinatorSpec::gamma(0.2, 1.5, 2.0);
    CHECK(mean_rate(g) == doctest::Approx(0.2 + 1.5 / 2.0));
}

TEST_CASE("trivial clock")
{
    const auto none = SubordinatorSpec::none();
    CHECK(laplace_exponent(none, 0.37) == doctest::Approx(0.37));
    CHECK(levy_density(none, 1.0) == 0.0);
    CHECK(short_rate_map(cir_benchmark(), none, 0.042) == doctest::Approx(0.042));
    CHECK(short_rate_map(three_halves_sample(), none, 0.042) == doctest::Approx(0.042));
}

TEST_CASE("subordinate short rate matches direct quadrature")
{
    for (const auto& model : {cir_benchmark(), vasicek_benchmark()}) {
        for (const auto& sub : samples()) {
            for (double x : {0.01, 0.08, 0.2}) {
                const double jumps = levy_integral(
                    [&](double s) {
                        const AffineBond ab = affine_bond_coefficients(model, s);
                        return -std::expm1(std::log(ab.A) - ab.B * x) * levy_density(sub, s);
                    });
                const double ref = sub.drift * x + jumps;
                const double got = short_rate_map(model, sub, x);
                INFO(std::string(to_string(model.kind())) << " " << to_string(sub.family) << " p=" << sub.p << " x=" << x << " diff=" << got - ref);
                CHECK(std::abs(got - ref) < 1e-11);
            }
        }
    }
}

TEST_CASE("subordinated 3/2 short rate is unsupported")
{
    CHECK_THROWS_AS(short_rate_map(three_halves_sample(), SubordinatorSpec::inverse_gaussian(0.5, 0.5, 1.0), 0.1),
                    UnsupportedModelError);
}

TEST_CASE("subordinator validation")
{
    CHECK_THROWS_AS(SubordinatorSpec::inverse_gaussian(-0.1, 0.5, 1.0).validate(), DomainError);
    CHECK_THROWS_AS(SubordinatorSpec::tempered_stable(0.0, 1.0, 1.2, 1.0).validate(), DomainError);
    CHECK(subordinator_family_from_string("ig") == SubordinatorFamily::InverseGaussian);
    CHECK_THROWS(subordinator_family_from_string("poisson"));
}
