#include "eigenbond/errors.hpp"
#include "eigenbond/models.hpp"
#include "support/properties.hpp"

#include <doctest.h>

#include <cmath>

using namespace eigenbond;
using namespace eigenbond::testing;

TEST_CASE("eigenfunctions are orthonormal against the speed density")
{
    CHECK(orthonormality_error(cir_benchmark(), 30) < 1e-8);
    CHECK(orthonormality_error(vasicek_benchmark(), 30) < 1e-8);
    CHECK(orthonormality_error(three_halves_sample(), 30) < 1e-8);
}

TEST_CASE("eigenvalues are increasing with the expected spacing")
{
    const auto cir = cir_benchmark();
    const auto vas = vasicek_benchmark();
    for (int n = 0; n < 20; ++n) {
        CHECK(eigenvalue(cir, n + 1) - eigenvalue(cir, n) == doctest::Approx(cir.cir_gamma()));
        CHECK(eigenvalue(vas, n + 1) - eigenvalue(vas, n) == doctest::Approx(vas.kappa()));
    }
    CHECK(eigenvalue(three_halves_sample(), 3) > eigenvalue(three_halves_sample(), 2));
}

TEST_CASE("expansion zero-coupon bond matches the affine closed form")
{
    const std::vector<double> times{0.5, 1.0, 2.0, 5.0, 10.0, 20.0};
    CHECK(zero_coupon_error(cir_benchmark(), times, {0.0, 0.01, 0.05, 0.13, 0.3}) < 1e-8);
    CHECK(zero_coupon_error(vasicek_benchmark(), times, {-0.1, 0.0, 0.05, 0.1, 0.3}) < 1e-8);
}

TEST_CASE("closed-form bond limits")
{
    const auto cir = cir_benchmark();
    CHECK(closed_form_bond(cir, 0.0, 0.07) == doctest::Approx(1.0));
    const double dt = 1e-6;
    CHECK((1.0 - closed_form_bond(cir, dt, 0.07)) / dt == doctest::Approx(0.07).epsilon(1e-4));
    CHECK_THROWS_AS(closed_form_bond(three_halves_sample(), 1.0, 0.1), UnsupportedModelError);
}

TEST_CASE("model validation")
{
    CHECK_THROWS(DiffusionModel::cir(-1.0, 0.1, 0.2));
    CHECK_THROWS(DiffusionModel::vasicek(0.3, 0.1, 0.0));
    CHECK(model_kind_from_string("vasicek") == ModelKind::Vasicek);
    CHECK_THROWS(model_kind_from_string("hull-white"));
    CHECK(cir_benchmark().contains(0.0));
    CHECK_FALSE(cir_benchmark().contains(-0.01));
}
