#include "eigenbond/coeffs.hpp"
#include "support/properties.hpp"

#include <doctest.h>

#include <cmath>

using namespace eigenbond;
using namespace eigenbond::testing;

TEST_CASE("laguerre integral recursions against quadrature")
{
    const RandomCheck a = laguerre_a_check(11, 200);
    const RandomCheck b = laguerre_b_check(12, 200);
    INFO(a.worst);
    INFO(b.worst);
    CHECK(a.cases == 200);
    CHECK(a.max_error < 1e-9);
    CHECK(b.max_error < 1e-9);
}

TEST_CASE("hermite integral recursions against quadrature")
{
    const RandomCheck a = hermite_a_check(21, 200);
    const RandomCheck b = hermite_b_check(22, 200);
    INFO(a.worst);
    INFO(b.worst);
    CHECK(a.cases == 200);
    CHECK(a.max_error < 1e-9);
    CHECK(b.max_error < 1e-9);
}

TEST_CASE("overlap matrices against quadrature")
{
    for (const auto& model : {cir_benchmark(), vasicek_benchmark(), three_halves_sample()}) {
        const RandomCheck r = overlap_check(model, 31, 200);
        INFO(r.worst);
        CHECK(r.max_error < 1e-9);
    }
}

TEST_CASE("full-range overlap is the identity")
{
    for (const auto& model : {cir_benchmark(), vasicek_benchmark(), three_halves_sample()}) {
        const auto ov = overlap_matrix(model, 20, model.lower_bound(), model.upper_bound());
        for (int n = 0; n <= 20; ++n) {
            for (int m = 0; m <= 20; ++m) {
                CHECK(ov.entries(n, m) == doctest::Approx(n == m ? 1.0 : 0.0).scale(1.0).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("overlaps over a split interval add up")
{
    const auto model = vasicek_benchmark();
    const auto left = overlap_matrix(model, 15, -0.2, 0.07);
    const auto right = overlap_matrix(model, 15, 0.07, 0.4);
    const auto whole = overlap_matrix(model, 15, -0.2, 0.4);
    for (int n = 0; n <= 15; ++n) {
        for (int m = 0; m <= 15; ++m) {
            CHECK(left.entries(n, m) + right.entries(n, m) == doctest::Approx(whole.entries(n, m)).scale(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("strike projection routes agree")
{
    const auto none = SubordinatorSpec::none();
    TruncationRule rule;
    rule.eps = 1e-13;
    for (const auto& model : {cir_benchmark(), vasicek_benchmark()}) {
        const double lo = model.kind() == ModelKind::CIR ? 0.0 : -0.3;
        const auto closed = strike_projection(model, none, 25, lo, 0.06, 0.1666, ProjectionRoute::ClosedFormAffine);
        const auto series = strike_projection(model, none, 25, lo, 0.06, 0.1666, ProjectionRoute::EigenExpansion, rule);
        CHECK(default_route(model, none) == ProjectionRoute::ClosedFormAffine);
        CHECK(series.inner_terms > 0);
        for (int n = 0; n <= 25; ++n) {
            CHECK(series.entries[static_cast<std::size_t>(n)]
                  == doctest::Approx(closed.entries[static_cast<std::size_t>(n)]).scale(1.0).epsilon(1e-9));
        }
    }
    CHECK(default_route(cir_benchmark(), SubordinatorSpec::inverse_gaussian(0.5, 0.5, 1.0))
          == ProjectionRoute::EigenExpansion);
}
