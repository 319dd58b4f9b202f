#include "eigenbond/specfun.hpp"

#include <doctest.h>

#include <boost/math/special_functions/binomial.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/hermite.hpp>
#include <boost/math/special_functions/hypergeometric_1F1.hpp>
#include <boost/math/special_functions/laguerre.hpp>

#include <cmath>
#include <numbers>

using namespace eigenbond;

TEST_CASE("laguerre sequence matches boost for integer order")
{
    for (unsigned alpha : {0u, 1u, 3u}) {
        for (double x : {0.0, 0.3, 2.5, 11.0, 40.0}) {
            const auto L = specfun::laguerre_sequence(25, alpha, x);
            for (unsigned n = 0; n <= 25; ++n) {
                const double ref = boost::math::laguerre(n, alpha, x);
                CHECK(L[n] == doctest::Approx(ref).epsilon(1e-11).scale(1.0));
            }
        }
    }
}

TEST_CASE("laguerre sequence matches the confluent hypergeometric form for real order")
{
    for (double alpha : {-0.745, 0.4, 2.7}) {
        for (double x : {0.1, 1.7, 6.0}) {
            const auto L = specfun::laguerre_sequence(12, alpha, x);
            for (int n = 0; n <= 12; ++n) {
                const double binom = std::exp(std::lgamma(n + alpha + 1.0) - std::lgamma(n + 1.0) - std::lgamma(alpha + 1.0));
                const double ref = binom * boost::math::hypergeometric_1F1(static_cast<double>(-n), alpha + 1.0, x);
                CHECK(L[static_cast<std::size_t>(n)] == doctest::Approx(ref).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("hermite sequence matches boost")
{
    for (double x : {-4.0, -0.5, 0.0, 1.3, 5.0}) {
        const auto H = specfun::hermite_sequence(30, x);
        for (unsigned n = 0; n <= 30; ++n) {
            CHECK(H[n] == doctest::Approx(boost::math::hermite(n, x)).epsilon(1e-12));
        }
    }
}

TEST_CASE("orthonormal sequences carry the square-root norms")
{
    const double x = 1.9, alpha = 0.7;
    const auto L = specfun::laguerre_sequence(15, alpha, x);
    const auto Ln = specfun::laguerre_orthonormal_sequence(15, alpha, x);
    const auto H = specfun::hermite_sequence(15, x);
    const auto Hn = specfun::hermite_orthonormal_sequence(15, x);
    for (int n = 0; n <= 15; ++n) {
        const double hl = std::exp(std::lgamma(n + alpha + 1.0) - std::lgamma(n + 1.0));
        const double hh = std::pow(2.0, n) * std::tgamma(n + 1.0);
        CHECK(Ln[static_cast<std::size_t>(n)] == doctest::Approx(L[static_cast<std::size_t>(n)] / std::sqrt(hl)).epsilon(1e-12));
        CHECK(Hn[static_cast<std::size_t>(n)] == doctest::Approx(H[static_cast<std::size_t>(n)] / std::sqrt(hh)).epsilon(1e-12));
    }
}

TEST_CASE("incomplete gamma and normal cdf")
{
    for (double a : {0.255, 1.0, 4.5}) {
        for (double x : {1e-6, 0.2, 3.0, 30.0}) {
            CHECK(specfun::lower_incomplete_gamma(a, x) == doctest::Approx(boost::math::tgamma_lower(a, x)).epsilon(1e-13));
            CHECK(specfun::regularized_lower_gamma(a, x) == doctest::Approx(boost::math::gamma_p(a, x)).epsilon(1e-13));
        }
    }
    for (double x : {-30.0, -5.0, -0.3, 0.0, 2.0, 8.0}) {
        const double ref = 0.5 * std::erfc(-x / std::numbers::sqrt2);
        CHECK(specfun::normal_cdf(x) == doctest::Approx(ref).epsilon(1e-14));
        const auto en = specfun::erf_and_normal_cdf(x);
        CHECK(en.erf == doctest::Approx(std::erf(x)).epsilon(1e-14));
    }
}
