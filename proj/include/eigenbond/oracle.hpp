#pragma once

#include "eigenbond/models.hpp"
#include "eigenbond/pricer.hpp"
#include "eigenbond/subordinators.hpp"

#include <cstdint>
#include <vector>

namespace eigenbond::oracle {

/// Composite Gauss-Legendre nodes on a truncated state interval, with weights
/// that already include the speed density m(x).
struct QuadratureGrid {
    std::vector<double> nodes;
    std::vector<double> weights;
    double lower = 0.0;
    double upper = 0.0;
};

/// Interval holding all but 1e-11 of the stationary mass in each tail.
QuadratureGrid make_grid(const DiffusionModel& model, int grid_size);

/// Bermudan dynamic programming on the grid. The transition kernel is the
/// truncated density expansion sum_n e^{-phi(lambda_n) t} phi_n(x) phi_n(y) m(y)
/// with n < n_density; the final step is evaluated directly at x0.
/// Shares only the special-function and model layers with the main pricer.
double quadrature_dp_price(const DiffusionModel& model, const SubordinatorSpec& sub, const BondSchedule& schedule,
                           double x0, int grid_size = 800, int n_density = 120);

struct McEstimate {
    double mean = 0.0;
    double standard_error = 0.0;
};

/// Monte Carlo zero-coupon bond. The diffusion is discretized with Euler steps
/// (full truncation for CIR) and the discount integral by the trapezoid rule.
/// With a subordinator, each path runs the diffusion to the random time T_t.
/// Paths are split into fixed blocks with their own generator, so the result
/// does not depend on `threads`.
McEstimate mc_zero_coupon(const DiffusionModel& model, const SubordinatorSpec& sub, double t, double x0,
                          int paths, int steps_per_year, std::uint64_t seed, int threads = 1);

} // namespace eigenbond::oracle
