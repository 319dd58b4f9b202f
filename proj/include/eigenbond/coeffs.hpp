#pragma once

#include "eigenbond/models.hpp"
#include "eigenbond/subordinators.hpp"
#include "eigenbond/truncation.hpp"

#include <cstddef>
#include <vector>

namespace eigenbond {

/// Dense row-major matrix.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill)
    {}

    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }

    double& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
    double operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

    const std::vector<double>& data() const noexcept { return data_; }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> data_;
};

// ---------------------------------------------------------------------------
// Auxiliary integrals. Arguments may be +inf (and -inf for the Hermite family),
// in which case the orthogonality / integral-identity closed forms are used.
// ---------------------------------------------------------------------------

/// a_{n,m}^{(alpha)}(x) = int_0^x L_n^{(alpha)} L_m^{(alpha)} e^{-y} y^alpha dy.
double laguerre_a(int n, int m, double alpha, double x);

/// Symmetric table of a_{n,m}^{(alpha)}(x) for 0 <= n, m <= n_max. The diagonal
/// is built by descending the order from alpha + n_max to alpha.
Matrix laguerre_a_table(int n_max, double alpha, double x);

/// b_n^{(alpha)}(s, x) = int_0^x y^alpha e^{-s y} L_n^{(alpha)}(y) dy.
double laguerre_b(int n, double alpha, double s, double x);
std::vector<double> laguerre_b_sequence(int n_max, double alpha, double s, double x);

/// a_{n,m}(x) = int_{-inf}^x e^{-y^2} H_n H_m dy.
double hermite_a(int n, int m, double x);
Matrix hermite_a_table(int n_max, double x);

/// b_n(s, x) = int_{-inf}^x e^{s y - y^2} H_n(y) dy.
double hermite_b(int n, double s, double x);
std::vector<double> hermite_b_sequence(int n_max, double s, double x);

// ---------------------------------------------------------------------------
// Truncated-interval projections.
// ---------------------------------------------------------------------------

/// pi_{m,n}(x_lo, x_hi) = int_{x_lo}^{x_hi} phi_m phi_n m(z) dz for 0 <= m, n <= n_max.
/// x_lo / x_hi may be the state-space endpoints (including infinities).
struct OverlapMatrix {
    Matrix entries;
    double x_lo = 0.0;
    double x_hi = 0.0;
    ModelKind model = ModelKind::CIR;
};

OverlapMatrix overlap_matrix(const DiffusionModel& model, int n_max, double x_lo, double x_hi);

enum class ProjectionRoute { ClosedFormAffine, EigenExpansion };

/// p_n(x_lo, x_hi) = int_{x_lo}^{x_hi} P(delta, z) phi_n(z) m(z) dz.
struct StrikeProjection {
    std::vector<double> entries;
    double notice_delta = 0.0;
    ProjectionRoute route = ProjectionRoute::ClosedFormAffine;
    int inner_terms = 0; // highest m used by the expansion route
};

/// Closed-form route only for the non-subordinated CIR and Vasicek models; the
/// expansion route truncates its inner sum with `rule`.
StrikeProjection strike_projection(const DiffusionModel& model, const SubordinatorSpec& sub, int n_max,
                                   double x_lo, double x_hi, double delta, ProjectionRoute route,
                                   const TruncationRule& rule = {});

/// Closed form where available, expansion otherwise.
ProjectionRoute default_route(const DiffusionModel& model, const SubordinatorSpec& sub);

} // namespace eigenbond
