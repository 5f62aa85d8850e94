#ifndef LATSUM_QUADRATURE_HPP
#define LATSUM_QUADRATURE_HPP

#include "latsum/lattice.hpp"
#include "latsum/sums.hpp"

#include <cstdint>
#include <functional>
#include <optional>

namespace latsum
{

struct Rect
{
    double x0;
    double x1;
    double y0;
    double y1;
};

struct QuadratureOptions
{
    double rel_tol = 1e-10;
    std::int64_t max_evals = 10'000'000;
    int min_depth = 4; ///< panels touching the hole are split this many times up front
};

struct QuadratureResult
{
    double value = 0.0;
    long double value_ext = 0.0L;
    double err_estimate = 0.0;
    std::int64_t evals = 0;
    std::int64_t panels = 0;
};

/// Adaptive tensor Gauss-Legendre cubature of f over outer minus hole. The
/// hole must lie inside outer. When the hole contains the origin on an axis,
/// the initial panels are graded geometrically towards it. Throws
/// ToleranceNotMet when max_evals is exhausted.
QuadratureResult integrate_with_hole(const std::function<double(double, double)>& f, Rect outer,
                                     std::optional<Rect> hole = std::nullopt, QuadratureOptions options = {});

/// I_n(f_1) by the polar-coordinate closed form; even n subtracts the
/// corner-box integral, evaluated numerically.
SumResult in_f1_closed(const LatticeSpec& spec, int n);

/// I_n(f) = (1/Delta^2) * integral of f over [-pi,pi]^2 minus [-pi/n,pi/n]^2.
SumResult in_f_numeric(const LatticeSpec& spec, int n, double tol = 1e-10);

/// I_n(f_m) over the cells of the restricted grid (or, without beta and
/// m = 1, of the full grid) with the central cell removed.
SumResult in_fm_numeric(const LatticeSpec& spec, int n, int m, std::optional<double> beta, double tol = 1e-10,
                        BoxConstant box = BoxConstant::printed);

/// Product midpoint-rule bound (d1^2 M1 + d2^2 M2) / 24.
double midpoint_error_bound(double delta1, double delta2, double max_d2_1, double max_d2_2);

} // namespace latsum

#endif
