#ifndef LATSUM_SUMS_HPP
#define LATSUM_SUMS_HPP

#include "latsum/lattice.hpp"

#include <cstdint>
#include <optional>
#include <string_view>

namespace latsum
{

enum class Method
{
    direct,
    digamma,
    expansion,
    quadrature
};

std::string_view to_string(Method method) noexcept;

struct SumResult
{
    double value = 0.0;
    long double value_ext = 0.0L; ///< the same quantity before rounding to double
    int n = 0;
    Method method = Method::direct;
    std::int64_t terms = 0;
    double err_estimate = 0.0;
};

/// F_n of f (m absent) or of f_m, over the full grid or, with beta, the
/// restricted box. m >= 2 requires beta.
SumResult fn_direct(const LatticeSpec& spec, int n, std::optional<int> m = std::nullopt,
                    std::optional<double> beta = std::nullopt, BoxConstant box = BoxConstant::printed);

/// G_n = sum_{j,k=1}^{n-1} 1/(a j^2 - b j k + c k^2) + 1/(a j^2 + b j k + c k^2).
SumResult gn_direct(const QuadraticForm& form, int n);

/// G_n through the digamma representation, O(n) digamma calls.
SumResult gn_digamma(const QuadraticForm& form, int n);

/// H_n = sum_{j=1}^{n-1} 1/j^2.
double hn_direct(int n);
long double hn_direct_ext(int n);

/// U_n, the four-term boundary sum over j = 1..n.
double un_direct(const QuadraticForm& form, int n);
long double un_direct_ext(const QuadraticForm& form, int n);

} // namespace latsum

#endif
