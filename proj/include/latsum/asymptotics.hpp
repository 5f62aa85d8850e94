#ifndef LATSUM_ASYMPTOTICS_HPP
#define LATSUM_ASYMPTOTICS_HPP

#include "latsum/lattice.hpp"
#include "latsum/sums.hpp"

#include <functional>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

namespace latsum
{

/// Growth class of the error left after truncating an expansion.
enum class ErrorOrder
{
    log_n,
    constant,
    logn_over_n2,
    inv_n2,
    logn_over_n4,
    inv_n5,
    exact
};

std::string_view to_string(ErrorOrder order) noexcept;
ErrorOrder error_order_from_string(std::string_view name);

/// What the c_n2logn slot multiplies: n^2 log n, or plain log n for G_n.
enum class LeadingScale
{
    n2_log_n,
    log_n
};

struct ExpansionTerms
{
    long double c_n2logn = 0.0L;
    long double c_n2 = 0.0L;
    long double c_n = 0.0L;
    long double c_1_even = 0.0L;
    long double c_1_odd = 0.0L;
    long double c_inv_n = 0.0L;
    long double c_inv_n2 = 0.0L;
    long double c_inv_n3 = 0.0L;
    LeadingScale scale = LeadingScale::n2_log_n;
    ErrorOrder error_order = ErrorOrder::exact;
    /// Set when odd n carries a different error class (I_n(f_1) is exact for odd n).
    std::optional<ErrorOrder> odd_error_order;

    long double evaluate(int n) const;
    ErrorOrder error_order_at(int n) const noexcept;
};

enum class Normalization
{
    automatic, ///< map to 0 < a <= c, b >= 0 first
    as_given   ///< reject forms that are not already normalized
};

/// G_n ~ c log n + C + c1/n + c2/n^2 + c3/n^3, error O(log n / n^4).
ExpansionTerms gn_expansion(const QuadraticForm& form, Normalization normalization = Normalization::automatic);

/// F_n(f_1) ~ c n^2 log n + c' n^2 + (parity constant), error O(log n / n^2).
ExpansionTerms fn_f1_expansion(const LatticeSpec& spec);

/// I_n(f_1): exact leading term for odd n, plus a constant for even n.
ExpansionTerms in_f1_expansion(const LatticeSpec& spec);

ExpansionTerms hn_expansion();
ExpansionTerms un_expansion(const QuadraticForm& form);

/// |Phi| / (pi sqrt(det S^T S)), shared by every sum and integral.
double leading_term(const LatticeSpec& spec);

/// F_n(f) estimated as I_n(f) - I_n(f_1) + [expansion of F_n(f_1)](n).
/// err_estimate is a heuristic 10 * leading_term * log n.
SumResult composite_fn_estimate(const LatticeSpec& spec, int n, double tol = 1e-10);

/// F_n(f) - I_n(f) + I_n(f_m) - F_n(f_m) over the beta-restricted box (or the
/// full grid when beta is absent, m = 1 only).
long double theorem2_combination(const LatticeSpec& spec, int n, int m, std::optional<double> beta, double tol = 1e-10);

struct ResidualSample
{
    int n;
    double residual;
};

struct ResidualReport
{
    std::vector<ResidualSample> samples;
    double model_exponent = 0.0;
    double fitted_exponent = 0.0;
    double fitted_log_power = 0.0;
    double amplitude = 0.0;
    bool passed = false;
};

/// Fits |r| ~ A n^p (log n)^q. The log power q in {0, 1} is chosen by
/// comparing amplitude-only fits at the model exponent; p is then fitted
/// freely and must land within 0.4 of the model's exponent.
ResidualReport residual_order_fit(std::vector<ResidualSample> samples, ErrorOrder model);

/// Data for the Euler-Maclaurin form of sum_{j=1}^{n-1} g(j/n)/n.
struct EulerMaclaurinInput
{
    double integral = 0.0;           ///< int_0^1 g
    std::vector<double> at_zero;     ///< g(0), g'(0), ..., at least p values
    std::vector<double> at_one;      ///< g(1), g'(1), ...
    std::function<double(double)> derivative_p; ///< optional g^(p), sampled for the remainder bound
};

struct EulerMaclaurinResult
{
    double value = 0.0;
    double remainder_bound = 0.0; ///< 0 when derivative_p is not given
};

/// Coefficients c_0..c_p of sum ~ sum_l c_l / n^l.
std::vector<long double> euler_maclaurin_coefficients(const EulerMaclaurinInput& input, int p);
EulerMaclaurinResult euler_maclaurin(const EulerMaclaurinInput& input, int n, int p);

/// Theorem-level G_n coefficients rebuilt from the six pieces of the digamma
/// derivation, with the dilogarithm (not Clausen) for the main integral.
ExpansionTerms gn_expansion_from_pieces(const QuadraticForm& form);

/// F_n(f_1) coefficients obtained by substituting the G, H, U expansions
/// into the exact G/H/U decomposition of F_n(f_1) for the given parity.
ExpansionTerms fn_f1_expansion_from_assembly(const LatticeSpec& spec, bool even);

/// Right-hand side of the exact decomposition of F_n(f_1) in G_n, H_n, U_n.
long double fn_f1_assembly(const LatticeSpec& spec, int n);

/// int_0^1 g_1 in closed form, Clausen/arctan version (normalized form).
long double g1_integral_clausen(const QuadraticForm& form);
/// The same integral as Im[Li2(mu) - Li2(-mu)].
double g1_integral_dilog(const QuadraticForm& form);

} // namespace latsum

#endif
