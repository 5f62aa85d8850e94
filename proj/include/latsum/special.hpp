#ifndef LATSUM_SPECIAL_HPP
#define LATSUM_SPECIAL_HPP

#include <complex>
#include <vector>

namespace latsum
{

struct Constants
{
    double euler_gamma;
    double catalan;
    double gamma_quarter; ///< Gamma(1/4)
    double gamma_third;   ///< Gamma(1/3)
};

const Constants& constants() noexcept;

// Extended-precision copies, for the expansion coefficients.
inline constexpr long double kEulerGammaL = 0.577215664901532860606512090082402431L;
inline constexpr long double kCatalanL = 0.915965594177219015054603514932384110L;
inline constexpr long double kGammaQuarterL = 3.625609908221908311930685155867672002L;
inline constexpr long double kGammaThirdL = 2.678938534707747633655692940974677644L;
inline constexpr long double kPiL = 3.141592653589793238462643383279502884L;

/// zeta(2k) for k >= 1.
long double zeta_even(int k);

/// Cl2(theta) = sum sin(k theta) / k^2.
double clausen_cl2(double theta);
long double clausen_cl2(long double theta);

/// Principal-branch dilogarithm on the plane cut along [1, inf).
/// Throws CutViolation on the cut (z = 1 included).
std::complex<double> dilog_complex(std::complex<double> z);

/// omega = arctan(r sin theta / (1 - r cos theta)) for r in (0, 1].
double kummer_omega(double r, double theta);

/// log |eta(tau)| for Im tau > 0; throws LowerHalfPlane otherwise.
double log_abs_eta(std::complex<double> tau);
long double log_abs_eta(std::complex<long double> tau);

/// Complex digamma; throws PoleAt at 0, -1, -2, ...
std::complex<double> digamma_complex(std::complex<double> z);

/// B_0 .. B_p with B_1 = -1/2; p <= 20.
std::vector<double> bernoulli_numbers(int p);

/// Periodic Bernoulli polynomial B_p(x - floor x), p <= 4.
double bernoulli_poly(int p, double x);

} // namespace latsum

#endif
