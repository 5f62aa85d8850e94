#include "latsum/special.hpp"

#include "latsum/errors.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace latsum
{

const Constants& constants() noexcept
{
    static const Constants c{
        static_cast<double>(kEulerGammaL),
        static_cast<double>(kCatalanL),
        static_cast<double>(kGammaQuarterL),
        static_cast<double>(kGammaThirdL),
    };
    return c;
}

namespace
{

constexpr int kZetaTable = 64;

std::array<long double, kZetaTable + 1> build_zeta_table()
{
    std::array<long double, kZetaTable + 1> z{};
    const long double pi2 = kPiL * kPiL;
    z[1] = pi2 / 6.0L;
    z[2] = pi2 * pi2 / 90.0L;
    z[3] = pi2 * pi2 * pi2 / 945.0L;
    constexpr int cutoff = 64;
    for (int k = 4; k <= kZetaTable; ++k) {
        const int s = 2 * k;
        const long double big_n = cutoff;
        // Euler-Maclaurin tail from n = cutoff onwards.
        long double sum = std::pow(big_n, 1.0L - s) / (s - 1) + 0.5L * std::pow(big_n, -s) +
                          s / 12.0L * std::pow(big_n, -s - 1.0L);
        for (int n = cutoff - 1; n >= 1; --n) {
            sum += std::pow(static_cast<long double>(n), -s);
        }
        z[k] = sum;
    }
    return z;
}

const std::array<long double, kZetaTable + 1>& zeta_table()
{
    static const auto table = build_zeta_table();
    return table;
}

// Cl2 on [0, pi]: theta - theta log theta + sum zeta(2k) theta^(2k+1) / (k (2k+1) (2pi)^(2k)).
long double clausen_series(long double theta)
{
    if (theta == 0.0L) {
        return 0.0L;
    }
    const auto& zeta = zeta_table();
    const long double ratio2 = (theta / (2.0L * kPiL)) * (theta / (2.0L * kPiL));
    long double sum = 0.0L;
    long double power = theta; // theta * ratio^(2k)
    for (int k = 1; k <= kZetaTable; ++k) {
        power *= ratio2;
        const long double term = zeta[k] * power / (k * (2.0L * k + 1.0L));
        sum += term;
        if (term < 1e-22L * theta) {
            break;
        }
    }
    return theta - theta * std::log(theta) + sum;
}

template <typename T>
T clausen_impl(T theta)
{
    if (!std::isfinite(theta)) {
        throw std::invalid_argument("clausen_cl2 needs a finite angle");
    }
    const long double two_pi = 2.0L * kPiL;
    long double r = std::remainder(static_cast<long double>(theta), two_pi);
    const long double sign = r < 0.0L ? -1.0L : 1.0L;
    r = std::abs(r);
    long double value;
    if (r <= 0.5L * kPiL) {
        value = clausen_series(r);
    } else {
        // Duplication: Cl2(pi - phi) = Cl2(phi) - Cl2(2 phi) / 2.
        const long double phi = kPiL - r;
        value = clausen_series(phi) - 0.5L * clausen_series(2.0L * phi);
    }
    return static_cast<T>(sign * value);
}

} // namespace

long double zeta_even(int k)
{
    if (k < 1) {
        throw std::invalid_argument("zeta_even needs k >= 1");
    }
    if (k <= kZetaTable) {
        return zeta_table()[k];
    }
    return 1.0L + std::pow(2.0L, -2.0L * k) + std::pow(3.0L, -2.0L * k);
}

double clausen_cl2(double theta)
{
    return clausen_impl(theta);
}

long double clausen_cl2(long double theta)
{
    return clausen_impl(theta);
}

namespace
{

// Li2(w) = sum_k B_k u^(k+1) / (k+1)!, u = -log(1 - w); needs |u| < 2 pi.
std::complex<long double> dilog_bernoulli_series(std::complex<long double> w)
{
    const std::complex<long double> u = -std::log(1.0L - w);
    const std::complex<long double> u2 = u * u;
    std::complex<long double> sum = u - 0.25L * u2;
    std::complex<long double> power = u; // u^(2k+1)
    const long double inv_two_pi2 = 1.0L / (4.0L * kPiL * kPiL);
    long double scale = 1.0L; // (2 pi)^(-2k)
    const auto& zeta = zeta_table();
    for (int k = 1; k <= kZetaTable; ++k) {
        power *= u2;
        scale *= inv_two_pi2;
        // B_2k / (2k+1)! = (-1)^(k+1) 2 zeta(2k) / ((2k+1) (2 pi)^(2k))
        const long double coef = (k % 2 == 1 ? 2.0L : -2.0L) * zeta[k] * scale / (2.0L * k + 1.0L);
        const std::complex<long double> term = coef * power;
        sum += term;
        if (std::abs(term) < 1e-21L * std::abs(sum)) {
            break;
        }
    }
    return sum;
}

} // namespace

std::complex<double> dilog_complex(std::complex<double> z_in)
{
    if (!std::isfinite(z_in.real()) || !std::isfinite(z_in.imag())) {
        throw std::invalid_argument("dilog_complex needs a finite argument");
    }
    if (z_in.imag() == 0.0 && z_in.real() >= 1.0) {
        throw CutViolation("Li2 argument lies on the branch cut [1, inf)");
    }
    if (z_in == 0.0) {
        return 0.0;
    }
    using C = std::complex<long double>;
    const long double zeta2 = kPiL * kPiL / 6.0L;
    C z(z_in.real(), z_in.imag());
    C offset = 0.0L;
    long double sign = 1.0L;
    if (std::abs(z) > 1.0L) {
        // Li2(z) = -zeta(2) - log^2(-z)/2 - Li2(1/z) off [0, inf).
        const C l = std::log(-z);
        offset = -zeta2 - 0.5L * l * l;
        sign = -1.0L;
        z = 1.0L / z;
    }
    if (z.real() > 0.5L) {
        // Li2(z) = zeta(2) - log z log(1 - z) - Li2(1 - z).
        offset += sign * (zeta2 - std::log(z) * std::log(1.0L - z));
        sign = -sign;
        z = 1.0L - z;
    }
    const C value = offset + sign * dilog_bernoulli_series(z);
    return {static_cast<double>(value.real()), static_cast<double>(value.imag())};
}

double kummer_omega(double r, double theta)
{
    if (!(r > 0.0 && r <= 1.0)) {
        throw std::invalid_argument("kummer_omega needs r in (0, 1]");
    }
    if (r == 1.0) {
        const double red = std::remainder(theta, 2.0 * static_cast<double>(kPiL));
        if (std::abs(red) <= 8.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(theta))) {
            throw DegeneratePoint("kummer_omega is undefined at r = 1, theta = 0 mod 2 pi");
        }
    }
    // The denominator is nonnegative for r <= 1, so atan2 is the principal arctan.
    return std::atan2(r * std::sin(theta), 1.0 - r * std::cos(theta));
}

namespace
{

template <typename T>
T log_abs_eta_impl(std::complex<T> tau_in)
{
    using L = long double;
    if (!std::isfinite(tau_in.real()) || !std::isfinite(tau_in.imag())) {
        throw std::invalid_argument("log_abs_eta needs a finite argument");
    }
    if (!(tau_in.imag() > 0)) {
        throw LowerHalfPlane("eta is defined only for Im tau > 0");
    }
    std::complex<L> tau(tau_in.real(), tau_in.imag());
    L correction = 0.0L;
    // Move small imaginary parts up with tau -> tau + k and tau -> -1/tau:
    // |eta(tau + 1)| = |eta(tau)|, log|eta(tau)| = log|eta(-1/tau)| - log|tau| / 2.
    for (int guard = 0; tau.imag() < 0.25L && guard < 200; ++guard) {
        tau.real(tau.real() - std::nearbyint(tau.real()));
        if (std::abs(tau) >= 1.0L) {
            break;
        }
        correction -= 0.5L * std::log(std::abs(tau));
        tau = -1.0L / tau;
    }
    const L y = tau.imag();
    const L x = tau.real() - std::nearbyint(tau.real());
    const L r = std::exp(-2.0L * kPiL * y);
    const L eps = std::numeric_limits<T>::epsilon() * 1e-3L;
    L sum = 0.0L;
    L rk = 1.0L;
    for (int k = 1; k < 100000; ++k) {
        rk *= r;
        const L re = rk * std::cos(2.0L * kPiL * k * x);
        // log|1 - w| = log1p(|w|^2 - 2 Re w) / 2
        sum += 0.5L * std::log1p(rk * rk - 2.0L * re);
        if (k * rk < eps * (1.0L - r)) {
            break;
        }
    }
    return static_cast<T>(correction - kPiL * y / 12.0L + sum);
}

} // namespace

double log_abs_eta(std::complex<double> tau)
{
    return log_abs_eta_impl(tau);
}

long double log_abs_eta(std::complex<long double> tau)
{
    return log_abs_eta_impl(tau);
}

namespace
{

// cot(pi z) without overflow for large |Im z|.
std::complex<double> cot_pi(std::complex<double> z)
{
    using C = std::complex<double>;
    const double pi = static_cast<double>(kPiL);
    const C w(pi * (z.real() - std::nearbyint(z.real())), pi * z.imag());
    const C i(0.0, 1.0);
    if (w.imag() >= 0.0) {
        const C e = std::exp(2.0 * i * w);
        return -i * (1.0 + 2.0 * e / (1.0 - e));
    }
    const C e = std::exp(-2.0 * i * w);
    return i * (1.0 + 2.0 * e / (1.0 - e));
}

} // namespace

std::complex<double> digamma_complex(std::complex<double> z)
{
    using C = std::complex<double>;
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw std::invalid_argument("digamma_complex needs a finite argument");
    }
    if (z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::nearbyint(z.real())) {
        throw PoleAt("digamma has a pole at " + std::to_string(z.real()));
    }
    if (z.real() < 0.5) {
        // psi(z) = psi(1 - z) - pi cot(pi z)
        return digamma_complex(1.0 - z) - static_cast<double>(kPiL) * cot_pi(z);
    }
    C shift = 0.0;
    while (std::abs(z) < 12.0) {
        shift -= 1.0 / z;
        z += 1.0;
    }
    // log z - 1/(2z) - sum_{k=1}^{6} B_2k / (2k z^2k)
    static constexpr std::array<double, 6> coef{
        1.0 / 12.0, -1.0 / 120.0, 1.0 / 252.0, -1.0 / 240.0, 1.0 / 132.0, -691.0 / 32760.0,
    };
    const C inv2 = 1.0 / (z * z);
    C series = 0.0;
    for (auto it = coef.rbegin(); it != coef.rend(); ++it) {
        series = (series + *it) * inv2;
    }
    return shift + std::log(z) - 0.5 / z - series;
}

namespace
{

__extension__ using Int128 = __int128;

struct Rational
{
    Int128 num;
    Int128 den;
};

Int128 gcd128(Int128 a, Int128 b)
{
    if (a < 0) {
        a = -a;
    }
    if (b < 0) {
        b = -b;
    }
    while (b != 0) {
        const Int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

Rational reduced(Int128 num, Int128 den)
{
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const Int128 g = gcd128(num, den);
    return g > 1 ? Rational{num / g, den / g} : Rational{num, den};
}

constexpr int kMaxBernoulli = 20;

std::array<double, kMaxBernoulli + 1> build_bernoulli()
{
    // sum_{k=0}^{n} C(n+1, k) B_k = 0 in exact rationals.
    std::array<Rational, kMaxBernoulli + 1> b{};
    b[0] = {1, 1};
    for (int n = 1; n <= kMaxBernoulli; ++n) {
        Rational acc{0, 1};
        Int128 binom = 1; // C(n+1, k)
        for (int k = 0; k < n; ++k) {
            acc = reduced(acc.num * b[k].den + binom * b[k].num * acc.den, acc.den * b[k].den);
            binom = binom * (n + 1 - k) / (k + 1);
        }
        b[n] = reduced(-acc.num, acc.den * (n + 1));
    }
    std::array<double, kMaxBernoulli + 1> out{};
    for (int n = 0; n <= kMaxBernoulli; ++n) {
        // Both parts are below 2^53, so the quotient is correctly rounded.
        out[n] = static_cast<double>(b[n].num) / static_cast<double>(b[n].den);
    }
    return out;
}

} // namespace

std::vector<double> bernoulli_numbers(int p)
{
    if (p < 0 || p > kMaxBernoulli) {
        throw std::invalid_argument("bernoulli_numbers supports 0 <= p <= 20");
    }
    static const auto table = build_bernoulli();
    return {table.begin(), table.begin() + p + 1};
}

double bernoulli_poly(int p, double x)
{
    if (p < 0 || p > 4) {
        throw std::invalid_argument("bernoulli_poly supports 0 <= p <= 4");
    }
    if (!std::isfinite(x)) {
        throw std::invalid_argument("bernoulli_poly needs a finite argument");
    }
    const double y = x - std::floor(x);
    switch (p) {
    case 0:
        return 1.0;
    case 1:
        return y - 0.5;
    case 2:
        return (y - 1.0) * y + 1.0 / 6.0;
    case 3:
        return ((y - 1.5) * y + 0.5) * y;
    default:
        return ((y - 2.0) * y + 1.0) * y * y - 1.0 / 30.0;
    }
}

} // namespace latsum
