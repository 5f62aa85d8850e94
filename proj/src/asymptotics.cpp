#include "latsum/asymptotics.hpp"

#include "latsum/errors.hpp"
#include "latsum/quadrature.hpp"
#include "latsum/special.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace latsum
{

std::string_view to_string(ErrorOrder order) noexcept
{
    switch (order) {
    case ErrorOrder::log_n:
        return "log_n";
    case ErrorOrder::constant:
        return "const";
    case ErrorOrder::logn_over_n2:
        return "logn_over_n2";
    case ErrorOrder::inv_n2:
        return "inv_n2";
    case ErrorOrder::logn_over_n4:
        return "logn_over_n4";
    case ErrorOrder::inv_n5:
        return "inv_n5";
    case ErrorOrder::exact:
        return "exact";
    }
    return "unknown";
}

ErrorOrder error_order_from_string(std::string_view name)
{
    for (auto order : {ErrorOrder::log_n, ErrorOrder::constant, ErrorOrder::logn_over_n2, ErrorOrder::inv_n2,
                       ErrorOrder::logn_over_n4, ErrorOrder::inv_n5, ErrorOrder::exact}) {
        if (to_string(order) == name) {
            return order;
        }
    }
    throw std::invalid_argument("unknown error order '" + std::string(name) + "'");
}

long double ExpansionTerms::evaluate(int n) const
{
    if (n < 1) {
        throw std::invalid_argument("expansions are evaluated at n >= 1");
    }
    const long double x = n;
    const long double lead = scale == LeadingScale::n2_log_n ? x * x * std::log(x) : std::log(x);
    const long double constant = n % 2 == 0 ? c_1_even : c_1_odd;
    return c_n2logn * lead + c_n2 * x * x + c_n * x + constant + c_inv_n / x + c_inv_n2 / (x * x) +
           c_inv_n3 / (x * x * x);
}

ErrorOrder ExpansionTerms::error_order_at(int n) const noexcept
{
    return n % 2 == 1 && odd_error_order ? *odd_error_order : error_order;
}

namespace
{

using L = long double;

// Normalized coefficients in extended precision plus the derived scalars
// that every expansion shares.
struct FormData
{
    L a;
    L b;
    L c;
    L sd;    // sqrt|d|
    L sigma; // 1/a + 1/c
    L s;     // 1/(a-b+c) + 1/(a+b+c)
};

FormData form_data(const QuadraticForm& q)
{
    const L a = q.a();
    const L b = q.b();
    const L c = q.c();
    const L sd = std::sqrt(4.0L * a * c - b * b);
    return {a, b, c, sd, 1.0L / a + 1.0L / c, 1.0L / (a - b + c) + 1.0L / (a + b + c)};
}

// (pi/2 - arctan((c-a)/sqrt|d|)) for a normalized form.
L angle_term(const FormData& f)
{
    return kPiL / 2.0L - std::atan((f.c - f.a) / f.sd);
}

L clausen_sum(const FormData& f)
{
    L total = 0.0L;
    for (L x : {2.0L * f.a - f.b, 2.0L * f.a + f.b, 2.0L * f.c - f.b, 2.0L * f.c + f.b}) {
        total += clausen_cl2(kPiL - 2.0L * std::atan(x / f.sd));
    }
    return total;
}

L log_eta_mu(const FormData& f)
{
    return log_abs_eta(std::complex<L>(-f.b / (2.0L * f.c), f.sd / (2.0L * f.c)));
}

QuadraticForm checked_normalized(const QuadraticForm& form, Normalization normalization)
{
    if (normalization == Normalization::as_given && !form.normalized()) {
        throw std::invalid_argument("form is not normalized (need 0 < a <= c and b >= 0)");
    }
    return form.normalize();
}

} // namespace

long double g1_integral_clausen(const QuadraticForm& form)
{
    const FormData f = form_data(form.normalize());
    return angle_term(f) * 0.5L * std::log(f.a / f.c) + 0.5L * clausen_sum(f);
}

double g1_integral_dilog(const QuadraticForm& form)
{
    const auto mu = form.normalize().mu();
    return (dilog_complex(mu) - dilog_complex(-mu)).imag();
}

ExpansionTerms gn_expansion(const QuadraticForm& form, Normalization normalization)
{
    const FormData f = form_data(checked_normalized(form, normalization));
    ExpansionTerms t;
    t.scale = LeadingScale::log_n;
    t.error_order = ErrorOrder::logn_over_n4;
    t.c_n2logn = 2.0L * kPiL / f.sd;
    const L constant = 2.0L * kPiL * kEulerGammaL / f.sd - kPiL * kPiL / 6.0L * f.sigma -
                       4.0L * kPiL / f.sd * log_eta_mu(f) +
                       (angle_term(f) * std::log(f.c / f.a) - clausen_sum(f)) / f.sd;
    t.c_1_even = constant;
    t.c_1_odd = constant;
    t.c_inv_n = f.sigma - kPiL / f.sd;
    t.c_inv_n2 = f.sigma / 2.0L + f.s / 12.0L - kPiL / (6.0L * f.sd);
    t.c_inv_n3 = f.sigma / 6.0L + f.s / 12.0L;
    return t;
}

ExpansionTerms fn_f1_expansion(const LatticeSpec& spec)
{
    const FormData f = form_data(spec.form().normalize());
    const FormData raw = form_data(spec.form());
    const L size = static_cast<L>(spec.size());
    const L pi2 = kPiL * kPiL;
    ExpansionTerms t;
    t.error_order = ErrorOrder::logn_over_n2;
    t.c_n2logn = 2.0L * size / (kPiL * f.sd);
    t.c_n2 = size / (pi2 * f.sd) *
             (2.0L * kPiL * (kEulerGammaL - std::log(2.0L)) - 4.0L * kPiL * log_eta_mu(f) +
              angle_term(f) * std::log(f.c / f.a) - clausen_sum(f));
    t.c_1_odd = size / pi2 * (raw.s + kPiL / raw.sd) / 3.0L;
    t.c_1_even = t.c_1_odd - size / pi2 * (kPiL / raw.sd + 2.0L / (raw.a - raw.b + raw.c));
    return t;
}

ExpansionTerms in_f1_expansion(const LatticeSpec& spec)
{
    const FormData raw = form_data(spec.form());
    const L size = static_cast<L>(spec.size());
    ExpansionTerms t;
    t.c_n2logn = 2.0L * size / (kPiL * raw.sd);
    t.c_1_odd = 0.0L;
    t.c_1_even = -(size / (kPiL * raw.sd) + 2.0L * size / (kPiL * kPiL) / (raw.a - raw.b + raw.c));
    t.error_order = ErrorOrder::inv_n2;
    t.odd_error_order = ErrorOrder::exact;
    return t;
}

ExpansionTerms hn_expansion()
{
    ExpansionTerms t;
    t.c_1_even = kPiL * kPiL / 6.0L;
    t.c_1_odd = t.c_1_even;
    t.c_inv_n = -1.0L;
    t.c_inv_n2 = -0.5L;
    t.c_inv_n3 = -1.0L / 6.0L;
    t.error_order = ErrorOrder::inv_n5;
    return t;
}

ExpansionTerms un_expansion(const QuadraticForm& form)
{
    const FormData f = form_data(form);
    ExpansionTerms t;
    t.c_inv_n = 2.0L * kPiL / f.sd;
    t.c_inv_n2 = f.s - f.sigma;
    t.c_inv_n3 = -f.s / 6.0L;
    t.error_order = ErrorOrder::inv_n5;
    return t;
}

double leading_term(const LatticeSpec& spec)
{
    return static_cast<double>(static_cast<L>(spec.size()) / (kPiL * std::sqrt(static_cast<L>(spec.det_sts()))));
}

SumResult composite_fn_estimate(const LatticeSpec& spec, int n, double tol)
{
    if (n < 4) {
        throw std::invalid_argument("composite_fn_estimate needs n >= 4");
    }
    const SumResult in_f = in_f_numeric(spec, n, tol);
    const SumResult in_f1 = in_f1_closed(spec, n);
    const L value = in_f.value_ext - in_f1.value_ext + fn_f1_expansion(spec).evaluate(n);
    SumResult r;
    r.value_ext = value;
    r.value = static_cast<double>(value);
    r.n = n;
    r.method = Method::expansion;
    r.terms = in_f.terms + in_f1.terms;
    r.err_estimate = 10.0 * leading_term(spec) * std::log(static_cast<double>(n));
    return r;
}

long double theorem2_combination(const LatticeSpec& spec, int n, int m, std::optional<double> beta, double tol)
{
    if (m < 1) {
        throw std::invalid_argument("Taylor order m must be at least 1");
    }
    const L fn_f = fn_direct(spec, n).value_ext;
    const L in_f = in_f_numeric(spec, n, tol).value_ext;
    const L in_fm = in_fm_numeric(spec, n, m, beta, tol).value_ext;
    const L fn_fm = fn_direct(spec, n, m, beta).value_ext;
    return (fn_f - in_f) + (in_fm - fn_fm);
}

ResidualReport residual_order_fit(std::vector<ResidualSample> samples, ErrorOrder model)
{
    double p_model = 0.0;
    switch (model) {
    case ErrorOrder::log_n:
    case ErrorOrder::constant:
        p_model = 0.0;
        break;
    case ErrorOrder::logn_over_n2:
    case ErrorOrder::inv_n2:
        p_model = -2.0;
        break;
    case ErrorOrder::logn_over_n4:
        p_model = -4.0;
        break;
    case ErrorOrder::inv_n5:
        p_model = -5.0;
        break;
    case ErrorOrder::exact:
        throw std::invalid_argument("an exact model has no residual growth to fit");
    }
    if (samples.size() < 4) {
        throw InsufficientSamples("residual_order_fit needs at least 4 samples");
    }
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (samples[i].n < 2 || !std::isfinite(samples[i].residual)) {
            throw std::invalid_argument("samples need n >= 2 and finite residuals");
        }
        if (i > 0 && samples[i].n <= samples[i - 1].n) {
            throw std::invalid_argument("sample n values must be strictly increasing");
        }
    }
    const std::size_t k = samples.size();
    std::vector<double> ln(k);
    std::vector<double> lln(k);
    std::vector<double> lr(k);
    for (std::size_t i = 0; i < k; ++i) {
        ln[i] = std::log(static_cast<double>(samples[i].n));
        lln[i] = std::log(ln[i]);
        // An exactly vanishing residual is treated as the smallest normal double.
        lr[i] = std::log(std::max(std::abs(samples[i].residual), std::numeric_limits<double>::min()));
    }
    auto rss_at_model = [&](double q) {
        double mean = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            mean += lr[i] - p_model * ln[i] - q * lln[i];
        }
        mean /= static_cast<double>(k);
        double rss = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            const double e = lr[i] - p_model * ln[i] - q * lln[i] - mean;
            rss += e * e;
        }
        return rss;
    };
    const double q = rss_at_model(1.0) < rss_at_model(0.0) ? 1.0 : 0.0;

    // Least squares of log(|r| / (log n)^q) against log n.
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        mx += ln[i];
        my += lr[i] - q * lln[i];
    }
    mx /= static_cast<double>(k);
    my /= static_cast<double>(k);
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        sxx += (ln[i] - mx) * (ln[i] - mx);
        sxy += (ln[i] - mx) * (lr[i] - q * lln[i] - my);
    }
    const double slope = sxy / sxx;

    ResidualReport report;
    report.samples = std::move(samples);
    report.model_exponent = p_model;
    report.fitted_exponent = slope;
    report.fitted_log_power = q;
    report.amplitude = std::exp(my - slope * mx);
    report.passed = std::isfinite(slope) && std::isfinite(report.amplitude) && std::abs(slope - p_model) <= 0.4;
    return report;
}

namespace
{

double bernoulli_sup(int p)
{
    switch (p) {
    case 1:
        return 0.5;
    case 2:
        return 1.0 / 6.0;
    case 3:
        return std::sqrt(3.0) / 36.0;
    default:
        return 1.0 / 30.0;
    }
}

} // namespace

std::vector<long double> euler_maclaurin_coefficients(const EulerMaclaurinInput& input, int p)
{
    if (p < 1 || p > 4) {
        throw std::invalid_argument("euler_maclaurin supports 1 <= p <= 4");
    }
    if (input.at_zero.size() < static_cast<std::size_t>(p) || input.at_one.size() < static_cast<std::size_t>(p)) {
        throw std::invalid_argument("euler_maclaurin needs g and its first p-1 derivatives at 0 and 1");
    }
    const auto bern = bernoulli_numbers(p);
    std::vector<long double> c(static_cast<std::size_t>(p) + 1, 0.0L);
    c[0] = input.integral;
    c[1] = -static_cast<L>(input.at_zero[0]);
    L factorial = 1.0L;
    for (int l = 1; l <= p; ++l) {
        factorial *= l;
        const auto idx = static_cast<std::size_t>(l - 1);
        c[static_cast<std::size_t>(l)] +=
            static_cast<L>(bern[static_cast<std::size_t>(l)]) / factorial *
            (static_cast<L>(input.at_one[idx]) - static_cast<L>(input.at_zero[idx]));
    }
    return c;
}

EulerMaclaurinResult euler_maclaurin(const EulerMaclaurinInput& input, int n, int p)
{
    if (n < 1) {
        throw std::invalid_argument("euler_maclaurin needs n >= 1");
    }
    const auto c = euler_maclaurin_coefficients(input, p);
    const L x = n;
    L value = 0.0L;
    for (std::size_t l = c.size(); l-- > 0;) {
        value = value / x + c[l];
    }
    EulerMaclaurinResult r;
    r.value = static_cast<double>(value);
    if (input.derivative_p) {
        constexpr int samples = 2000;
        double mean_abs = 0.0;
        for (int i = 0; i < samples; ++i) {
            mean_abs += std::abs(input.derivative_p((i + 0.5) / samples));
        }
        mean_abs /= samples;
        double factorial = 1.0;
        for (int l = 2; l <= p; ++l) {
            factorial *= l;
        }
        r.remainder_bound = bernoulli_sup(p) / factorial * mean_abs / std::pow(static_cast<double>(n), p);
    }
    return r;
}

ExpansionTerms gn_expansion_from_pieces(const QuadraticForm& form)
{
    const FormData f = form_data(form.normalize());
    const L sd = f.sd;
    const L ap = f.a - f.b + f.c;
    const L am = f.a + f.b + f.c;
    const L angle = angle_term(f);
    auto d = [](L x) { return static_cast<double>(x); };

    // G1: g_1(x) = sum_{+-} arctan(sqrt|d| x / (2c -+ b x)) / x
    EulerMaclaurinInput g1;
    g1.integral = g1_integral_dilog(form);
    g1.at_zero = {d(sd / f.c), 0.0};
    g1.at_one = {d(std::atan(sd / (2.0L * f.c - f.b)) + std::atan(sd / (2.0L * f.c + f.b))),
                 d(sd / (2.0L * ap) - std::atan(sd / (2.0L * f.c - f.b)) + sd / (2.0L * am) -
                   std::atan(sd / (2.0L * f.c + f.b)))};
    // G2: g_2(x) = 1/(a x^2 - b x + c) + 1/(a x^2 + b x + c)
    EulerMaclaurinInput g2;
    g2.integral = d(2.0L / sd * angle);
    g2.at_zero = {d(2.0L / f.c), 0.0};
    g2.at_one = {d(f.s), d(-(2.0L * f.a - f.b) / (ap * ap) - (2.0L * f.a + f.b) / (am * am))};
    // G3: g_3(x) = (2c - b x)/(a x^2 - b x + c)^2 + (2c + b x)/(a x^2 + b x + c)^2
    EulerMaclaurinInput g3;
    g3.integral = d(f.s + 2.0L / sd * angle);
    g3.at_zero = {d(4.0L / f.c)};
    g3.at_one = {d((2.0L * f.c - f.b) / (ap * ap) + (2.0L * f.c + f.b) / (am * am))};

    const auto c1 = euler_maclaurin_coefficients(g1, 2);
    const auto c2 = euler_maclaurin_coefficients(g2, 2);
    const auto c3 = euler_maclaurin_coefficients(g3, 1);
    // G4 = -(pi sqrt|d| / (24 c) + log|eta(mu)|); G5 = log n + gamma - 1/(2n) - 1/(12 n^2); G6 = H_n.
    const L g4 = -(kPiL * sd / (24.0L * f.c) + log_eta_mu(f));
    const L w1 = -2.0L / sd;
    const L w5 = 2.0L * kPiL / sd;
    const L w6 = -1.0L / f.a;

    ExpansionTerms t;
    t.scale = LeadingScale::log_n;
    t.error_order = ErrorOrder::logn_over_n4;
    t.c_n2logn = w5;
    const L constant = w1 * c1[0] + 4.0L * kPiL / sd * g4 + w5 * kEulerGammaL + w6 * kPiL * kPiL / 6.0L;
    t.c_1_even = constant;
    t.c_1_odd = constant;
    t.c_inv_n = w1 * c1[1] - 0.5L * c2[0] - 0.5L * w5 - w6;
    t.c_inv_n2 = w1 * c1[2] - 0.5L * c2[1] - c3[0] / 12.0L - w5 / 12.0L - 0.5L * w6;
    t.c_inv_n3 = -0.5L * c2[2] - c3[1] / 12.0L - w6 / 6.0L;
    return t;
}

namespace
{

// Truncated power series in eps = 1/n through eps^4.
struct Series
{
    std::array<L, 5> c{};

    static Series constant(L v)
    {
        Series s;
        s.c[0] = v;
        return s;
    }

    Series operator+(const Series& o) const
    {
        Series r;
        for (std::size_t i = 0; i < c.size(); ++i) {
            r.c[i] = c[i] + o.c[i];
        }
        return r;
    }

    Series operator*(const Series& o) const
    {
        Series r;
        for (std::size_t i = 0; i < c.size(); ++i) {
            for (std::size_t j = 0; i + j < c.size(); ++j) {
                r.c[i + j] += c[i] * o.c[j];
            }
        }
        return r;
    }

    Series operator*(L v) const
    {
        Series r;
        for (std::size_t i = 0; i < c.size(); ++i) {
            r.c[i] = c[i] * v;
        }
        return r;
    }
};

// log(1 + t eps)
Series log1p_series(L t)
{
    Series s;
    L power = 1.0L;
    for (std::size_t k = 1; k < s.c.size(); ++k) {
        power *= t;
        s.c[k] = (k % 2 == 1 ? 1.0L : -1.0L) * power / static_cast<L>(k);
    }
    return s;
}

// k eps / (1 + t eps)
Series scaled_reciprocal(L k, L t)
{
    Series s;
    L power = k;
    for (std::size_t i = 1; i < s.c.size(); ++i) {
        s.c[i] = power;
        power *= -t;
    }
    return s;
}

// G_N + sigma H_N with N = n (1 + t eps) / 2, without the lambda log n term.
Series g_plus_h(const ExpansionTerms& g, L sigma, L t)
{
    const Series x = scaled_reciprocal(2.0L, t); // 1/N
    const Series x2 = x * x;
    const Series x3 = x2 * x;
    const Series log_part = Series::constant(-std::log(2.0L)) + log1p_series(t);
    const Series gs = log_part * g.c_n2logn + Series::constant(g.c_1_odd) + x * g.c_inv_n + x2 * g.c_inv_n2 +
                      x3 * g.c_inv_n3;
    const Series hs = Series::constant(kPiL * kPiL / 6.0L) + x * -1.0L + x2 * -0.5L + x3 * (-1.0L / 6.0L);
    return gs + hs * sigma;
}

} // namespace

ExpansionTerms fn_f1_expansion_from_assembly(const LatticeSpec& spec, bool even)
{
    const ExpansionTerms g = gn_expansion(spec.form());
    const ExpansionTerms u = un_expansion(spec.form());
    const FormData raw = form_data(spec.form());
    const L scale = static_cast<L>(spec.size()) / (kPiL * kPiL);

    Series p;
    L extra = 0.0L;
    if (!even) {
        p = g_plus_h(g, raw.sigma, 1.0L);
    } else {
        // U at n/2: 1/(n/2) = 2 eps exactly.
        Series us;
        us.c[1] = 2.0L * u.c_inv_n;
        us.c[2] = 4.0L * u.c_inv_n2;
        us.c[3] = 8.0L * u.c_inv_n3;
        p = g_plus_h(g, raw.sigma, 2.0L) + us * -0.5L;
        extra = 2.0L * scale * (1.0L / (raw.a + raw.b + raw.c) - raw.sigma);
    }
    ExpansionTerms t;
    t.error_order = ErrorOrder::logn_over_n2;
    t.c_n2logn = scale * g.c_n2logn;
    t.c_n2 = scale * p.c[0];
    t.c_n = scale * p.c[1];
    t.c_1_even = scale * p.c[2] + extra;
    t.c_1_odd = t.c_1_even;
    t.c_inv_n = scale * p.c[3];
    return t;
}

long double fn_f1_assembly(const LatticeSpec& spec, int n)
{
    if (n < 2) {
        throw std::invalid_argument("fn_f1_assembly needs n >= 2");
    }
    const QuadraticForm& form = spec.form();
    const FormData raw = form_data(form);
    const L size = static_cast<L>(spec.size());
    const L nl = n;
    const L prefactor = size * nl * nl / (kPiL * kPiL);
    if (n % 2 == 1) {
        const int big_n = (n + 1) / 2;
        return prefactor * (gn_direct(form, big_n).value_ext + raw.sigma * hn_direct_ext(big_n));
    }
    const int big_m = n / 2 + 1;
    return prefactor * (gn_direct(form, big_m).value_ext + raw.sigma * hn_direct_ext(big_m) -
                        0.5L * un_direct_ext(form, n / 2)) +
           2.0L * size / (kPiL * kPiL) * (1.0L / (raw.a + raw.b + raw.c) - raw.sigma);
}

} // namespace latsum
