#include "latsum/sums.hpp"

#include "latsum/errors.hpp"
#include "latsum/special.hpp"
#include "latsum/summation.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <vector>

namespace latsum
{

std::string_view to_string(Method method) noexcept
{
    switch (method) {
    case Method::direct:
        return "direct";
    case Method::digamma:
        return "digamma";
    case Method::expansion:
        return "expansion";
    case Method::quadrature:
        return "quadrature";
    }
    return "unknown";
}

namespace
{

constexpr double kEps = std::numeric_limits<double>::epsilon();

long double ordered_total(const std::vector<long double>& parts)
{
    NeumaierSum<long double> total;
    for (long double p : parts) {
        total.add(p);
    }
    return total.value();
}

SumResult make_result(long double value, int n, Method method, std::int64_t terms, double rel_err)
{
    SumResult r;
    r.value_ext = value;
    r.value = static_cast<double>(value);
    r.n = n;
    r.method = method;
    r.terms = terms;
    r.err_estimate = rel_err * std::abs(r.value);
    return r;
}

} // namespace

SumResult fn_direct(const LatticeSpec& spec, int n, std::optional<int> m, std::optional<double> beta, BoxConstant box)
{
    if (n < 2) {
        throw std::invalid_argument("fn_direct needs n >= 2");
    }
    if (m && *m < 1) {
        throw std::invalid_argument("Taylor order m must be at least 1");
    }
    if (m && *m >= 2 && !beta) {
        throw std::invalid_argument("f_m with m >= 2 is only summed over a restricted domain; pass beta");
    }
    const GridDomain domain = beta ? GridDomain::restricted(n, spec, beta, box) : GridDomain::full(n);
    const IndexRange range = domain.index_range();
    const auto nn = static_cast<std::int64_t>(n);

    // sin^2(pi r / n), used for psi at grid points: psi = (2/|Phi|) sum sin^2(pi (s . (j,k)) / n).
    std::vector<double> sin2;
    if (!m) {
        sin2.resize(static_cast<std::size_t>(n));
        for (std::int64_t r = 0; r < nn; ++r) {
            const std::int64_t rr = 2 * r > nn ? nn - r : r;
            const double s = std::sin(kPi * static_cast<double>(rr) / n);
            sin2[static_cast<std::size_t>(r)] = s * s;
        }
    }
    const auto vectors = spec.vectors();
    const long double size = static_cast<long double>(spec.size());

    std::vector<long double> rows(static_cast<std::size_t>(n), 0.0L);
    parallel_for(nn, [&](std::int64_t kk) {
        const std::int64_t k = domain.reduced_index(kk);
        if (k < range.lo || k > range.hi) {
            return;
        }
        NeumaierSum<long double> row;
        for (std::int64_t jj = 0; jj < nn; ++jj) {
            const std::int64_t j = domain.reduced_index(jj);
            if (j < range.lo || j > range.hi || (j == 0 && k == 0)) {
                continue;
            }
            if (!m) {
                long double acc = 0.0L;
                for (const auto& s : vectors) {
                    std::int64_t idx = (s.x * jj + s.y * kk) % nn;
                    if (idx < 0) {
                        idx += nn;
                    }
                    acc += sin2[static_cast<std::size_t>(idx)];
                }
                if (!(acc > 0.0L)) {
                    throw SingularPoint("psi vanishes at a nonzero grid point");
                }
                row.add(size / (2.0L * acc));
            } else {
                const Vec2 t{domain.t(j), domain.t(k)};
                const double p = taylor_poly_eval(spec, *m, t);
                if (!(p >= kDefaultSingularFloor)) {
                    throw SingularPoint("Taylor polynomial is not positive at a grid point");
                }
                row.add(1.0L / p);
            }
        }
        rows[static_cast<std::size_t>(kk)] = row.value();
    });
    const auto terms = static_cast<std::int64_t>(grid_point_count(domain));
    return make_result(ordered_total(rows), n, Method::direct, terms, 8.0 * kEps);
}

SumResult gn_direct(const QuadraticForm& form, int n)
{
    if (n < 1) {
        throw std::invalid_argument("gn_direct needs n >= 1");
    }
    using L = long double;
    const L a = form.a();
    const L b = form.b();
    const L c = form.c();
    // The pair (j,k), (k,j) is added inside each row, so swapping a and c or
    // flipping the sign of b reproduces the same floating-point operations.
    auto summand = [&](std::int64_t j, std::int64_t k) {
        const L q0 = a * static_cast<L>(j * j) + c * static_cast<L>(k * k);
        const L cross = b * static_cast<L>(j * k);
        return 1.0L / (q0 - cross) + 1.0L / (q0 + cross);
    };
    const std::int64_t top = n - 1;
    std::vector<L> rows(static_cast<std::size_t>(std::max<std::int64_t>(top, 0)), 0.0L);
    parallel_for(top, [&](std::int64_t idx) {
        const std::int64_t j = idx + 1;
        NeumaierSum<L> row;
        row.add(summand(j, j));
        for (std::int64_t k = j + 1; k <= top; ++k) {
            row.add(summand(j, k) + summand(k, j));
        }
        rows[static_cast<std::size_t>(idx)] = row.value();
    });
    return make_result(ordered_total(rows), n, Method::direct, 2 * top * top, 4.0 * kEps);
}

SumResult gn_digamma(const QuadraticForm& form, int n)
{
    if (n < 1) {
        throw std::invalid_argument("gn_digamma needs n >= 1");
    }
    const std::complex<double> mu = form.mu();
    const double nd = n;
    NeumaierSum<long double> total;
    for (int j = 1; j < n; ++j) {
        const std::complex<double> w = mu * static_cast<double>(j);
        const std::complex<double> bracket =
            digamma_complex(nd + w) - digamma_complex(1.0 + w) - digamma_complex(nd - w) + digamma_complex(1.0 - w);
        total.add(static_cast<long double>(bracket.imag()) / j);
    }
    const long double value = -2.0L * total.value() / static_cast<long double>(form.sqrt_abs_discriminant());
    const std::int64_t top = n - 1;
    return make_result(value, n, Method::digamma, 4 * top, 64.0 * kEps * std::max(1.0, std::log(nd)));
}

long double hn_direct_ext(int n)
{
    if (n < 1) {
        throw std::invalid_argument("hn_direct needs n >= 1");
    }
    NeumaierSum<long double> total;
    for (std::int64_t j = n - 1; j >= 1; --j) {
        const long double jl = static_cast<long double>(j);
        total.add(1.0L / (jl * jl));
    }
    return total.value();
}

double hn_direct(int n)
{
    return static_cast<double>(hn_direct_ext(n));
}

long double un_direct_ext(const QuadraticForm& form, int n)
{
    if (n < 1) {
        throw std::invalid_argument("un_direct needs n >= 1");
    }
    using L = long double;
    const L a = form.a();
    const L b = form.b();
    const L c = form.c();
    const L nl = n;
    NeumaierSum<L> total;
    for (std::int64_t jj = 1; jj <= n; ++jj) {
        const L j = static_cast<L>(jj);
        const L cross = b * j * nl;
        const L inner = a * j * j + c * nl * nl;
        const L outer = a * nl * nl + c * j * j;
        total.add(1.0L / (inner + cross) + 1.0L / (inner - cross) + 1.0L / (outer + cross) + 1.0L / (outer - cross));
    }
    return total.value();
}

double un_direct(const QuadraticForm& form, int n)
{
    return static_cast<double>(un_direct_ext(form, n));
}

} // namespace latsum
