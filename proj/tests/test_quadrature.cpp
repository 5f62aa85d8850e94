#include "latsum/errors.hpp"
#include "latsum/lattice.hpp"
#include "latsum/quadrature.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace latsum;
using testutil::rel_err;

namespace
{

const long double pi = oracle::pi;

/// f_1 = 2|Phi| / Q as a long double oracle.
auto f1_of(const LatticeSpec& spec)
{
    const long double a = spec.form().a();
    const long double b = spec.form().b();
    const long double c = spec.form().c();
    const long double phi2 = 2.0L * spec.size();
    return [=](long double x, long double y) { return phi2 / (a * x * x + b * x * y + c * y * y); };
}

long double delta2(int n)
{
    const long double d = 2 * pi / n;
    return d * d;
}

/// Integral of f over [-pi, pi]^2 minus [-pi/n, pi/n]^2 for even n, tiled by
/// cells of side pi/n, each by a Richardson-extrapolated midpoint rule.
long double even_annulus(const std::function<long double(long double, long double)>& f, int n, int sub)
{
    const long double w = pi / n;
    long double total = 0.0L;
    for (int i = -n; i < n; ++i) {
        for (int j = -n; j < n; ++j) {
            if (i >= -1 && i <= 0 && j >= -1 && j <= 0) {
                continue;
            }
            total += oracle::midpoint_richardson(f, i * w, (i + 1) * w, j * w, (j + 1) * w, sub);
        }
    }
    return total;
}

} // namespace

TEST_CASE("odd-n I_n(f_1) is the exact leading term")
{
    const auto sq = named_spec("square");
    const auto uj = named_spec("unionjack");
    CHECK(testutil::ulps(in_f1_closed(sq, 3).value, static_cast<double>(2 / pi * 9 * std::log(3.0L))) <= 2);
    CHECK(testutil::ulps(in_f1_closed(uj, 5).value, static_cast<double>(4 / (3 * pi) * 25 * std::log(5.0L))) <= 2);
    CHECK(testutil::ulps(in_f1_closed(sq, 101).value,
                         static_cast<double>(2 / pi * 101 * 101 * std::log(101.0L))) <= 2);
    CHECK_THROWS_AS(in_f1_closed(sq, 1), std::invalid_argument);
}

TEST_CASE("even-n I_n(f_1) subtracts the corner box")
{
    for (const char* name : {"square", "triangular", "unionjack"}) {
        const auto spec = named_spec(name);
        const long double lead = spec.size() / (pi * std::sqrt(static_cast<long double>(spec.det_sts())));
        for (int n : {2, 4, 10, 64}) {
            const long double w = pi / n;
            const long double corner = oracle::midpoint_richardson(f1_of(spec), pi - w, pi + w, -pi - w, -pi + w, 256);
            const long double nn = n;
            const long double want =
                lead * nn * nn * (std::log(nn) + 0.5L * std::log(1 - 1 / (nn * nn))) - corner / delta2(n);
            CHECK(rel_err(in_f1_closed(spec, n).value, want) < 1e-12);
        }
    }
}

TEST_CASE("I_n(f) at n = 2 against a fixed-grid midpoint oracle")
{
    for (const char* name : {"square", "triangular", "unionjack"}) {
        const auto spec = named_spec(name);
        const auto v = testutil::vectors_of(spec);
        const long double want =
            even_annulus([&](long double x, long double y) { return 1.0L / oracle::psi(v, x, y); }, 2, 256) /
            delta2(2);
        const auto got = in_f_numeric(spec, 2, 1e-11);
        CHECK(got.method == Method::quadrature);
        CHECK(rel_err(got.value, want) < 1e-8);
    }
}

TEST_CASE("I_n(f) of the square lattice follows its closed-form expansion")
{
    const auto sq = named_spec("square");
    const long double g = oracle::catalan();
    for (int n : {64, 128, 256}) {
        const long double nn = n;
        const long double expansion =
            2 / pi * nn * nn * std::log(nn) + (3 * std::log(2.0L) - 2 * std::log(pi) + 4 * g / pi) / pi * nn * nn;
        CHECK(std::fabs(in_f_numeric(sq, n).value - expansion) <= 5.0L);
    }
}

TEST_CASE("I_n(f) of the union-jack lattice follows its closed-form expansion")
{
    const auto uj = named_spec("unionjack");
    const long double g = oracle::catalan();
    const long double nn = 100;
    const long double expansion =
        4 / (3 * pi) * nn * nn * std::log(nn) + 2 * nn * nn / (3 * pi) * (std::log(24 / (pi * pi)) + 4 * g / pi);
    CHECK(std::fabs(in_f_numeric(uj, 100).value - expansion) <= 5.0L);
}

TEST_CASE("I_n(f_1) over the full grid equals the closed form for odd n")
{
    for (const char* name : {"square", "triangular", "unionjack"}) {
        const auto spec = named_spec(name);
        for (int n : {3, 9, 21, 101}) {
            CHECK(rel_err(in_fm_numeric(spec, n, 1, std::nullopt).value, in_f1_closed(spec, n).value) < 1e-8);
        }
    }
}

TEST_CASE("restricted I_n(f_2) against a fixed-grid midpoint oracle")
{
    const auto sq = named_spec("square");
    const int n = 50;
    const int half_cells = static_cast<int>(GridDomain::restricted(n, sq, 0.5).index_range().hi);
    auto p2 = [](long double x, long double y) {
        return 0.5L * ((x * x / 2 - x * x * x * x / 24) + (y * y / 2 - y * y * y * y / 24));
    };
    const long double want =
        oracle::annulus_integral([&](long double x, long double y) { return 1.0L / p2(x, y); }, pi / n, half_cells, 96) /
        delta2(n);
    CHECK(rel_err(in_fm_numeric(sq, n, 2, 0.5).value, want) < 1e-7);
}

TEST_CASE("restricted I_n(f_1) equals its polar form")
{
    // Over a square annulus with ratio E/h the polar integral factorizes into
    // log(E/h) times the angular integral of f_1 on the unit circle.
    const auto tri = named_spec("triangular");
    const int n = 41;
    const auto f1 = f1_of(tri);
    const long double angular =
        oracle::periodic_trapezoid([&](long double t) { return f1(std::cos(t), std::sin(t)); }, 256);
    for (double beta : {0.5, 0.9}) {
        const auto hi = GridDomain::restricted(n, tri, beta).index_range().hi;
        const long double ratio = 2.0L * hi + 1.0L;
        const long double want = std::log(ratio) * angular / delta2(n);
        CHECK(rel_err(in_fm_numeric(tri, n, 1, beta).value, want) < 1e-9);
    }
}

TEST_CASE("polar identity for the half-annulus E(R)")
{
    std::mt19937_64 rng(131);
    std::uniform_int_distribution<int> sizes(5, 40);
    for (int i = 0; i < 10; ++i) {
        const auto spec = testutil::random_spec(rng);
        const int n = sizes(rng);
        const auto f1 = f1_of(spec);
        const double h = kPi / n;
        for (double r : {kPi, kPi + h, kPi - h}) {
            const auto q = integrate_with_hole([&](double x, double y) { return static_cast<double>(f1(x, y)); },
                                               Rect{0, r, -r, r}, Rect{0, h, -h, h}, QuadratureOptions{1e-12});
            const long double want =
                std::log(n * static_cast<long double>(r) / pi) * 2 * spec.size() * pi / std::sqrt(spec.det_sts());
            CHECK(rel_err(q.value, want) < 1e-9);
        }
    }
}

TEST_CASE("adaptive cubature on polynomials and with a hole")
{
    const auto q = integrate_with_hole([](double x, double y) { return x * x * y * y; }, Rect{0, 1, 0, 1});
    CHECK(q.value == doctest::Approx(1.0 / 9).epsilon(1e-14));
    CHECK(q.evals > 0);
    const auto with_hole =
        integrate_with_hole([](double x, double y) { return x * x * y * y; }, Rect{0, 1, 0, 1}, Rect{0.25, 0.5, 0.25, 0.5});
    const double hole = (0.125 - 0.015625) / 3 * (0.125 - 0.015625) / 3;
    CHECK(with_hole.value == doctest::Approx(1.0 / 9 - hole).epsilon(1e-14));
    CHECK_THROWS_AS(integrate_with_hole([](double x, double y) { return 1 / (x * x + y * y); }, Rect{-1, 1, -1, 1},
                                        Rect{-1e-3, 1e-3, -1e-3, 1e-3}, QuadratureOptions{1e-12, 2000, 4}),
                    ToleranceNotMet);
}

TEST_CASE("quadrature preconditions")
{
    const auto sq = named_spec("square");
    CHECK_THROWS_AS(in_f_numeric(sq, 8, 1e-13), std::invalid_argument);
    CHECK_THROWS_AS(in_fm_numeric(sq, 8, 2, std::nullopt), std::invalid_argument);
    CHECK_THROWS_AS(in_fm_numeric(sq, 8, 0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(in_f_numeric(sq, 1), std::invalid_argument);
}

TEST_CASE("halving the tolerance moves the result by at most the larger error estimate")
{
    for (const char* name : {"square", "triangular"}) {
        const auto spec = named_spec(name);
        for (int n : {16, 33}) {
            const auto coarse = in_f_numeric(spec, n, 1e-8);
            const auto fine = in_f_numeric(spec, n, 5e-9);
            CHECK(std::fabs(coarse.value - fine.value) <= std::max(coarse.err_estimate, fine.err_estimate));
            CHECK(coarse.err_estimate >= 0.0);
        }
    }
}

TEST_CASE("midpoint error bound examples")
{
    CHECK(midpoint_error_bound(0, 0, 5, 5) == 0.0);
    CHECK(midpoint_error_bound(0.1, 0.1, 0, 0) == 0.0);
    CHECK(midpoint_error_bound(0.1, 0.2, 6, 3) == doctest::Approx(0.0075).epsilon(1e-15));
    CHECK_THROWS_AS(midpoint_error_bound(-0.1, 0.2, 6, 3), std::invalid_argument);
}

TEST_CASE("midpoint rule stays within its bound on cells away from the origin")
{
    for (const char* name : {"square", "triangular", "unionjack"}) {
        const auto spec = named_spec(name);
        const long double a = spec.form().a();
        const long double b = spec.form().b();
        const long double c = spec.form().c();
        const long double phi2 = 2.0L * spec.size();
        auto f1 = f1_of(spec);
        // Second partial derivatives of 2|Phi| / Q.
        auto dxx = [&](long double x, long double y) {
            const long double q = a * x * x + b * x * y + c * y * y;
            const long double qx = 2 * a * x + b * y;
            return phi2 * (2 * qx * qx - q * 2 * a) / (q * q * q);
        };
        auto dyy = [&](long double x, long double y) {
            const long double q = a * x * x + b * x * y + c * y * y;
            const long double qy = b * x + 2 * c * y;
            return phi2 * (2 * qy * qy - q * 2 * c) / (q * q * q);
        };
        const int n = 20;
        const long double d = 2 * pi / n;
        for (int i = -n / 2; i < n / 2; ++i) {
            for (int j = -n / 2; j < n / 2; ++j) {
                if (std::abs(i) <= 1 && std::abs(j) <= 1) {
                    continue;
                }
                const long double cx = d * i;
                const long double cy = d * j;
                long double m1 = 0;
                long double m2 = 0;
                for (int s = 0; s < 5; ++s) {
                    for (int t = 0; t < 5; ++t) {
                        const long double x = cx - d / 2 + d * s / 4;
                        const long double y = cy - d / 2 + d * t / 4;
                        m1 = std::max(m1, std::fabs(dxx(x, y)));
                        m2 = std::max(m2, std::fabs(dyy(x, y)));
                    }
                }
                const long double average =
                    oracle::midpoint_richardson(f1, cx - d / 2, cx + d / 2, cy - d / 2, cy + d / 2, 16) / (d * d);
                const double bound = midpoint_error_bound(static_cast<double>(d), static_cast<double>(d),
                                                          static_cast<double>(2 * m1), static_cast<double>(2 * m2));
                CHECK(std::fabs(f1(cx, cy) - average) <= bound);
            }
        }
    }
}
