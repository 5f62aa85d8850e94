#include "latsum/errors.hpp"
#include "latsum/lattice.hpp"
#include "latsum/summation.hpp"
#include "latsum/sums.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <random>

using namespace latsum;
using testutil::rel_err;

namespace
{

const long double pi = oracle::pi;

} // namespace

TEST_CASE("Neumaier summation keeps the small terms")
{
    NeumaierSum<double> s;
    s.add(1.0);
    s.add(1e100);
    s.add(1.0);
    s.add(-1e100);
    CHECK(s.value() == 2.0);
}

TEST_CASE("F_n examples on the smallest grid")
{
    const auto sq = named_spec("square");
    const auto r = fn_direct(sq, 2);
    CHECK(r.value == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(r.n == 2);
    CHECK(r.method == Method::direct);
    CHECK(r.terms == 3);
    CHECK(r.err_estimate >= 0.0);
    CHECK(fn_direct(sq, 2, 1).value == doctest::Approx(10.0 / (kPi * kPi)).epsilon(1e-15));
}

TEST_CASE("F_n of the triangular lattice against S_n of the introduction")
{
    const auto tri = named_spec("triangular");
    for (int n : {12, 24, 25, 48}) {
        const long double want = 3.0L * oracle::triangular_s(n) + 0.5L * (static_cast<long double>(n) * n - 1);
        CHECK(rel_err(fn_direct(tri, n).value, want) < 1e-13);
    }
}

TEST_CASE("F_n against a naive long double double loop")
{
    std::mt19937_64 rng(101);
    for (int i = 0; i < 20; ++i) {
        const auto spec = i < 3 ? named_spec(i == 0 ? "square" : i == 1 ? "triangular" : "unionjack")
                                : testutil::random_spec(rng);
        const auto v = testutil::vectors_of(spec);
        for (int n : {3, 8, 17, 40}) {
            bool singular = false;
            // Extra vectors can make psi vanish at grid points for small n.
            for (const auto& p : grid_points(GridDomain::full(n))) {
                singular = singular || psi_cosine_form(spec, p.t) < 1e-12;
            }
            if (singular) {
                CHECK_THROWS_AS(fn_direct(spec, n), SingularPoint);
                continue;
            }
            CHECK(rel_err(fn_direct(spec, n).value, oracle::fn_naive(v, n)) < 1e-13);
            CHECK(rel_err(fn_direct(spec, n, 1).value, oracle::fn_naive(v, n, 1)) < 1e-13);
        }
    }
}

TEST_CASE("restricted F_n(f_m) against the naive loop")
{
    for (const char* name : {"square", "triangular", "unionjack"}) {
        const auto spec = named_spec(name);
        const auto v = testutil::vectors_of(spec);
        for (int n : {9, 32, 51}) {
            for (int m : {1, 2, 3}) {
                for (double beta : {0.25, 0.5, 0.75}) {
                    const long double radius = restricted_radius(beta, spec.sbar());
                    const auto r = fn_direct(spec, n, m, beta);
                    CHECK(rel_err(r.value, oracle::fn_naive(v, n, m, radius)) < 1e-13);
                    CHECK(r.terms == static_cast<std::int64_t>(grid_point_count(GridDomain::restricted(n, spec, beta))));
                }
            }
            const auto f_beta = fn_direct(spec, n, std::nullopt, 0.5);
            CHECK(rel_err(f_beta.value, oracle::fn_naive(v, n, std::nullopt, restricted_radius(0.5, spec.sbar()))) <
                  1e-13);
        }
    }
}

TEST_CASE("F_n preconditions")
{
    const auto sq = named_spec("square");
    CHECK_THROWS_AS(fn_direct(sq, 1), std::invalid_argument);
    CHECK_THROWS_AS(fn_direct(sq, 10, 2), std::invalid_argument);
    CHECK_THROWS_AS(fn_direct(sq, 10, 0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(fn_direct(sq, 10, 2, 1.5), std::invalid_argument);
}

TEST_CASE("F_n is bit-identical across worker counts")
{
    const auto uj = named_spec("unionjack");
    const char* saved = std::getenv("LATTICE_SUM_THREADS");
    const std::string restore = saved ? saved : "";
    std::vector<double> f;
    std::vector<double> g;
    for (const char* workers : {"1", "2", "3", "8"}) {
        ::setenv("LATTICE_SUM_THREADS", workers, 1);
        CHECK(worker_count() == std::atoi(workers));
        f.push_back(fn_direct(uj, 301).value);
        g.push_back(gn_direct(QuadraticForm(2, 1, 3), 301).value);
    }
    if (saved) {
        ::setenv("LATTICE_SUM_THREADS", restore.c_str(), 1);
    } else {
        ::unsetenv("LATTICE_SUM_THREADS");
    }
    for (std::size_t i = 1; i < f.size(); ++i) {
        CHECK(f[i] == f[0]);
        CHECK(g[i] == g[0]);
    }
    CHECK(fn_direct(uj, 301).value == fn_direct(uj, 301).value);
}

TEST_CASE("G_n examples")
{
    CHECK(gn_direct(QuadraticForm(1, 0, 1), 1).value == 0.0);
    CHECK(gn_direct(QuadraticForm(2, 1, 3), 1).terms == 0);
    CHECK(gn_direct(QuadraticForm(1, 0, 1), 2).value == 1.0);
    const auto exact = oracle::gn_exact(1, 1, 1, 3);
    // (1,1): 1 + 1/3, (1,2) and (2,1): 1/3 + 1/7 each, (2,2): 1/4 + 1/12.
    CHECK(exact.num == 55);
    CHECK(exact.den == 21);
    CHECK(rel_err(gn_direct(QuadraticForm(1, 1, 1), 3).value, exact.value()) < 1e-15);
    const auto big = oracle::gn_exact(2, 1, 3, 3);
    CHECK(rel_err(gn_direct(QuadraticForm(2, 1, 3), 3).value, big.value()) < 1e-15);
    CHECK_THROWS_AS(gn_direct(QuadraticForm(1, 0, 1), 0), std::invalid_argument);
}

TEST_CASE("G_n against the naive double loop")
{
    std::mt19937_64 rng(103);
    for (int i = 0; i < 10; ++i) {
        const auto q = testutil::random_normalized_form(rng);
        for (int n : {5, 50, 300}) {
            CHECK(rel_err(gn_direct(q, n).value, oracle::gn_naive(q.a(), q.b(), q.c(), n)) < 1e-14);
        }
    }
}

TEST_CASE("G_n form symmetries hold exactly")
{
    std::mt19937_64 rng(107);
    std::uniform_int_distribution<int> coef(1, 9);
    std::uniform_int_distribution<int> size(1, 50);
    int tested = 0;
    while (tested < 20) {
        const int a = coef(rng);
        const int c = coef(rng);
        const int b = coef(rng) - 5;
        if (b * b >= 4 * a * c) {
            continue;
        }
        const int n = size(rng);
        const double g = gn_direct(QuadraticForm(a, b, c), n).value;
        CHECK(gn_direct(QuadraticForm(c, b, a), n).value == g);
        CHECK(gn_direct(QuadraticForm(a, -b, c), n).value == g);
        ++tested;
    }
}

TEST_CASE("G_n scales inversely with the form")
{
    for (const auto& q : {QuadraticForm(1, 0, 1), QuadraticForm(1, 1, 1), QuadraticForm(2, 1, 3)}) {
        for (double lambda : {2.0, 3.0, 10.0}) {
            const QuadraticForm scaled(lambda * q.a(), lambda * q.b(), lambda * q.c());
            for (int n : {7, 40}) {
                CHECK(testutil::ulps(gn_direct(scaled, n).value, gn_direct(q, n).value / lambda) <= 2.0);
            }
        }
    }
}

TEST_CASE("G_n via digamma agrees with the direct sum")
{
    const auto r = gn_digamma(QuadraticForm(1, 0, 1), 2);
    CHECK(r.method == Method::digamma);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(gn_digamma(QuadraticForm(1, 0, 1), 1).value == 0.0);
    const long double g100 = oracle::gn_naive(1, 0, 1, 100);
    CHECK(rel_err(gn_digamma(QuadraticForm(1, 0, 1), 100).value, g100) < 1e-11);
    CHECK(rel_err(gn_digamma(QuadraticForm(3, 0, 3), 50).value, gn_direct(QuadraticForm(1, 0, 1), 50).value / 3.0L) <
          1e-11);
    std::mt19937_64 rng(109);
    for (int i = 0; i < 10; ++i) {
        const auto q = testutil::random_normalized_form(rng);
        for (int n : {3, 64, 500, 2000}) {
            const auto d = gn_direct(q, n).value;
            CHECK(std::fabs(gn_digamma(q, n).value - d) <= 1e-11 * (1 + std::fabs(d)));
        }
    }
}

TEST_CASE("H_n")
{
    CHECK(hn_direct(1) == 0.0);
    CHECK(hn_direct(5) == doctest::Approx(205.0 / 144.0).epsilon(1e-15));
    const double n = 1e4;
    CHECK(std::fabs(hn_direct(10000) - (kPi * kPi / 6 - 1 / n - 1 / (2 * n * n) - 1 / (6 * n * n * n))) < 1e-12);
    CHECK(rel_err(hn_direct_ext(777), oracle::hn_naive(777)) < 1e-18);
    CHECK_THROWS_AS(hn_direct(0), std::invalid_argument);
}

TEST_CASE("U_n")
{
    CHECK(un_direct(QuadraticForm(1, 0, 1), 1) == 2.0);
    CHECK(un_direct(QuadraticForm(1, 0, 1), 2) == doctest::Approx(1.3).epsilon(1e-15));
    CHECK(un_direct(QuadraticForm(3, 0, 3), 7) == doctest::Approx(un_direct(QuadraticForm(1, 0, 1), 7) / 3).epsilon(1e-15));
    std::mt19937_64 rng(113);
    for (int i = 0; i < 10; ++i) {
        const auto q = testutil::random_normalized_form(rng);
        for (int n : {1, 9, 333}) {
            CHECK(rel_err(un_direct_ext(q, n), oracle::un_naive(q.a(), q.b(), q.c(), n)) < 1e-17);
        }
    }
}

TEST_CASE("F_n(f_1) equals its G, H, U assembly")
{
    for (const char* name : {"square", "triangular", "unionjack"}) {
        const auto spec = named_spec(name);
        const long double a = spec.form().a();
        const long double b = spec.form().b();
        const long double c = spec.form().c();
        const long double phi = spec.size();
        const long double sigma = 1 / a + 1 / c;
        for (int n = 3; n <= 401; n += (n < 40 ? 1 : 17)) {
            const long double nn = n;
            long double rhs;
            if (n % 2 == 1) {
                const int big = (n + 1) / 2;
                rhs = phi * nn * nn / (pi * pi) * (oracle::gn_naive(a, b, c, big) + sigma * oracle::hn_naive(big));
            } else {
                const int big = n / 2 + 1;
                rhs = phi * nn * nn / (pi * pi) *
                          (oracle::gn_naive(a, b, c, big) + sigma * oracle::hn_naive(big) -
                           0.5L * oracle::un_naive(a, b, c, n / 2)) +
                      2 * phi / (pi * pi) * (1 / (a + b + c) - sigma);
            }
            CHECK(rel_err(fn_direct(spec, n, 1).value, rhs) < 1e-12);
        }
    }
}
