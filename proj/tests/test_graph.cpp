#include "latsum/errors.hpp"
#include "latsum/graph.hpp"
#include "latsum/sums.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

#include <Eigen/Dense>
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

using namespace latsum;
using testutil::rel_err;

namespace
{

const long double pi = oracle::pi;

/// True when the 2|Phi| offsets +-s mod n are distinct and nonzero.
bool simple_torus(const oracle::Vectors& v, int n)
{
    std::set<std::pair<int, int>> seen;
    for (const auto& [p, q] : v) {
        for (int sign : {1, -1}) {
            const int x = ((sign * static_cast<int>(p)) % n + n) % n;
            const int y = ((sign * static_cast<int>(q)) % n + n) % n;
            if ((x == 0 && y == 0) || !seen.insert({x, y}).second) {
                return false;
            }
        }
    }
    return true;
}

} // namespace

TEST_CASE("square torus n = 3 against the eight-term sum")
{
    long double f3 = 0.0L;
    for (int j = 0; j < 3; ++j) {
        for (int k = 0; k < 3; ++k) {
            if (j != 0 || k != 0) {
                f3 += 1.0L / (1 - 0.5L * (std::cos(2 * pi / 3 * j) + std::cos(2 * pi / 3 * k)));
            }
        }
    }
    const TorusGraph g(named_spec("square"), 3);
    CHECK(g.vertex_count() == 9);
    CHECK(g.degree() == 4);
    CHECK(rel_err(trace_pseudoinverse_spectral(g), f3 / 4) < 1e-15);
    CHECK(rel_err(trace_pseudoinverse_matrix(g), f3 / 4) < 1e-12);

    const auto tk = tau_and_kirchhoff(g);
    const long double base = 1.0L - 16.0L / 36.0L;
    CHECK(rel_err(tk.tau, base * base / 12 + f3 / 36) < 1e-15);
    CHECK(rel_err(tk.kf, 9 * f3 / 4) < 1e-15);
}

TEST_CASE("explicit-matrix trace matches F_n / (2|Phi|)")
{
    for (const char* name : {"square", "triangular", "unionjack"}) {
        const auto spec = named_spec(name);
        const auto v = testutil::vectors_of(spec);
        for (int n : {3, 4, 5, 8, 12, 16}) {
            if (!simple_torus(v, n)) {
                CHECK_THROWS_AS(TorusGraph(spec, n), DegenerateGraph);
                continue;
            }
            const TorusGraph g(spec, n);
            const double want = fn_direct(spec, n).value / (2.0 * spec.size());
            CHECK(rel_err(trace_pseudoinverse_matrix(g), want) < 1e-9);
            CHECK(rel_err(trace_pseudoinverse_spectral(g), want) < 1e-15);
        }
    }
    const auto tri = named_spec("triangular");
    CHECK(rel_err(trace_pseudoinverse_spectral(TorusGraph(tri, 12)), fn_direct(tri, 12).value / 6) < 1e-15);
}

TEST_CASE("collisions modulo n are rejected")
{
    CHECK_THROWS_AS(TorusGraph(named_spec("unionjack"), 2), DegenerateGraph);
    CHECK_THROWS_AS(TorusGraph(named_spec("square"), 2), DegenerateGraph);
    CHECK_THROWS_AS(TorusGraph(named_spec("square"), 1), std::invalid_argument);
    CHECK_NOTHROW(TorusGraph(named_spec("square"), 3));
}

TEST_CASE("Laplacian structure")
{
    for (const char* name : {"square", "triangular", "unionjack"}) {
        const auto spec = named_spec(name);
        for (int n : {3, 7, 10}) {
            const TorusGraph g(spec, n);
            const auto nu = static_cast<std::size_t>(g.vertex_count());
            const auto l = laplacian_matrix(g);
            REQUIRE(l.size() == nu * nu);
            bool rows_zero = true;
            bool symmetric = true;
            bool diagonal = true;
            for (std::size_t i = 0; i < nu; ++i) {
                long long row = 0;
                for (std::size_t j = 0; j < nu; ++j) {
                    row += l[i * nu + j];
                    symmetric = symmetric && l[i * nu + j] == l[j * nu + i];
                }
                rows_zero = rows_zero && row == 0;
                diagonal = diagonal && l[i * nu + i] == g.degree();
            }
            CHECK(rows_zero);
            CHECK(symmetric);
            CHECK(diagonal);
            const auto nb = g.neighbours(g.vertex(1, 2));
            CHECK(nb.size() == static_cast<std::size_t>(g.degree()));

            // Connected: zero is a simple eigenvalue.
            Eigen::MatrixXd m(nu, nu);
            for (std::size_t i = 0; i < nu; ++i) {
                for (std::size_t j = 0; j < nu; ++j) {
                    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = l[i * nu + j];
                }
            }
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
            const auto& ev = es.eigenvalues();
            CHECK(std::fabs(ev(0)) < 1e-10);
            CHECK(ev(1) > 1e-10 * g.degree());
        }
    }
}

TEST_CASE("tau and Kirchhoff index")
{
    for (const char* name : {"square", "triangular", "unionjack"}) {
        const auto spec = named_spec(name);
        for (int n : {5, 9, 40}) {
            const TorusGraph g(spec, n);
            const auto tk = tau_and_kirchhoff(g);
            const double nu = static_cast<double>(g.vertex_count());
            const double base = 1 - 2 * (nu - 1) / (g.degree() * nu);
            CHECK(tk.kf == nu * tk.trace);
            CHECK(testutil::ulps(tk.tau - base * base / 12, tk.kf / (nu * nu)) <= 2);
            CHECK(tk.trace == trace_pseudoinverse_spectral(g));
        }
    }
}

TEST_CASE("tau follows the leading-term trend")
{
    const auto sq = named_spec("square");
    const int n = 64;
    const auto tk = tau_and_kirchhoff(TorusGraph(sq, n));
    // tr/nu ~ F_n / (4 n^2) ~ (2/pi) log n / 4.
    const double trend = 1.0 / 48 + 2 / (4 * kPi) * std::log(n);
    CHECK(std::fabs(tk.tau - trend) <= 0.15 * trend);
}

TEST_CASE("dense path rejects oversized graphs")
{
    CHECK_THROWS_AS(trace_pseudoinverse_matrix(TorusGraph(named_spec("square"), 257)), std::invalid_argument);
}
