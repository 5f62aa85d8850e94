#ifndef LATSUM_TESTS_UTIL_HPP
#define LATSUM_TESTS_UTIL_HPP

#include "latsum/lattice.hpp"
#include "oracles.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace testutil
{

inline oracle::Vectors vectors_of(const latsum::LatticeSpec& spec)
{
    oracle::Vectors out;
    for (const auto& v : spec.vectors()) {
        out.emplace_back(v.x, v.y);
    }
    return out;
}

/// The standard basis plus up to three extra vectors with entries in [-2, 2].
inline latsum::LatticeSpec random_spec(std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> count(0, 3);
    std::uniform_int_distribution<int> entry(-2, 2);
    std::vector<latsum::IntVec2> v{{1, 0}, {0, 1}};
    for (int extra = count(rng); extra > 0;) {
        const latsum::IntVec2 s{entry(rng), entry(rng)};
        if (s.x != 0 || s.y != 0) {
            v.push_back(s);
            --extra;
        }
    }
    return latsum::LatticeSpec::from_vectors(v);
}

/// A normalized form 0 < a <= c, 0 <= b < 2 sqrt(ac).
inline latsum::QuadraticForm random_normalized_form(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(0.2, 5.0);
    std::uniform_real_distribution<double> t(0.0, 0.95);
    double a = u(rng);
    double c = u(rng);
    if (a > c) {
        std::swap(a, c);
    }
    return latsum::QuadraticForm(a, t(rng) * 2.0 * std::sqrt(a * c), c);
}

inline double rel_err(long double got, long double want)
{
    return static_cast<double>(std::fabs(got - want) / std::fabs(want));
}

inline double ulps(double got, double want)
{
    return std::fabs(got - want) / (std::numeric_limits<double>::epsilon() * std::fabs(want));
}

} // namespace testutil

#endif
