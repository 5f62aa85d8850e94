#ifndef LATSUM_GRAPH_HPP
#define LATSUM_GRAPH_HPP

#include "latsum/lattice.hpp"

#include <cstdint>
#include <vector>

namespace latsum
{

/// Largest vertex count accepted by the dense eigensolver path.
inline constexpr std::int64_t kMaxDenseVertices = 65536;

/// The n x n discrete torus where (u, v) is joined to (u, v) +- s mod n for
/// every root vector s.
class TorusGraph
{
public:
    /// Throws DegenerateGraph when two generators reach the same neighbour or
    /// a generator is 0 mod n (multi-edges or self-loops).
    TorusGraph(LatticeSpec spec, int n);

    const LatticeSpec& spec() const noexcept { return spec_; }
    int n() const noexcept { return n_; }
    std::int64_t vertex_count() const noexcept { return static_cast<std::int64_t>(n_) * n_; }
    int degree() const noexcept { return 2 * static_cast<int>(spec_.size()); }

    std::int64_t vertex(std::int64_t u, std::int64_t v) const noexcept;
    std::vector<std::int64_t> neighbours(std::int64_t vertex) const;

private:
    LatticeSpec spec_;
    int n_;
};

/// Dense integer Laplacian D - A, row-major, vertex (u, v) at index u + n v.
std::vector<std::int32_t> laplacian_matrix(const TorusGraph& g);

/// tr(L^+) from the closed-form eigenvalues 2|Phi| psi(t_{j,k}): F_n / (2|Phi|).
double trace_pseudoinverse_spectral(const TorusGraph& g);

/// tr(L^+) from a numerical eigensolve of the explicit matrix; nu <= 65536.
double trace_pseudoinverse_matrix(const TorusGraph& g);

struct TauKirchhoff
{
    double tau;
    double kf;
    double trace; ///< tr(L^+) the two were built from
};

/// tau = (1/12)(1 - 2(nu-1)/(d nu))^2 + tr/nu and Kf = nu tr, from the
/// closed-form trace. Assumes the graph is equi-resistant, which is not checked.
TauKirchhoff tau_and_kirchhoff(const TorusGraph& g);

} // namespace latsum

#endif
