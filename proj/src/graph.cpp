#include "latsum/graph.hpp"

#include "latsum/errors.hpp"
#include "latsum/sums.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

namespace latsum
{

namespace
{

std::int64_t wrap(std::int64_t x, std::int64_t n)
{
    const std::int64_t r = x % n;
    return r < 0 ? r + n : r;
}

} // namespace

TorusGraph::TorusGraph(LatticeSpec spec, int n) : spec_(std::move(spec)), n_(n)
{
    if (n < 2) {
        throw std::invalid_argument("torus size n must be at least 2");
    }
    std::set<std::pair<std::int64_t, std::int64_t>> offsets;
    for (const auto& s : spec_.vectors()) {
        for (const std::int64_t sign : {1, -1}) {
            const auto off = std::pair{wrap(sign * s.x, n), wrap(sign * s.y, n)};
            if (off.first == 0 && off.second == 0) {
                throw DegenerateGraph("a generator is 0 mod n, giving a self-loop");
            }
            if (!offsets.insert(off).second) {
                throw DegenerateGraph("two generators reach the same neighbour mod " + std::to_string(n) +
                                      ", giving a multiple edge");
            }
        }
    }
}

std::int64_t TorusGraph::vertex(std::int64_t u, std::int64_t v) const noexcept
{
    return wrap(u, n_) + static_cast<std::int64_t>(n_) * wrap(v, n_);
}

std::vector<std::int64_t> TorusGraph::neighbours(std::int64_t vertex_index) const
{
    if (vertex_index < 0 || vertex_index >= vertex_count()) {
        throw std::out_of_range("vertex index out of range");
    }
    const std::int64_t u = vertex_index % n_;
    const std::int64_t v = vertex_index / n_;
    std::vector<std::int64_t> out;
    for (const auto& s : spec_.vectors()) {
        out.push_back(vertex(u + s.x, v + s.y));
        out.push_back(vertex(u - s.x, v - s.y));
    }
    return out;
}

std::vector<std::int32_t> laplacian_matrix(const TorusGraph& g)
{
    const std::int64_t nu = g.vertex_count();
    if (nu > kMaxDenseVertices) {
        throw std::invalid_argument("dense Laplacian is limited to 65536 vertices");
    }
    std::vector<std::int32_t> lap(static_cast<std::size_t>(nu * nu), 0);
    for (std::int64_t i = 0; i < nu; ++i) {
        lap[static_cast<std::size_t>(i * nu + i)] = g.degree();
        for (const std::int64_t j : g.neighbours(i)) {
            lap[static_cast<std::size_t>(i * nu + j)] -= 1;
        }
    }
    return lap;
}

double trace_pseudoinverse_spectral(const TorusGraph& g)
{
    return fn_direct(g.spec(), g.n()).value / static_cast<double>(g.degree());
}

double trace_pseudoinverse_matrix(const TorusGraph& g)
{
    const auto lap = laplacian_matrix(g);
    const auto nu = static_cast<Eigen::Index>(g.vertex_count());
    Eigen::MatrixXd m(nu, nu);
    for (Eigen::Index i = 0; i < nu; ++i) {
        for (Eigen::Index j = 0; j < nu; ++j) {
            m(i, j) = lap[static_cast<std::size_t>(i * nu + j)];
        }
    }
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("Laplacian eigensolve did not converge");
    }
    const auto& eig = solver.eigenvalues();
    if (nu > 1 && !(eig(1) > 1e-10 * g.degree())) {
        throw DegenerateGraph("Laplacian has a repeated zero eigenvalue; the graph is disconnected");
    }
    double trace = 0.0;
    for (Eigen::Index i = nu - 1; i >= 1; --i) {
        trace += 1.0 / eig(i);
    }
    return trace;
}

TauKirchhoff tau_and_kirchhoff(const TorusGraph& g)
{
    const double trace = trace_pseudoinverse_spectral(g);
    const double nu = static_cast<double>(g.vertex_count());
    const double shift = 1.0 - 2.0 * (nu - 1.0) / (g.degree() * nu);
    return {shift * shift / 12.0 + trace / nu, nu * trace, trace};
}

} // namespace latsum
