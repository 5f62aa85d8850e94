#include "latsum/quadrature.hpp"

#include "latsum/errors.hpp"
#include "latsum/special.hpp"
#include "latsum/summation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace latsum
{

namespace
{

constexpr std::array<double, 7> kGl7Nodes{
    -0.9491079123427585245261897, -0.7415311855993944398638648, -0.4058451513773971669066064, 0.0,
    0.4058451513773971669066064,  0.7415311855993944398638648,  0.9491079123427585245261897,
};
constexpr std::array<double, 7> kGl7Weights{
    0.1294849661688696932706114, 0.2797053914892766679014678, 0.3818300505051189449503698,
    0.4179591836734693877551020, 0.3818300505051189449503698, 0.2797053914892766679014678,
    0.1294849661688696932706114,
};
constexpr std::array<double, 3> kGl3Nodes{-0.7745966692414833770358531, 0.0, 0.7745966692414833770358531};
constexpr std::array<double, 3> kGl3Weights{5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};

struct Panel
{
    Rect rect;
    long double value;
    double err;
    std::int64_t index;
    int depth;
};

struct ByError
{
    bool operator()(const Panel& l, const Panel& r) const
    {
        // Largest error first; ties resolved by creation order for determinism.
        return l.err != r.err ? l.err < r.err : l.index > r.index;
    }
};

class Integrator
{
public:
    Integrator(const std::function<double(double, double)>& f, const QuadratureOptions& options)
        : f_(f), options_(options)
    {
    }

    Panel make(const Rect& r, int depth)
    {
        const double hx = 0.5 * (r.x1 - r.x0);
        const double hy = 0.5 * (r.y1 - r.y0);
        const double cx = 0.5 * (r.x0 + r.x1);
        const double cy = 0.5 * (r.y0 + r.y1);
        long double fine = 0.0L;
        for (std::size_t i = 0; i < kGl7Nodes.size(); ++i) {
            long double col = 0.0L;
            for (std::size_t j = 0; j < kGl7Nodes.size(); ++j) {
                col += kGl7Weights[j] * static_cast<long double>(f_(cx + hx * kGl7Nodes[i], cy + hy * kGl7Nodes[j]));
            }
            fine += kGl7Weights[i] * col;
        }
        long double coarse = 0.0L;
        for (std::size_t i = 0; i < kGl3Nodes.size(); ++i) {
            long double col = 0.0L;
            for (std::size_t j = 0; j < kGl3Nodes.size(); ++j) {
                col += kGl3Weights[j] * static_cast<long double>(f_(cx + hx * kGl3Nodes[i], cy + hy * kGl3Nodes[j]));
            }
            coarse += kGl3Weights[i] * col;
        }
        evals_ += 58;
        const long double area = static_cast<long double>(hx) * hy;
        fine *= area;
        coarse *= area;
        return Panel{r, fine, static_cast<double>(std::abs(fine - coarse)), next_index_++, depth};
    }

    std::array<Rect, 4> split(const Rect& r) const
    {
        const double mx = 0.5 * (r.x0 + r.x1);
        const double my = 0.5 * (r.y0 + r.y1);
        return {Rect{r.x0, mx, r.y0, my}, Rect{mx, r.x1, r.y0, my}, Rect{r.x0, mx, my, r.y1}, Rect{mx, r.x1, my, r.y1}};
    }

    std::int64_t evals() const { return evals_; }

private:
    const std::function<double(double, double)>& f_;
    QuadratureOptions options_;
    std::int64_t evals_ = 0;
    std::int64_t next_index_ = 0;
};

void validate_rect(const Rect& r, const char* what)
{
    if (!std::isfinite(r.x0) || !std::isfinite(r.x1) || !std::isfinite(r.y0) || !std::isfinite(r.y1) ||
        !(r.x0 < r.x1) || !(r.y0 < r.y1)) {
        throw std::invalid_argument(std::string(what) + " rectangle must be finite and nondegenerate");
    }
}

std::vector<double> axis_breaks(double lo, double hi, std::optional<std::pair<double, double>> hole)
{
    std::vector<double> b{lo, hi};
    if (hole) {
        const auto [h0, h1] = *hole;
        b.push_back(h0);
        b.push_back(h1);
        // Grade towards an origin inside the hole: panel size ~ distance.
        if (h0 <= 0.0 && h1 >= 0.0) {
            for (double x = 2.0 * h1; h1 > 0.0 && x < hi; x *= 2.0) {
                b.push_back(x);
            }
            for (double x = 2.0 * h0; h0 < 0.0 && x > lo; x *= 2.0) {
                b.push_back(x);
            }
        }
    }
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    return b;
}

bool touches(const Rect& r, const Rect& h)
{
    return r.x0 <= h.x1 && r.x1 >= h.x0 && r.y0 <= h.y1 && r.y1 >= h.y0;
}

} // namespace

QuadratureResult integrate_with_hole(const std::function<double(double, double)>& f, Rect outer,
                                     std::optional<Rect> hole, QuadratureOptions options)
{
    validate_rect(outer, "outer");
    if (hole) {
        validate_rect(*hole, "hole");
        if (hole->x0 < outer.x0 || hole->x1 > outer.x1 || hole->y0 < outer.y0 || hole->y1 > outer.y1) {
            throw std::invalid_argument("hole must lie inside the outer rectangle");
        }
    }
    if (!(options.rel_tol > 0.0) || options.max_evals <= 0 || options.min_depth < 0) {
        throw std::invalid_argument("invalid quadrature options");
    }

    std::optional<std::pair<double, double>> hx;
    std::optional<std::pair<double, double>> hy;
    if (hole) {
        hx = std::pair{hole->x0, hole->x1};
        hy = std::pair{hole->y0, hole->y1};
    }
    const auto xs = axis_breaks(outer.x0, outer.x1, hx);
    const auto ys = axis_breaks(outer.y0, outer.y1, hy);

    Integrator integ(f, options);
    std::vector<Panel> leaves;
    std::priority_queue<Panel, std::vector<Panel>, ByError> queue;
    std::vector<Rect> seeds;
    for (std::size_t iy = 0; iy + 1 < ys.size(); ++iy) {
        for (std::size_t ix = 0; ix + 1 < xs.size(); ++ix) {
            const Rect cell{xs[ix], xs[ix + 1], ys[iy], ys[iy + 1]};
            const double cx = 0.5 * (cell.x0 + cell.x1);
            const double cy = 0.5 * (cell.y0 + cell.y1);
            if (hole && cx > hole->x0 && cx < hole->x1 && cy > hole->y0 && cy < hole->y1) {
                continue;
            }
            seeds.push_back(cell);
        }
    }
    // Pre-refine panels next to the hole; the integrand is steepest there.
    for (const auto& cell : seeds) {
        std::vector<Rect> level{cell};
        const int depth = hole && touches(cell, *hole) ? options.min_depth : 0;
        for (int d = 0; d < depth; ++d) {
            std::vector<Rect> next;
            next.reserve(level.size() * 4);
            for (const auto& r : level) {
                const auto parts = integ.split(r);
                next.insert(next.end(), parts.begin(), parts.end());
            }
            level = std::move(next);
        }
        for (const auto& r : level) {
            queue.push(integ.make(r, depth));
        }
    }

    long double total = 0.0L;
    long double total_err = 0.0L;
    {
        auto copy = queue;
        while (!copy.empty()) {
            total += copy.top().value;
            total_err += copy.top().err;
            copy.pop();
        }
    }
    // Below a few dozen ulp the embedded estimate only measures rounding noise.
    const double rel_tol = std::max(options.rel_tol, 32.0 * std::numeric_limits<double>::epsilon());
    while (total_err > rel_tol * std::abs(total)) {
        if (integ.evals() + 4 * 58 > options.max_evals) {
            std::ostringstream msg;
            msg << "quadrature budget of " << options.max_evals << " evaluations exhausted with error estimate "
                << static_cast<double>(total_err) << " (requested " << options.rel_tol * std::abs(total) << ")";
            throw ToleranceNotMet(msg.str());
        }
        const Panel worst = queue.top();
        queue.pop();
        total -= worst.value;
        total_err -= worst.err;
        for (const auto& r : integ.split(worst.rect)) {
            Panel child = integ.make(r, worst.depth + 1);
            total += child.value;
            total_err += child.err;
            queue.push(child);
        }
    }

    while (!queue.empty()) {
        leaves.push_back(queue.top());
        queue.pop();
    }
    std::sort(leaves.begin(), leaves.end(), [](const Panel& l, const Panel& r) { return l.index < r.index; });
    NeumaierSum<long double> sum;
    NeumaierSum<long double> err;
    for (const auto& p : leaves) {
        sum.add(p.value);
        err.add(p.err);
    }
    QuadratureResult out;
    out.value_ext = sum.value();
    out.value = static_cast<double>(out.value_ext);
    out.err_estimate = static_cast<double>(err.value());
    out.evals = integ.evals();
    out.panels = static_cast<std::int64_t>(leaves.size());
    return out;
}

namespace
{

void check_n(int n)
{
    if (n < 2) {
        throw std::invalid_argument("grid size n must be at least 2");
    }
}

double f1_value(const LatticeSpec& spec, double x, double y)
{
    const auto& q = spec.form();
    return 2.0 * static_cast<double>(spec.size()) / q(x, y);
}

SumResult from_quadrature(const QuadratureResult& q, long double scale, int n)
{
    SumResult r;
    r.value_ext = q.value_ext * scale;
    r.value = static_cast<double>(r.value_ext);
    r.n = n;
    r.method = Method::quadrature;
    r.terms = q.evals;
    r.err_estimate = static_cast<double>(q.err_estimate * scale);
    return r;
}

// Integral over the box [lo, hi]^2 minus [-h, h]^2, folded by the symmetries
// of the integrand when the box is centred.
QuadratureResult folded_integral(const std::function<double(double, double)>& f, double lo, double hi, double h,
                                 bool reflection_symmetric, QuadratureOptions options)
{
    if (lo == -hi) {
        if (reflection_symmetric) {
            auto q = integrate_with_hole(f, Rect{0.0, hi, 0.0, hi}, Rect{0.0, h, 0.0, h}, options);
            q.value_ext *= 4.0L;
            q.value = static_cast<double>(q.value_ext);
            q.err_estimate *= 4.0;
            return q;
        }
        // f(-x) = f(x): the upper half-plane carries half the integral.
        auto q = integrate_with_hole(f, Rect{lo, hi, 0.0, hi}, Rect{-h, h, 0.0, h}, options);
        q.value_ext *= 2.0L;
        q.value = static_cast<double>(q.value_ext);
        q.err_estimate *= 2.0;
        return q;
    }
    return integrate_with_hole(f, Rect{lo, hi, lo, hi}, Rect{-h, h, -h, h}, options);
}

} // namespace

SumResult in_f1_closed(const LatticeSpec& spec, int n)
{
    check_n(n);
    const auto& q = spec.form();
    const long double size = static_cast<long double>(spec.size());
    const long double sqrt_d = std::sqrt(static_cast<long double>(-q.discriminant()));
    const long double lead = 2.0L * size / (kPiL * sqrt_d);
    const long double nl = n;
    SumResult r;
    r.n = n;
    r.method = Method::quadrature;
    if (n % 2 == 1) {
        const double lead_d = 2.0 * static_cast<double>(spec.size()) / (kPi * q.sqrt_abs_discriminant());
        r.value = lead_d * (static_cast<double>(n) * n) * std::log(static_cast<double>(n));
        r.value_ext = lead * nl * nl * std::log(nl);
        r.terms = 0;
        r.err_estimate = 0.0;
        return r;
    }
    const double h = kPi / n;
    const auto corner = integrate_with_hole([&](double x, double y) { return f1_value(spec, x, y); },
                                            Rect{kPi - h, kPi + h, -kPi - h, -kPi + h}, std::nullopt,
                                            QuadratureOptions{1e-13, 1'000'000, 0});
    const long double delta = 2.0L * kPiL / nl;
    r.value_ext = lead * nl * nl * (std::log(nl) + 0.5L * std::log1p(-1.0L / (nl * nl))) -
                  corner.value_ext / (delta * delta);
    r.value = static_cast<double>(r.value_ext);
    r.terms = corner.evals;
    r.err_estimate = static_cast<double>(corner.err_estimate / (delta * delta)) +
                     4.0 * std::numeric_limits<double>::epsilon() * std::abs(r.value);
    return r;
}

SumResult in_f_numeric(const LatticeSpec& spec, int n, double tol)
{
    check_n(n);
    if (!(tol >= 1e-12)) {
        throw std::invalid_argument("quadrature tolerance must be at least 1e-12");
    }
    const double h = kPi / n;
    auto f = [&](double x, double y) { return f_eval(spec, Vec2{x, y}); };
    QuadratureOptions options;
    options.rel_tol = tol;
    const auto q = folded_integral(f, -kPi, kPi, h, spec.reflection_symmetric(), options);
    const long double delta = 2.0L * kPiL / n;
    return from_quadrature(q, 1.0L / (delta * delta), n);
}

SumResult in_fm_numeric(const LatticeSpec& spec, int n, int m, std::optional<double> beta, double tol,
                        BoxConstant box)
{
    check_n(n);
    if (m < 1) {
        throw std::invalid_argument("Taylor order m must be at least 1");
    }
    if (!beta && m != 1) {
        throw std::invalid_argument("I_n(f_m) with m >= 2 needs a restricted domain; pass beta");
    }
    if (!(tol >= 1e-12)) {
        throw std::invalid_argument("quadrature tolerance must be at least 1e-12");
    }
    const GridDomain domain = beta ? GridDomain::restricted(n, spec, beta, box) : GridDomain::full(n);
    const auto range = domain.index_range();
    const double h = kPi / n;
    if (range.hi < 1) {
        throw std::invalid_argument("restricted domain holds no cell outside the central one");
    }
    // Cell edges sit at (2j -/+ 1) pi / n; an edge at +-pi is taken exactly.
    auto edge = [&](std::int64_t odd) { return std::abs(odd) == n ? (odd < 0 ? -kPi : kPi) : static_cast<double>(odd) * h; };
    const double hi_edge = edge(2 * range.hi + 1);
    const double lo_edge = range.lo == -range.hi ? -hi_edge : edge(2 * range.lo - 1);
    auto f = [&](double x, double y) { return fm_eval(spec, m, Vec2{x, y}); };
    QuadratureOptions options;
    options.rel_tol = tol;
    const auto q = folded_integral(f, lo_edge, hi_edge, h, spec.reflection_symmetric(), options);
    const long double d = 2.0L * kPiL / n;
    return from_quadrature(q, 1.0L / (d * d), n);
}

double midpoint_error_bound(double delta1, double delta2, double max_d2_1, double max_d2_2)
{
    if (!(delta1 >= 0.0) || !(delta2 >= 0.0) || !(max_d2_1 >= 0.0) || !(max_d2_2 >= 0.0)) {
        throw std::invalid_argument("midpoint_error_bound needs nonnegative inputs");
    }
    return (delta1 * delta1 * max_d2_1 + delta2 * delta2 * max_d2_2) / 24.0;
}

} // namespace latsum
