#ifndef LATSUM_LATTICE_HPP
#define LATSUM_LATTICE_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace latsum
{

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Reciprocals below this denominator are reported as SingularPoint.
inline constexpr double kDefaultSingularFloor = 1e-300;

/// Components of root vectors are bounded so that the derived form
/// coefficients stay exact in binary64.
inline constexpr std::int64_t kMaxComponent = 1'000'000;

/// Used when a restricted domain is requested without an explicit beta.
inline constexpr double kDefaultBeta = 0.5;

struct Vec2
{
    double x;
    double y;
};

struct IntVec2
{
    std::int64_t x;
    std::int64_t y;

    friend bool operator==(const IntVec2&, const IntVec2&) = default;
};

/// Positive definite binary quadratic form a j^2 + b j k + c k^2.
class QuadraticForm
{
public:
    /// Throws NotPositiveDefinite unless a > 0, c > 0 and b^2 - 4ac < 0.
    QuadraticForm(double a, double b, double c);

    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    double c() const noexcept { return c_; }
    double discriminant() const noexcept { return d_; }
    double sqrt_abs_discriminant() const noexcept;

    /// True when 0 < a <= c and b >= 0.
    bool normalized() const noexcept { return a_ <= c_ && b_ >= 0.0; }

    /// Equivalent form under a <-> c and b -> -b with 0 < a <= c, b >= 0.
    QuadraticForm normalize() const;

    /// mu = (-b + sqrt|d| i) / (2c); root of c x^2 + b x + a in the upper half-plane.
    std::complex<double> mu() const;

    double operator()(double j, double k) const noexcept { return (a_ * j * j + c_ * k * k) + b_ * j * k; }

private:
    double a_;
    double b_;
    double c_;
    double d_;
};

/// The root-vector set: integer 2-vectors whose first two entries are the
/// standard basis. Immutable once built.
class LatticeSpec
{
public:
    /// Validates and derives a, b, c, sbar, det(S^T S). Throws InvalidSpec.
    static LatticeSpec from_vectors(std::vector<IntVec2> vectors);

    std::span<const IntVec2> vectors() const noexcept { return vectors_; }
    std::size_t size() const noexcept { return vectors_.size(); }
    double sbar() const noexcept { return sbar_; }
    const QuadraticForm& form() const noexcept { return form_; }
    double det_sts() const noexcept { return det_sts_; }

    /// The set {+-s} is invariant under (x, y) -> (x, -y), so psi and every
    /// Taylor polynomial are even in each coordinate separately.
    bool reflection_symmetric() const noexcept { return reflection_symmetric_; }

private:
    LatticeSpec(std::vector<IntVec2> vectors, QuadraticForm form);

    std::vector<IntVec2> vectors_;
    QuadraticForm form_;
    double sbar_ = 1.0;
    double det_sts_ = 0.0;
    bool reflection_symmetric_ = false;
};

/// "square", "triangular" or "unionjack". Throws InvalidSpec otherwise.
LatticeSpec named_spec(std::string_view name);

/// Parses {"vectors": [[1,0],[0,1],...]}.
LatticeSpec spec_from_json(std::string_view json_text);
std::string spec_to_json(const LatticeSpec& spec);

/// A bundled name, or a path to a JSON spec file.
LatticeSpec load_spec(std::string_view name_or_path);

/// Reduces to [-pi, pi) by x - k 2pi with k = x/(2pi) rounded half to even.
double reduce_angle(double x) noexcept;
Vec2 reduce(Vec2 x) noexcept;

double psi_cosine_form(const LatticeSpec& spec, Vec2 x) noexcept;
double psi_sine_form(const LatticeSpec& spec, Vec2 x) noexcept;

/// psi(x) = 1 - mean cos(s.x), evaluated by the sin^2 form when the reduced
/// argument has norm below 1 and by the cosine form otherwise.
double psi_eval(const LatticeSpec& spec, Vec2 x) noexcept;

double f_eval(const LatticeSpec& spec, Vec2 x, double singular_floor = kDefaultSingularFloor);

/// 2m-th order Taylor polynomial p_m of psi about the origin.
double taylor_poly_eval(const LatticeSpec& spec, int m, Vec2 x);

double fm_eval(const LatticeSpec& spec, int m, Vec2 x, double singular_floor = kDefaultSingularFloor);

/// Half-width constant of the restricted box.
enum class BoxConstant
{
    printed, ///< sqrt(5(1 - beta)) / sbar
    lemma    ///< sqrt(12(1 - beta)) / sbar, the radius where p_m >= beta |x|^2 / (2|Phi|)
};

double restricted_radius(double beta, double sbar, BoxConstant constant = BoxConstant::printed);

struct IndexRange
{
    std::int64_t lo;
    std::int64_t hi;

    std::int64_t count() const noexcept { return hi >= lo ? hi - lo + 1 : 0; }
};

/// Grid t_{j,k} = (2 pi j / n, 2 pi k / n) reduced to [-pi, pi)^2 with the
/// origin removed, optionally restricted to |t_j|, |t_k| <= radius.
class GridDomain
{
public:
    static GridDomain full(int n);
    static GridDomain restricted(int n, const LatticeSpec& spec, std::optional<double> beta = std::nullopt,
                                 BoxConstant constant = BoxConstant::printed);

    int n() const noexcept { return n_; }
    std::optional<double> beta() const noexcept { return beta_; }
    bool is_even() const noexcept { return n_ % 2 == 0; }
    bool is_restricted() const noexcept { return beta_.has_value(); }
    double radius() const noexcept { return radius_; }
    double spacing() const noexcept { return kTwoPi / n_; }

    /// Reduced indices allowed along either axis.
    IndexRange index_range() const noexcept { return range_; }

    /// The point j = -n/2 of an even grid is pinned to exactly -pi.
    double t(std::int64_t j) const noexcept { return 2 * j == -n_ ? -kPi : kTwoPi * static_cast<double>(j) / n_; }

    /// Reduced index of an original index in [0, n).
    std::int64_t reduced_index(std::int64_t j) const noexcept { return 2 * j >= n_ ? j - n_ : j; }

private:
    GridDomain(int n, std::optional<double> beta, double radius, IndexRange range);

    int n_;
    std::optional<double> beta_;
    double radius_;
    IndexRange range_;
};

struct GridPoint
{
    std::int64_t j; ///< reduced index, t.x = 2 pi j / n
    std::int64_t k;
    Vec2 t;
};

/// Visits every point of the domain in row-major order: original row index
/// k = 0..n-1 outer, j = 0..n-1 inner, the origin skipped.
template <typename Fn>
void for_each_grid_point(const GridDomain& domain, Fn&& fn)
{
    const auto n = static_cast<std::int64_t>(domain.n());
    const auto range = domain.index_range();
    for (std::int64_t kk = 0; kk < n; ++kk) {
        const std::int64_t k = domain.reduced_index(kk);
        if (k < range.lo || k > range.hi) {
            continue;
        }
        for (std::int64_t jj = 0; jj < n; ++jj) {
            const std::int64_t j = domain.reduced_index(jj);
            if (j < range.lo || j > range.hi || (j == 0 && k == 0)) {
                continue;
            }
            fn(GridPoint{j, k, Vec2{domain.t(j), domain.t(k)}});
        }
    }
}

std::vector<GridPoint> grid_points(const GridDomain& domain);
std::size_t grid_point_count(const GridDomain& domain) noexcept;

} // namespace latsum

#endif
