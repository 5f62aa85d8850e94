#include "latsum/lattice.hpp"

#include "latsum/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace latsum
{

QuadraticForm::QuadraticForm(double a, double b, double c) : a_(a), b_(b), c_(c), d_(b * b - 4.0 * a * c)
{
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c)) {
        throw NotPositiveDefinite("quadratic form coefficients must be finite");
    }
    if (!(a > 0.0) || !(c > 0.0) || !(d_ < 0.0)) {
        std::ostringstream msg;
        msg << "form (" << a << ", " << b << ", " << c << ") is not positive definite";
        throw NotPositiveDefinite(msg.str());
    }
}

double QuadraticForm::sqrt_abs_discriminant() const noexcept
{
    return std::sqrt(-d_);
}

QuadraticForm QuadraticForm::normalize() const
{
    // Both symmetries leave the multiset of summands of G_n unchanged.
    const double a = std::min(a_, c_);
    const double c = std::max(a_, c_);
    return QuadraticForm(a, std::abs(b_), c);
}

std::complex<double> QuadraticForm::mu() const
{
    return {-b_ / (2.0 * c_), sqrt_abs_discriminant() / (2.0 * c_)};
}

namespace
{

IntVec2 canonical_sign(IntVec2 v)
{
    if (v.x < 0 || (v.x == 0 && v.y < 0)) {
        return {-v.x, -v.y};
    }
    return v;
}

bool less_vec(const IntVec2& l, const IntVec2& r)
{
    return l.x != r.x ? l.x < r.x : l.y < r.y;
}

} // namespace

LatticeSpec::LatticeSpec(std::vector<IntVec2> vectors, QuadraticForm form)
    : vectors_(std::move(vectors)), form_(form)
{
}

LatticeSpec LatticeSpec::from_vectors(std::vector<IntVec2> vectors)
{
    if (vectors.size() < 2) {
        throw InvalidSpec("a lattice spec needs at least two vectors");
    }
    if (vectors[0] != IntVec2{1, 0} || vectors[1] != IntVec2{0, 1}) {
        throw InvalidSpec("the first two vectors must be (1,0) and (0,1)");
    }
    std::int64_t a = 0;
    std::int64_t half_b = 0;
    std::int64_t c = 0;
    double sbar2 = 0.0;
    for (const auto& v : vectors) {
        if (v.x == 0 && v.y == 0) {
            throw InvalidSpec("zero vector in lattice spec");
        }
        if (std::abs(v.x) > kMaxComponent || std::abs(v.y) > kMaxComponent) {
            throw InvalidSpec("vector component exceeds 1e6 in magnitude");
        }
        a += v.x * v.x;
        half_b += v.x * v.y;
        c += v.y * v.y;
        sbar2 = std::max(sbar2, static_cast<double>(v.x * v.x + v.y * v.y));
    }
    // S contains the standard basis, so S^T S is positive definite.
    QuadraticForm form(static_cast<double>(a), 2.0 * static_cast<double>(half_b), static_cast<double>(c));

    std::vector<IntVec2> canon;
    std::vector<IntVec2> reflected;
    for (const auto& v : vectors) {
        canon.push_back(canonical_sign(v));
        reflected.push_back(canonical_sign({v.x, -v.y}));
    }
    std::sort(canon.begin(), canon.end(), less_vec);
    std::sort(reflected.begin(), reflected.end(), less_vec);

    LatticeSpec spec(std::move(vectors), form);
    spec.sbar_ = std::sqrt(sbar2);
    const long double det = static_cast<long double>(a) * c - static_cast<long double>(half_b) * half_b;
    spec.det_sts_ = static_cast<double>(det);
    spec.reflection_symmetric_ = canon == reflected;
    return spec;
}

LatticeSpec named_spec(std::string_view name)
{
    if (name == "square") {
        return LatticeSpec::from_vectors({{1, 0}, {0, 1}});
    }
    if (name == "triangular") {
        return LatticeSpec::from_vectors({{1, 0}, {0, 1}, {1, 1}});
    }
    if (name == "unionjack") {
        return LatticeSpec::from_vectors({{1, 0}, {0, 1}, {1, -1}, {1, 1}});
    }
    throw InvalidSpec("unknown spec name '" + std::string(name) + "'");
}

LatticeSpec spec_from_json(std::string_view json_text)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidSpec(std::string("spec JSON does not parse: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("vectors") || !doc["vectors"].is_array()) {
        throw InvalidSpec("spec JSON must be an object with a \"vectors\" array");
    }
    std::vector<IntVec2> vectors;
    for (const auto& item : doc["vectors"]) {
        if (!item.is_array() || item.size() != 2 || !item[0].is_number_integer() || !item[1].is_number_integer()) {
            throw InvalidSpec("each spec vector must be a pair of integers");
        }
        vectors.push_back({item[0].get<std::int64_t>(), item[1].get<std::int64_t>()});
    }
    return LatticeSpec::from_vectors(std::move(vectors));
}

std::string spec_to_json(const LatticeSpec& spec)
{
    nlohmann::json vectors = nlohmann::json::array();
    for (const auto& v : spec.vectors()) {
        vectors.push_back({v.x, v.y});
    }
    return nlohmann::json{{"vectors", vectors}}.dump();
}

LatticeSpec load_spec(std::string_view name_or_path)
{
    if (name_or_path == "square" || name_or_path == "triangular" || name_or_path == "unionjack") {
        return named_spec(name_or_path);
    }
    std::ifstream in{std::string(name_or_path)};
    if (!in) {
        throw InvalidSpec("'" + std::string(name_or_path) + "' is neither a bundled spec nor a readable file");
    }
    std::ostringstream text;
    text << in.rdbuf();
    return spec_from_json(text.str());
}

double reduce_angle(double x) noexcept
{
    // remainder() is exact and rounds the quotient half to even.
    double r = std::remainder(x, kTwoPi);
    if (r >= kPi) {
        r -= kTwoPi;
    }
    return r;
}

Vec2 reduce(Vec2 x) noexcept
{
    return {reduce_angle(x.x), reduce_angle(x.y)};
}

namespace
{

inline double dot(const IntVec2& s, Vec2 x) noexcept
{
    return static_cast<double>(s.x) * x.x + static_cast<double>(s.y) * x.y;
}

} // namespace

double psi_cosine_form(const LatticeSpec& spec, Vec2 x) noexcept
{
    double sum = 0.0;
    for (const auto& s : spec.vectors()) {
        sum += std::cos(dot(s, x));
    }
    return 1.0 - sum / static_cast<double>(spec.size());
}

double psi_sine_form(const LatticeSpec& spec, Vec2 x) noexcept
{
    double sum = 0.0;
    for (const auto& s : spec.vectors()) {
        const double h = std::sin(0.5 * dot(s, x));
        sum += h * h;
    }
    return 2.0 * sum / static_cast<double>(spec.size());
}

double psi_eval(const LatticeSpec& spec, Vec2 x) noexcept
{
    const Vec2 r = reduce(x);
    if (r.x * r.x + r.y * r.y < 1.0) {
        return psi_sine_form(spec, r);
    }
    return psi_cosine_form(spec, r);
}

double f_eval(const LatticeSpec& spec, Vec2 x, double singular_floor)
{
    const double p = psi_eval(spec, x);
    if (!(p >= singular_floor) || p == 0.0) {
        throw SingularPoint("psi vanishes (below the singular floor) at the evaluation point");
    }
    return 1.0 / p;
}

double taylor_poly_eval(const LatticeSpec& spec, int m, Vec2 x)
{
    if (m < 1) {
        throw std::invalid_argument("Taylor order m must be at least 1");
    }
    double total = 0.0;
    for (const auto& s : spec.vectors()) {
        const double u = dot(s, x);
        const double u2 = u * u;
        double power = 0.5 * u2; // u^2 / 2!
        double partial = power;
        for (int j = 2; j <= m; ++j) {
            power *= -u2 / static_cast<double>((2 * j - 1) * (2 * j));
            partial += power;
        }
        total += partial;
    }
    return total / static_cast<double>(spec.size());
}

double fm_eval(const LatticeSpec& spec, int m, Vec2 x, double singular_floor)
{
    const double p = taylor_poly_eval(spec, m, x);
    if (!(p >= singular_floor) || p == 0.0) {
        throw SingularPoint("Taylor polynomial is not positive at the evaluation point");
    }
    return 1.0 / p;
}

double restricted_radius(double beta, double sbar, BoxConstant constant)
{
    if (!(beta > 0.0 && beta < 1.0)) {
        throw std::invalid_argument("beta must lie in (0, 1)");
    }
    const double k = constant == BoxConstant::printed ? 5.0 : 12.0;
    return std::sqrt(k * (1.0 - beta)) / sbar;
}

GridDomain::GridDomain(int n, std::optional<double> beta, double radius, IndexRange range)
    : n_(n), beta_(beta), radius_(radius), range_(range)
{
}

GridDomain GridDomain::full(int n)
{
    if (n < 2) {
        throw std::invalid_argument("grid size n must be at least 2");
    }
    return GridDomain(n, std::nullopt, kPi, IndexRange{-(n / 2), (n + 1) / 2 - 1});
}

GridDomain GridDomain::restricted(int n, const LatticeSpec& spec, std::optional<double> beta, BoxConstant constant)
{
    if (n < 2) {
        throw std::invalid_argument("grid size n must be at least 2");
    }
    const double b = beta.value_or(kDefaultBeta);
    const double radius = restricted_radius(b, spec.sbar(), constant);
    GridDomain probe(n, b, radius, IndexRange{0, 0});
    auto j = static_cast<std::int64_t>(std::floor(radius / probe.spacing()));
    while (probe.t(j + 1) <= radius) {
        ++j;
    }
    while (j > 0 && probe.t(j) > radius) {
        --j;
    }
    const IndexRange range{std::max<std::int64_t>(-(n / 2), -j), std::min<std::int64_t>((n + 1) / 2 - 1, j)};
    return GridDomain(n, b, radius, range);
}

std::vector<GridPoint> grid_points(const GridDomain& domain)
{
    std::vector<GridPoint> out;
    out.reserve(grid_point_count(domain));
    for_each_grid_point(domain, [&](const GridPoint& p) { out.push_back(p); });
    return out;
}

std::size_t grid_point_count(const GridDomain& domain) noexcept
{
    const auto side = domain.index_range().count();
    const auto r = domain.index_range();
    const bool has_origin = r.lo <= 0 && r.hi >= 0;
    return static_cast<std::size_t>(side * side - (has_origin ? 1 : 0));
}

} // namespace latsum
