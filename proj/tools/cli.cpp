#include "latsum/cli.hpp"

#include "latsum/asymptotics.hpp"
#include "latsum/errors.hpp"
#include "latsum/graph.hpp"
#include "latsum/lattice.hpp"
#include "latsum/quadrature.hpp"
#include "latsum/summation.hpp"
#include "latsum/sums.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace latsum
{

namespace
{

using nlohmann::json;

class UsageError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Shortest decimal that reads back to the same double.
std::string fmt(double x)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::vector<std::string> split_commas(const std::string& text)
{
    std::vector<std::string> parts;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        parts.push_back(item);
    }
    return parts;
}

template <typename T>
T parse_number(const std::string& text, const char* what)
{
    T value{};
    const char* first = text.data();
    const char* last = text.data() + text.size();
    while (first != last && *first == ' ') {
        ++first;
    }
    if (first != last && *first == '+') {
        ++first;
    }
    const auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc() || res.ptr != last) {
        throw UsageError(std::string("cannot parse ") + what + " from '" + text + "'");
    }
    return value;
}

std::vector<int> parse_n_list(const std::string& text)
{
    std::vector<int> ns;
    for (const auto& part : split_commas(text)) {
        ns.push_back(parse_number<int>(part, "--n"));
    }
    if (ns.empty()) {
        throw UsageError("--n needs at least one value");
    }
    // Sweeps are reported in increasing n whatever order they were given in.
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    return ns;
}

QuadraticForm parse_form(const std::string& text)
{
    const auto parts = split_commas(text);
    if (parts.size() != 3) {
        throw UsageError("--form expects a,b,c");
    }
    return QuadraticForm(parse_number<double>(parts[0], "a"), parse_number<double>(parts[1], "b"),
                         parse_number<double>(parts[2], "c"));
}

struct Options
{
    std::string what;
    std::string spec;
    std::string form;
    std::string n_list;
    std::optional<int> m;
    std::optional<double> beta;
    std::string method;
    double tol = 1e-10;
    std::string format = "csv";
    std::string target;
    std::string claim;
    int nmin = 0;
    int nmax = 0;
};

LatticeSpec require_spec(const Options& o)
{
    if (o.spec.empty()) {
        throw UsageError("this command needs --spec");
    }
    return load_spec(o.spec);
}

QuadraticForm require_form(const Options& o)
{
    if (!o.form.empty()) {
        return parse_form(o.form);
    }
    if (!o.spec.empty()) {
        return load_spec(o.spec).form();
    }
    throw UsageError("this command needs --form a,b,c or --spec");
}

struct Row
{
    SumResult result;
    std::vector<std::pair<std::string, double>> extra;
};

SumResult scalar_result(long double value, int n, Method method, std::int64_t terms, double err)
{
    SumResult r;
    r.value_ext = value;
    r.value = static_cast<double>(value);
    r.n = n;
    r.method = method;
    r.terms = terms;
    r.err_estimate = err;
    return r;
}

Row eval_one(const Options& o, int n)
{
    const std::string& method = o.method;
    if (o.what == "fn") {
        const LatticeSpec spec = require_spec(o);
        if (method.empty() || method == "direct") {
            return {fn_direct(spec, n, o.m, o.beta), {}};
        }
        if (method == "expansion") {
            if (!o.m && !o.beta) {
                return {composite_fn_estimate(spec, n, o.tol), {}};
            }
            if (o.m == 1 && !o.beta) {
                return {scalar_result(fn_f1_expansion(spec).evaluate(n), n, Method::expansion, 0, 0.0), {}};
            }
        }
        throw UsageError("eval fn supports --method direct, or expansion with no --beta and m absent or 1");
    }
    if (o.what == "gn") {
        const QuadraticForm form = require_form(o);
        if (method.empty() || method == "direct") {
            return {gn_direct(form, n), {}};
        }
        if (method == "digamma") {
            return {gn_digamma(form, n), {}};
        }
        if (method == "expansion") {
            return {scalar_result(gn_expansion(form).evaluate(n), n, Method::expansion, 0, 0.0), {}};
        }
        throw UsageError("eval gn supports --method direct, digamma or expansion");
    }
    if (o.what == "hn") {
        if (method.empty() || method == "direct") {
            return {scalar_result(hn_direct_ext(n), n, Method::direct, std::max(n - 1, 0), 0.0), {}};
        }
        if (method == "expansion") {
            return {scalar_result(hn_expansion().evaluate(n), n, Method::expansion, 0, 0.0), {}};
        }
        throw UsageError("eval hn supports --method direct or expansion");
    }
    if (o.what == "un") {
        const QuadraticForm form = require_form(o);
        if (method.empty() || method == "direct") {
            return {scalar_result(un_direct_ext(form, n), n, Method::direct, 4LL * n, 0.0), {}};
        }
        if (method == "expansion") {
            return {scalar_result(un_expansion(form).evaluate(n), n, Method::expansion, 0, 0.0), {}};
        }
        throw UsageError("eval un supports --method direct or expansion");
    }
    if (o.what == "in") {
        const LatticeSpec spec = require_spec(o);
        if (method.empty() || method == "quadrature") {
            if (!o.m) {
                if (o.beta) {
                    throw UsageError("eval in with --beta needs --m");
                }
                return {in_f_numeric(spec, n, o.tol), {}};
            }
            if (o.beta) {
                return {in_fm_numeric(spec, n, *o.m, o.beta, o.tol), {}};
            }
            if (*o.m != 1) {
                throw UsageError("eval in with m >= 2 needs --beta");
            }
            return {in_f1_closed(spec, n), {}};
        }
        if (method == "expansion" && o.m == 1 && !o.beta) {
            return {scalar_result(in_f1_expansion(spec).evaluate(n), n, Method::expansion, 0, 0.0), {}};
        }
        throw UsageError("eval in supports --method quadrature, or expansion with --m 1");
    }
    if (o.what == "graph") {
        if (!method.empty() && method != "direct") {
            throw UsageError("eval graph supports --method direct");
        }
        const TorusGraph g(require_spec(o), n);
        const TauKirchhoff tk = tau_and_kirchhoff(g);
        return {scalar_result(tk.trace, n, Method::direct, g.vertex_count() - 1, 0.0), {{"tau", tk.tau}, {"kf", tk.kf}}};
    }
    throw UsageError("unknown eval target '" + o.what + "'");
}

json row_json(const Row& row)
{
    json j{{"n", row.result.n},
           {"value", row.result.value},
           {"method", std::string(to_string(row.result.method))},
           {"terms", row.result.terms},
           {"err_estimate", row.result.err_estimate}};
    for (const auto& [key, value] : row.extra) {
        j[key] = value;
    }
    return j;
}

void print_rows(const std::vector<Row>& rows, const std::string& format, std::ostream& out)
{
    if (format == "json") {
        if (rows.size() == 1) {
            out << row_json(rows.front()).dump() << '\n';
        } else {
            json arr = json::array();
            for (const auto& row : rows) {
                arr.push_back(row_json(row));
            }
            out << arr.dump() << '\n';
        }
        return;
    }
    out << "n,value,method,err_estimate";
    for (const auto& kv : rows.front().extra) {
        out << ',' << kv.first;
    }
    out << '\n';
    for (const auto& row : rows) {
        out << row.result.n << ',' << fmt(row.result.value) << ',' << to_string(row.result.method) << ','
            << fmt(row.result.err_estimate);
        for (const auto& kv : row.extra) {
            out << ',' << fmt(kv.second);
        }
        out << '\n';
    }
}

ExpansionTerms expansion_for(const Options& o)
{
    const std::string& t = o.target;
    if (t == "gn") {
        return gn_expansion(require_form(o));
    }
    if (t == "fn_f1") {
        return fn_f1_expansion(require_spec(o));
    }
    if (t == "in_f1") {
        return in_f1_expansion(require_spec(o));
    }
    if (t == "hn") {
        return hn_expansion();
    }
    if (t == "un") {
        return un_expansion(require_form(o));
    }
    throw UsageError("--target must be one of gn, fn_f1, in_f1, hn, un");
}

void print_expansion(const ExpansionTerms& e, const std::string& format, std::ostream& out)
{
    const std::vector<std::pair<std::string, long double>> coeffs{
        {"c_n2logn", e.c_n2logn}, {"c_n2", e.c_n2},       {"c_n", e.c_n},           {"c_1_even", e.c_1_even},
        {"c_1_odd", e.c_1_odd},   {"c_inv_n", e.c_inv_n}, {"c_inv_n2", e.c_inv_n2}, {"c_inv_n3", e.c_inv_n3},
    };
    const std::string scale = e.scale == LeadingScale::log_n ? "log_n" : "n2_log_n";
    if (format == "json") {
        json j;
        for (const auto& [k, v] : coeffs) {
            j[k] = static_cast<double>(v);
        }
        j["scale"] = scale;
        j["error_order"] = std::string(to_string(e.error_order));
        if (e.odd_error_order) {
            j["odd_error_order"] = std::string(to_string(*e.odd_error_order));
        }
        out << j.dump() << '\n';
        return;
    }
    out << "term,value\n";
    for (const auto& [k, v] : coeffs) {
        out << k << ',' << fmt(static_cast<double>(v)) << '\n';
    }
    out << "scale," << scale << '\n';
    out << "error_order," << to_string(e.error_order) << '\n';
    if (e.odd_error_order) {
        out << "odd_error_order," << to_string(*e.odd_error_order) << '\n';
    }
}

int cmd_eval(const Options& o, std::ostream& out)
{
    if (o.format != "csv" && o.format != "json") {
        throw UsageError("--format must be csv or json");
    }
    if (o.what == "expansion") {
        print_expansion(expansion_for(o), o.format, out);
        return exit_ok;
    }
    if (o.n_list.empty()) {
        throw UsageError("this command needs --n");
    }
    const auto ns = parse_n_list(o.n_list);
    std::vector<Row> rows(ns.size());
    parallel_for(static_cast<std::int64_t>(ns.size()),
                 [&](std::int64_t i) { rows[static_cast<std::size_t>(i)] = eval_one(o, ns[static_cast<std::size_t>(i)]); });
    print_rows(rows, o.format, out);
    return exit_ok;
}

std::vector<int> ladder(int nmin, int nmax)
{
    if (nmin < 2 || nmax < nmin) {
        throw UsageError("certify needs 2 <= --nmin <= --nmax");
    }
    std::vector<int> ns;
    // Doubling that keeps the parity of nmin: 101, 201, 401, ... or 100, 200, 400, ...
    for (long long n = nmin; n <= nmax; n = 2 * n - (n % 2)) {
        ns.push_back(static_cast<int>(n));
    }
    return ns;
}

int cmd_certify(const Options& o, std::ostream& out)
{
    const auto ns = ladder(o.nmin, o.nmax);
    const double beta = o.beta.value_or(kDefaultBeta);
    ErrorOrder model;
    std::function<long double(int)> residual;
    if (o.claim == "thm2-m1" || o.claim == "thm2-m2") {
        const LatticeSpec spec = require_spec(o);
        const int m = o.claim == "thm2-m1" ? 1 : 2;
        model = m == 1 ? ErrorOrder::log_n : ErrorOrder::constant;
        residual = [spec, m, beta, tol = o.tol](int n) { return theorem2_combination(spec, n, m, beta, tol); };
    } else if (o.claim == "thm3") {
        const QuadraticForm form = require_form(o);
        const ExpansionTerms e = gn_expansion(form);
        model = ErrorOrder::logn_over_n4;
        residual = [form, e](int n) { return gn_direct(form, n).value_ext - e.evaluate(n); };
    } else if (o.claim == "thm4") {
        const LatticeSpec spec = require_spec(o);
        const ExpansionTerms e = fn_f1_expansion(spec);
        model = ErrorOrder::logn_over_n2;
        residual = [spec, e](int n) { return fn_direct(spec, n, 1).value_ext - e.evaluate(n); };
    } else if (o.claim == "thm5-even") {
        if (o.nmin % 2 != 0) {
            throw UsageError("thm5-even needs an even --nmin");
        }
        const LatticeSpec spec = require_spec(o);
        const ExpansionTerms e = in_f1_expansion(spec);
        model = ErrorOrder::inv_n2;
        residual = [spec, e](int n) { return in_f1_closed(spec, n).value_ext - e.evaluate(n); };
    } else {
        throw UsageError("--claim must be one of thm2-m1, thm2-m2, thm3, thm4, thm5-even");
    }

    std::vector<long double> values(ns.size());
    parallel_for(static_cast<std::int64_t>(ns.size()), [&](std::int64_t i) {
        values[static_cast<std::size_t>(i)] = residual(ns[static_cast<std::size_t>(i)]);
    });
    std::vector<ResidualSample> samples;
    for (std::size_t i = 0; i < ns.size(); ++i) {
        samples.push_back({ns[i], static_cast<double>(values[i])});
    }
    const ResidualReport report = residual_order_fit(samples, model);

    json j{{"claim", o.claim},
           {"model", std::string(to_string(model))},
           {"model_exponent", report.model_exponent},
           {"fitted_exponent", report.fitted_exponent},
           {"fitted_log_power", report.fitted_log_power},
           {"amplitude", report.amplitude}};
    json arr = json::array();
    for (const auto& s : report.samples) {
        arr.push_back({{"n", s.n}, {"residual", s.residual}});
    }
    j["samples"] = arr;
    bool passed = report.passed;
    if (model == ErrorOrder::log_n || model == ErrorOrder::constant) {
        // Bounded means no growth trend: the last scaled value is at most twice the median.
        std::vector<double> scaled;
        for (const auto& s : report.samples) {
            const double v = std::abs(s.residual);
            scaled.push_back(model == ErrorOrder::log_n ? v / std::log(static_cast<double>(s.n)) : v);
        }
        const double last = scaled.back();
        std::sort(scaled.begin(), scaled.end());
        const std::size_t k = scaled.size();
        const double median = k % 2 == 1 ? scaled[k / 2] : 0.5 * (scaled[k / 2 - 1] + scaled[k / 2]);
        const bool bounded = last <= 2.0 * median;
        j["bounded"] = bounded;
        passed = passed && bounded;
    }
    j["passed"] = passed;
    out << j.dump() << '\n';
    return passed ? exit_ok : exit_certify_failed;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Planar lattice sums, their integrals and asymptotic expansions"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--spec", o.spec, "bundled spec name (square, triangular, unionjack) or JSON file");
        cmd->add_option("--form", o.form, "quadratic form a,b,c");
        cmd->add_option("--beta", o.beta, "restricted-box parameter in (0,1)");
        cmd->add_option("--tol", o.tol, "relative quadrature tolerance")->capture_default_str();
    };

    auto* eval = app.add_subcommand("eval", "evaluate a sum, integral, expansion or graph invariant");
    eval->add_option("what", o.what, "fn, gn, hn, un, in, expansion or graph")
        ->required()
        ->check(CLI::IsMember({"fn", "gn", "hn", "un", "in", "expansion", "graph"}));
    add_common(eval);
    eval->add_option("--n", o.n_list, "grid size, or a comma-separated sweep");
    eval->add_option("--m", o.m, "Taylor order of the surrogate f_m");
    eval->add_option("--method", o.method, "direct, digamma, quadrature or expansion");
    eval->add_option("--format", o.format, "csv or json")->capture_default_str();
    eval->add_option("--target", o.target, "expansion target: gn, fn_f1, in_f1, hn, un");

    auto* certify = app.add_subcommand("certify", "fit the empirical error order of a claim over an n ladder");
    certify->add_option("--claim", o.claim, "thm2-m1, thm2-m2, thm3, thm4 or thm5-even")->required();
    add_common(certify);
    certify->add_option("--nmin", o.nmin, "first n of the doubling ladder")->required();
    certify->add_option("--nmax", o.nmax, "upper bound of the ladder")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    }

    try {
        if (*eval) {
            return cmd_eval(o, out);
        }
        return cmd_certify(o, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const InvalidSpec& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const NotPositiveDefinite& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const InsufficientSamples& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const Error& e) {
        err << "computation failed: " << e.what() << '\n';
        return exit_computation;
    } catch (const std::exception& e) {
        err << "computation failed: " << e.what() << '\n';
        return exit_computation;
    }
}

} // namespace latsum
