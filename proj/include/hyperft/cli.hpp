#ifndef HYPERFT_CLI_HPP
#define HYPERFT_CLI_HPP

// Driver layer behind the hyperft tool: run configurations, sweeps over ξ,
// the evaluation-count table and defining-function grids, plus CSV / JSON
// output.  Kept in the library so the tool's behaviour is testable without
// spawning processes.

#include <nlohmann/json.hpp>

#include <cstddef>
#include <fstream>
#include <future>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "hyperft/baselines.hpp"
#include "hyperft/numerics.hpp"
#include "hyperft/transform.hpp"

namespace hyperft {

/// Invalid configuration; the tool maps it to exit status 2.
class UsageError : public Error {
public:
    using Error::Error;
};

enum class Method { hyper, ooura_mori, sugihara };
enum class EmitFormat { csv, json };

inline const char* to_string(Method m) {
    switch (m) {
        case Method::hyper: return "hyper";
        case Method::ooura_mori: return "ooura-mori";
        case Method::sugihara: return "sugihara";
    }
    return "?";
}

inline std::optional<Method> parse_method(std::string_view s) {
    if (s == "hyper") return Method::hyper;
    if (s == "ooura-mori") return Method::ooura_mori;
    if (s == "sugihara") return Method::sugihara;
    return std::nullopt;
}

struct CenterPair {
    Complex plus;
    Complex minus;
    std::string label;  ///< e.g. "+i/-i"
};

/// Short text for a center: "+i", "-2i", "1+i", "-1+0.5i".
inline std::string center_label(const Complex& z) {
    auto part = [](const Real& x) {
        std::ostringstream os;
        os.precision(12);
        os << static_cast<double>(x);
        return os.str();
    };
    std::string im = part(z.im);
    if (im == "1") im = "";
    else if (im == "-1") im = "-";
    if (im.empty() || im[0] != '-') im = "+" + im;
    im += "i";
    return z.re == 0 ? im : part(z.re) + im;
}

/// "a+bi,c-di", upper center first.
inline CenterPair parse_center_pair(std::string_view text, const PrecisionContext& ctx) {
    const auto comma = text.find(',');
    if (comma == std::string_view::npos || text.find(',', comma + 1) != std::string_view::npos) {
        throw UsageError("centers must be given as 'upper,lower', got '" + std::string(text) + "'");
    }
    const std::string_view a = text.substr(0, comma);
    const std::string_view b = text.substr(comma + 1);
    CenterPair out;
    try {
        out.plus = parse_complex(a, ctx);
        out.minus = parse_complex(b, ctx);
    } catch (const ParseError& e) {
        throw UsageError(e.what());
    }
    out.label = center_label(out.plus) + "/" + center_label(out.minus);
    return out;
}

/// The four center pairs of the evaluation-count table.
inline const std::vector<std::string>& standard_center_pairs() {
    static const std::vector<std::string> pairs{"+i,-i", "+2i,-2i", "1+i,1-i", "-1+i,-1-i"};
    return pairs;
}

/// start:stop:step, stop included when the grid lands on it.
inline std::vector<Real> expand_xi_grid(std::string_view text, const PrecisionContext& ctx) {
    const auto first = text.find(':');
    const auto second = first == std::string_view::npos ? first : text.find(':', first + 1);
    if (second == std::string_view::npos) throw UsageError("xi grid must be start:stop:step");
    ScopedPrecision scope(ctx);
    Real start, stop, step;
    try {
        start = parse_real(text.substr(0, first), ctx);
        stop = parse_real(text.substr(first + 1, second - first - 1), ctx);
        step = parse_real(text.substr(second + 1), ctx);
    } catch (const ParseError& e) {
        throw UsageError(e.what());
    }
    if (!(step > 0)) throw UsageError("xi grid step must be positive");
    if (stop < start) throw UsageError("xi grid stop lies below start");
    const Real slack = step * ctx.tolerance(0) * 1000;
    std::vector<Real> out;
    for (long k = 0;; ++k) {
        const Real xi = start + Real(k) * step;
        if (xi > stop + slack) break;
        out.push_back(xi);
        if (out.size() > 1000000) throw UsageError("xi grid has more than a million points");
    }
    return out;
}

/// ξ = 0.25·k for k = 1..16.
inline std::vector<Real> default_xi_list(const PrecisionContext& ctx) {
    ScopedPrecision scope(ctx);
    std::vector<Real> out;
    for (int k = 1; k <= 16; ++k) out.push_back(Real(k) / 4);
    return out;
}

struct RunConfig {
    std::string function = "runge";
    Method method = Method::hyper;
    std::string centers = "+i,-i";
    int digits = 100;
    std::size_t taylor_terms = default_taylor_terms;
    std::optional<std::size_t> depth;  ///< defaults to taylor_terms
    std::optional<std::string> mesh;
    std::optional<std::string> quad_eps;
    std::optional<std::size_t> max_nodes;
    std::vector<std::string> xi;
    std::optional<std::string> xi_grid;
    std::optional<std::string> om_mesh;
    std::optional<std::string> om_trunc;
    std::optional<std::size_t> sugihara_levels;
    EmitFormat emit = EmitFormat::csv;
    std::optional<std::string> out;
    std::optional<std::string> save_transform;
    std::optional<std::string> load_transform;
    bool concurrent = true;
};

struct ResultRow {
    Real xi;
    Complex value;
    std::optional<Complex> exact;
    std::optional<Real> abs_error;
    std::size_t n_evals = 0;
    Real depth_error_proxy;
    std::string method;
    std::string center;
};

struct RunReport {
    std::vector<ResultRow> rows;
    bool ok = true;
    std::vector<std::string> warnings;
    int digits = 0;  ///< precision actually used (a loaded transform fixes it)
};

namespace detail {

inline Real parse_option(const std::optional<std::string>& text, const char* flag, const PrecisionContext& ctx) {
    try {
        return parse_real(*text, ctx);
    } catch (const ParseError&) {
        throw UsageError(std::string(flag) + " expects a decimal number, got '" + *text + "'");
    }
}

inline PrecisionContext checked_context(int digits) {
    try {
        return make_context(digits);
    } catch (const InvalidArgument& e) {
        throw UsageError(e.what());
    }
}

inline std::vector<Real> sweep_points(const RunConfig& config, const PrecisionContext& ctx) {
    if (!config.xi.empty() && config.xi_grid) throw UsageError("give either --xi or --xi-grid, not both");
    if (config.xi_grid) return expand_xi_grid(*config.xi_grid, ctx);
    if (config.xi.empty()) return default_xi_list(ctx);
    std::vector<Real> out;
    for (const std::string& s : config.xi) {
        try {
            out.push_back(parse_real(s, ctx));
        } catch (const ParseError&) {
            throw UsageError("--xi expects a decimal number, got '" + s + "'");
        }
    }
    return out;
}

inline DeRuleSpec de_spec_for(const RunConfig& config, const PrecisionContext& ctx) {
    DeRuleSpec spec = default_transform_spec(ctx, config.taylor_terms);
    if (config.mesh) spec.mesh = parse_option(config.mesh, "--mesh", ctx);
    if (config.quad_eps) spec.truncation = parse_option(config.quad_eps, "--quad-eps", ctx);
    if (config.max_nodes) spec.max_nodes_per_side = *config.max_nodes;
    try {
        validate(spec);
    } catch (const InvalidArgument& e) {
        throw UsageError(e.what());
    }
    return spec;
}

inline BaselineParams baseline_params_for(const RunConfig& config, const PrecisionContext& ctx) {
    BaselineParams p = default_baseline_params(ctx);
    if (config.om_mesh) p.ooura_mori.mesh = parse_option(config.om_mesh, "--om-mesh", ctx);
    if (config.om_trunc) p.ooura_mori.truncation = parse_option(config.om_trunc, "--om-trunc", ctx);
    if (config.sugihara_levels) p.sugihara.levels = *config.sugihara_levels;
    if (!(p.ooura_mori.mesh > 0)) throw UsageError("--om-mesh must be positive");
    if (!(p.ooura_mori.truncation > 0)) throw UsageError("--om-trunc must be positive");
    if (p.sugihara.levels < 2) throw UsageError("--sugihara-levels must be at least 2");
    return p;
}

/// job(i) for every sweep point; rows come back in index order.
template <class Job>
std::vector<ResultRow> map_points(std::size_t count, bool concurrent, const PrecisionContext& ctx, Job job) {
    std::vector<ResultRow> rows(count);
    if (!concurrent || count < 2) {
        for (std::size_t i = 0; i < count; ++i) rows[i] = job(i);
        return rows;
    }
    std::vector<std::future<ResultRow>> futures;
    futures.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        futures.push_back(std::async(std::launch::async, [&ctx, &job, i] {
            ScopedPrecision scope(ctx);
            return job(i);
        }));
    }
    for (std::size_t i = 0; i < count; ++i) rows[i] = futures[i].get();
    return rows;
}

inline void attach_reference(ResultRow& row, const std::optional<RegisteredFunction>& fn, const PrecisionContext& ctx) {
    if (!fn) return;
    row.exact = reference_value(*fn, row.xi, ctx);
    if (row.exact) row.abs_error = abs(row.value - *row.exact);
}

inline std::vector<std::string> function_names() {
    std::vector<std::string> names;
    for (const auto& fn : function_registry()) names.push_back(fn.name);
    return names;
}

inline RegisteredFunction require_function(const std::string& name) {
    auto fn = find_function(name);
    if (!fn) {
        std::string known;
        for (const auto& n : function_names()) known += (known.empty() ? "" : ", ") + n;
        throw UsageError("unknown function '" + name + "' (known: " + known + ")");
    }
    return *fn;
}

inline std::size_t checked_depth(const RunConfig& config, std::size_t terms) {
    const std::size_t depth = config.depth.value_or(terms);
    if (depth == 0 || depth > terms) {
        throw UsageError("--depth must lie in [1, " + std::to_string(terms) + "]");
    }
    return depth;
}

inline RunReport run_hyper_loaded(const RunConfig& config) {
    std::ifstream peek(*config.load_transform);
    if (!peek) throw UsageError("cannot open transform file '" + *config.load_transform + "'");
    TransformMetadata meta;
    try {
        meta = peek_transform_metadata(peek);
    } catch (const std::logic_error&) {
        throw ParseError("bad header in transform file '" + *config.load_transform + "'");
    }
    if (meta.digits <= 0) throw ParseError("transform file carries no digits entry");
    const PrecisionContext ctx = checked_context(meta.digits);
    ScopedPrecision scope(ctx);

    std::ifstream in(*config.load_transform);
    auto [F, loaded] = load_transform(in, ctx);
    const std::size_t depth = checked_depth(config, F.taylor_terms);
    const std::optional<RegisteredFunction> fn =
        loaded.function == "custom" ? std::nullopt : find_function(loaded.function);
    const std::string label = center_label(F.cf_plus.center) + "/" + center_label(F.cf_minus.center);

    RunReport report;
    report.digits = ctx.decimal_digits();
    const auto points = sweep_points(config, ctx);
    report.rows = map_points(points.size(), config.concurrent, ctx, [&](std::size_t i) {
        const Real& xi = points[i];
        const TransformValue v = evaluate_with_proxy(F, xi, depth, ctx);
        ResultRow row{xi, v.value, std::nullopt, std::nullopt, F.total_evals, v.depth_error_proxy, "hyper", label};
        attach_reference(row, fn, ctx);
        return row;
    });
    return report;
}

}  // namespace detail

/// Builds (or loads) the transform once and evaluates it over the sweep.
/// Library errors propagate; configuration problems raise UsageError.
inline RunReport run(const RunConfig& config) {
    if (config.load_transform) {
        if (config.method != Method::hyper) throw UsageError("--load-transform only applies to --method hyper");
        return detail::run_hyper_loaded(config);
    }

    const PrecisionContext ctx = detail::checked_context(config.digits);
    ScopedPrecision scope(ctx);
    const RegisteredFunction fn = detail::require_function(config.function);
    const auto points = detail::sweep_points(config, ctx);
    if (config.taylor_terms == 0) throw UsageError("--taylor-terms must be positive");

    RunReport report;
    report.digits = ctx.decimal_digits();

    if (config.method == Method::hyper) {
        const std::size_t depth = detail::checked_depth(config, config.taylor_terms);
        const CenterPair centers = parse_center_pair(config.centers, ctx);
        try {
            detail::check_center(HalfPlane::upper, centers.plus);
            detail::check_center(HalfPlane::lower, centers.minus);
        } catch (const InvalidArgument& e) {
            throw UsageError(e.what());
        } catch (const IllConditionedCenter& e) {
            throw UsageError(e.what());
        }
        const DeRuleSpec spec = detail::de_spec_for(config, ctx);
        const FourierHyperfunction F = build_transform(fn.f, centers.plus, centers.minus, config.taylor_terms, spec, ctx,
                                                       MeshPolicy::scale_with_center, config.concurrent);
        for (const auto& adj : F.retry_log) {
            report.warnings.push_back(std::string(to_string(adj.branch)) + " center moved from " + to_string(adj.from, 12) +
                                      " to " + to_string(adj.to, 12) + " after a zero coefficient at index " +
                                      std::to_string(adj.zero_index));
        }
        if (config.save_transform) {
            std::ofstream out(*config.save_transform);
            if (!out) throw UsageError("cannot write transform file '" + *config.save_transform + "'");
            save_transform(out, F, TransformMetadata{fn.id ? fn.name : std::string("custom"), ctx.decimal_digits()}, ctx);
        }
        report.rows = detail::map_points(points.size(), config.concurrent, ctx, [&](std::size_t i) {
            const Real& xi = points[i];
            const TransformValue v = evaluate_with_proxy(F, xi, depth, ctx);
            ResultRow row{xi, v.value, std::nullopt, std::nullopt, F.total_evals, v.depth_error_proxy, "hyper",
                          centers.label};
            detail::attach_reference(row, fn, ctx);
            return row;
        });
        return report;
    }

    if (config.save_transform) throw UsageError("--save-transform only applies to --method hyper");
    for (const Real& xi : points) {
        if (xi == 0) throw UsageError("baseline methods need xi != 0");
    }
    const BaselineParams params = detail::baseline_params_for(config, ctx);
    const BaselineMethod method =
        config.method == Method::ooura_mori ? BaselineMethod::ooura_mori : BaselineMethod::sugihara;
    std::vector<std::string> point_warnings(points.size());
    report.rows = detail::map_points(points.size(), config.concurrent, ctx, [&](std::size_t i) {
        const Real& xi = points[i];
        const BaselineResult r = full_transform_via_half_integrals(fn.f, fn.parity, xi, method, params, ctx);
        if (!r.ok) point_warnings[i] = "xi " + to_string(xi, 12) + ": " + r.warning;
        ResultRow row{xi, r.value, std::nullopt, std::nullopt, r.n_evals, r.error_proxy, to_string(method), ""};
        detail::attach_reference(row, fn, ctx);
        return row;
    });
    for (auto& w : point_warnings) {
        if (w.empty()) continue;
        report.ok = false;
        report.warnings.push_back(std::move(w));
    }
    return report;
}

// ---------------------------------------------------------------------------
// Output

inline int output_significant_digits(int digits) { return digits < 40 ? digits : 40; }

inline const std::vector<std::string>& csv_columns() {
    static const std::vector<std::string> cols{"xi",        "re",      "im",     "exact_re", "exact_im",
                                               "abs_error", "n_evals", "depth_error_proxy", "method", "center"};
    return cols;
}

inline void write_rows_csv(std::ostream& out, const std::vector<ResultRow>& rows, int significant) {
    const auto& cols = csv_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
    out << '\n';
    for (const ResultRow& r : rows) {
        out << to_string(r.xi, significant) << ',' << to_string(r.value.re, significant) << ','
            << to_string(r.value.im, significant) << ',';
        if (r.exact) out << to_string(r.exact->re, significant) << ',' << to_string(r.exact->im, significant);
        else out << ',';
        out << ',' << (r.abs_error ? to_string(*r.abs_error, significant) : std::string()) << ',' << r.n_evals << ','
            << to_string(r.depth_error_proxy, significant) << ',' << r.method << ',' << r.center << '\n';
    }
}

inline nlohmann::json rows_to_json(const std::vector<ResultRow>& rows, int significant) {
    auto num = [significant](const Real& x) { return to_string(x, significant); };
    nlohmann::json arr = nlohmann::json::array();
    for (const ResultRow& r : rows) {
        nlohmann::json o;
        o["xi"] = num(r.xi);
        o["re"] = num(r.value.re);
        o["im"] = num(r.value.im);
        o["exact_re"] = r.exact ? nlohmann::json(num(r.exact->re)) : nlohmann::json(nullptr);
        o["exact_im"] = r.exact ? nlohmann::json(num(r.exact->im)) : nlohmann::json(nullptr);
        o["abs_error"] = r.abs_error ? nlohmann::json(num(*r.abs_error)) : nlohmann::json(nullptr);
        o["n_evals"] = r.n_evals;
        o["depth_error_proxy"] = num(r.depth_error_proxy);
        o["method"] = r.method;
        o["center"] = r.center;
        arr.push_back(std::move(o));
    }
    return arr;
}

inline void write_rows(std::ostream& out, const std::vector<ResultRow>& rows, EmitFormat format, int digits) {
    const int significant = output_significant_digits(digits);
    if (format == EmitFormat::csv) {
        write_rows_csv(out, rows, significant);
    } else {
        out << rows_to_json(rows, significant).dump(2) << '\n';
    }
}

// ---------------------------------------------------------------------------
// Evaluation-count table: test functions × standard center pairs

struct EvalCounts {
    std::vector<std::string> center_labels;
    std::vector<std::string> functions;
    std::vector<std::vector<std::size_t>> evals;  ///< [function][center]
};

inline EvalCounts eval_counts(const RunConfig& config) {
    if (config.method != Method::hyper) throw UsageError("eval-counts is defined for --method hyper only");
    const PrecisionContext ctx = detail::checked_context(config.digits);
    ScopedPrecision scope(ctx);
    if (config.taylor_terms == 0) throw UsageError("--taylor-terms must be positive");
    const DeRuleSpec spec = detail::de_spec_for(config, ctx);

    EvalCounts out;
    std::vector<CenterPair> pairs;
    for (const auto& text : standard_center_pairs()) {
        pairs.push_back(parse_center_pair(text, ctx));
        out.center_labels.push_back(pairs.back().label);
    }
    for (TestFunctionId id : {TestFunctionId::runge, TestFunctionId::tanh_pi, TestFunctionId::log_abs,
                              TestFunctionId::abs_val}) {
        out.functions.push_back(to_string(id));
        std::vector<std::size_t> row;
        const SampleFunction f = [id](const Real& x) { return sample_test_function(id, x); };
        for (const CenterPair& c : pairs) {
            row.push_back(build_transform(f, c.plus, c.minus, config.taylor_terms, spec, ctx,
                                          MeshPolicy::scale_with_center, config.concurrent)
                              .total_evals);
        }
        out.evals.push_back(std::move(row));
    }
    return out;
}

inline void write_eval_counts(std::ostream& out, const EvalCounts& t, EmitFormat format) {
    if (format == EmitFormat::json) {
        nlohmann::json arr = nlohmann::json::array();
        for (std::size_t i = 0; i < t.functions.size(); ++i) {
            nlohmann::json o;
            o["function"] = t.functions[i];
            for (std::size_t j = 0; j < t.center_labels.size(); ++j) o[t.center_labels[j]] = t.evals[i][j];
            arr.push_back(std::move(o));
        }
        out << arr.dump(2) << '\n';
        return;
    }
    out << "function";
    for (const auto& l : t.center_labels) out << ',' << l;
    out << '\n';
    for (std::size_t i = 0; i < t.functions.size(); ++i) {
        out << t.functions[i];
        for (std::size_t n : t.evals[i]) out << ',' << n;
        out << '\n';
    }
}

// ---------------------------------------------------------------------------
// Real part of a defining function over a rectangle off the real axis

struct FixtureGridConfig {
    FixtureKind kind = FixtureKind::delta;
    std::string re_range = "-1:1";
    std::string im_range = "0.1:1";
    std::size_t n = 10;  ///< points along Re
    std::size_t m = 10;  ///< points along Im
    int digits = 30;
};

struct FixturePoint {
    Real re;
    Real im;
    Real value;
};

namespace detail {

inline std::pair<Real, Real> parse_range(std::string_view text, const PrecisionContext& ctx) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) throw UsageError("range must be lo:hi, got '" + std::string(text) + "'");
    try {
        Real lo = parse_real(text.substr(0, colon), ctx);
        Real hi = parse_real(text.substr(colon + 1), ctx);
        if (hi < lo) throw UsageError("range '" + std::string(text) + "' is reversed");
        return {lo, hi};
    } catch (const ParseError& e) {
        throw UsageError(e.what());
    }
}

inline std::vector<Real> linspace(const Real& lo, const Real& hi, std::size_t count) {
    std::vector<Real> out;
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back(count == 1 ? lo : Real(lo + (hi - lo) * Real(i) / Real(count - 1)));
    }
    return out;
}

}  // namespace detail

inline std::vector<FixturePoint> fixture_grid(const FixtureGridConfig& config) {
    const PrecisionContext ctx = detail::checked_context(config.digits);
    ScopedPrecision scope(ctx);
    if (config.n == 0 || config.m == 0) throw UsageError("grid sizes must be positive");
    const auto [re_lo, re_hi] = detail::parse_range(config.re_range, ctx);
    const auto [im_lo, im_hi] = detail::parse_range(config.im_range, ctx);
    if (im_lo <= 0 && im_hi >= 0) throw UsageError("grid must not touch the real axis");

    std::vector<FixturePoint> out;
    for (const Real& re : detail::linspace(re_lo, re_hi, config.n)) {
        for (const Real& im : detail::linspace(im_lo, im_hi, config.m)) {
            out.push_back({re, im, defining_fixture(config.kind, Complex(re, im), ctx).re});
        }
    }
    return out;
}

inline void write_fixture_grid(std::ostream& out, const std::vector<FixturePoint>& points, int digits) {
    const int significant = output_significant_digits(digits);
    out << "re,im,value\n";
    for (const auto& p : points) {
        out << to_string(p.re, significant) << ',' << to_string(p.im, significant) << ','
            << to_string(p.value, significant) << '\n';
    }
}

}  // namespace hyperft

#endif  // HYPERFT_CLI_HPP
