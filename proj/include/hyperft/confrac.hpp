#ifndef HYPERFT_CONFRAC_HPP
#define HYPERFT_CONFRAC_HPP

// Corresponding continued fractions
//
//     F(ζ) = a₁ / (1 + a₂w / (1 + a₃w / (1 + ⋯))),   w = ζ - ζ₀,
//
// built from Taylor coefficients by the quotient-difference algorithm and
// evaluated anywhere in ℂ.  Off the disk of convergence of the source series
// this evaluation is the analytic continuation.
//
// QD is numerically unstable; it is run without pivoting at the full working
// precision of the field type.  The algorithms are generic over the field so
// the tableau can also be run in exact rational arithmetic.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hyperft/numerics.hpp"
#include "hyperft/taylor.hpp"

namespace hyperft {

using Rational = boost::multiprecision::cpp_rational;

/// Magnitudes and the "numerically zero" threshold for a coefficient field.
template <class Field>
struct field_traits;

template <>
struct field_traits<Complex> {
    using magnitude_type = Real;
    static Real magnitude(const Complex& z) { return abs(z); }
    /// Relative threshold below which a value counts as zero: 10^-(d-5).
    static Real zero_threshold(const PrecisionContext& ctx) { return ctx.tolerance(5); }
    /// Agreement required before a zero partial numerator ends the fraction.
    static Real match_threshold(const PrecisionContext& ctx) { return boost::multiprecision::sqrt(ctx.tolerance(5)); }
};

template <>
struct field_traits<Rational> {
    using magnitude_type = Rational;
    static Rational magnitude(const Rational& q) { return boost::multiprecision::abs(q); }
    static Rational zero_threshold(const PrecisionContext&) { return Rational(0); }
    static Rational match_threshold(const PrecisionContext&) { return Rational(0); }
};

template <class Field>
struct ContinuedFraction {
    Field center{};
    std::vector<Field> coefficients;  ///< a₁ … a_M
    bool terminated = false;          ///< a trailing exact zero ends the fraction

    std::size_t size() const noexcept { return coefficients.size(); }
};

namespace detail {

template <class Field>
bool negligible(const Field& value, const typename field_traits<Field>::magnitude_type& scale,
                const typename field_traits<Field>::magnitude_type& threshold) {
    return field_traits<Field>::magnitude(value) <= threshold * scale;
}

template <class M>
const M& max_of(const M& a, const M& b) {
    return a < b ? b : a;
}

}  // namespace detail

template <class Field>
std::vector<Field> cf_reexpand(const ContinuedFraction<Field>& cf, std::size_t m, const PrecisionContext& ctx);

namespace detail {

/// The same fraction by repeated series division: s₀ = f and, with a_j = s_{j-1}(0),
/// s_j = (a_j / s_{j-1} - 1) / w.  It needs no deep tableau rows, so it survives
/// Padé blocks that poison the rhombus rules.  Empty when no fraction exists.
template <class Field>
std::optional<ContinuedFraction<Field>> series_division_fraction(std::span<const Field> c, const Field& center,
                                                                 const PrecisionContext& ctx) {
    using traits = field_traits<Field>;
    using Mag = typename traits::magnitude_type;
    const Mag threshold = traits::zero_threshold(ctx);
    ContinuedFraction<Field> cf;
    cf.center = center;
    cf.coefficients.push_back(c[0]);
    std::vector<Field> series(c.begin(), c.end());
    while (cf.size() < c.size()) {
        const std::size_t m = series.size();
        std::vector<Field> r(m, Field(0));
        r[0] = Field(1) / series[0];
        for (std::size_t i = 1; i < m; ++i) {
            Field acc(0);
            for (std::size_t j = 1; j <= i; ++j) acc = acc + series[j] * r[i - j];
            r[i] = -acc / series[0];
        }
        std::vector<Field> next(m - 1);
        Mag scale(0);
        bool all_zero = true;
        for (std::size_t i = 1; i < m; ++i) {
            next[i - 1] = cf.coefficients.back() * r[i];
            scale = max_of(scale, traits::magnitude(next[i - 1]));
        }
        for (const Field& v : next) all_zero = all_zero && negligible(v, scale, threshold);
        if (all_zero || scale == 0) {
            cf.coefficients.push_back(Field(0));
            cf.terminated = true;
            return cf;
        }
        if (negligible(next[0], scale, threshold)) return std::nullopt;
        cf.coefficients.push_back(next[0]);
        series = std::move(next);
    }
    return cf;
}

}  // namespace detail

/// Quotient-difference algorithm.  With q₁⁽ⁿ⁾ = c_{n+1}/c_n and e₀⁽ⁿ⁾ = 0,
///
///     e_k⁽ⁿ⁾   = q_k⁽ⁿ⁺¹⁾ - q_k⁽ⁿ⁾ + e_{k-1}⁽ⁿ⁺¹⁾
///     q_{k+1}⁽ⁿ⁾ = q_k⁽ⁿ⁺¹⁾ e_k⁽ⁿ⁺¹⁾ / e_k⁽ⁿ⁾
///
/// and a₁ = c₀, a_{2k} = -q_k⁽⁰⁾, a_{2k+1} = -e_k⁽⁰⁾.  The tableau is swept one
/// column at a time, keeping only the current q and e columns.
///
/// A vanishing top entry is a zero partial numerator.  It ends the fraction
/// (terminated = true, trailing coefficient zero) when the truncated fraction
/// re-expands to the whole input; otherwise that is a Breakdown.  A vanishing
/// divisor lower in the tableau only poisons the entries that depend on it.
/// When a needed top entry is poisoned (a Padé block), the fraction so far is
/// accepted if it already reproduces the input; failing that it is rebuilt by
/// series division, and only if that also fails is the original divisor
/// reported as a Breakdown.
template <class Field>
ContinuedFraction<Field> qd_transform(std::span<const Field> c, const Field& center, const PrecisionContext& ctx) {
    using traits = field_traits<Field>;
    using Mag = typename traits::magnitude_type;
    using Origin = std::optional<std::pair<std::size_t, std::size_t>>;  // first zero divisor upstream
    if (c.empty()) throw InvalidArgument("qd_transform needs at least one coefficient");
    ScopedPrecision scope(ctx);
    const Mag threshold = traits::zero_threshold(ctx);

    Mag largest = traits::magnitude(c[0]);
    for (const Field& v : c) largest = detail::max_of(largest, traits::magnitude(v));
    for (std::size_t n = 0; n < c.size(); ++n) {
        if (largest == 0 || detail::negligible(c[n], largest, threshold)) throw ZeroCoefficient(n);
    }

    ContinuedFraction<Field> cf;
    cf.center = center;
    cf.coefficients.reserve(c.size());
    cf.coefficients.push_back(c[0]);
    const std::size_t target = c.size();
    if (target == 1) return cf;

    // Appends the zero partial numerator if the shortened fraction reproduces c.
    auto try_terminate = [&] {
        ContinuedFraction<Field> candidate = cf;
        candidate.coefficients.push_back(Field(0));
        candidate.terminated = true;
        const auto back = cf_reexpand(candidate, target, ctx);
        const Mag tol = traits::match_threshold(ctx) * largest;
        for (std::size_t n = 0; n < target; ++n) {
            if (traits::magnitude(back[n] - c[n]) > tol) return false;
        }
        cf = std::move(candidate);
        return true;
    };
    auto fail = [](const Origin& origin, std::size_t k, std::size_t n) {
        return origin ? Breakdown(origin->first, origin->second) : Breakdown(k, n);
    };

    std::vector<Field> q(c.size() - 1);
    std::vector<Origin> q_bad(q.size());
    std::vector<bool> q_zero(q.size());  // numerator e_k^(n+1) was negligible
    for (std::size_t n = 0; n + 1 < c.size(); ++n) q[n] = c[n + 1] / c[n];
    std::vector<Field> e_prev(c.size(), Field(0));
    std::vector<Origin> e_prev_bad(c.size());

    for (std::size_t k = 1;; ++k) {
        if (q_bad[0]) {
            if (try_terminate()) break;
            if (auto alt = detail::series_division_fraction(c, center, ctx)) return *alt;
            throw fail(q_bad[0], k, 0);
        }
        if (q_zero[0]) {
            if (try_terminate()) break;
            throw Breakdown(k - 1, 1);  // the vanished numerator is a divisor one row down
        }
        cf.coefficients.push_back(-q[0]);
        if (cf.size() == target) break;

        std::vector<Field> e(q.size() - 1);
        std::vector<Origin> e_bad(e.size());
        std::vector<bool> zero(e.size());
        for (std::size_t n = 0; n < e.size(); ++n) {
            e_bad[n] = q_bad[n + 1] ? q_bad[n + 1] : q_bad[n] ? q_bad[n] : e_prev_bad[n + 1];
            if (e_bad[n]) continue;
            e[n] = q[n + 1] - q[n] + e_prev[n + 1];
            const Mag scale = detail::max_of(detail::max_of(traits::magnitude(q[n + 1]), traits::magnitude(q[n])),
                                             traits::magnitude(e_prev[n + 1]));
            zero[n] = detail::negligible(e[n], scale, threshold);
        }
        if (e_bad[0]) {
            if (try_terminate()) break;
            if (auto alt = detail::series_division_fraction(c, center, ctx)) return *alt;
            throw fail(e_bad[0], k, 0);
        }
        if (zero[0]) {
            if (try_terminate()) break;
            throw Breakdown(k, 0);
        }
        cf.coefficients.push_back(-e[0]);
        if (cf.size() == target) break;

        std::vector<Field> q_next(e.size() - 1);
        std::vector<Origin> q_next_bad(q_next.size());
        std::vector<bool> q_next_zero(q_next.size());
        for (std::size_t n = 0; n < q_next.size(); ++n) {
            q_next_bad[n] = e_bad[n + 1] ? e_bad[n + 1] : e_bad[n] ? e_bad[n] : q_bad[n + 1];
            if (!q_next_bad[n] && zero[n]) q_next_bad[n] = std::pair{k, n};
            if (q_next_bad[n]) continue;
            q_next[n] = q[n + 1] * e[n + 1] / e[n];
            q_next_zero[n] = zero[n + 1];
        }
        q = std::move(q_next);
        q_bad = std::move(q_next_bad);
        q_zero = std::move(q_next_zero);
        e_prev = std::move(e);
        e_prev_bad = std::move(e_bad);
    }
    return cf;
}

inline ContinuedFraction<Complex> qd_transform(const TaylorExpansion& series, const PrecisionContext& ctx) {
    return qd_transform<Complex>(std::span<const Complex>(series.coefficients), series.center, ctx);
}

namespace detail {

template <class Field>
std::size_t effective_depth(const ContinuedFraction<Field>& cf, std::size_t depth) {
    if (depth == 0) throw InvalidArgument("continued-fraction depth must be positive");
    if (depth > cf.size()) {
        if (!cf.terminated) {
            throw InvalidArgument("depth " + std::to_string(depth) + " exceeds the " + std::to_string(cf.size()) +
                                  " available coefficients");
        }
        return cf.size();
    }
    return depth;
}

}  // namespace detail

/// Depth-`depth` convergent at ζ by backward recurrence:
/// t ← a_depth·w, t ← a_j·w/(1+t) for j = depth-1 … 2, result a₁/(1+t).
/// A terminated fraction is exact at any depth beyond its length.
template <class Field>
Field cf_eval(const ContinuedFraction<Field>& cf, const Field& zeta, std::size_t depth, const PrecisionContext& ctx) {
    using traits = field_traits<Field>;
    using Mag = typename traits::magnitude_type;
    depth = detail::effective_depth(cf, depth);
    ScopedPrecision scope(ctx);
    const Mag threshold = traits::zero_threshold(ctx);
    const Mag one(1);

    const Field w = zeta - cf.center;
    if (depth == 1) return cf.coefficients[0];
    Field t = cf.coefficients[depth - 1] * w;
    for (std::size_t j = depth - 1; j >= 1; --j) {
        const Field den = Field(1) + t;
        if (detail::negligible(den, one, threshold)) throw NearPole(j);
        if (j == 1) return cf.coefficients[0] / den;
        t = cf.coefficients[j - 1] * w / den;
    }
    return cf.coefficients[0];  // unreachable
}

/// First m Taylor coefficients about the center of the full-depth convergent,
/// computed with truncated power-series arithmetic on the backward recurrence.
/// A terminated fraction is a rational function and re-expands to any length.
template <class Field>
std::vector<Field> cf_reexpand(const ContinuedFraction<Field>& cf, std::size_t m, const PrecisionContext& ctx) {
    if (m == 0 || (m > cf.size() && !cf.terminated)) {
        throw InvalidArgument("re-expansion length must lie in [1, " + std::to_string(cf.size()) + "]");
    }
    ScopedPrecision scope(ctx);

    // 1 / (1 + t) for a series t with zero constant term
    auto reciprocal_one_plus = [m](const std::vector<Field>& t) {
        std::vector<Field> r(m, Field(0));
        r[0] = Field(1);
        for (std::size_t i = 1; i < m; ++i) {
            Field acc(0);
            for (std::size_t j = 1; j <= i; ++j) acc = acc + t[j] * r[i - j];
            r[i] = -acc;
        }
        return r;
    };
    // a · w · s
    auto shifted = [m](const Field& a, const std::vector<Field>& s) {
        std::vector<Field> out(m, Field(0));
        for (std::size_t i = 1; i < m; ++i) out[i] = a * s[i - 1];
        return out;
    };

    const std::size_t depth = cf.size();
    std::vector<Field> one(m, Field(0));
    one[0] = Field(1);
    std::vector<Field> t = depth >= 2 ? shifted(cf.coefficients[depth - 1], one) : std::vector<Field>(m, Field(0));
    for (std::size_t j = depth - 1; j >= 2; --j) t = shifted(cf.coefficients[j - 1], reciprocal_one_plus(t));

    std::vector<Field> out = reciprocal_one_plus(t);
    for (Field& v : out) v = cf.coefficients[0] * v;
    return out;
}

// ---------------------------------------------------------------------------
// CSV persistence:
//
//     # center,<complex>
//     # terminated,<true|false>
//     index,re,im
//     1,<re>,<im>
//     ...

inline void write_continued_fraction(std::ostream& out, const ContinuedFraction<Complex>& cf, int significant) {
    out << "# center," << to_string(cf.center, significant) << '\n';
    out << "# terminated," << (cf.terminated ? "true" : "false") << '\n';
    out << "index,re,im\n";
    for (std::size_t i = 0; i < cf.size(); ++i) {
        out << (i + 1) << ',' << to_string(cf.coefficients[i].re, significant) << ','
            << to_string(cf.coefficients[i].im, significant) << '\n';
    }
}

namespace detail {

inline std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

inline std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

}  // namespace detail

/// Reads one block written by write_continued_fraction.  Stops at end of
/// input or at the first blank line, so several blocks can share a stream.
inline ContinuedFraction<Complex> read_continued_fraction(std::istream& in, const PrecisionContext& ctx) {
    ScopedPrecision scope(ctx);
    ContinuedFraction<Complex> cf;
    bool have_center = false;
    bool have_header = false;
    std::string line;
    while (std::getline(in, line)) {
        line = detail::strip_cr(line);
        if (line.empty()) {
            if (have_header) break;
            continue;
        }
        const auto fields = detail::split_csv(line);
        if (line.rfind("# center,", 0) == 0) {
            cf.center = parse_complex(line.substr(9), ctx);
            have_center = true;
        } else if (line.rfind("# terminated,", 0) == 0) {
            const std::string flag = line.substr(13);
            if (flag != "true" && flag != "false") throw ParseError("bad terminated flag '" + flag + "'");
            cf.terminated = flag == "true";
        } else if (line == "index,re,im") {
            have_header = true;
        } else if (have_header) {
            if (fields.size() != 3) throw ParseError("expected index,re,im but got '" + line + "'");
            if (fields[0] != std::to_string(cf.size() + 1)) throw ParseError("coefficient index out of sequence: " + fields[0]);
            cf.coefficients.emplace_back(parse_real(fields[1], ctx), parse_real(fields[2], ctx));
        } else {
            throw ParseError("unexpected line before coefficient header: '" + line + "'");
        }
    }
    if (!have_center || !have_header || cf.coefficients.empty()) {
        throw ParseError("incomplete continued-fraction block");
    }
    return cf;
}

}  // namespace hyperft

#endif  // HYPERFT_CONFRAC_HPP
