#ifndef HYPERFT_BASELINES_HPP
#define HYPERFT_BASELINES_HPP

// Two classical methods for half-line oscillatory integrals
//
//     I = ∫₀^∞ g(x) cos(2πξx + θ₀) dx,      ξ > 0,
//
// used as references for the hyperfunction method.
//
// Ooura–Mori: substitute x = φ(u)/(2ξh), φ(u) = u / (1 - exp(-2π sinh u)),
// and apply the trapezoidal rule at u_k = h(k + 1/2 - θ₀/π).  For large k the
// nodes fall double-exponentially close to the zeros of the cosine.
//
// Sugihara: damp with exp(-λx²), λ = 2^-n, integrate each damped integral by a
// DE rule scaled to the damping width, and extrapolate the sequence to λ = 0.
//
// θ₀ = -π/2 gives the sine integral.  full_transform_via_half_integrals
// assembles the transform of a function on the whole line from its even and
// odd parts.

#include <cmath>
#include <cstddef>
#include <functional>
#include <future>
#include <string>
#include <vector>

#include "hyperft/numerics.hpp"
#include "hyperft/transform.hpp"

namespace hyperft {

// ---------------------------------------------------------------------------
// Ooura–Mori

struct OouraMoriParams {
    Real mesh;                       ///< h > 0
    Real truncation;                 ///< stop after three terms below ε·max(1, |sum|)
    std::size_t max_terms_per_side;  ///< beyond this the result carries a truncation warning
};

inline constexpr double default_om_mesh = 0.03;

inline OouraMoriParams default_om_params(const PrecisionContext& ctx) {
    ScopedPrecision scope(ctx);
    return {Real(default_om_mesh), ctx.tolerance(0), 20000};
}

struct OouraMoriNode {
    Real u;
    Real abscissa;  ///< x = φ(u)/(2ξh)
    Real weight;    ///< cos(πφ/h + θ₀)·φ'(u)/(2ξ)
};

struct HalfIntegral {
    Complex value;
    std::size_t n_evals = 0;  ///< samples of the half-line integrand
    bool ok = true;           ///< truncation / convergence checks passed
    Real error_proxy;
    std::string warning;
};

struct OouraMoriResult : HalfIntegral {
    std::size_t n_positive = 0;  ///< N₁: terms with k ≥ 0
    std::size_t n_negative = 0;  ///< N₂: terms with k < 0
};

namespace detail {

/// Grid offset 1/2 - θ₀/π, snapped to an integer when it is one to working
/// precision so that u = 0 is hit exactly.
inline Real om_offset(const Real& theta0, const PrecisionContext& ctx) {
    Real r = Real(1) / 2 - theta0 / pi();
    const Real nearest = boost::multiprecision::round(r);
    if (boost::multiprecision::abs(r - nearest) <= ctx.tolerance(0)) r = nearest;
    return r;
}

/// φ(u) and φ'(u).  Near u = 0 both the quotient and the derivative lose
/// about log10(1/|u|) digits to cancellation, so they are computed in a
/// locally widened precision.
inline std::pair<Real, Real> om_phi(const Real& u_in, const PrecisionContext& ctx) {
    if (u_in == 0) return {Real(1) / (2 * pi()), Real(1) / 2};
    const Real two_pi = 2 * pi();
    Real u = u_in;
    const Real mag = boost::multiprecision::abs(u_in);
    if (mag < 1) {
        const double lost = -std::log10(static_cast<double>(mag));
        u.precision(static_cast<unsigned>(ctx.working_digits() + std::ceil(lost) + 5));
    }
    const Real s = two_pi * boost::multiprecision::sinh(u);
    const Real d = -boost::multiprecision::expm1(-s);
    const Real phi = u / d;
    const Real dphi = (d - u * two_pi * boost::multiprecision::cosh(u) * boost::multiprecision::exp(-s)) / (d * d);
    return {ctx.promote(phi), ctx.promote(dphi)};
}

}  // namespace detail

/// Node k of the Ooura–Mori rule for frequency ξ and phase θ₀.
inline OouraMoriNode ooura_mori_node(long k, const Real& xi, const Real& theta0, const Real& mesh,
                                     const PrecisionContext& ctx) {
    ScopedPrecision scope(ctx);
    const Real h = ctx.promote(mesh);
    const Real u = h * (Real(k) + detail::om_offset(ctx.promote(theta0), ctx));
    const auto [phi, dphi] = detail::om_phi(u, ctx);
    return {u, phi / (2 * xi * h), boost::multiprecision::cos(pi() * phi / h + theta0) * dphi / (2 * xi)};
}

/// ∫₀^∞ g(x) cos(2πξx + θ₀) dx.  g maps a positive Real to Real or Complex.
template <class HalfFunction>
OouraMoriResult ooura_mori_cosine(HalfFunction&& g, const Real& xi_in, const Real& theta0_in,
                                  const OouraMoriParams& params, const PrecisionContext& ctx) {
    if (!(xi_in > 0)) throw InvalidArgument("Ooura-Mori rule needs xi > 0");
    if (!(params.mesh > 0)) throw InvalidArgument("Ooura-Mori mesh must be positive");
    if (!(params.truncation > 0)) throw InvalidArgument("Ooura-Mori truncation threshold must be positive");
    if (params.max_terms_per_side == 0) throw InvalidArgument("Ooura-Mori term budget must be positive");
    ScopedPrecision scope(ctx);
    const Real xi = ctx.promote(xi_in);
    const Real theta0 = ctx.promote(theta0_in);
    const Real eps = ctx.promote(params.truncation);

    OouraMoriResult out;
    out.value = Complex(Real(0), Real(0));
    out.error_proxy = Real(0);
    Real tail(0);

    auto walk = [&](long start, long step, std::size_t& count) {
        int small = 0;
        for (long k = start;; k += step) {
            if (count >= params.max_terms_per_side) {
                out.ok = false;
                out.warning = "Ooura-Mori sum not truncated within " + std::to_string(params.max_terms_per_side) +
                              " terms on the " + (step > 0 ? "positive" : "negative") + " side";
                return;
            }
            const OouraMoriNode node = ooura_mori_node(k, xi, theta0, params.mesh, ctx);
            const Complex sample = Complex(g(node.abscissa));
            if (!is_finite(sample)) throw EvaluationError(to_string(node.abscissa, 20));
            const Complex term = sample * node.weight;
            out.value += term;
            ++count;
            const Real size = abs(term);
            const Real total = abs(out.value);
            small = size < eps * (total > 1 ? total : Real(1)) ? small + 1 : 0;
            if (small == 3) {
                if (size > tail) tail = size;
                return;
            }
        }
    };
    walk(0, 1, out.n_positive);
    walk(-1, -1, out.n_negative);
    out.n_evals = out.n_positive + out.n_negative;
    out.error_proxy = tail;
    return out;
}

// ---------------------------------------------------------------------------
// Sugihara

struct SugiharaParams {
    std::size_t levels = 12;         ///< n_max: damping levels n = 0 … n_max
    Real level_mesh;                 ///< c in h_n = c / (1 + 2ξ·2^{n/2})
    Real truncation;                 ///< per-level DE cut, relative to the running sum
    std::size_t max_nodes_per_side;  ///< per level
    Real accuracy;                   ///< warn when the last two table entries differ by more
    bool concurrent = false;         ///< integrate levels on separate threads
};

inline SugiharaParams default_sugihara_params(const PrecisionContext& ctx) {
    ScopedPrecision scope(ctx);
    return {12, Real(1) / 4, ctx.tolerance(5), 40000, Real(1e-8), false};
}

struct SugiharaResult : HalfIntegral {
    std::vector<Complex> level_values;  ///< damped integrals, λ = 2^-n
    Complex previous_estimate;          ///< extrapolation over levels 0 … n_max-1
};

namespace detail {

struct LevelIntegral {
    Complex value;
    std::size_t n_evals = 0;
    bool truncated = true;
};

/// ∫₀^∞ g(x) cos(2πξx + θ₀) e^{-λx²} dx with x = s·exp(t - e^{-t}), s = λ^{-1/2}.
template <class HalfFunction>
LevelIntegral sugihara_level(HalfFunction& g, const Real& xi, const Real& theta0, std::size_t n,
                             const SugiharaParams& params, const PrecisionContext& ctx) {
    ScopedPrecision scope(ctx);
    const Real lambda = boost::multiprecision::ldexp(Real(1), -static_cast<int>(n));
    const Real scale = boost::multiprecision::sqrt(1 / lambda);
    const Real h = ctx.promote(params.level_mesh) / (1 + 2 * xi * scale);
    const Real eps = ctx.promote(params.truncation);
    const Real omega = 2 * pi() * xi;

    LevelIntegral out;
    out.value = Complex(Real(0), Real(0));
    // Small terms count toward the stop only after the walk has met a
    // significant one, or once the weight alone is negligible: at deep levels
    // the first nodes can sit far beyond a fast-decaying g.
    auto walk = [&](long start, long step) {
        int small = 0;
        bool armed = false;
        std::size_t count = 0;
        for (long k = start;; k += step, ++count) {
            if (count >= params.max_nodes_per_side) {
                out.truncated = false;
                return;
            }
            const Real t = Real(k) * h;
            const Real inner = boost::multiprecision::exp(-t);
            const Real x = scale * boost::multiprecision::exp(t - inner);
            const Complex sample = Complex(g(x));
            if (!is_finite(sample)) throw EvaluationError(to_string(x, 20));
            ++out.n_evals;
            const Real envelope = boost::multiprecision::exp(-lambda * x * x) * x * (1 + inner) * h;
            const Complex term = sample * (boost::multiprecision::cos(omega * x + theta0) * envelope);
            out.value += term;
            const Real total = abs(out.value);
            const Real floor = eps * (total > 1 ? total : Real(1));
            if (abs(term) >= floor) armed = true;
            if (!armed && envelope >= floor) continue;
            small = abs(term) < floor ? small + 1 : 0;
            if (small == 3) return;
        }
    };
    walk(0, 1);
    walk(-1, -1);
    return out;
}

}  // namespace detail

/// Polynomial extrapolation to λ = 0 through (λ_i, v_i) by Neville's scheme.
/// Returns the full estimate; `previous` receives the estimate that omits the
/// last point.
inline Complex extrapolate_to_zero(const std::vector<Real>& lambdas, std::vector<Complex> values, Complex* previous) {
    const std::size_t m = values.size();
    if (m == 0 || lambdas.size() != m) throw InvalidArgument("extrapolation needs matching, non-empty tables");
    for (std::size_t j = 1; j < m; ++j) {
        for (std::size_t i = m - 1; i >= j; --i) {
            const Real& near = lambdas[i];
            const Real& far = lambdas[i - j];
            values[i] = (values[i] * far - values[i - 1] * near) / (far - near);
        }
    }
    if (previous) *previous = m >= 2 ? values[m - 2] : values[m - 1];
    return values[m - 1];
}

/// ∫₀^∞ g(x) cos(2πξx + θ₀) dx as the λ → 0 limit of the damped integrals.
template <class HalfFunction>
SugiharaResult sugihara_cosine(HalfFunction&& g, const Real& xi_in, const Real& theta0_in, const SugiharaParams& params,
                               const PrecisionContext& ctx) {
    if (!(xi_in > 0)) throw InvalidArgument("Sugihara method needs xi > 0");
    if (params.levels < 2) throw InvalidArgument("Sugihara extrapolation needs at least two levels");
    if (!(params.level_mesh > 0)) throw InvalidArgument("Sugihara level mesh must be positive");
    if (!(params.truncation > 0)) throw InvalidArgument("Sugihara truncation threshold must be positive");
    if (params.max_nodes_per_side == 0) throw InvalidArgument("Sugihara node budget must be positive");
    ScopedPrecision scope(ctx);
    const Real xi = ctx.promote(xi_in);
    const Real theta0 = ctx.promote(theta0_in);

    const std::size_t count = params.levels + 1;
    std::vector<detail::LevelIntegral> levels(count);
    if (params.concurrent) {
        std::vector<std::future<detail::LevelIntegral>> jobs;
        for (std::size_t n = 0; n < count; ++n) {
            jobs.push_back(std::async(std::launch::async, [&, n] {
                ScopedPrecision inner(ctx);
                return detail::sugihara_level(g, xi, theta0, n, params, ctx);
            }));
        }
        for (std::size_t n = 0; n < count; ++n) levels[n] = jobs[n].get();
    } else {
        for (std::size_t n = 0; n < count; ++n) levels[n] = detail::sugihara_level(g, xi, theta0, n, params, ctx);
    }

    SugiharaResult out;
    std::vector<Real> lambdas;
    for (std::size_t n = 0; n < count; ++n) {
        lambdas.push_back(boost::multiprecision::ldexp(Real(1), -static_cast<int>(n)));
        out.level_values.push_back(levels[n].value);
        out.n_evals += levels[n].n_evals;
        if (!levels[n].truncated) {
            out.ok = false;
            out.warning = "level " + std::to_string(n) + " DE sum not truncated within " +
                          std::to_string(params.max_nodes_per_side) + " nodes per side";
        }
    }
    out.value = extrapolate_to_zero(lambdas, out.level_values, &out.previous_estimate);
    out.error_proxy = abs(out.value - out.previous_estimate);
    if (out.ok && out.error_proxy > params.accuracy) {
        out.ok = false;
        out.warning = "extrapolation not converged: last two entries " + to_string(out.previous_estimate, 20) + " and " +
                      to_string(out.value, 20);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Whole-line transforms from half-line integrals

enum class BaselineMethod { ooura_mori, sugihara };

inline const char* to_string(BaselineMethod m) { return m == BaselineMethod::ooura_mori ? "ooura-mori" : "sugihara"; }

struct BaselineParams {
    OouraMoriParams ooura_mori;
    SugiharaParams sugihara;
};

inline BaselineParams default_baseline_params(const PrecisionContext& ctx) {
    return {default_om_params(ctx), default_sugihara_params(ctx)};
}

struct BaselineResult {
    Complex value;
    std::size_t n_evals = 0;  ///< evaluations of f; each node samples f(x) and f(-x)
    bool ok = true;
    Real error_proxy;
    std::string warning;
};

/// 𝔉[f](ξ) = ∫₀^∞ (f(x)+f(-x)) cos(2πξx) dx - i ∫₀^∞ (f(x)-f(-x)) sin(2πξx) dx.
/// A part that vanishes by the declared parity is skipped.
inline BaselineResult full_transform_via_half_integrals(const SampleFunction& f, Parity parity, const Real& xi_in,
                                                        BaselineMethod method, const BaselineParams& params,
                                                        const PrecisionContext& ctx) {
    if (xi_in == 0) throw InvalidArgument("half-integral assembly needs xi != 0");
    ScopedPrecision scope(ctx);
    const Real xi = boost::multiprecision::abs(ctx.promote(xi_in));
    const bool negative = xi_in < 0;

    auto half = [&](auto&& g, const Real& theta0) -> HalfIntegral {
        if (method == BaselineMethod::ooura_mori) return ooura_mori_cosine(g, xi, theta0, params.ooura_mori, ctx);
        return sugihara_cosine(g, xi, theta0, params.sugihara, ctx);
    };

    BaselineResult out;
    out.value = Complex(Real(0), Real(0));
    out.error_proxy = Real(0);
    auto absorb = [&](const HalfIntegral& part) {
        out.n_evals += 2 * part.n_evals;
        out.error_proxy += part.error_proxy;
        if (!part.ok) {
            out.ok = false;
            out.warning += (out.warning.empty() ? "" : "; ") + part.warning;
        }
    };

    if (parity != Parity::odd) {
        const HalfIntegral even = half([&](const Real& x) { return f(x) + f(-x); }, Real(0));
        absorb(even);
        out.value += even.value;
    }
    if (parity != Parity::even) {
        const HalfIntegral odd = half([&](const Real& x) { return f(x) - f(-x); }, Real(-pi() / 2));
        absorb(odd);
        const Complex sine = negative ? Complex(-odd.value) : odd.value;
        out.value += Complex(sine.im, -sine.re);  // -i · sine
    }
    return out;
}

}  // namespace hyperft

#endif  // HYPERFT_BASELINES_HPP
