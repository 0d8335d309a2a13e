#ifndef HYPERFT_TAYLOR_HPP
#define HYPERFT_TAYLOR_HPP

// Taylor coefficients of the defining functions of 𝔉[f]
//
//     𝔉₊(ζ) =  ∫_{-∞}^0 f(x) e^{-2πiζx} dx     (Im ζ > 0)
//     𝔉₋(ζ) = -∫_0^∞   f(x) e^{-2πiζx} dx     (Im ζ < 0)
//
// about a center ζ₀ = ξ₀ + iη.  With u = 2π|η|x the n-th coefficient becomes
//
//     c_n = ±1/(2π|η| n!) ∫₀^∞ (±iu/|η|)^n f(∓u/(2π|η|)) e^{±i(ξ₀/|η|)u} e^{-u} du
//
// (upper sign for 𝔉₊), which the e^{-u} DE rule integrates directly.  f is
// sampled once per node and the powers are accumulated across n, so the
// evaluation count equals the node count regardless of the number of terms.

#include <cstddef>
#include <functional>
#include <future>
#include <utility>
#include <vector>

#include "hyperft/numerics.hpp"
#include "hyperft/quadrature.hpp"

namespace hyperft {

/// Real-line samples of the function being transformed.
using SampleFunction = std::function<Complex(const Real&)>;

enum class HalfPlane { upper, lower };

inline const char* to_string(HalfPlane s) { return s == HalfPlane::upper ? "upper" : "lower"; }

struct TaylorExpansion {
    HalfPlane sign = HalfPlane::upper;
    Complex center;
    std::vector<Complex> coefficients;
    std::size_t eval_count = 0;

    bool all_zero() const {
        for (const Complex& c : coefficients) {
            if (!(c.re == 0 && c.im == 0)) return false;
        }
        return true;
    }
};

/// How a shared base rule is adapted to each center.
enum class MeshPolicy {
    fixed,              ///< use the base mesh as given
    scale_with_center,  ///< mesh · |Im ζ₀| / (1 + |Re ζ₀ / Im ζ₀|)
};

/// Centers closer to the real axis than this are rejected.
inline constexpr double min_center_height = 1e-3;

/// Widens the mesh for centers far from the axis and narrows it for centers
/// whose oscillation factor e^{i(ξ₀/η)u} shrinks the strip of analyticity.
inline DeRuleSpec mesh_for_center(const DeRuleSpec& base, const Complex& center) {
    DeRuleSpec spec = base;
    const Real height = boost::multiprecision::abs(center.im);
    const Real tilt = boost::multiprecision::abs(center.re) / height;
    spec.mesh = base.mesh * height / (1 + tilt);
    return spec;
}

namespace detail {

/// e^{±i(ξ₀/η)u}.  Exactly real for a purely imaginary center.
inline Complex phase_factor(HalfPlane sign, const Complex& center, const Real& u) {
    if (center.re == 0) return Complex(Real(1), Real(0));
    const Real height = boost::multiprecision::abs(center.im);
    const Real angle = (sign == HalfPlane::upper ? center.re : Real(-center.re)) / height * u;
    return Complex(boost::multiprecision::cos(angle), boost::multiprecision::sin(angle));
}

inline void check_center(HalfPlane sign, const Complex& center) {
    if (sign == HalfPlane::upper && !(center.im > 0)) {
        throw InvalidArgument("upper-branch center must have positive imaginary part");
    }
    if (sign == HalfPlane::lower && !(center.im < 0)) {
        throw InvalidArgument("lower-branch center must have negative imaginary part");
    }
    if (boost::multiprecision::abs(center.im) < min_center_height) {
        throw IllConditionedCenter("center " + to_string(center, 12) +
                                   " is too close to the real axis for the damping factor to suppress oscillation");
    }
}

}  // namespace detail

/// First `terms` Taylor coefficients of 𝔉± about `center`.  The rule is used
/// as given (apart from its growth degree, raised to cover u^terms); apply
/// mesh_for_center beforehand for the automatic mesh.
inline TaylorExpansion taylor_coefficients(const SampleFunction& f, HalfPlane sign, const Complex& center,
                                           std::size_t terms, const DeRuleSpec& spec, const PrecisionContext& ctx) {
    if (terms == 0) throw InvalidArgument("number of Taylor terms must be positive");
    detail::check_center(sign, center);
    ScopedPrecision scope(ctx);

    DeRuleSpec rule = spec;
    rule.growth_degree = std::max<int>(rule.growth_degree, static_cast<int>(terms));
    const std::vector<DeNode> nodes = de_nodes(rule, ctx);

    const Complex z0 = promote(center, ctx);
    const Real height = boost::multiprecision::abs(z0.im);
    const Real two_pi_height = 2 * pi() * height;
    const bool upper = sign == HalfPlane::upper;

    std::vector<Complex> sums(terms, Complex(Real(0), Real(0)));
    for (const DeNode& node : nodes) {
        const Real& u = node.abscissa;
        const Real x = upper ? Real(-u / two_pi_height) : Real(u / two_pi_height);
        const Complex sample = f(x);
        if (!is_finite(sample)) throw EvaluationError(to_string(x, 20));

        // (±iu/η)^n / n!, built up one factor at a time
        const Real step = u / height;
        Complex term = sample * detail::phase_factor(sign, z0, u) * node.weight;
        for (std::size_t n = 0; n < terms; ++n) {
            sums[n] += term;
            term = upper ? times_i(term) : -times_i(term);
            term = term * step / Real(n + 1);
        }
    }

    const Real scale = (upper ? Real(1) : Real(-1)) / two_pi_height;
    TaylorExpansion out;
    out.sign = sign;
    out.center = z0;
    out.eval_count = nodes.size();
    out.coefficients.reserve(terms);
    for (Complex& s : sums) out.coefficients.push_back(s * scale);
    return out;
}

/// Both branches.  The sum of the two eval counts is the cost of the transform.
inline std::pair<TaylorExpansion, TaylorExpansion> taylor_pair(const SampleFunction& f, const Complex& center_plus,
                                                               const Complex& center_minus, std::size_t terms,
                                                               const DeRuleSpec& spec, const PrecisionContext& ctx,
                                                               MeshPolicy policy = MeshPolicy::scale_with_center,
                                                               bool concurrent = false) {
    detail::check_center(HalfPlane::upper, center_plus);
    detail::check_center(HalfPlane::lower, center_minus);
    ScopedPrecision scope(ctx);
    const DeRuleSpec spec_plus = policy == MeshPolicy::fixed ? spec : mesh_for_center(spec, center_plus);
    const DeRuleSpec spec_minus = policy == MeshPolicy::fixed ? spec : mesh_for_center(spec, center_minus);
    if (concurrent) {
        auto upper = std::async(std::launch::async, [&] {
            return taylor_coefficients(f, HalfPlane::upper, center_plus, terms, spec_plus, ctx);
        });
        TaylorExpansion lower = taylor_coefficients(f, HalfPlane::lower, center_minus, terms, spec_minus, ctx);
        return {upper.get(), std::move(lower)};
    }
    return {taylor_coefficients(f, HalfPlane::upper, center_plus, terms, spec_plus, ctx),
            taylor_coefficients(f, HalfPlane::lower, center_minus, terms, spec_minus, ctx)};
}

}  // namespace hyperft

#endif  // HYPERFT_TAYLOR_HPP
