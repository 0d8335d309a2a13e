#ifndef HYPERFT_TRANSFORM_HPP
#define HYPERFT_TRANSFORM_HPP

// The Fourier transform 𝔉[f](ξ) = ∫ f(x) e^{-2πiξx} dx as a hyperfunction.
//
// 𝔉[f] = [𝔉₊, 𝔉₋]: each defining function is expanded in a Taylor series
// about a center off the real axis, converted into a continued fraction, and
// the continued fractions are evaluated on the real axis:
//
//     𝔉[f](ξ) = 𝔉₊(ξ + i0) - 𝔉₋(ξ - i0).
//
// Once built, a FourierHyperfunction is evaluated at any number of ξ without
// touching f again.

#include <cstddef>
#include <future>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hyperft/confrac.hpp"
#include "hyperft/numerics.hpp"
#include "hyperft/quadrature.hpp"
#include "hyperft/taylor.hpp"

namespace hyperft {

// ---------------------------------------------------------------------------
// Test functions with closed-form transforms.

enum class TestFunctionId { runge, tanh_pi, log_abs, abs_val };

enum class Parity { even, odd, none };

inline const char* to_string(TestFunctionId id) {
    switch (id) {
        case TestFunctionId::runge: return "runge";
        case TestFunctionId::tanh_pi: return "tanh_pi";
        case TestFunctionId::log_abs: return "log_abs";
        case TestFunctionId::abs_val: return "abs_val";
    }
    return "?";
}

inline std::optional<TestFunctionId> parse_test_function(std::string_view name) {
    for (TestFunctionId id : {TestFunctionId::runge, TestFunctionId::tanh_pi, TestFunctionId::log_abs,
                              TestFunctionId::abs_val}) {
        if (name == to_string(id)) return id;
    }
    return std::nullopt;
}

/// f(x) for (i) 1/(1+x²), (ii) tanh(πx), (iii) log|x|, (iv) |x|.
inline Complex sample_test_function(TestFunctionId id, const Real& x) {
    using namespace boost::multiprecision;
    switch (id) {
        case TestFunctionId::runge: return Complex(Real(1 / (1 + x * x)), Real(0));
        case TestFunctionId::tanh_pi: return Complex(Real(tanh(pi() * x)), Real(0));
        case TestFunctionId::log_abs: return Complex(Real(log(abs(x))), Real(0));
        case TestFunctionId::abs_val: return Complex(Real(abs(x)), Real(0));
    }
    throw InvalidArgument("unknown test function");
}

inline Parity parity_of(TestFunctionId id) { return id == TestFunctionId::tanh_pi ? Parity::odd : Parity::even; }

/// Closed-form transform at ξ ≠ 0:
/// (i) π e^{-2π|ξ|}, (ii) -i cosech(πξ), (iii) -1/(2|ξ|) (the -γδ(ξ) term
/// vanishes off the origin), (iv) -1/(2(πξ)²).
inline Complex exact_reference(TestFunctionId id, const Real& xi_in, const PrecisionContext& ctx) {
    if (xi_in == 0) throw DomainError("closed-form transforms are singular or carry a delta term at xi = 0");
    ScopedPrecision scope(ctx);
    using namespace boost::multiprecision;
    const Real xi = ctx.promote(xi_in);
    const Real p = pi();
    switch (id) {
        case TestFunctionId::runge: return Complex(Real(p * exp(-2 * p * abs(xi))), Real(0));
        case TestFunctionId::tanh_pi: return Complex(Real(0), Real(-1 / sinh(p * xi)));
        case TestFunctionId::log_abs: return Complex(Real(-1 / (2 * abs(xi))), Real(0));
        case TestFunctionId::abs_val: return Complex(Real(-1 / (2 * p * p * xi * xi)), Real(0));
    }
    throw InvalidArgument("unknown test function");
}

/// A function selectable by name.  const_one has 𝔉[1] = δ, i.e. zero off the origin.
struct RegisteredFunction {
    std::string name;
    SampleFunction f;
    Parity parity = Parity::none;
    std::optional<TestFunctionId> id;
};

inline std::vector<RegisteredFunction> function_registry() {
    std::vector<RegisteredFunction> out;
    for (TestFunctionId id : {TestFunctionId::runge, TestFunctionId::tanh_pi, TestFunctionId::log_abs,
                              TestFunctionId::abs_val}) {
        out.push_back({to_string(id), [id](const Real& x) { return sample_test_function(id, x); }, parity_of(id), id});
    }
    out.push_back({"const_one", [](const Real&) { return Complex(Real(1), Real(0)); }, Parity::even, std::nullopt});
    return out;
}

inline std::optional<RegisteredFunction> find_function(std::string_view name) {
    for (auto& entry : function_registry()) {
        if (entry.name == name) return entry;
    }
    return std::nullopt;
}

/// Reference value for a registered function, if it has one.
inline std::optional<Complex> reference_value(const RegisteredFunction& fn, const Real& xi, const PrecisionContext& ctx) {
    if (xi == 0) return std::nullopt;
    if (fn.id) return exact_reference(*fn.id, xi, ctx);
    if (fn.name == "const_one") {
        ScopedPrecision scope(ctx);
        return Complex(Real(0), Real(0));
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Defining functions of δ and the Heaviside step.

enum class FixtureKind { delta, step };

/// δ: -1/(2πiz).  Y: -log(-z)/(2πi) with the principal logarithm.
inline Complex defining_fixture(FixtureKind kind, const Complex& z_in, const PrecisionContext& ctx) {
    if (z_in.im == 0) throw DomainError("defining functions are only defined off the real axis");
    ScopedPrecision scope(ctx);
    const Complex z = promote(z_in, ctx);
    const Complex two_pi_i(Real(0), Real(2 * pi()));
    if (kind == FixtureKind::delta) return -(Complex(Real(1), Real(0)) / (two_pi_i * z));
    return -(log(-z) / two_pi_i);
}

// ---------------------------------------------------------------------------
// The transform itself.

struct CenterAdjustment {
    HalfPlane branch;
    Complex from;
    Complex to;
    std::size_t zero_index;  ///< the coefficient that vanished at `from`
};

struct FourierHyperfunction {
    ContinuedFraction<Complex> cf_plus;   ///< center in the upper half-plane
    ContinuedFraction<Complex> cf_minus;  ///< center in the lower half-plane
    std::size_t taylor_terms = 0;
    std::size_t total_evals = 0;          ///< f evaluations over both branches and all retries
    std::vector<CenterAdjustment> retry_log;
};

inline constexpr int max_center_retries = 3;

/// ζ ↦ (9/8)ζ + 1/16.  Keeps the half-plane and is deterministic.
inline Complex perturb_center(const Complex& center) {
    const Real scale = Real(9) / 8;
    return Complex(Real(center.re * scale + Real(1) / 16), Real(center.im * scale));
}

namespace detail {

struct BranchBuild {
    ContinuedFraction<Complex> cf;
    std::size_t evals = 0;
    std::vector<CenterAdjustment> log;
};

inline BranchBuild build_branch(const SampleFunction& f, HalfPlane sign, Complex center, std::size_t terms,
                                const DeRuleSpec& spec, MeshPolicy policy, const PrecisionContext& ctx) {
    BranchBuild out;
    for (int attempt = 0;; ++attempt) {
        const DeRuleSpec rule = policy == MeshPolicy::fixed ? spec : mesh_for_center(spec, center);
        const TaylorExpansion series = taylor_coefficients(f, sign, center, terms, rule, ctx);
        out.evals += series.eval_count;
        try {
            out.cf = qd_transform(series, ctx);
            return out;
        } catch (const ZeroCoefficient& z) {
            if (attempt == max_center_retries) {
                throw TransformError(std::string("persistent zero Taylor coefficient c_") + std::to_string(z.index()) +
                                     " in the " + to_string(sign) + " branch after " +
                                     std::to_string(max_center_retries) + " center adjustments");
            }
            const Complex next = perturb_center(center);
            out.log.push_back({sign, center, next, z.index()});
            center = next;
        } catch (const Breakdown& b) {
            throw Breakdown(b.column(), b.row(), std::string(to_string(sign)) + " branch");
        }
    }
}

}  // namespace detail

/// Taylor expansion, QD conversion and (if a coefficient vanishes) up to three
/// deterministic center adjustments per branch.
inline FourierHyperfunction build_transform(const SampleFunction& f, const Complex& center_plus,
                                            const Complex& center_minus, std::size_t terms, const DeRuleSpec& spec,
                                            const PrecisionContext& ctx,
                                            MeshPolicy policy = MeshPolicy::scale_with_center,
                                            bool concurrent = false) {
    detail::check_center(HalfPlane::upper, center_plus);
    detail::check_center(HalfPlane::lower, center_minus);
    ScopedPrecision scope(ctx);

    detail::BranchBuild upper;
    detail::BranchBuild lower;
    if (concurrent) {
        auto pending = std::async(std::launch::async, [&] {
            return detail::build_branch(f, HalfPlane::upper, center_plus, terms, spec, policy, ctx);
        });
        lower = detail::build_branch(f, HalfPlane::lower, center_minus, terms, spec, policy, ctx);
        upper = pending.get();
    } else {
        upper = detail::build_branch(f, HalfPlane::upper, center_plus, terms, spec, policy, ctx);
        lower = detail::build_branch(f, HalfPlane::lower, center_minus, terms, spec, policy, ctx);
    }

    FourierHyperfunction out;
    out.cf_plus = std::move(upper.cf);
    out.cf_minus = std::move(lower.cf);
    out.taylor_terms = terms;
    out.total_evals = upper.evals + lower.evals;
    out.retry_log = std::move(upper.log);
    out.retry_log.insert(out.retry_log.end(), lower.log.begin(), lower.log.end());
    return out;
}

/// Default rule for a transform with `terms` Taylor terms.
inline DeRuleSpec default_transform_spec(const PrecisionContext& ctx, std::size_t terms) {
    return default_de_spec(ctx, static_cast<int>(terms));
}

/// Taylor terms used when none are requested.
inline constexpr std::size_t default_taylor_terms = 60;

/// 𝔉₊(ξ) - 𝔉₋(ξ) from the depth-`depth` convergents of both branches.
inline Complex evaluate(const FourierHyperfunction& F, const Real& xi, std::size_t depth, const PrecisionContext& ctx) {
    ScopedPrecision scope(ctx);
    const Complex at(ctx.promote(xi), Real(0));
    auto branch_value = [&](const ContinuedFraction<Complex>& cf, HalfPlane sign) {
        try {
            return cf_eval(cf, at, depth, ctx);
        } catch (const NearPole& p) {
            throw NearPole(p.depth(), std::string(to_string(sign)) + " branch at xi = " + to_string(xi, 20));
        }
    };
    return branch_value(F.cf_plus, HalfPlane::upper) - branch_value(F.cf_minus, HalfPlane::lower);
}

struct TransformValue {
    Complex value;
    Real depth_error_proxy;  ///< |value(depth) - value(depth - 2)|
};

inline TransformValue evaluate_with_proxy(const FourierHyperfunction& F, const Real& xi, std::size_t depth,
                                          const PrecisionContext& ctx) {
    ScopedPrecision scope(ctx);
    TransformValue out{evaluate(F, xi, depth, ctx), Real(0)};
    if (depth > 2) out.depth_error_proxy = abs(out.value - evaluate(F, xi, depth - 2, ctx));
    return out;
}

// ---------------------------------------------------------------------------
// Persistence.  A header of key,value lines followed by the two coefficient
// blocks in the continued-fraction CSV format:
//
//     # hyperft transform
//     function,<name or custom>
//     center_plus,<complex>
//     center_minus,<complex>
//     taylor_terms,<M>
//     digits,<d>
//     total_evals,<N>
//     [plus]
//     <block>
//
//     [minus]
//     <block>

struct TransformMetadata {
    std::string function = "custom";
    int digits = 0;
};

inline void save_transform(std::ostream& out, const FourierHyperfunction& F, const TransformMetadata& meta,
                           const PrecisionContext& ctx) {
    const int significant = ctx.working_digits();
    out << "# hyperft transform\n";
    out << "function," << meta.function << '\n';
    out << "center_plus," << to_string(F.cf_plus.center, significant) << '\n';
    out << "center_minus," << to_string(F.cf_minus.center, significant) << '\n';
    out << "taylor_terms," << F.taylor_terms << '\n';
    out << "digits," << ctx.decimal_digits() << '\n';
    out << "total_evals," << F.total_evals << '\n';
    out << "[plus]\n";
    write_continued_fraction(out, F.cf_plus, significant);
    out << "\n[minus]\n";
    write_continued_fraction(out, F.cf_minus, significant);
}

/// Reads just the header so the caller can choose a context before loading.
inline TransformMetadata peek_transform_metadata(std::istream& in) {
    TransformMetadata meta;
    std::string line;
    while (std::getline(in, line)) {
        line = detail::strip_cr(line);
        if (line == "[plus]") break;
        const auto fields = detail::split_csv(line);
        if (fields.size() == 2 && fields[0] == "function") meta.function = fields[1];
        if (fields.size() == 2 && fields[0] == "digits") meta.digits = std::stoi(fields[1]);
    }
    return meta;
}

inline std::pair<FourierHyperfunction, TransformMetadata> load_transform(std::istream& in, const PrecisionContext& ctx) {
    FourierHyperfunction F;
    TransformMetadata meta;
    std::string line;
    bool saw_magic = false;
    bool saw_plus = false;
    while (std::getline(in, line)) {
        line = detail::strip_cr(line);
        if (line.empty()) continue;
        if (line == "# hyperft transform") {
            saw_magic = true;
            continue;
        }
        if (line == "[plus]") {
            saw_plus = true;
            break;
        }
        const auto fields = detail::split_csv(line);
        if (fields.size() != 2) throw ParseError("bad transform header line '" + line + "'");
        try {
            if (fields[0] == "function") meta.function = fields[1];
            else if (fields[0] == "digits") meta.digits = std::stoi(fields[1]);
            else if (fields[0] == "taylor_terms") F.taylor_terms = std::stoul(fields[1]);
            else if (fields[0] == "total_evals") F.total_evals = std::stoul(fields[1]);
            else if (fields[0] != "center_plus" && fields[0] != "center_minus")
                throw ParseError("unknown transform header key '" + fields[0] + "'");
        } catch (const std::logic_error&) {
            throw ParseError("bad value in transform header line '" + line + "'");
        }
    }
    if (!saw_magic || !saw_plus) throw ParseError("not a saved transform");
    F.cf_plus = read_continued_fraction(in, ctx);
    while (std::getline(in, line)) {
        line = detail::strip_cr(line);
        if (line == "[minus]") break;
        if (!line.empty()) throw ParseError("expected [minus] block, got '" + line + "'");
    }
    F.cf_minus = read_continued_fraction(in, ctx);
    if (!(F.cf_plus.center.im > 0) || !(F.cf_minus.center.im < 0)) {
        throw ParseError("saved transform has centers in the wrong half-planes");
    }
    if (F.taylor_terms == 0) F.taylor_terms = std::max(F.cf_plus.size(), F.cf_minus.size());
    return {std::move(F), meta};
}

}  // namespace hyperft

#endif  // HYPERFT_TRANSFORM_HPP
