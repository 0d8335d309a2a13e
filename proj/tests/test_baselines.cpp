#include "support.hpp"

using namespace hyperft;
using namespace hyperft::testing;

namespace {

SampleFunction test_function(TestFunctionId id) {
    return [id](const Real& x) { return sample_test_function(id, x); };
}

BaselineResult full(TestFunctionId id, BaselineMethod method, const PrecisionContext& ctx, const char* xi = "1") {
    ScopedPrecision s(ctx);
    return full_transform_via_half_integrals(test_function(id), parity_of(id), parse_real(xi, ctx), method,
                                             default_baseline_params(ctx), ctx);
}

Real error_of(TestFunctionId id, const BaselineResult& r, const PrecisionContext& ctx, const char* xi = "1") {
    ScopedPrecision s(ctx);
    return abs(r.value - exact_reference(id, parse_real(xi, ctx), ctx));
}

}  // namespace

TEST(OouraMori, LaplaceTypeIntegral) {
    // ∫₀^∞ e^{-x} cos(2πx) dx = 1 / (1 + 4π²)
    const auto ctx = make_context(100);
    ScopedPrecision s(ctx);
    const auto r = ooura_mori_cosine([](const Real& x) { return boost::multiprecision::exp(-x); }, Real(1), Real(0),
                                     default_om_params(ctx), ctx);
    EXPECT_TRUE(r.ok);
    EXPECT_REAL_LE(abs(r.value - Complex(Real(1 / (1 + 4 * pi() * pi())), Real(0))), pow10(-30));
    EXPECT_EQ(r.n_evals, r.n_positive + r.n_negative);
}

TEST(OouraMori, RungeEvenAssembly) {
    const auto ctx = make_context(100);
    const auto r = full(TestFunctionId::runge, BaselineMethod::ooura_mori, ctx);
    EXPECT_TRUE(r.ok) << r.warning;
    EXPECT_REAL_LE(error_of(TestFunctionId::runge, r, ctx), pow10(-15));
    EXPECT_LE(r.n_evals, 5000u);
}

TEST(OouraMori, SineVersionForOddFunction) {
    const auto ctx = make_context(100);
    const auto r = full(TestFunctionId::tanh_pi, BaselineMethod::ooura_mori, ctx);
    EXPECT_TRUE(r.ok) << r.warning;
    EXPECT_REAL_LE(error_of(TestFunctionId::tanh_pi, r, ctx), pow10(-15));
}

TEST(OouraMori, LogarithmicSingularity) {
    const auto ctx = make_context(100);
    const auto r = full(TestFunctionId::log_abs, BaselineMethod::ooura_mori, ctx);
    EXPECT_REAL_LE(error_of(TestFunctionId::log_abs, r, ctx), pow10(-15));
}

TEST(OouraMori, NodeAtOriginOfSineGrid) {
    // θ₀ = -π/2 puts u = 0 on the grid at k = -1; φ(0) = 1/(2π), φ'(0) = 1/2
    const auto ctx = make_context(60);
    ScopedPrecision s(ctx);
    const Real h("0.03");
    const auto node = ooura_mori_node(-1, Real(1), Real(-pi() / 2), h, ctx);
    EXPECT_EQ(node.u, 0);
    EXPECT_REAL_LE(Real(boost::multiprecision::abs(node.abscissa - 1 / (4 * pi() * h))), ctx.tolerance(0));
    EXPECT_TRUE(is_finite(node.weight));
}

TEST(OouraMori, PhiNearOriginKeepsDigits) {
    const auto ctx = make_context(60);
    ScopedPrecision s(ctx);
    for (int e : {-5, -20, -50}) {
        const Real u = pow10(e);
        const auto [phi, dphi] = detail::om_phi(u, ctx);
        // φ(u) = 1/(2π) + u/2 + O(u²), φ'(u) = 1/2 + O(u)
        EXPECT_REAL_LE(Real(boost::multiprecision::abs(phi - 1 / (2 * pi()) - u / 2)), Real(10 * u * u + ctx.tolerance(0)));
        EXPECT_REAL_LE(Real(boost::multiprecision::abs(dphi - Real(0.5))), Real(10 * u + ctx.tolerance(0)));
    }
}

TEST(OouraMori, TailWeightsDecrease) {
    const auto ctx = make_context(60);
    ScopedPrecision s(ctx);
    const auto params = default_om_params(ctx);
    for (const Real theta0 : {Real(0), Real(-pi() / 2)}) {
        const auto r = ooura_mori_cosine(test_function(TestFunctionId::abs_val), Real(1), theta0, params, ctx);
        ASSERT_GT(r.n_positive, 5u);
        Real previous = -1;
        for (long k = static_cast<long>(r.n_positive) - 5; k < static_cast<long>(r.n_positive); ++k) {
            const Real w = boost::multiprecision::abs(ooura_mori_node(k, Real(1), theta0, params.mesh, ctx).weight);
            if (previous >= 0) EXPECT_TRUE(w < previous) << "k=" << k;
            previous = w;
        }
    }
}

TEST(OouraMori, TruncationWarning) {
    const auto ctx = make_context(40);
    ScopedPrecision s(ctx);
    OouraMoriParams params = default_om_params(ctx);
    params.max_terms_per_side = 20;
    const auto r = ooura_mori_cosine(test_function(TestFunctionId::runge), Real(1), Real(0), params, ctx);
    EXPECT_FALSE(r.ok);
    EXPECT_NE(r.warning.find("not truncated"), std::string::npos);
}

TEST(OouraMori, InvalidArguments) {
    const auto ctx = make_context(30);
    ScopedPrecision s(ctx);
    auto g = test_function(TestFunctionId::runge);
    EXPECT_THROW(ooura_mori_cosine(g, Real(0), Real(0), default_om_params(ctx), ctx), InvalidArgument);
    OouraMoriParams bad = default_om_params(ctx);
    bad.mesh = 0;
    EXPECT_THROW(ooura_mori_cosine(g, Real(1), Real(0), bad, ctx), InvalidArgument);
}

TEST(Sugihara, RungeAndAbs) {
    const auto ctx = make_context(100);
    for (TestFunctionId id : {TestFunctionId::runge, TestFunctionId::abs_val}) {
        const auto r = full(id, BaselineMethod::sugihara, ctx);
        EXPECT_TRUE(r.ok) << r.warning;
        EXPECT_REAL_LE(error_of(id, r, ctx), pow10(-10));
        EXPECT_LE(r.n_evals, 50000u);
    }
}

TEST(Sugihara, GaussianLevelsAndLimit) {
    // ∫₀^∞ e^{-x²} cos(2πx) dx = (√π/2) e^{-π²}; level λ damps by e^{-λx²},
    // giving √π/(2√(1+λ)) e^{-π²/(1+λ)}.  The mass sits far below the level
    // scale λ^{-1/2} once λ is small.
    const auto ctx = make_context(60);
    ScopedPrecision s(ctx);
    auto closed_form = [](const Real& lambda) {
        return boost::multiprecision::sqrt(pi() / (1 + lambda)) / 2 * boost::multiprecision::exp(-pi() * pi() / (1 + lambda));
    };
    const Real exact = closed_form(Real(0));
    const auto r = sugihara_cosine([](const Real& x) { return boost::multiprecision::exp(-x * x); }, Real(1), Real(0),
                                   default_sugihara_params(ctx), ctx);
    for (std::size_t n = 0; n < r.level_values.size(); ++n) {
        const Real level = closed_form(boost::multiprecision::ldexp(Real(1), -static_cast<int>(n)));
        EXPECT_REAL_LE(Real(abs(r.level_values[n] - Complex(level, Real(0))) / level), pow10(-10)) << "n=" << n;
    }
    EXPECT_REAL_LE(Real(abs(r.value - Complex(exact, Real(0))) / exact), pow10(-20));
}

TEST(Sugihara, ExtrapolationWarning) {
    const auto ctx = make_context(40);
    ScopedPrecision s(ctx);
    SugiharaParams params = default_sugihara_params(ctx);
    params.levels = 2;
    const auto r = sugihara_cosine(test_function(TestFunctionId::runge), Real(1), Real(0), params, ctx);
    EXPECT_FALSE(r.ok);
    EXPECT_NE(r.warning.find("last two entries"), std::string::npos);
    params.levels = 1;
    EXPECT_THROW(sugihara_cosine(test_function(TestFunctionId::runge), Real(1), Real(0), params, ctx), InvalidArgument);
}

TEST(Sugihara, ConcurrentLevelsMatchSerial) {
    const auto ctx = make_context(40);
    ScopedPrecision s(ctx);
    SugiharaParams params = default_sugihara_params(ctx);
    params.levels = 6;
    const auto a = sugihara_cosine(test_function(TestFunctionId::runge), Real(1), Real(0), params, ctx);
    params.concurrent = true;
    const auto b = sugihara_cosine(test_function(TestFunctionId::runge), Real(1), Real(0), params, ctx);
    EXPECT_EQ(a.n_evals, b.n_evals);
    EXPECT_EQ(a.value.re, b.value.re);
}

TEST(Extrapolation, PolynomialIsExact) {
    const auto ctx = make_context(40);
    ScopedPrecision s(ctx);
    std::vector<Real> lambdas;
    std::vector<Complex> values;
    for (int n = 0; n < 5; ++n) {
        const Real l = boost::multiprecision::ldexp(Real(1), -n);
        lambdas.push_back(l);
        values.push_back(Complex(Real(3 + 2 * l - l * l), Real(0)));
    }
    Complex previous;
    const Complex v = extrapolate_to_zero(lambdas, values, &previous);
    EXPECT_REAL_LE(abs(v - Complex(Real(3), Real(0))), ctx.tolerance(0));
    EXPECT_REAL_LE(abs(previous - Complex(Real(3), Real(0))), ctx.tolerance(0));
}

TEST(HalfIntegrals, ParitySkipsVanishingPart) {
    const auto ctx = make_context(40);
    ScopedPrecision s(ctx);
    const auto params = default_baseline_params(ctx);
    const auto f = test_function(TestFunctionId::runge);
    const auto even = full_transform_via_half_integrals(f, Parity::even, Real(1), BaselineMethod::ooura_mori, params, ctx);
    const auto general = full_transform_via_half_integrals(f, Parity::none, Real(1), BaselineMethod::ooura_mori, params, ctx);
    const auto cosine = ooura_mori_cosine([&](const Real& x) { return f(x) + f(-x); }, Real(1), Real(0), params.ooura_mori, ctx);
    EXPECT_EQ(even.n_evals, 2 * cosine.n_evals);
    EXPECT_GT(general.n_evals, even.n_evals);
    EXPECT_REAL_LE(abs(general.value - even.value), pow10(-30));
    EXPECT_EQ(even.value.im, 0);

    const auto g = test_function(TestFunctionId::tanh_pi);
    const auto odd = full_transform_via_half_integrals(g, Parity::odd, Real(1), BaselineMethod::ooura_mori, params, ctx);
    EXPECT_EQ(odd.value.re, 0);
}

TEST(HalfIntegrals, NegativeFrequency) {
    const auto ctx = make_context(40);
    ScopedPrecision s(ctx);
    const auto params = default_baseline_params(ctx);
    const auto g = test_function(TestFunctionId::tanh_pi);
    const auto pos = full_transform_via_half_integrals(g, Parity::odd, Real(1), BaselineMethod::ooura_mori, params, ctx);
    const auto neg = full_transform_via_half_integrals(g, Parity::odd, Real(-1), BaselineMethod::ooura_mori, params, ctx);
    EXPECT_REAL_LE(abs(pos.value + neg.value), ctx.tolerance(0));
    EXPECT_THROW(full_transform_via_half_integrals(g, Parity::odd, Real(0), BaselineMethod::ooura_mori, params, ctx),
                 InvalidArgument);
}

TEST(HalfIntegrals, MethodsAgree) {
    const auto ctx = make_context(100);
    ScopedPrecision s(ctx);
    const Real xi(1);
    for (TestFunctionId id : {TestFunctionId::runge, TestFunctionId::tanh_pi, TestFunctionId::abs_val}) {
        const auto F = build_transform(test_function(id), parse_complex("i", ctx), parse_complex("-i", ctx),
                                       default_taylor_terms, default_transform_spec(ctx, default_taylor_terms), ctx);
        const Complex hyper = evaluate(F, xi, default_taylor_terms, ctx);
        const Complex om = full(id, BaselineMethod::ooura_mori, ctx).value;
        const Complex sg = full(id, BaselineMethod::sugihara, ctx).value;
        EXPECT_REAL_LE(abs(hyper - om), pow10(-15)) << to_string(id);
        EXPECT_REAL_LE(abs(hyper - sg), pow10(-10)) << to_string(id);
        EXPECT_REAL_LE(abs(om - sg), pow10(-10)) << to_string(id);
    }
}
