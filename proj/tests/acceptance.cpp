// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "hyperft/hyperft.hpp"

using namespace hyperft;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string sci(const Real& x) { return to_string(x, 3); }

SampleFunction test_function(TestFunctionId id) {
    return [id](const Real& x) { return sample_test_function(id, x); };
}

const PrecisionContext& ctx100() {
    static const PrecisionContext ctx = make_context(100);
    return ctx;
}

FourierHyperfunction hyper(TestFunctionId id, const char* plus, const char* minus) {
    const auto& ctx = ctx100();
    ScopedPrecision s(ctx);
    return build_transform(test_function(id), parse_complex(plus, ctx), parse_complex(minus, ctx), default_taylor_terms,
                           default_transform_spec(ctx, default_taylor_terms), ctx);
}

Outcome hyper_row(TestFunctionId id, const char* plus, const char* minus, int exponent) {
    const auto& ctx = ctx100();
    ScopedPrecision s(ctx);
    const auto F = hyper(id, plus, minus);
    const Real err = abs(evaluate(F, Real(1), default_taylor_terms, ctx) - exact_reference(id, Real(1), ctx));
    return {err <= pow10(exponent), "error " + sci(err) + " (bound 1e" + std::to_string(exponent) + "), evals " +
                                        std::to_string(F.total_evals)};
}

Outcome criterion1() {
    const auto& ctx = ctx100();
    ScopedPrecision s(ctx);
    const auto t0 = std::chrono::steady_clock::now();
    Real worst = 0;
    Real factorial = 1;
    for (int n = 0; n <= 10; ++n) {
        if (n) factorial *= n;
        const auto r = integrate_halfline_decay([n](const Real& x) { return Real(boost::multiprecision::pow(x, n)); },
                                                default_de_spec(ctx), ctx);
        const Real rel = abs(r.value - Complex(factorial, Real(0))) / factorial;
        if (rel > worst) worst = rel;
    }
    const double secs = seconds_since(t0);
    return {worst <= pow10(-80) && secs < 10,
            "max relative error " + sci(worst) + " (bound 1e-80), " + std::to_string(secs) + " s (bound 10 s)"};
}

Outcome criterion2() {
    const auto& ctx = ctx100();
    std::vector<Rational> c;
    Rational term(1);
    for (int k = 0; k < 5; ++k) {
        c.push_back(term);
        term /= k + 1;
    }
    const auto ex = qd_transform<Rational>(std::span<const Rational>(c), Rational(0), ctx);
    const std::vector<Rational> want{Rational(1), Rational(-1), Rational(1, 2), Rational(-1, 6), Rational(1, 6)};
    const std::vector<Rational> geo_in{Rational(1), Rational(3), Rational(9), Rational(27)};
    const auto geo = qd_transform<Rational>(std::span<const Rational>(geo_in), Rational(0), ctx);
    const bool ok_exp = ex.coefficients == want;
    const bool ok_geo = geo.terminated && geo.coefficients == std::vector<Rational>{Rational(1), Rational(-3), Rational(0)};
    return {ok_exp && ok_geo, std::string("exponential ") + (ok_exp ? "exact" : "MISMATCH") + ", geometric (r = 3) " +
                                  (ok_geo ? "terminated as (1, -3, 0)" : "MISMATCH")};
}

Outcome criterion3() {
    const auto& ctx = ctx100();
    ScopedPrecision s(ctx);
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> dist(0.5, 2.0);
    Real worst = 0;
    int done = 0;
    int redraws = 0;
    while (done < 50 && redraws < 1000) {
        std::vector<Complex> c;
        for (int k = 0; k < 20; ++k) c.push_back(Complex(Real(dist(gen)), Real(0)));
        ContinuedFraction<Complex> cf;
        try {
            cf = qd_transform<Complex>(std::span<const Complex>(c), Complex(Real(0), Real(0)), ctx);
        } catch (const Breakdown&) {
            ++redraws;
            continue;
        }
        const auto back = cf_reexpand(cf, 20, ctx);
        for (int k = 0; k < 20; ++k) {
            const Real e = abs(back[k] - c[k]);
            if (e > worst) worst = e;
        }
        ++done;
    }
    return {done == 50 && worst <= pow10(-40), std::to_string(done) + " sequences, max error " + sci(worst) +
                                                   " (bound 1e-40), " + std::to_string(redraws) + " redraws"};
}

Outcome criterion4() {
    const auto& ctx = ctx100();
    ScopedPrecision s(ctx);
    const auto t0 = std::chrono::steady_clock::now();
    const auto F = hyper(TestFunctionId::runge, "+i", "-i");
    const Real err = abs(evaluate(F, Real(1), default_taylor_terms, ctx) - exact_reference(TestFunctionId::runge, Real(1), ctx));
    const double secs = seconds_since(t0);
    return {err <= pow10(-12) && F.total_evals <= 5680 && secs < 60,
            "error " + sci(err) + " (bound 1e-12), evals " + std::to_string(F.total_evals) + " (bound 5680), " +
                std::to_string(secs) + " s (bound 60 s)"};
}

Outcome criterion8() {
    const auto& ctx = ctx100();
    ScopedPrecision s(ctx);
    const auto params = default_baseline_params(ctx);
    const Complex exact = exact_reference(TestFunctionId::runge, Real(1), ctx);
    const auto om = full_transform_via_half_integrals(test_function(TestFunctionId::runge), Parity::even, Real(1),
                                                      BaselineMethod::ooura_mori, params, ctx);
    const auto sg = full_transform_via_half_integrals(test_function(TestFunctionId::runge), Parity::even, Real(1),
                                                      BaselineMethod::sugihara, params, ctx);
    const Real e_om = abs(om.value - exact);
    const Real e_sg = abs(sg.value - exact);
    const bool pass = e_om <= pow10(-15) && om.n_evals <= 5000 && e_sg <= pow10(-10) && sg.n_evals <= 50000;
    return {pass, "Ooura-Mori error " + sci(e_om) + " with " + std::to_string(om.n_evals) +
                      " evals (bounds 1e-15, 5000); Sugihara error " + sci(e_sg) + " with " + std::to_string(sg.n_evals) +
                      " evals (bounds 1e-10, 50000)"};
}

Outcome criterion9() {
    RunConfig config;
    const EvalCounts t = eval_counts(config);
    bool pass = true;
    std::string detail;
    for (std::size_t i = 0; i < t.functions.size(); ++i) {
        const auto& row = t.evals[i];
        const double ratio = static_cast<double>(row[1]) / static_cast<double>(row[0]);
        const bool ok = ratio >= 0.3 && ratio <= 0.7 && row[2] == row[3];
        pass = pass && ok;
        char buf[160];
        std::snprintf(buf, sizeof buf, "%s%s (%zu, %zu, %zu, %zu; ratio %.3f)", detail.empty() ? "" : "; ",
                      t.functions[i].c_str(), row[0], row[1], row[2], row[3], ratio);
        detail += buf;
    }
    return {pass, detail};
}

Outcome criterion10() {
    const auto& ctx = ctx100();
    ScopedPrecision s(ctx);
    const Real bound = pow10(-(100 - 20));
    Real worst = 0;
    for (TestFunctionId id : {TestFunctionId::runge, TestFunctionId::tanh_pi, TestFunctionId::abs_val}) {
        const auto F = hyper(id, "+i", "-i");
        for (const char* text : {"0.25", "0.5", "1", "2", "3"}) {
            const Real xi = parse_real(text, ctx);
            const Complex v = evaluate(F, xi, default_taylor_terms, ctx);
            const Complex w = evaluate(F, Real(-xi), default_taylor_terms, ctx);
            const bool odd = id == TestFunctionId::tanh_pi;
            // realness: the part that must vanish, relative to the modulus
            const Real stray = boost::multiprecision::abs(odd ? v.re : v.im) / abs(v);
            // symmetry in ξ, relative to the modulus
            const Real sym = abs(odd ? Complex(v + w) : Complex(v - w)) / abs(v);
            if (stray > worst) worst = stray;
            if (sym > worst) worst = sym;
        }
    }
    return {worst <= bound, "max relative parity defect " + sci(worst) + " (bound 1e-80)"};
}

Outcome criterion11() {
    const auto& ctx = ctx100();
    ScopedPrecision s(ctx);
    const SampleFunction one = [](const Real&) { return Complex(Real(1), Real(0)); };
    const auto F = build_transform(one, parse_complex("i", ctx), parse_complex("-i", ctx), default_taylor_terms,
                                   default_transform_spec(ctx, default_taylor_terms), ctx);
    Real worst_value = 0;
    for (const char* text : {"0.5", "1", "2"}) {
        const Real v = abs(evaluate(F, parse_real(text, ctx), default_taylor_terms, ctx));
        if (v > worst_value) worst_value = v;
    }
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> re(-3, 3), im(0.05, 3);
    Real worst_probe = 0;
    for (int k = 0; k < 20; ++k) {
        const Complex z(Real(re(gen)), Real(im(gen)));
        const Complex zc = conj(z);
        const Real a = abs(cf_eval(F.cf_plus, z, F.cf_plus.size(), ctx) - defining_fixture(FixtureKind::delta, z, ctx));
        const Real b = abs(cf_eval(F.cf_minus, zc, F.cf_minus.size(), ctx) - defining_fixture(FixtureKind::delta, zc, ctx));
        if (a > worst_probe) worst_probe = a;
        if (b > worst_probe) worst_probe = b;
    }
    return {worst_value <= pow10(-10) && worst_probe <= pow10(-30),
            "max |F[1](xi)| " + sci(worst_value) + " (bound 1e-10), max probe mismatch " + sci(worst_probe) +
                " (bound 1e-30)"};
}

Outcome criterion12() {
    RunConfig single;
    single.xi = {"1"};
    RunConfig sweep;
    sweep.xi_grid = "0.25:4:0.25";
    const auto a = run(single);
    const auto b = run(sweep);
    bool same = b.rows.size() == 16;
    for (const auto& row : b.rows) same = same && row.n_evals == a.rows.at(0).n_evals;
    return {same, std::to_string(b.rows.size()) + " sweep rows, total_evals " + std::to_string(a.rows.at(0).n_evals) +
                      (same ? " in every row" : " NOT reproduced in every row")};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"DE moment suite", criterion1},
        {"QD exactness", criterion2},
        {"correspondence round-trip", criterion3},
        {"runge, hyper at +-i", criterion4},
        {"tanh(pi x), hyper at +-i", [] { return hyper_row(TestFunctionId::tanh_pi, "+i", "-i", -30); }},
        {"log|x|, hyper at +-2i", [] { return hyper_row(TestFunctionId::log_abs, "+2i", "-2i", -15); }},
        {"|x|, hyper at +-i", [] { return hyper_row(TestFunctionId::abs_val, "+i", "-i", -40); }},
        {"baselines on runge", criterion8},
        {"evaluation-count table shape", criterion9},
        {"parity and realness", criterion10},
        {"delta cross-check", criterion11},
        {"coefficient reuse", criterion12},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failures;
        std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures ? 1 : 0;
}
