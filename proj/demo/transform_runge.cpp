// Transform of 1/(1+x^2) at a few points, compared with pi*exp(-2*pi*|xi|).

#include <iostream>

#include "hyperft/hyperft.hpp"

int main() {
    using namespace hyperft;
    const PrecisionContext ctx = make_context(60);
    ScopedPrecision scope(ctx);

    const SampleFunction f = [](const Real& x) { return Complex(Real(1 / (1 + x * x)), Real(0)); };
    const std::size_t terms = 40;
    const auto F = build_transform(f, parse_complex("+i", ctx), parse_complex("-i", ctx), terms,
                                   default_transform_spec(ctx, terms), ctx);
    std::cout << "f evaluations: " << F.total_evals << '\n';

    for (const char* text : {"0.5", "1", "2"}) {
        const Real xi = parse_real(text, ctx);
        const Complex v = evaluate(F, xi, terms, ctx);
        const Real exact = pi() * boost::multiprecision::exp(-2 * pi() * xi);
        std::cout << "xi=" << text << "  value=" << to_string(v, 25) << "  error=" << to_string(abs(v - Complex(exact, Real(0))), 3)
                  << '\n';
    }
}
