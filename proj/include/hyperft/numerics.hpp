#ifndef HYPERFT_NUMERICS_HPP
#define HYPERFT_NUMERICS_HPP

// Arbitrary-precision real and complex arithmetic.
//
// Real is a variable-precision MPFR float.  Precision is carried per value;
// new values (constants, results of operations on mixed inputs) take the
// process-wide default precision, which a ScopedPrecision installs from a
// PrecisionContext.  Every library entry point opens such a scope, so callers
// only need one when they build Real values themselves.
//
// The default precision is a single atomic shared by all threads.  Work may be
// spread over threads as long as they all run under the same context.

#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <regex>
#include <string>
#include <string_view>

#include "hyperft/errors.hpp"

namespace hyperft {

using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

namespace detail {

class DigitsScope {
public:
    explicit DigitsScope(int digits10) : saved_(Real::default_precision()) {
        Real::default_precision(static_cast<unsigned>(digits10));
    }
    ~DigitsScope() { Real::default_precision(saved_); }

    DigitsScope(const DigitsScope&) = delete;
    DigitsScope& operator=(const DigitsScope&) = delete;

private:
    unsigned saved_;
};

}  // namespace detail

/// Working precision: requested decimal digits plus guard digits.
class PrecisionContext {
public:
    static constexpr int min_digits = 8;
    static constexpr int default_guard_digits = 10;

    PrecisionContext(int decimal_digits, int guard_digits = default_guard_digits)
        : digits_(decimal_digits), guard_(guard_digits) {
        if (decimal_digits < min_digits) {
            throw InvalidArgument("precision of " + std::to_string(decimal_digits) +
                                  " decimal digits is below the minimum of " + std::to_string(min_digits));
        }
        if (guard_digits < 0) throw InvalidArgument("guard digits must be non-negative");
    }

    int decimal_digits() const noexcept { return digits_; }
    int guard_digits() const noexcept { return guard_; }
    int working_digits() const noexcept { return digits_ + guard_; }

    /// 10^-(decimal_digits - digits_lost), evaluated at working precision.
    Real tolerance(int digits_lost = 0) const {
        detail::DigitsScope scope(working_digits());
        return boost::multiprecision::pow(Real(10), -(digits_ - digits_lost));
    }

    /// Copy of x carrying this context's working precision.
    Real promote(const Real& x) const {
        detail::DigitsScope scope(working_digits());
        Real r;
        mpfr_set(r.backend().data(), x.backend().data(), MPFR_RNDN);
        return r;
    }

    Real from_string(const std::string& text) const {
        detail::DigitsScope scope(working_digits());
        return Real(text);
    }

    friend bool operator==(const PrecisionContext&, const PrecisionContext&) = default;

private:
    int digits_;
    int guard_;
};

inline PrecisionContext make_context(int decimal_digits, int guard_digits = PrecisionContext::default_guard_digits) {
    return PrecisionContext(decimal_digits, guard_digits);
}

/// Installs the context's working precision as the default for new Real values.
class ScopedPrecision : detail::DigitsScope {
public:
    explicit ScopedPrecision(const PrecisionContext& ctx) : detail::DigitsScope(ctx.working_digits()) {}
};

inline bool is_finite(const Real& x) { return mpfr_number_p(x.backend().data()) != 0; }

inline Real pi() {
    Real r;
    mpfr_const_pi(r.backend().data(), MPFR_RNDN);
    return r;
}

inline Real euler_gamma() {
    Real r;
    mpfr_const_euler(r.backend().data(), MPFR_RNDN);
    return r;
}

inline Real pow10(int k) { return boost::multiprecision::pow(Real(10), k); }

// ---------------------------------------------------------------------------
// Complex numbers over an ordered field type.

template <class T>
struct BasicComplex {
    T re{};
    T im{};

    BasicComplex() = default;
    BasicComplex(const T& r) : re(r), im(0) {}  // NOLINT(google-explicit-constructor)
    BasicComplex(const T& r, const T& i) : re(r), im(i) {}
    template <class U>
        requires std::is_arithmetic_v<U>
    BasicComplex(U r) : re(r), im(0) {}  // NOLINT(google-explicit-constructor)

    BasicComplex& operator+=(const BasicComplex& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    BasicComplex& operator-=(const BasicComplex& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    BasicComplex& operator*=(const BasicComplex& o) { return *this = *this * o; }
    BasicComplex& operator/=(const BasicComplex& o) { return *this = *this / o; }

    friend BasicComplex operator+(const BasicComplex& a, const BasicComplex& b) { return {a.re + b.re, a.im + b.im}; }
    friend BasicComplex operator-(const BasicComplex& a, const BasicComplex& b) { return {a.re - b.re, a.im - b.im}; }
    friend BasicComplex operator-(const BasicComplex& a) { return {-a.re, -a.im}; }
    friend BasicComplex operator*(const BasicComplex& a, const BasicComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend BasicComplex operator*(const BasicComplex& a, const T& s) { return {a.re * s, a.im * s}; }
    friend BasicComplex operator*(const T& s, const BasicComplex& a) { return {a.re * s, a.im * s}; }
    friend BasicComplex operator/(const BasicComplex& a, const T& s) { return {a.re / s, a.im / s}; }
    friend BasicComplex operator/(const BasicComplex& a, const BasicComplex& b) {
        const T den = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
    }
    friend bool operator==(const BasicComplex& a, const BasicComplex& b) { return a.re == b.re && a.im == b.im; }
};

template <class T>
BasicComplex<T> conj(const BasicComplex<T>& z) {
    return {z.re, -z.im};
}

template <class T>
T norm(const BasicComplex<T>& z) {
    return z.re * z.re + z.im * z.im;
}

using Complex = BasicComplex<Real>;

inline Real abs(const Complex& z) { return boost::multiprecision::sqrt(norm(z)); }
inline Real arg(const Complex& z) { return boost::multiprecision::atan2(z.im, z.re); }
inline bool is_finite(const Complex& z) { return is_finite(z.re) && is_finite(z.im); }

inline Complex promote(const Complex& z, const PrecisionContext& ctx) {
    return {ctx.promote(z.re), ctx.promote(z.im)};
}

/// i * z without a general multiplication.
inline Complex times_i(const Complex& z) { return {-z.im, z.re}; }

// ---------------------------------------------------------------------------
// Elementary functions.  All use the principal branch; log has its cut on the
// negative real axis, so log x is real for x > 0.

namespace detail {

inline Complex checked(const Complex& z, const char* what) {
    if (!is_finite(z)) {
        if (mpfr_nan_p(z.re.backend().data()) || mpfr_nan_p(z.im.backend().data())) {
            throw DomainError(std::string(what) + ": result is undefined");
        }
        throw RangeError(std::string(what) + ": result overflows the exponent range");
    }
    return z;
}

}  // namespace detail

inline Complex exp(const Complex& z) {
    using boost::multiprecision::cos;
    using boost::multiprecision::sin;
    const Real m = boost::multiprecision::exp(z.re);
    if (z.im == 0) return detail::checked(Complex(m, Real(0)), "exp");
    return detail::checked(Complex(m * cos(z.im), m * sin(z.im)), "exp");
}

inline Complex log(const Complex& z) {
    if (z.re == 0 && z.im == 0) throw DomainError("log(0)");
    if (z.im == 0 && z.re > 0) return Complex(boost::multiprecision::log(z.re), Real(0));
    return detail::checked(Complex(boost::multiprecision::log(abs(z)), arg(z)), "log");
}

inline Complex sin(const Complex& z) {
    using namespace boost::multiprecision;
    return detail::checked(Complex(sin(z.re) * cosh(z.im), cos(z.re) * sinh(z.im)), "sin");
}

inline Complex cos(const Complex& z) {
    using namespace boost::multiprecision;
    return detail::checked(Complex(cos(z.re) * cosh(z.im), -(sin(z.re) * sinh(z.im))), "cos");
}

inline Complex sinh(const Complex& z) {
    using namespace boost::multiprecision;
    return detail::checked(Complex(sinh(z.re) * cos(z.im), cosh(z.re) * sin(z.im)), "sinh");
}

inline Complex cosh(const Complex& z) {
    using namespace boost::multiprecision;
    return detail::checked(Complex(cosh(z.re) * cos(z.im), sinh(z.re) * sin(z.im)), "cosh");
}

inline Complex tanh(const Complex& z) {
    using namespace boost::multiprecision;
    if (z.im == 0) return Complex(tanh(z.re), Real(0));
    const Real x2 = 2 * z.re;
    const Real y2 = 2 * z.im;
    const Real den = cosh(x2) + cos(y2);
    if (den == 0) throw DomainError("tanh: pole");
    return detail::checked(Complex(sinh(x2) / den, sin(y2) / den), "tanh");
}

inline Complex pow(const Complex& base, const Complex& exponent) {
    if (base.re == 0 && base.im == 0) {
        if (exponent.im == 0 && exponent.re > 0) return Complex(Real(0), Real(0));
        throw DomainError("pow: zero base with exponent whose real part is not positive");
    }
    return exp(exponent * log(base));
}

enum class ElementaryFn { exp, log, sin, cos, sinh, cosh, tanh, power };

/// Evaluates fn at z under ctx.  `exponent` is only read for power.
inline Complex elem(ElementaryFn fn, const Complex& z, const PrecisionContext& ctx,
                    const Complex& exponent = Complex(2)) {
    ScopedPrecision scope(ctx);
    const Complex w = promote(z, ctx);
    switch (fn) {
        case ElementaryFn::exp: return exp(w);
        case ElementaryFn::log: return log(w);
        case ElementaryFn::sin: return sin(w);
        case ElementaryFn::cos: return cos(w);
        case ElementaryFn::sinh: return sinh(w);
        case ElementaryFn::cosh: return cosh(w);
        case ElementaryFn::tanh: return tanh(w);
        case ElementaryFn::power: return pow(w, promote(exponent, ctx));
    }
    throw InvalidArgument("unknown elementary function");
}

// ---------------------------------------------------------------------------
// Canonical decimal text.
//
// Real:    [sign] digits [. digits] [e [sign] digits]
// Complex: <re><sign><|im|>i, e.g. "1.5e+00-2.0e-01i".

/// Scientific notation with `significant` significant digits.
inline std::string to_string(const Real& x, int significant) {
    if (significant < 1) significant = 1;
    if (x == 0) return Real(0).str(significant - 1, std::ios_base::scientific);
    return x.str(significant - 1, std::ios_base::scientific);
}

inline std::string to_string(const Complex& z, int significant) {
    std::string out = to_string(z.re, significant);
    const bool negative = z.im < 0;
    out += negative ? '-' : '+';
    out += to_string(negative ? Real(-z.im) : z.im, significant);
    out += 'i';
    return out;
}

inline bool is_decimal_literal(std::string_view text) {
    static const std::regex pattern(R"([+-]?([0-9]+\.?[0-9]*|\.[0-9]+)([eE][+-]?[0-9]+)?)");
    return std::regex_match(text.begin(), text.end(), pattern);
}

inline Real parse_real(std::string_view text, const PrecisionContext& ctx) {
    if (!is_decimal_literal(text)) throw ParseError("not a decimal number: '" + std::string(text) + "'");
    ScopedPrecision scope(ctx);
    return ctx.from_string(std::string(text));
}

/// Parses the canonical complex form.  Also accepts a bare real ("2.5"), a bare
/// imaginary part ("-2i", "i") and an omitted unit coefficient ("1+i").
inline Complex parse_complex(std::string_view text, const PrecisionContext& ctx) {
    std::string s;
    for (char ch : text) {
        if (ch != ' ') s += ch;
    }
    if (s.empty()) throw ParseError("empty complex literal");
    ScopedPrecision scope(ctx);
    if (s.back() != 'i') return Complex(parse_real(s, ctx), ctx.promote(Real(0)));

    s.pop_back();
    std::size_t split = std::string::npos;
    for (std::size_t i = s.size(); i-- > 1;) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    const std::string re_text = split == std::string::npos ? "" : s.substr(0, split);
    std::string im_text = split == std::string::npos ? s : s.substr(split);
    if (im_text.empty() || im_text == "+") im_text = "1";
    if (im_text == "-") im_text = "-1";
    const Real re = re_text.empty() ? ctx.promote(Real(0)) : parse_real(re_text, ctx);
    return Complex(re, parse_real(im_text, ctx));
}

}  // namespace hyperft

#endif  // HYPERFT_NUMERICS_HPP
