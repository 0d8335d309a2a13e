#ifndef HYPERFT_ERRORS_HPP
#define HYPERFT_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hyperft {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller-supplied parameter is outside its documented range.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Argument outside the mathematical domain of an operation (log 0, xi = 0, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Result not representable in the exponent range of the working type.
class RangeError : public Error {
public:
    using Error::Error;
};

/// Malformed decimal or file text.
class ParseError : public Error {
public:
    using Error::Error;
};

/// Quadrature hit its node budget before the truncation threshold.
class TruncationError : public Error {
public:
    using Error::Error;
};

/// The integrand returned NaN or infinity at a quadrature node.
class EvaluationError : public Error {
public:
    EvaluationError(const std::string& abscissa)
        : Error("non-finite integrand value at x = " + abscissa), abscissa_(abscissa) {}

    const std::string& abscissa() const noexcept { return abscissa_; }

private:
    std::string abscissa_;
};

/// |Im center| too small for the exponential damping to suppress oscillation.
class IllConditionedCenter : public Error {
public:
    using Error::Error;
};

/// A Taylor coefficient vanished, so the quotient-difference tableau cannot start.
class ZeroCoefficient : public Error {
public:
    explicit ZeroCoefficient(std::size_t index, const std::string& where = {})
        : Error("zero Taylor coefficient c_" + std::to_string(index) + suffix(where)), index_(index) {}

    std::size_t index() const noexcept { return index_; }

private:
    static std::string suffix(const std::string& where) { return where.empty() ? "" : " (" + where + ")"; }
    std::size_t index_;
};

/// Division by a vanishing e_k^(n) while the column still carries nonzero entries.
class Breakdown : public Error {
public:
    Breakdown(std::size_t k, std::size_t n, const std::string& where = {})
        : Error("quotient-difference breakdown at e_" + std::to_string(k) + "^(" + std::to_string(n) + ")" +
                (where.empty() ? "" : " (" + where + ")")),
          k_(k), n_(n) {}

    std::size_t column() const noexcept { return k_; }
    std::size_t row() const noexcept { return n_; }

private:
    std::size_t k_;
    std::size_t n_;
};

/// Continued-fraction denominator 1 + t collapsed during backward evaluation.
class NearPole : public Error {
public:
    explicit NearPole(std::size_t depth, const std::string& where = {})
        : Error("continued fraction evaluated near a pole at depth " + std::to_string(depth) +
                (where.empty() ? "" : " (" + where + ")")),
          depth_(depth) {}

    std::size_t depth() const noexcept { return depth_; }

private:
    std::size_t depth_;
};

/// build_transform could not produce a continued fraction for one branch.
class TransformError : public Error {
public:
    using Error::Error;
};

}  // namespace hyperft

#endif  // HYPERFT_ERRORS_HPP
