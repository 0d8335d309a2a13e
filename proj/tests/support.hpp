#ifndef HYPERFT_TESTS_SUPPORT_HPP
#define HYPERFT_TESTS_SUPPORT_HPP

#include <gtest/gtest.h>

#include <random>
#include <string>

#include "hyperft/hyperft.hpp"

namespace hyperft::testing {

/// Fixed-seed generator so property runs are reproducible.
inline std::mt19937_64& rng() {
    static std::mt19937_64 gen(20240611);
    return gen;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

inline Real rel_error(const Complex& got, const Complex& want) {
    const Real scale = abs(want);
    return scale == 0 ? abs(got) : Real(abs(got - want) / scale);
}

inline std::string sci(const Real& x) { return to_string(x, 4); }

}  // namespace hyperft::testing

#define EXPECT_REAL_LE(a, b) EXPECT_TRUE((a) <= (b)) << #a " = " << ::hyperft::testing::sci(a) << " exceeds " << ::hyperft::testing::sci(b)

#endif  // HYPERFT_TESTS_SUPPORT_HPP
