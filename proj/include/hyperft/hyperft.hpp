#ifndef HYPERFT_HYPERFT_HPP
#define HYPERFT_HYPERFT_HPP

#include "hyperft/errors.hpp"
#include "hyperft/numerics.hpp"
#include "hyperft/quadrature.hpp"
#include "hyperft/taylor.hpp"
#include "hyperft/confrac.hpp"
#include "hyperft/transform.hpp"
#include "hyperft/baselines.hpp"
#include "hyperft/cli.hpp"

#endif  // HYPERFT_HYPERFT_HPP
