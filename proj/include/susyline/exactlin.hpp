#pragma once

#include <vector>

#include "susyline/rational.hpp"

namespace susyline {

/// Dense matrix over Q, row-major.
using RationalMatrix = std::vector<std::vector<Rational>>;

/// Rank by exact Gaussian elimination (destroys m).
int rational_rank(RationalMatrix m);

/// Basis of the right kernel { x : M x = 0 }, one vector per column of the
/// returned list.
std::vector<std::vector<Rational>> rational_kernel(RationalMatrix m, int cols);

} // namespace susyline
