#pragma once

#include <stdexcept>
#include <vector>

#include "mathieu/rational.hpp"

namespace mathieu {

using RationalMatrix = std::vector<std::vector<Rational>>;

struct SingularMatrix : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Exact solution of A x = b (A square) by fraction-free Bareiss elimination
/// with back substitution. Throws SingularMatrix.
std::vector<Rational> rational_linear_solve(const RationalMatrix& a, const std::vector<Rational>& b);

}  // namespace mathieu
