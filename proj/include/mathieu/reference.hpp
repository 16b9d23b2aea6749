#pragma once

#include <map>
#include <vector>

#include "mathieu/ratfunc.hpp"
#include "mathieu/series.hpp"

// Published coefficient tables used as golden values.
namespace mathieu::reference {

/// Small-q characteristic value lambda = nu^2 + sum_j c_{2j}(nu) q^(2j), j = 1..4.
const std::map<int, RatFunc>& eigen_small_q();

/// One coefficient of the large-lambda inverse nu(lambda, q):
/// coeff * q^q_pow * lambda^(-lambda_half/2).
struct InverseTerm {
  int lambda_half;
  int q_pow;
  Rational coeff;
};
/// All printed terms from lambda^(-3/2) through lambda^(-21/2).
const std::vector<InverseTerm>& inverse_block();

/// nu(w, eps) rows eps^-1 .. eps^7 rewritten in u = (2w)^(-1/2); each row
/// carries the truncation the small-q input supports. The eps^7 row uses the
/// q^8 term as well.
const EpsilonSeries& inverse_rows();

/// Large-q characteristic value: key is twice the power of q, value the
/// polynomial in nu multiplying q^(key/2).
const std::map<int, Poly>& eigen_large_q();

/// Coefficients of the alpha period at w = infinity relative to sqrt(2w):
/// key is k for (2w)^(-k), and the beta period at w = 1 in powers of sigma.
const std::map<int, Rational>& alpha_expansion();
const std::map<int, Rational>& beta_expansion();

}  // namespace mathieu::reference
