#pragma once

#include <map>
#include <stdexcept>

#include "mathieu/curve.hpp"
#include "mathieu/oracle.hpp"
#include "mathieu/ratfunc.hpp"
#include "mathieu/series.hpp"

namespace mathieu {

struct InsufficientOrder : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct InconsistentSystem : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// lambda = nu^2 + sum_j terms[j](nu) q^j, j even.
struct NuRationalSeries {
  int order_q = 0;
  std::map<int, RatFunc> terms;
};

/// lambda = sum_k terms[k](nu) q^(k/2); keys run from 2 downwards.
struct LargeQSeries {
  int order = 0;
  std::map<int, Poly> terms;

  long double evaluate(long double nu, long double q) const;
};

/// nu(lambda, q) = lambda^(1/2) + sum coeff * q^j * lambda^(-k/2); key (k, j).
struct InverseSeries {
  int order_q = 0;
  int lambda_order = 0;
  std::map<std::pair<int, int>, Rational> terms;

  /// The same series in (w, eps): rows eps^(k-2j) in u = (2w)^(-1/2), each
  /// row carrying the truncation the input orders support.
  EpsilonSeries rows() const;
};

inline constexpr int kSmallQOrder = 8;
inline constexpr int kLambdaOrder = 21;
inline constexpr int kLargeQOrder = 7;

/// Rayleigh-Schroedinger expansion of the Fourier recurrence
/// (lambda - (nu + 2k)^2) c_k = q (c_(k+1) + c_(k-1)), through q^order_q.
NuRationalSeries small_q_series(int order_q = kSmallQOrder);

/// Inverts lambda(nu) at large lambda, keeping q^j for j <= s.order_q and
/// lambda^(-k/2) for k <= lambda_order.
InverseSeries invert_small_q(const NuRationalSeries& s, int lambda_order = kLambdaOrder);

/// Largest lambda order that still determines D_m through target row
/// eps^(2m-1), for input through q^order_q.
struct MatchPlan {
  int order_q;
  int lambda_order;
};
MatchPlan match_plan(int m);

/// Solves for c_(m,0..m) in sum_j c_j w^j d^(m+j) base = target.row(2m-1),
/// together with the vanishing of the leading u^(2m-1) term. Extra known
/// coefficients of the row are used as consistency checks.
GeneratingOperator determine_operator(int m, const EpsilonSeries& target, const AsymptoticSeries& base);

/// alpha period over pi, u^-1 (1 - u^4/4 - ...).
AsymptoticSeries normalized_alpha_base(int order = kDefaultBaseOrder);

/// Orientation of the beta cycle relative to (1/(i pi)) times the
/// hypergeometric period; fixed by the sign of the sqrt(q) term.
inline constexpr int kBetaOrientation = -1;

/// lambda(nu, q) at large q from the beta-cycle nu-series.
LargeQSeries large_q_series(int order = kLargeQOrder);

/// lambda = 2w / eps^2 expanded at large nu, from a U-base reversion of
/// nu(w, eps): key 2 * (q power) -> Laurent series in 1/nu.
std::map<int, AsymptoticSeries> eigen_from_inverse(const EpsilonSeries& nu_rows);

struct SeriesDiverges : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// nu from the truncated nu-series of one cycle, evaluated at (lambda, q).
/// ALPHA needs large w = lambda/(2q), BETA needs w near 1; outside those
/// regions a warning is attached. est_error is the size of the last kept
/// row. Throws SeriesDiverges when the last row outweighs the first.
FloquetResult wkb_nu(Cycle cycle, double lambda, double q, int eps_order = 7);

}  // namespace mathieu
