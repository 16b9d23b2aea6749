#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mathieu/rational.hpp"
#include "mathieu/series.hpp"

namespace mathieu {

enum class Cycle { ALPHA, BETA };

const char* to_string(Cycle c);

/// Exact scalar coeff * pi^pi_power * i^i_power.
struct Prefactor {
  Rational coeff{1};
  int pi_power = 0;
  int i_power = 0;

  Prefactor operator*(const Prefactor& o) const;
  Prefactor inverse() const;
  bool is_one() const { return coeff == Rational(1) && pi_power == 0 && i_power % 4 == 0; }
  std::complex<long double> value() const;
  friend bool operator==(const Prefactor&, const Prefactor&) = default;
};

/// prefactor * series.
struct PeriodSeries {
  Prefactor prefactor;
  AsymptoticSeries series;
};

/// prefactor * (plain + ln2 * ln2_part). The log terms in both parts carry
/// ln(2w) (U) or ln(sigma) (SIGMA).
struct DualSeries {
  Prefactor prefactor;
  AsymptoticSeries plain;
  AsymptoticSeries ln2_part;

  long double evaluate(long double x) const;
};

enum class DualCycle { ALPHA_AT_SIGMA, BETA_AT_INF };

struct DegenerateCurve : std::domain_error {
  using std::domain_error::domain_error;
};

struct CurveParams {
  std::complex<double> lambda;
  double q;

  CurveParams(std::complex<double> l, double q_);
  std::complex<double> w() const { return lambda / (2.0 * q); }
  double eps() const;
};

struct BranchPoints {
  std::array<std::complex<double>, 4> x;
  /// Index pairs of the two cuts: (x1, x2) and (x3, x4).
  std::array<std::pair<int, int>, 2> cuts{{{0, 1}, {2, 3}}};
};

/// Branch points of y^2 = (x^2 + lambda)^2 - 4q^2. Throws DegenerateCurve at
/// lambda = +-2q.
BranchPoints branch_points(const CurveParams& p);

inline constexpr int kDefaultBaseOrder = 24;

/// Integral of p0 over the alpha cycle at w -> infinity: pi * u^-1 (1 - u^4/4 - ...).
PeriodSeries alpha_base_series(int order = kDefaultBaseOrder);
/// Integral of p0 over the beta cycle near w = 1: i pi * (sigma/2 - sigma^2/32 + ...).
PeriodSeries beta_base_series(int order = kDefaultBaseOrder);
/// Log-bearing expansions of each cycle at the other cycle's point.
DualSeries dual_base_series(DualCycle which, int order = kDefaultBaseOrder);

struct OperatorTerm {
  Rational coeff;
  int wpow;
  int dpow;
  friend bool operator==(const OperatorTerm&, const OperatorTerm&) = default;
};

/// sum coeff * w^wpow * d_w^dpow, ordered by decreasing dpow.
struct GeneratingOperator {
  int m = 0;
  std::vector<OperatorTerm> terms;

  /// The c_{m,j} multiplying w^j d^(m+j).
  Rational coefficient(int j) const;
  /// Every term is w^j d^(m+j) with 0 <= j <= m.
  bool has_complete_shape() const;
};

/// Builds the operator sum_j c[j] w^j d^(m+j) from c_{m,0..m}.
GeneratingOperator make_operator(int m, const std::vector<Rational>& c);

/// D_1 .. D_4.
const std::vector<GeneratingOperator>& operator_table();
const GeneratingOperator& operator_for(int m);

/// sum coeff * w^j d_w^k s. Throws TruncationUnderflow if a SIGMA series is
/// not known far enough to take the highest derivative.
AsymptoticSeries apply_operator(const GeneratingOperator& op, const AsymptoticSeries& s);

/// nu(w, eps) from the alpha (U rows) or beta (SIGMA rows) period, rows
/// eps^-1, eps^1, ..., eps^eps_order.
EpsilonSeries nu_series(Cycle cycle, int eps_order = 7, int var_order = kDefaultBaseOrder);

}  // namespace mathieu
