#pragma once

#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mathieu/rational.hpp"

namespace mathieu {

/// Expansion variable of a truncated series.
///
///  U       u = (2w)^(-1/2), expansion at w = infinity; log terms carry ln(2w)
///  SIGMA   sigma = w - 1, expansion at w = 1; log terms carry ln(sigma)
///  NU_INV  r = 1/nu; polynomials in nu are finite series with pow <= 0
///  AUX     formal auxiliary variable used inside series reversion
enum class Var { U, SIGMA, NU_INV, AUX };

std::string to_string(Var v);
Var var_from_string(const std::string& s);

/// Truncation order meaning "no unknown tail".
inline constexpr int kExact = std::numeric_limits<int>::max();

/// Saturating addition on truncation orders.
inline int trunc_add(int a, int b) {
  if (a == kExact || b == kExact) return kExact;
  return a + b;
}

struct SeriesError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct VariableMismatch : SeriesError {
  using SeriesError::SeriesError;
};
struct LogCapOverflow : SeriesError {
  using SeriesError::SeriesError;
};
struct TruncationUnderflow : SeriesError {
  using SeriesError::SeriesError;
};
struct NonInvertible : SeriesError {
  using SeriesError::SeriesError;
};

/// Finite sum of coeff * v^pow * (ln)^log with a known-through order.
///
/// Coefficients of pow > trunc() are unknown, not zero. Zero coefficients are
/// never stored.
class AsymptoticSeries {
 public:
  struct Key {
    int pow;
    int log;
    friend auto operator<=>(const Key&, const Key&) = default;
  };
  using Terms = std::map<Key, Rational>;

  explicit AsymptoticSeries(Var v = Var::U, int trunc = kExact) : var_(v), trunc_(trunc) {}

  static AsymptoticSeries monomial(Var v, int pow, Rational c, int log = 0, int trunc = kExact);
  static AsymptoticSeries constant(Var v, Rational c, int trunc = kExact) {
    return monomial(v, 0, std::move(c), 0, trunc);
  }

  Var var() const { return var_; }
  int trunc() const { return trunc_; }
  bool exact() const { return trunc_ == kExact; }
  const Terms& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  bool is_exact_zero() const { return terms_.empty() && exact(); }

  /// Coefficient of v^pow (ln)^log; throws when pow lies beyond the truncation.
  Rational coeff(int pow, int log = 0) const;

  /// Adds c to the (pow, log) coefficient; silently ignored beyond trunc().
  void add(int pow, int log, const Rational& c);
  void add(int pow, const Rational& c) { add(pow, 0, c); }

  /// Lowest stored power; trunc()+1 for an empty series (saturating).
  int valuation() const;
  /// Highest stored power; throws on empty.
  int max_pow() const;
  int max_log() const;

  /// Same series with the known range reduced to pow <= t.
  AsymptoticSeries truncated(int t) const;
  /// Drops terms and forces trunc to t (used when t is the new precision).
  void set_trunc(int t);

  /// Numeric value. For U the argument is u, log means ln(2w) = -2 ln u;
  /// for SIGMA the argument is sigma and log means ln sigma.
  long double evaluate(long double x) const;

  friend bool operator==(const AsymptoticSeries& a, const AsymptoticSeries& b) {
    return a.var_ == b.var_ && a.trunc_ == b.trunc_ && a.terms_ == b.terms_;
  }

  std::string str() const;

 private:
  Var var_;
  int trunc_;
  Terms terms_;
};

AsymptoticSeries series_add(const AsymptoticSeries& a, const AsymptoticSeries& b);
AsymptoticSeries series_sub(const AsymptoticSeries& a, const AsymptoticSeries& b);
AsymptoticSeries series_scale(const AsymptoticSeries& a, const Rational& c);
/// Cauchy product. Throws LogCapOverflow if a kept term would exceed log_cap.
AsymptoticSeries series_mul(const AsymptoticSeries& a, const AsymptoticSeries& b, int log_cap = 1);
/// Multiplies by v^k (shifts powers; truncation shifts with them).
AsymptoticSeries series_shift(const AsymptoticSeries& a, int k);
/// d/dw in the series' own variable (U or SIGMA only).
AsymptoticSeries series_diff_w(const AsymptoticSeries& a);
/// Multiplies by w^j. U: any integer j; SIGMA: j >= 0.
AsymptoticSeries series_mul_w_pow(const AsymptoticSeries& a, int j);
/// (1 + x)^alpha for x log-free with positive valuation.
AsymptoticSeries series_binomial(const AsymptoticSeries& x, const Rational& alpha);
/// sum_k c_k x^k for x with positive valuation (c_0 allowed).
AsymptoticSeries series_compose(const std::vector<Rational>& coeffs, const AsymptoticSeries& x);

inline AsymptoticSeries operator+(const AsymptoticSeries& a, const AsymptoticSeries& b) {
  return series_add(a, b);
}
inline AsymptoticSeries operator-(const AsymptoticSeries& a, const AsymptoticSeries& b) {
  return series_sub(a, b);
}
inline AsymptoticSeries operator*(const AsymptoticSeries& a, const AsymptoticSeries& b) {
  return series_mul(a, b);
}
inline AsymptoticSeries operator*(const Rational& c, const AsymptoticSeries& a) {
  return series_scale(a, c);
}

/// Rows indexed by a power of epsilon, each an AsymptoticSeries in one shared
/// variable. Rows above trunc_eps() are unknown; absent rows at or below it
/// are exactly zero. Large-nu inversions produce rows that run towards
/// negative powers; for those, rows below floor_eps() are unknown as well.
class EpsilonSeries {
 public:
  explicit EpsilonSeries(Var v = Var::U, int trunc_eps = kExact) : var_(v), trunc_eps_(trunc_eps) {}

  Var var() const { return var_; }
  int trunc_eps() const { return trunc_eps_; }
  int floor_eps() const { return floor_eps_; }
  bool has_floor() const { return floor_eps_ != kNoFloor; }
  const std::map<int, AsymptoticSeries>& rows() const { return rows_; }

  static constexpr int kNoFloor = std::numeric_limits<int>::min();
  void set_floor_eps(int f);

  bool has_row(int e) const { return rows_.count(e) != 0; }
  /// Row e; exact zero when absent. Throws when e is outside the known band.
  AsymptoticSeries row(int e) const;
  void set_row(int e, AsymptoticSeries s);
  void add_to_row(int e, const AsymptoticSeries& s);
  void set_trunc_eps(int t);

  /// Lowest row that is not an exact zero; trunc_eps()+1 if none.
  int valuation() const;

  long double evaluate(long double eps, long double x) const;

  friend bool operator==(const EpsilonSeries&, const EpsilonSeries&) = default;

  std::string str() const;

 private:
  Var var_;
  int trunc_eps_;
  int floor_eps_ = kNoFloor;
  std::map<int, AsymptoticSeries> rows_;
};

EpsilonSeries eps_add(const EpsilonSeries& a, const EpsilonSeries& b);
EpsilonSeries eps_sub(const EpsilonSeries& a, const EpsilonSeries& b);
EpsilonSeries eps_scale(const EpsilonSeries& a, const Rational& c);
EpsilonSeries eps_mul(const EpsilonSeries& a, const EpsilonSeries& b);
/// Multiplies by epsilon^k.
EpsilonSeries eps_shift(const EpsilonSeries& a, int k);
/// Multiplies every row by v^k.
EpsilonSeries eps_shift_var(const EpsilonSeries& a, int k);
/// Keeps only terms with (row + pow) <= degree; everything above is unknown.
EpsilonSeries eps_total_degree_truncate(const EpsilonSeries& a, int degree);
/// Caps every row at pow <= t.
EpsilonSeries eps_var_truncate(const EpsilonSeries& a, int t);
/// (1 + x)^alpha by the binomial series; x must be log-free and nilpotent in
/// the combined (epsilon, variable) grading up to the truncation.
EpsilonSeries eps_binomial(const EpsilonSeries& x, const Rational& alpha);

/// Inverts nu(base, eps) for the base variable.
///
/// base == SIGMA: input rows in SIGMA with eps*nu = a1*sigma + ...; returns
///   sigma(nu, eps) with rows in NU_INV (polynomials in nu).
/// base == U: input rows in U with eps*nu = b0/u + ...; returns w(nu, eps)
///   with rows in NU_INV. Each row is a Laurent series in 1/nu; rows run from
///   eps^2 down to floor_eps().
/// max_order caps the auxiliary-variable degree kept during the iteration.
EpsilonSeries epsilon_reversion(const EpsilonSeries& nu, Var base, int max_order = 48);

/// Substitutes sigma(nu, eps) (rows in NU_INV) into f(sigma, eps) (rows in
/// SIGMA, power series). Result rows are in NU_INV.
EpsilonSeries substitute_sigma(const EpsilonSeries& f, const EpsilonSeries& sigma);

}  // namespace mathieu
