#pragma once

#include <map>
#include <string>
#include <vector>

#include "mathieu/rational.hpp"
#include "mathieu/series.hpp"

namespace mathieu {

/// Dense univariate polynomial over Q in nu.
class Poly {
 public:
  Poly() = default;
  Poly(Rational c);  // NOLINT: constants convert
  static Poly x();
  static Poly from_coeffs(std::vector<Rational> c);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  Rational coeff(int k) const { return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : Rational(0); }
  const std::vector<Rational>& coeffs() const { return c_; }

  Rational eval(const Rational& x) const;
  long double eval(long double x) const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly scaled(const Rational& s) const;
  /// Exact quotient by (x - root); throws if root is not a zero.
  Poly divide_root(const Rational& root) const;

  friend bool operator==(const Poly&, const Poly&) = default;
  std::string str(const std::string& var = "nu") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

/// num(nu) / prod_k (nu + k)^e_k, always reduced: no shift k with num(-k) = 0
/// keeps a positive exponent.
class RatFunc {
 public:
  RatFunc() = default;
  RatFunc(Poly num) : num_(std::move(num)) {}  // NOLINT
  RatFunc(Poly num, std::map<int, int> den);

  const Poly& num() const { return num_; }
  const std::map<int, int>& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  RatFunc operator+(const RatFunc& o) const;
  RatFunc operator-(const RatFunc& o) const;
  RatFunc operator*(const RatFunc& o) const;
  RatFunc scaled(const Rational& s) const;
  /// Division by (nu + k).
  RatFunc over_linear(int k) const;

  /// Expanded denominator polynomial.
  Poly den_poly() const;
  long double eval(long double nu) const;
  /// Laurent expansion at nu = infinity in r = 1/nu, known through r^order.
  AsymptoticSeries large_nu(int order) const;

  friend bool operator==(const RatFunc&, const RatFunc&) = default;
  std::string str() const;

 private:
  void reduce();
  Poly num_;
  std::map<int, int> den_;
};

/// (nu^2 - k^2) as a factor map for building expected denominators.
std::map<int, int> den_nu2_minus(std::initializer_list<std::pair<int, int>> k_and_power);

}  // namespace mathieu
