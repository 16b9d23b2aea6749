#pragma once

#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>

#include "mathieu/rational.hpp"

namespace mathieu {

/// Polynomial in w, c = cos 2z, s = sin 2z with s^2 folded into 1 - c^2.
/// Key is (j, a, b) for w^j c^a s^b, b in {0, 1}.
class TrigPoly {
 public:
  using Key = std::tuple<int, int, int>;
  using Terms = std::map<Key, GaussianRational>;

  TrigPoly() = default;
  static TrigPoly constant(const GaussianRational& c);
  static TrigPoly monomial(int j, int a, int b, const GaussianRational& c);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add(int j, int a, int b, const GaussianRational& c);

  TrigPoly operator+(const TrigPoly& o) const;
  TrigPoly operator-(const TrigPoly& o) const;
  TrigPoly operator*(const TrigPoly& o) const;
  TrigPoly scaled(const GaussianRational& c) const;

  /// d/dz using c' = -2s, s' = 2c.
  TrigPoly dz() const;
  /// Quotient by (w - c) when it divides exactly; false otherwise.
  bool divide_by_w_minus_c(TrigPoly& quotient) const;

  std::complex<long double> eval(std::complex<long double> w, std::complex<long double> c,
                                 std::complex<long double> s) const;

  friend bool operator==(const TrigPoly&, const TrigPoly&) = default;

 private:
  Terms terms_;
};

/// Element A P^N + B P^(N+1) of the ring generated by w, c, s and
/// P = sqrt(2(w - c)), with N as large as possible. The normal form is unique,
/// so equality of densities is structural equality.
class WkbDensity {
 public:
  using Key = std::tuple<int, int, int, int>;  // (j, a, b, n) for w^j c^a s^b P^n

  WkbDensity() = default;
  WkbDensity(TrigPoly a, TrigPoly b, int n);

  static WkbDensity p0();
  static WkbDensity from_poly(const TrigPoly& a) { return WkbDensity(a, TrigPoly(), 0); }

  const TrigPoly& a() const { return a_; }
  const TrigPoly& b() const { return b_; }
  int n() const { return n_; }
  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

  /// Flat monomial view.
  std::map<Key, GaussianRational> terms() const;

  WkbDensity operator+(const WkbDensity& o) const;
  WkbDensity operator-(const WkbDensity& o) const;
  WkbDensity operator*(const WkbDensity& o) const;
  WkbDensity scaled(const GaussianRational& c) const;
  WkbDensity dz() const;
  /// Division by P.
  WkbDensity over_p() const;
  /// (c, s) -> (c, -s), the image under z -> -z.
  WkbDensity reflected() const;

  /// Value at given w, c, s and a chosen square root P.
  std::complex<long double> eval(std::complex<long double> w, std::complex<long double> c,
                                 std::complex<long double> s, std::complex<long double> p) const;

  /// Canonical text, one monomial per line sorted by (n, j, a, b).
  std::string canonical_text() const;

  friend bool operator==(const WkbDensity&, const WkbDensity&) = default;

 private:
  void normalize();
  WkbDensity lowered_to(int n) const;

  TrigPoly a_;
  TrigPoly b_;
  int n_ = 0;
};

/// p_m of the phase-derivative expansion; memoized through m = 8.
const WkbDensity& wkb_density(int m);

struct TurningPointError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Keeps P = sqrt(2(w - cos 2z)) continuous along a path. The first call
/// takes the principal root; later calls pick the sign closest to the
/// previous value.
class BranchTracker {
 public:
  std::complex<long double> root(std::complex<long double> w, std::complex<long double> z);
  void reset() { started_ = false; }
  void seed(std::complex<long double> p) {
    last_ = p;
    started_ = true;
  }

 private:
  std::complex<long double> last_{};
  bool started_ = false;
};

/// Numeric p_m(z). Throws TurningPointError when P vanishes at z.
std::complex<long double> wkb_eval(int m, std::complex<long double> w, std::complex<long double> z,
                                   BranchTracker& branch);

}  // namespace mathieu
