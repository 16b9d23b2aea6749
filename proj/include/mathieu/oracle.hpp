#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mathieu/curve.hpp"

namespace mathieu {

struct FloquetResult {
  double nu = 0;
  std::string method;
  bool stable = true;
  double est_error = 0;
  /// Imaginary part of the exponent when |trace| > 2 (stable == false).
  double nu_imag = 0;
  bool band_edge = false;
  std::vector<std::string> warnings;
};

struct IntegratorFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotConverged : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BranchJump : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MonodromySetup {
  double lambda = 0;
  double q = 0;
  double tol = 1e-12;
  long max_steps = 2'000'000;
};

/// Floquet exponent from the monodromy matrix over one period, with the
/// integer part fixed by the rotation number of the flow.
FloquetResult monodromy_nu(const MonodromySetup& s);

/// Trace of the monodromy matrix, u1(pi) + u2'(pi).
double monodromy_trace(const MonodromySetup& s);

struct HillValue {
  double lambda = 0;
  bool integer_nu = false;
  /// |lambda(K) - lambda(K + 10)|
  double delta = 0;
};

/// Characteristic value continuing nu^2 from q = 0, from the (2K+1)-mode
/// Fourier truncation. Throws NotConverged when K and K + 10 disagree by
/// more than 1e-10 (relative).
HillValue hill_char_value(double nu, double q, int K = 40);

/// nu from Hill's determinant, cos(pi nu) = 1 - 2 Delta(0) sin^2(pi sqrt(lambda)/2),
/// with the band fixed by counting periodic and antiperiodic eigenvalues
/// below lambda.
FloquetResult hill_nu(double lambda, double q, int K = 60);

/// Gauss series for 2F1(a, b; c; z); |z| < 1 only.
std::complex<long double> hyp2f1(long double a, long double b, long double c, std::complex<long double> z,
                                 long double tol = 1e-18L);

/// Closed contour around a cycle of the curve in the z-plane.
///
/// ALPHA: the period line Im z = h from -pi/2 to pi/2 (closed on the cylinder).
/// BETA: the ellipse with foci at the turning points +-acos(w)/2, passing at
/// distance h beyond each focus; the cycle is half the loop integral.
struct ContourSpec {
  Cycle cycle = Cycle::ALPHA;
  std::complex<long double> w = 3.0L;
  double h = 0.0;
  int M = 1024;

  static ContourSpec alpha(std::complex<long double> w, int M = 1024, double h = 0.0) {
    return {Cycle::ALPHA, w, h, M};
  }
  static ContourSpec beta(std::complex<long double> w, int M = 1024, double h = 0.35) {
    return {Cycle::BETA, w, h, M};
  }
};

/// Trapezoidal quadrature of p_m dz over the cycle, normalized so that the
/// m = 0 values are pi sqrt(2(w+1)) F(-1/2,1/2,1;2/(w+1)) (ALPHA) and
/// (i pi/2)(w-1) F(1/2,1/2,2;(1-w)/2) (BETA).
std::complex<long double> contour_integral_pm(int m, const ContourSpec& spec);

/// k-th derivative of an analytic f at x0 from N samples on the circle of
/// radius r.
std::complex<long double> cauchy_derivative(const std::function<std::complex<long double>(std::complex<long double>)>& f,
                                            std::complex<long double> x0, int k, long double r, int N = 64);

/// D_m applied to w -> contour_integral_pm(0, spec(w)) by Cauchy derivatives.
std::complex<long double> operator_on_period(const GeneratingOperator& op, const ContourSpec& spec, long double r,
                                             int N = 64);

}  // namespace mathieu
