#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/hypergeometric_pFq.hpp>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "mathieu/oracle.hpp"

using namespace mathieu;

namespace {
constexpr long double kPi = std::numbers::pi_v<long double>;
}

TEST_CASE("free equation") {
  // q = 0: solutions e^(+-i sqrt(lambda) z)
  for (double nu : {0.3, 1.5, 2.5, 3.7}) {
    FloquetResult r = monodromy_nu({nu * nu, 0.0});
    CHECK(r.nu == doctest::Approx(nu).epsilon(1e-10));
    CHECK(r.stable);
    CHECK_FALSE(r.band_edge);
  }
  FloquetResult edge = monodromy_nu({4.0, 0.0});
  CHECK(edge.band_edge);
  CHECK(edge.nu == 2.0);
  CHECK(monodromy_trace({2.25, 0.0}) == doctest::Approx(2 * std::cos(kPi * 1.5)).epsilon(1e-10));
}

TEST_CASE("hill characteristic values") {
  CHECK(hill_char_value(1.3, 0.0).lambda == doctest::Approx(1.69).epsilon(1e-14));
  // second-order perturbation, lambda = nu^2 + q^2 / (2 (nu^2 - 1))
  double nu = 2.3, q = 1e-3;
  CHECK(hill_char_value(nu, q).lambda == doctest::Approx(nu * nu + q * q / (2 * (nu * nu - 1))).epsilon(1e-14));
  // symmetric in q
  CHECK(hill_char_value(0.7, 3.0).lambda == doctest::Approx(hill_char_value(0.7, -3.0).lambda).epsilon(1e-13));
  HillValue h = hill_char_value(2.0, 1.0);
  CHECK(h.integer_nu);
}

TEST_CASE("monodromy and hill determinant agree") {
  for (auto [lam, q] : std::vector<std::pair<double, double>>{{25.02, 1}, {3.3, 2}, {-0.2, 1}, {12.0, 5}}) {
    INFO("lambda = " << lam << " q = " << q);
    FloquetResult m = monodromy_nu({lam, q});
    FloquetResult h = hill_nu(lam, q);
    CHECK(m.stable == h.stable);
    if (m.stable) {
      CHECK(m.nu == doctest::Approx(h.nu).epsilon(1e-8));
    } else {
      CHECK(m.nu_imag == doctest::Approx(h.nu_imag).epsilon(1e-6));
    }
  }
}

TEST_CASE("unstable exponent") {
  // inside the first gap around lambda = 1 at q = 1
  FloquetResult r = monodromy_nu({1.0, 1.0});
  CHECK_FALSE(r.stable);
  CHECK(r.nu_imag > 0);
  CHECK(std::abs(monodromy_trace({1.0, 1.0})) > 2);
}

TEST_CASE("Gauss series for 2F1") {
  for (double z : {-0.9, -0.3, 0.2, 0.6}) {
    INFO("z = " << z);
    long double want = boost::math::hypergeometric_pFq({0.5, 0.5}, {2.0}, z);
    CHECK(static_cast<double>(hyp2f1(0.5L, 0.5L, 2.0L, z).real()) == doctest::Approx(static_cast<double>(want)).epsilon(1e-15));
    want = boost::math::hypergeometric_pFq({-0.5, 0.5}, {1.0}, z);
    CHECK(static_cast<double>(hyp2f1(-0.5L, 0.5L, 1.0L, z).real()) == doctest::Approx(static_cast<double>(want)).epsilon(1e-15));
  }
  CHECK_THROWS(hyp2f1(0.5L, 0.5L, 2.0L, 1.2L));
}

TEST_CASE("base periods by quadrature") {
  for (long double w : {1.5L, 3.0L, 10.0L}) {
    auto v = contour_integral_pm(0, ContourSpec::alpha(w));
    long double want = kPi * std::sqrt(2 * (w + 1)) * hyp2f1(-0.5L, 0.5L, 1.0L, 2 / (w + 1)).real();
    CHECK(static_cast<double>(std::abs(v - want) / want) < 1e-15);
  }
  for (long double w : {-0.5L, 0.2L, 0.5L, 0.9L}) {
    auto v = contour_integral_pm(0, ContourSpec::beta(w));
    std::complex<long double> want(0, kPi / 2 * (w - 1) * hyp2f1(0.5L, 0.5L, 2.0L, (1 - w) / 2).real());
    CHECK(static_cast<double>(std::abs(v - want) / std::abs(want)) < 1e-14);
  }
}

TEST_CASE("contour results do not depend on the contour") {
  for (int m : {2, 4}) {
    auto a = contour_integral_pm(m, ContourSpec::alpha(3.0L, 1024, 0.0));
    auto b = contour_integral_pm(m, ContourSpec::alpha(3.0L, 1024, 0.3));
    CHECK(static_cast<double>(std::abs(a - b) / std::abs(a)) < 1e-13);
    auto c = contour_integral_pm(m, ContourSpec::beta(0.5L, 1024, 0.35));
    auto d = contour_integral_pm(m, ContourSpec::beta(0.5L, 2048, 0.5));
    CHECK(static_cast<double>(std::abs(c - d) / std::abs(c)) < 1e-12);
  }
}

TEST_CASE("Cauchy derivatives") {
  auto f = [](std::complex<long double> x) { return std::exp(2.0L * x); };
  for (int k = 0; k <= 6; ++k) {
    auto d = cauchy_derivative(f, 0.3L, k, 0.5L);
    long double want = std::pow(2.0L, k) * std::exp(0.6L);
    CHECK(static_cast<double>(std::abs(d - want) / want) < 1e-15);
  }
}
