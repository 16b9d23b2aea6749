#include <complex>

#include "doctest.h"
#include "mathieu/matcher.hpp"
#include "mathieu/reference.hpp"

using namespace mathieu;

TEST_CASE("small-q generator reproduces the published coefficients") {
  NuRationalSeries s = small_q_series(8);
  const auto& ref = reference::eigen_small_q();
  REQUIRE(s.terms.size() == 4);
  for (const auto& [j, r] : ref) {
    INFO("q^" << j);
    CHECK(s.terms.at(j) == r);
  }
  CHECK(s.terms.at(2).str() == "(1/2) / (nu - 1)(nu + 1)");
  // odd orders vanish identically
  for (const auto& [j, r] : s.terms) CHECK(j % 2 == 0);
}

TEST_CASE("inverse block") {
  InverseSeries inv = invert_small_q(small_q_series(6));
  std::size_t hits = 0;
  for (const auto& t : reference::inverse_block()) {
    INFO("lambda^-" << t.lambda_half << "/2 q^" << t.q_pow);
    auto it = inv.terms.find({t.lambda_half, t.q_pow});
    REQUIRE(it != inv.terms.end());
    CHECK(it->second == t.coeff);
    ++hits;
  }
  // nothing beyond the published block survives the cutoffs
  CHECK(inv.terms.size() == hits);
  CHECK_THROWS_AS(invert_small_q(small_q_series(4)), InsufficientOrder);
}

TEST_CASE("inverse rows in (w, eps)") {
  EpsilonSeries rows = invert_small_q(small_q_series(6)).rows();
  const EpsilonSeries& ref = reference::inverse_rows();
  for (int e : {-1, 1, 3, 5}) CHECK(rows.row(e) == ref.rows().at(e));
  EpsilonSeries rows8 = invert_small_q(small_q_series(8), 23).rows();
  CHECK(rows8.row(7) == ref.rows().at(7));
}

TEST_CASE("inverting the inverse gives back the small-q series") {
  EpsilonSeries rows = invert_small_q(small_q_series(6)).rows();
  auto lam = eigen_from_inverse(rows);
  NuRationalSeries s = small_q_series(6);
  // key 2j for q^j; compare on the known range of each row
  CHECK(lam.at(0).coeff(-2) == Rational(1));
  for (int j : {2, 4, 6}) {
    INFO("q^" << j);
    const AsymptoticSeries& got = lam.at(2 * j);
    REQUIRE(got.trunc() >= 10);
    AsymptoticSeries want = s.terms.at(j).large_nu(got.trunc());
    CHECK(got == want);
  }
}

TEST_CASE("operator determination") {
  AsymptoticSeries base = normalized_alpha_base();
  for (int m : {3, 4}) {
    MatchPlan plan = match_plan(m);
    EpsilonSeries target = invert_small_q(small_q_series(plan.order_q), plan.lambda_order).rows();
    GeneratingOperator op = determine_operator(m, target, base);
    CHECK(op.terms == operator_for(m).terms);

    // idempotent: a target generated by the solved operator reproduces it
    EpsilonSeries regen(Var::U, 2 * m);
    regen.set_row(2 * m - 1, apply_operator(op, base).truncated(target.row(2 * m - 1).trunc()));
    CHECK(determine_operator(m, regen, base).terms == op.terms);
  }
  MatchPlan plan = match_plan(3);
  EpsilonSeries target = invert_small_q(small_q_series(plan.order_q), plan.lambda_order).rows();
  EpsilonSeries zeroed = target;
  zeroed.set_row(5, AsymptoticSeries(Var::U, target.row(5).trunc()));
  CHECK_THROWS_AS(determine_operator(3, zeroed, base), InconsistentSystem);

  EpsilonSeries short_target = target;
  short_target.set_row(5, target.row(5).truncated(12));
  CHECK_THROWS_AS(determine_operator(3, short_target, base), InsufficientOrder);
}

TEST_CASE("large-q expansion") {
  LargeQSeries s = large_q_series(7);
  const auto& ref = reference::eigen_large_q();
  REQUIRE(s.terms.size() == ref.size());
  for (const auto& [k, p] : ref) {
    INFO("2 * qpow = " << k);
    CHECK(s.terms.at(k) == p);
  }
  LargeQSeries s2 = large_q_series(2);
  CHECK(s2.terms.size() == 5);
  CHECK(s2.terms.at(-2) == ref.at(-2));
}

TEST_CASE("large-q series continued to imaginary nu gives the lowest bands") {
  // nu = i(2r+1)/2, sqrt(q) -> i sqrt(q): every term is nu^a q^(b/2) with a = b mod 2
  LargeQSeries s = large_q_series(7);
  const long double q = 50;
  const double want = hill_char_value(0.5, q).lambda;
  std::complex<long double> nu(0, 0.5L), root(0, std::sqrt(q));
  std::complex<long double> lam = 0;
  for (const auto& [k, p] : s.terms) {
    std::complex<long double> pv = 0;
    for (int d = p.degree(); d >= 0; --d) pv = pv * nu + p.coeff(d).to_long_double();
    lam += pv * std::pow(root, k);
  }
  CHECK(std::abs(lam.imag()) < 1e-12L);
  CHECK(static_cast<double>(lam.real()) == doctest::Approx(want).epsilon(1e-10));
}
