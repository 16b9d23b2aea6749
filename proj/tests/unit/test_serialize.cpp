#include "doctest.h"
#include "mathieu/matcher.hpp"
#include "mathieu/serialize.hpp"

using namespace mathieu;

TEST_CASE("series json round trip") {
  AsymptoticSeries s(Var::U, 21);
  s.add(-1, Rational(1));
  s.add(3, Rational(-1, 4));
  s.add(5, 1, Rational(7, 3));
  json j = to_json(s);
  CHECK(j["var"] == "U");
  CHECK(j["trunc"] == 21);
  CHECK(j["terms"][1]["coeff"] == "-1/4");
  CHECK(series_from_json(json::parse(j.dump())) == s);

  AsymptoticSeries e = AsymptoticSeries::monomial(Var::SIGMA, 2, Rational(3));
  CHECK(to_json(e)["trunc"].is_null());
  CHECK(series_from_json(to_json(e)) == e);
}

TEST_CASE("eps series round trip") {
  EpsilonSeries rows = invert_small_q(small_q_series(6)).rows();
  EpsilonSeries back = eps_series_from_json(json::parse(to_json(rows).dump()));
  CHECK(back.rows() == rows.rows());
  CHECK(back.trunc_eps() == rows.trunc_eps());
}

TEST_CASE("emitted series re-parse to identical values") {
  NuRationalSeries e1 = small_q_series(8);
  NuRationalSeries e1b = nu_rational_from_json(json::parse(to_json(e1).dump()));
  CHECK(e1b.order_q == e1.order_q);
  CHECK(e1b.terms == e1.terms);

  InverseSeries inv = invert_small_q(small_q_series(6));
  InverseSeries invb = inverse_from_json(json::parse(to_json(inv).dump()));
  CHECK(invb.terms == inv.terms);
  CHECK(invb.lambda_order == inv.lambda_order);

  LargeQSeries e2 = large_q_series(7);
  LargeQSeries e2b = large_q_from_json(json::parse(to_json(e2).dump()));
  CHECK(e2b.terms == e2.terms);

  for (int m = 1; m <= 4; ++m) {
    GeneratingOperator op = operator_for(m);
    CHECK(operator_from_json(m, json::parse(to_json(op).dump())).terms == op.terms);
  }
}

TEST_CASE("coefficients are strings, never floats") {
  json j = to_json(large_q_series(7));
  for (const auto& t : j["terms"]) {
    CHECK(t["qpow"].is_string());
    for (const auto& c : t["poly"]) CHECK(c.is_string());
  }
  CHECK(to_json(operator_for(3))[0]["coeff"] == "31/15120");
}

TEST_CASE("malformed input") {
  CHECK_THROWS_AS(series_from_json(json::parse(R"({"var":"U","terms":[{"pow":1,"log":0,"coeff":0.5}],"trunc":null})")),
                  ParseError);
  CHECK_THROWS_AS(series_from_json(json::parse(R"({"var":"U","terms":[]})")), ParseError);
  CHECK_THROWS_AS(series_from_json(json::parse(R"({"var":"U","terms":[{"pow":1,"log":0,"coeff":"1/0"}],"trunc":null})")),
                  ParseError);
}

TEST_CASE("text formats") {
  std::string tex = to_latex(large_q_series(2));
  CHECK(tex.find("2q") != std::string::npos);
  CHECK(tex.find("- 4\\nu\\sqrt{q}") != std::string::npos);
  CHECK(tex.find("\\frac{4\\nu^{2} - 1}{2^{3}}") != std::string::npos);

  std::string csv = to_csv(operator_for(3));
  CHECK(csv.rfind("coeff,wpow,dpow\n31/15120,3,6\n", 0) == 0);

  std::string e1 = to_latex(small_q_series(4));
  CHECK(e1.find("\\frac{5\\nu^{2} + 7}{2^{5}(\\nu^2-1)^{3}(\\nu^2-4)} q^{4}") != std::string::npos);
}
