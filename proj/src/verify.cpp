#include "mathieu/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <sstream>

#include "mathieu/curve.hpp"
#include "mathieu/matcher.hpp"
#include "mathieu/oracle.hpp"
#include "mathieu/reference.hpp"
#include "mathieu/wkb.hpp"

namespace mathieu {

namespace {

using Check = std::function<CheckRecord()>;

CheckRecord exact(std::string id, int mismatches, std::string detail) {
  return {std::move(id), "", mismatches == 0, static_cast<double>(mismatches), 0.0, std::move(detail)};
}

CheckRecord bounded(std::string id, double value, double tol, std::string detail) {
  return {std::move(id), "", std::isfinite(value) && value < tol, value, tol, std::move(detail)};
}

std::string sci(double v) {
  std::ostringstream os;
  os.precision(15);
  os << v;
  return os.str();
}

std::vector<Check> claims_checks() {
  std::vector<Check> c;

  c.push_back([] {
    NuRationalSeries s = small_q_series(kSmallQOrder);
    int bad = 0;
    std::string detail;
    for (const auto& [j, r] : reference::eigen_small_q()) {
      auto it = s.terms.find(j);
      if (it == s.terms.end() || !(it->second == r)) {
        ++bad;
        detail += "q^" + std::to_string(j) + " differs; ";
      }
    }
    if (s.terms.size() != reference::eigen_small_q().size()) ++bad;
    return exact("claims.01.eigen1", bad, detail.empty() ? "q^2..q^8 coefficients identical" : detail);
  });

  c.push_back([] {
    InverseSeries inv = invert_small_q(small_q_series(6), kLambdaOrder);
    int bad = 0;
    for (const auto& t : reference::inverse_block()) {
      auto it = inv.terms.find({t.lambda_half, t.q_pow});
      if (it == inv.terms.end() || !(it->second == t.coeff)) ++bad;
    }
    bad += static_cast<int>(inv.terms.size()) - static_cast<int>(reference::inverse_block().size());
    return exact("claims.02.inverse", std::abs(bad),
                 std::to_string(inv.terms.size()) + " terms through lambda^-21/2");
  });

  c.push_back([] {
    EpsilonSeries alpha = nu_series(Cycle::ALPHA, 3);
    const EpsilonSeries& ref = reference::inverse_rows();
    int bad = 0;
    std::string detail;
    for (int e : {-1, 1, 3}) {
      AsymptoticSeries want = ref.rows().at(e);
      AsymptoticSeries got = alpha.row(e).truncated(want.trunc());
      if (!(got == want)) {
        ++bad;
        detail += "eps^" + std::to_string(e) + " differs; ";
      }
    }
    return exact("claims.03.alpha_match", bad, detail.empty() ? "rows eps^-1, eps^1, eps^3 identical" : detail);
  });

  for (int m : {3, 4}) {
    c.push_back([m] {
      MatchPlan plan = match_plan(m);
      EpsilonSeries target = invert_small_q(small_q_series(plan.order_q), plan.lambda_order).rows();
      GeneratingOperator op = determine_operator(m, target, normalized_alpha_base());
      bool same = op.terms == operator_for(m).terms;
      return exact("claims.04.operator_m" + std::to_string(m), same ? 0 : 1,
                   "determined from q^" + std::to_string(plan.order_q) + ", lambda order " +
                       std::to_string(plan.lambda_order));
    });
  }

  c.push_back([] {
    LargeQSeries s = large_q_series(kLargeQOrder);
    int bad = 0;
    for (const auto& [k, p] : reference::eigen_large_q()) {
      auto it = s.terms.find(k);
      if (it == s.terms.end() || !(it->second == p)) ++bad;
    }
    if (s.terms.size() != reference::eigen_large_q().size()) ++bad;
    return exact("claims.05.eigen2", bad, std::to_string(s.terms.size()) + " terms q^1 .. q^-7/2");
  });

  for (Cycle cyc : {Cycle::ALPHA, Cycle::BETA}) {
    c.push_back([cyc] {
      ContourSpec spec = cyc == Cycle::ALPHA ? ContourSpec::alpha(3.0L) : ContourSpec::beta(0.5L);
      long double p0 = std::abs(contour_integral_pm(0, spec));
      long double worst = 0;
      std::string detail;
      for (int m : {1, 3}) {
        long double v = std::abs(contour_integral_pm(m, spec)) / p0;
        worst = std::max(worst, v);
        detail += "|p" + std::to_string(m) + "|/|p0| = " + sci(static_cast<double>(v)) + "; ";
      }
      return bounded(std::string("claims.07.odd_vanishing.") + (cyc == Cycle::ALPHA ? "alpha" : "beta"),
                     static_cast<double>(worst), 1e-8, detail);
    });
  }

  c.push_back([] {
    int bad = 0;
    for (int m = 1; m <= 8; ++m) {
      WkbDensity sum;
      for (int k = 0; k <= m; ++k) sum = sum + wkb_density(k) * wkb_density(m - k);
      if (!(sum - wkb_density(m - 1).dz().scaled(GaussianRational::i())).is_zero()) ++bad;
    }
    return exact("claims.11.wkb_residual", bad, "p_0 .. p_8");
  });

  c.push_back([] {
    int bad = 0;
    for (int m = 0; m <= 8; ++m) {
      const WkbDensity& d = wkb_density(m);
      if (!(d.reflected() == (m % 2 == 0 ? d : d.scaled(GaussianRational(Rational(-1)))))) ++bad;
      for (const auto& [k, v] : d.terms()) {
        if (m % 2 == 0 ? !v.im.is_zero() : !v.re.is_zero()) ++bad;
      }
    }
    return exact("claims.11.wkb_parity", bad, "even p_m real and even in z, odd p_m imaginary and odd");
  });

  c.push_back([] {
    EpsilonSeries rows = invert_small_q(small_q_series(6)).rows();
    auto lam = eigen_from_inverse(rows);
    NuRationalSeries s = small_q_series(6);
    int bad = lam.at(0).coeff(-2) == Rational(1) ? 0 : 1;
    for (int j : {2, 4, 6}) {
      const AsymptoticSeries& got = lam.at(2 * j);
      if (!(got == s.terms.at(j).large_nu(got.trunc()))) ++bad;
    }
    return exact("claims.11.round_trip.small_q", bad, "lambda(nu) -> nu(lambda) -> lambda(nu)");
  });

  c.push_back([] {
    // one sigma order less per eps^2 keeps the reversion small
    EpsilonSeries full = nu_series(Cycle::BETA, 5);
    EpsilonSeries nu(Var::SIGMA, full.trunc_eps());
    for (const auto& [e, row] : full.rows()) nu.set_row(e, row.truncated(std::min(row.trunc(), 8 - (e + 1) / 2)));
    auto sigma = epsilon_reversion(nu, Var::SIGMA);
    auto back = substitute_sigma(eps_shift(nu, 1), sigma);
    int bad = 0;
    for (int e = 0; e <= back.trunc_eps(); ++e) {
      AsymptoticSeries row = back.row(e);
      bool ok = e == 1 ? row == AsymptoticSeries::monomial(Var::NU_INV, -1, Rational(1)) : row.is_exact_zero();
      if (!ok) ++bad;
    }
    return exact("claims.11.round_trip.beta", bad,
                 "nu(sigma) -> sigma(nu) -> nu through eps^" + std::to_string(back.trunc_eps()));
  });

  return c;
}

std::vector<Check> operator_checks(double tol) {
  std::vector<Check> c;
  for (Cycle cyc : {Cycle::ALPHA, Cycle::BETA}) {
    for (int m = 1; m <= 4; ++m) {
      c.push_back([cyc, m, tol] {
        bool alpha = cyc == Cycle::ALPHA;
        ContourSpec spec = alpha ? ContourSpec::alpha(3.0L) : ContourSpec::beta(0.5L);
        auto quad = contour_integral_pm(2 * m, spec);
        auto op = operator_on_period(operator_for(m), spec, alpha ? 1.0L : 0.25L);
        double rel = static_cast<double>(std::abs(quad - op) / std::abs(quad));
        std::ostringstream d;
        d.precision(15);
        d << "quadrature " << quad.real() << (quad.imag() < 0 ? "-" : "+") << std::abs(quad.imag()) << "i at w = "
          << (alpha ? 3 : 0.5);
        return bounded(std::string("operators.") + (alpha ? "alpha" : "beta") + ".m" + std::to_string(m), rel,
                       m <= 2 ? tol : 10 * tol, d.str());
      });
    }
  }
  return c;
}

double eigen1_lambda(double nu, double q) {
  NuRationalSeries s = small_q_series(kSmallQOrder);
  long double lam = static_cast<long double>(nu) * nu;
  for (const auto& [j, r] : s.terms) lam += r.eval(static_cast<long double>(nu)) * std::pow(static_cast<long double>(q), j);
  return static_cast<double>(lam);
}

std::vector<Check> crosscheck_checks(double tol) {
  std::vector<Check> c;
  const std::vector<std::pair<double, double>> points{{0.5, 1}, {2.3, 2}, {5, 1}};
  for (std::size_t k = 0; k < points.size(); ++k) {
    c.push_back([k, p = points[k], tol] {
      auto [nu, q] = p;
      HillValue h = hill_char_value(nu, q);
      FloquetResult r = monodromy_nu({h.lambda, q, tol});
      return bounded("crosscheck.08.hill_monodromy." + std::to_string(k + 1), std::abs(r.nu - nu), 1e-8,
                     "nu = " + sci(nu) + ", q = " + sci(q) + ", lambda = " + sci(h.lambda) + ", monodromy nu = " +
                         sci(r.nu));
    });
  }

  c.push_back([tol] {
    double lam = eigen1_lambda(20, 30);
    FloquetResult r = monodromy_nu({lam, 30, tol});
    return bounded("crosscheck.09.eigen1_regime", std::abs(r.nu - 20), 1e-6,
                   "lambda = " + sci(lam) + ", monodromy nu = " + sci(r.nu));
  });

  c.push_back([tol] {
    double lam = static_cast<double>(large_q_series(kLargeQOrder).evaluate(0.5L, 50.0L));
    HillValue h = hill_char_value(0.5, 50);
    FloquetResult r = monodromy_nu({lam, 50, tol});
    std::string detail = "eigen2 lambda = " + sci(lam) + ", hill lambda = " + sci(h.lambda) +
                         ", monodromy at eigen2 lambda: nu = " + sci(r.nu) +
                         (r.stable ? "" : " + " + sci(r.nu_imag) + "i");
    return bounded("crosscheck.10.eigen2_regime", std::abs(lam - h.lambda), 1e-3, detail);
  });
  return c;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"claims", "operators", "crosscheck"};
  return names;
}

std::vector<CheckRecord> run_suite(const std::string& suite, double tol) {
  if (!(tol > 0)) throw std::invalid_argument("tolerance must be positive");
  std::vector<Check> checks;
  if (suite == "claims") {
    checks = claims_checks();
  } else if (suite == "operators") {
    checks = operator_checks(tol);
  } else if (suite == "crosscheck") {
    checks = crosscheck_checks(tol);
  } else {
    throw UnknownSuite("unknown suite: " + suite);
  }

  std::vector<std::future<CheckRecord>> pending;
  for (auto& check : checks) pending.push_back(std::async(std::launch::async, check));

  std::vector<CheckRecord> out;
  for (std::size_t k = 0; k < pending.size(); ++k) {
    auto& f = pending[k];
    CheckRecord r;
    try {
      r = f.get();
    } catch (const std::exception& e) {
      r.passed = false;
      r.value = std::nan("");
      r.id = suite + ".check" + std::to_string(k);
      r.detail = std::string("exception: ") + e.what();
    }
    r.suite = suite;
    out.push_back(std::move(r));
  }
  std::sort(out.begin(), out.end(), [](const CheckRecord& a, const CheckRecord& b) { return a.id < b.id; });
  return out;
}

bool all_passed(const std::vector<CheckRecord>& records) {
  return std::all_of(records.begin(), records.end(), [](const CheckRecord& r) { return r.passed; });
}

nlohmann::json to_json(const CheckRecord& r) {
  nlohmann::json j = {{"id", r.id}, {"suite", r.suite}, {"passed", r.passed}, {"tol", r.tol}, {"detail", r.detail}};
  j["value"] = std::isfinite(r.value) ? nlohmann::json(r.value) : nlohmann::json(nullptr);
  return j;
}

}  // namespace mathieu
