#include "mathieu/curve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

namespace mathieu {

const char* to_string(Cycle c) { return c == Cycle::ALPHA ? "ALPHA" : "BETA"; }

Prefactor Prefactor::operator*(const Prefactor& o) const {
  return {coeff * o.coeff, pi_power + o.pi_power, ((i_power + o.i_power) % 4 + 4) % 4};
}

Prefactor Prefactor::inverse() const {
  if (coeff.is_zero()) throw std::domain_error("Prefactor: inverse of zero");
  return {Rational(1) / coeff, -pi_power, ((-i_power) % 4 + 4) % 4};
}

std::complex<long double> Prefactor::value() const {
  static const std::complex<long double> units[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  long double mag = coeff.to_long_double() * std::pow(std::numbers::pi_v<long double>, pi_power);
  return mag * units[((i_power % 4) + 4) % 4];
}

long double DualSeries::evaluate(long double x) const {
  long double v = plain.evaluate(x) + std::numbers::ln2_v<long double> * ln2_part.evaluate(x);
  std::complex<long double> p = prefactor.value();
  return p.real() * v;
}

CurveParams::CurveParams(std::complex<double> l, double q_) : lambda(l), q(q_) {
  if (!(q > 0)) throw std::domain_error("CurveParams: q must be positive");
}

double CurveParams::eps() const { return 1.0 / std::sqrt(q); }

BranchPoints branch_points(const CurveParams& p) {
  const std::complex<double> plus = p.lambda + 2.0 * p.q;
  const std::complex<double> minus = p.lambda - 2.0 * p.q;
  const double scale = std::max(1.0, std::abs(p.lambda) + 2 * p.q);
  if (std::abs(plus) < 1e-14 * scale || std::abs(minus) < 1e-14 * scale) {
    throw DegenerateCurve("branch_points: lambda = +-2q gives a degenerate curve");
  }
  const std::complex<double> i(0, 1);
  BranchPoints b;
  b.x = {i * std::sqrt(plus), i * std::sqrt(minus), -i * std::sqrt(minus), -i * std::sqrt(plus)};
  return b;
}

namespace {


// sum_n coeffs(n) * x^n, x of positive valuation, stopping at the truncation.
template <class Coeff>
AsymptoticSeries power_sum(const AsymptoticSeries& x, Coeff coeffs) {
  AsymptoticSeries result(x.var(), x.trunc());
  AsymptoticSeries power = AsymptoticSeries::constant(x.var(), Rational(1));
  for (int n = 0;; ++n) {
    if (n > 0) power = series_mul(power, x);
    if (power.valuation() > result.trunc()) break;
    result = series_add(result, series_mul(power, coeffs(n)));
  }
  return result;
}

// -ln(1 - x) = sum x^k / k
AsymptoticSeries minus_log_one_minus(const AsymptoticSeries& x) {
  return power_sum(x, [&](int k) {
    return AsymptoticSeries::constant(x.var(), k == 0 ? Rational(0) : Rational(1, k));
  });
}

Rational harmonic(int n) {
  Rational h;
  for (int j = 1; j <= n; ++j) h += Rational(1, j);
  return h;
}

// 1 + 1/3 + ... + 1/(2k-1)
Rational odd_harmonic(int k) {
  Rational h;
  for (int j = 1; j <= k; ++j) h += Rational(1, 2 * j - 1);
  return h;
}

}  // namespace

PeriodSeries alpha_base_series(int order) {
  if (order < -1 || order > 4 * kDefaultBaseOrder) throw std::invalid_argument("alpha_base_series: order out of range");
  // u^-1 sqrt(1 + 2u^2) F(-1/2, 1/2, 1; z), z = 4u^2 / (1 + 2u^2); inner part through u^(order+1).
  const int t = order + 1;
  AsymptoticSeries two_u2(Var::U, t);
  two_u2.add(2, Rational(2));
  AsymptoticSeries inv = series_binomial(two_u2, Rational(-1));
  AsymptoticSeries z = series_mul(AsymptoticSeries::monomial(Var::U, 2, Rational(4)), inv);
  AsymptoticSeries f = power_sum(z, [](int n) {
    Rational c = pochhammer(Rational(-1, 2), n) * pochhammer(Rational(1, 2), n) / pochhammer(Rational(1), n).pow(2);
    return AsymptoticSeries::constant(Var::U, c);
  });
  AsymptoticSeries inner = series_mul(series_binomial(two_u2, Rational(1, 2)), f);
  return {Prefactor{Rational(1), 1, 0}, series_shift(inner, -1)};
}

PeriodSeries beta_base_series(int order) {
  if (order < 1 || order > 4 * kDefaultBaseOrder) throw std::invalid_argument("beta_base_series: order out of range");
  // (sigma / 2) F(1/2, 1/2, 2; -sigma/2)
  AsymptoticSeries x(Var::SIGMA, order - 1);
  x.add(1, Rational(-1, 2));
  AsymptoticSeries f = power_sum(x, [](int n) {
    Rational c = pochhammer(Rational(1, 2), n).pow(2) / (pochhammer(Rational(2), n) * pochhammer(Rational(1), n));
    return AsymptoticSeries::constant(Var::SIGMA, c);
  });
  return {Prefactor{Rational(1), 1, 1}, series_scale(series_shift(f, 1), Rational(1, 2))};
}

DualSeries dual_base_series(DualCycle which, int order) {
  if (order < 1 || order > 4 * kDefaultBaseOrder) throw std::invalid_argument("dual_base_series: order out of range");
  const Prefactor inv_pi{Rational(1), -1, 0};

  if (which == DualCycle::BETA_AT_INF) {
    // pi * value = u^-1 sqrt(1 - 2u^2) sum_n a_n X^n [L + 2 ln2 + ln(1 - 2u^2) + R_n],
    // X = -4u^2 / (1 - 2u^2), a_n = (1/2)_n (-1/2)_n / n!^2,
    // R_n = 2 H_n - 2 O(n) - 2 O(|n - 1|).
    const int t = order + 1;
    AsymptoticSeries two_u2(Var::U, t);
    two_u2.add(2, Rational(2));
    AsymptoticSeries m_two_u2 = series_scale(two_u2, Rational(-1));
    AsymptoticSeries x = series_mul(AsymptoticSeries::monomial(Var::U, 2, Rational(-4)),
                                    series_binomial(m_two_u2, Rational(-1)));
    AsymptoticSeries log_corr = series_scale(minus_log_one_minus(two_u2), Rational(-1));
    AsymptoticSeries lg = AsymptoticSeries::monomial(Var::U, 0, Rational(1), 1);
    auto a = [](int n) {
      return pochhammer(Rational(1, 2), n) * pochhammer(Rational(-1, 2), n) / pochhammer(Rational(1), n).pow(2);
    };
    AsymptoticSeries plain = power_sum(x, [&](int n) {
      Rational r = Rational(2) * harmonic(n) - Rational(2) * odd_harmonic(n) - Rational(2) * odd_harmonic(std::abs(n - 1));
      AsymptoticSeries br = series_add(series_add(lg, log_corr), AsymptoticSeries::constant(Var::U, r));
      return series_scale(br, a(n));
    });
    AsymptoticSeries ln2 = power_sum(x, [&](int n) { return AsymptoticSeries::constant(Var::U, Rational(2) * a(n)); });
    AsymptoticSeries root = series_binomial(m_two_u2, Rational(1, 2));
    return {inv_pi, series_shift(series_mul(root, plain), -1), series_shift(series_mul(root, ln2), -1)};
  }

  // pi * value = 2 sqrt(1 + s/2) [2 + ((z - 1)/2) sum_n b_n Y^n (ln sigma - 5 ln2 - ln(1 + s/2) + R_n)],
  // Y = 1 - z = (s/2)/(1 + s/2), b_n = (1/2)_n (3/2)_n / (n! (n+1)!),
  // R_n = -H_n - H_(n+1) + 2 O(n) + 2 O(n+1).
  const int t = order;
  AsymptoticSeries half_s(Var::SIGMA, t);
  half_s.add(1, Rational(1, 2));
  AsymptoticSeries y = series_mul(half_s, series_binomial(half_s, Rational(-1)));
  AsymptoticSeries log_corr = minus_log_one_minus(series_scale(half_s, Rational(-1)));
  AsymptoticSeries lg = AsymptoticSeries::monomial(Var::SIGMA, 0, Rational(1), 1);
  auto b = [](int n) {
    return pochhammer(Rational(1, 2), n) * pochhammer(Rational(3, 2), n) /
           (pochhammer(Rational(1), n) * pochhammer(Rational(1), n + 1));
  };
  AsymptoticSeries sum_plain = power_sum(y, [&](int n) {
    Rational r = -harmonic(n) - harmonic(n + 1) + Rational(2) * odd_harmonic(n) + Rational(2) * odd_harmonic(n + 1);
    AsymptoticSeries br = series_add(series_add(lg, log_corr), AsymptoticSeries::constant(Var::SIGMA, r));
    return series_scale(br, b(n));
  });
  AsymptoticSeries sum_ln2 = power_sum(y, [&](int n) { return AsymptoticSeries::constant(Var::SIGMA, Rational(-5) * b(n)); });
  AsymptoticSeries half_zm1 = series_scale(y, Rational(-1, 2));
  AsymptoticSeries root2 = series_scale(series_binomial(half_s, Rational(1, 2)), Rational(2));
  AsymptoticSeries plain = series_mul(root2, series_add(AsymptoticSeries::constant(Var::SIGMA, Rational(2)),
                                                        series_mul(half_zm1, sum_plain)));
  AsymptoticSeries ln2 = series_mul(root2, series_mul(half_zm1, sum_ln2));
  return {inv_pi, plain, ln2};
}

Rational GeneratingOperator::coefficient(int j) const {
  for (const auto& t : terms) {
    if (t.wpow == j) return t.coeff;
  }
  return Rational(0);
}

bool GeneratingOperator::has_complete_shape() const {
  for (const auto& t : terms) {
    if (t.wpow != t.dpow - m || t.wpow < 0 || t.wpow > m) return false;
  }
  return true;
}

GeneratingOperator make_operator(int m, const std::vector<Rational>& c) {
  if (static_cast<int>(c.size()) != m + 1) throw std::invalid_argument("make_operator: need m + 1 coefficients");
  GeneratingOperator op;
  op.m = m;
  for (int j = m; j >= 0; --j) {
    if (!c[j].is_zero()) op.terms.push_back({c[j], j, m + j});
  }
  return op;
}

const std::vector<GeneratingOperator>& operator_table() {
  static const std::vector<GeneratingOperator> table = [] {
    auto scaled = [](Rational f, std::vector<Rational> c) {
      for (auto& x : c) x *= f;
      return c;
    };
    std::vector<GeneratingOperator> t;
    t.push_back(make_operator(1, scaled(Rational(1, 12), {Rational(1), Rational(2)})));
    t.push_back(make_operator(2, scaled(Rational(1, 32), {Rational(5, 3), Rational(8, 3), Rational(28, 45)})));
    t.push_back(make_operator(
        3, scaled(Rational(1, 64), {Rational(41, 14), Rational(153, 35), Rational(158, 105), Rational(124, 945)})));
    t.push_back(make_operator(4, scaled(Rational(1, 16), {Rational(15229, 17280), Rational(9539, 7560),
                                                          Rational(517, 1008), Rational(13, 175),
                                                          Rational(127, 37800)})));
    return t;
  }();
  return table;
}

const GeneratingOperator& operator_for(int m) {
  if (m < 1 || m > 4) throw std::out_of_range("operator_for: only D_1 .. D_4 are tabulated");
  return operator_table()[m - 1];
}

AsymptoticSeries apply_operator(const GeneratingOperator& op, const AsymptoticSeries& s) {
  int kmax = 0;
  for (const auto& t : op.terms) kmax = std::max(kmax, t.dpow);
  if (s.var() == Var::SIGMA && s.trunc() < kmax) {
    throw TruncationUnderflow("apply_operator: series known through sigma^" + std::to_string(s.trunc()) +
                              " cannot take " + std::to_string(kmax) + " derivatives");
  }
  // Share derivatives across terms.
  std::vector<AsymptoticSeries> derivs{s};
  for (int k = 1; k <= kmax; ++k) derivs.push_back(series_diff_w(derivs.back()));

  std::optional<AsymptoticSeries> acc;
  for (const auto& t : op.terms) {
    AsymptoticSeries term = series_scale(series_mul_w_pow(derivs[t.dpow], t.wpow), t.coeff);
    acc = acc ? series_add(*acc, term) : term;
  }
  if (!acc) return AsymptoticSeries(s.var());
  return *acc;
}

EpsilonSeries nu_series(Cycle cycle, int eps_order, int var_order) {
  if (eps_order < -1 || eps_order > 7 || eps_order % 2 == 0) {
    throw std::invalid_argument("nu_series: eps_order must be odd and at most 7");
  }
  PeriodSeries base = cycle == Cycle::ALPHA ? alpha_base_series(var_order) : beta_base_series(var_order);
  // nu = (1/pi) or (1/(i pi)) times the period.
  Prefactor norm = cycle == Cycle::ALPHA ? Prefactor{Rational(1), -1, 0} : Prefactor{Rational(1), -1, 3};
  Prefactor total = norm * base.prefactor;
  if (total.pi_power != 0 || total.i_power != 0) throw std::logic_error("nu_series: normalization does not cancel");
  AsymptoticSeries p0 = series_scale(base.series, total.coeff);

  Var v = cycle == Cycle::ALPHA ? Var::U : Var::SIGMA;
  EpsilonSeries nu(v, eps_order + 1);
  nu.set_row(-1, p0);
  for (int m = 1; 2 * m - 1 <= eps_order; ++m) nu.set_row(2 * m - 1, apply_operator(operator_for(m), p0));
  return nu;
}

}  // namespace mathieu
