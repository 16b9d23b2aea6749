#include "mathieu/matcher.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "mathieu/linear_solve.hpp"

namespace mathieu {

long double LargeQSeries::evaluate(long double nu, long double q) const {
  long double sum = 0;
  for (const auto& [k, p] : terms) sum += p.eval(nu) * std::pow(q, k / 2.0L);
  return sum;
}

NuRationalSeries small_q_series(int order_q) {
  if (order_q < 2 || order_q > 16) throw std::invalid_argument("small_q_series: order_q must lie in [2, 16]");
  // c[j][k]: coefficient of q^j in c_k, with c_0 = 1 exactly.
  std::vector<std::map<int, RatFunc>> c(order_q + 1);
  std::vector<RatFunc> lam(order_q + 1);
  c[0][0] = RatFunc(Poly(Rational(1)));
  for (int j = 1; j <= order_q; ++j) {
    auto get = [&c](int jj, int k) {
      auto it = c[jj].find(k);
      return it == c[jj].end() ? RatFunc() : it->second;
    };
    lam[j] = get(j - 1, 1) + get(j - 1, -1);
    for (int k = -j; k <= j; ++k) {
      if (k == 0) continue;
      RatFunc rhs = get(j - 1, k + 1) + get(j - 1, k - 1);
      for (int i = 1; i < j; ++i) {
        if (!lam[i].is_zero()) rhs = rhs - lam[i] * get(j - i, k);
      }
      if (rhs.is_zero()) continue;
      // nu^2 - (nu + 2k)^2 = -4k (nu + k)
      c[j][k] = rhs.over_linear(k).scaled(Rational(-1, 4 * k));
    }
  }
  NuRationalSeries s;
  s.order_q = order_q;
  for (int j = 1; j <= order_q; ++j) {
    if (!lam[j].is_zero()) s.terms[j] = lam[j];
  }
  return s;
}

InverseSeries invert_small_q(const NuRationalSeries& s, int lambda_order) {
  if (s.order_q < 6) {
    throw InsufficientOrder("invert_small_q: need the q-series through q^6, got q^" + std::to_string(s.order_q));
  }
  if (lambda_order < 3 || lambda_order % 2 == 0) {
    throw std::invalid_argument("invert_small_q: lambda_order must be odd and at least 3");
  }
  const int jmax = s.order_q;
  const int pmax = lambda_order + 1;

  // nu = x (1 + eta), x = lambda^(1/2), X = 1/x; rows are powers of q, the
  // row variable is X.
  std::map<int, AsymptoticSeries> f;
  for (const auto& [j, r] : s.terms) f.emplace(j, r.large_nu(pmax - 2));

  EpsilonSeries eta(Var::NU_INV, jmax);
  for (int iter = 0; iter <= jmax / 2 + 1; ++iter) {
    EpsilonSeries g(Var::NU_INV, jmax);
    std::map<int, EpsilonSeries> inv_pow;
    for (const auto& [j, fj] : f) {
      for (const auto& [key, a] : fj.terms()) {
        int d = key.pow;
        if (d + 2 > pmax) continue;
        auto it = inv_pow.find(d);
        if (it == inv_pow.end()) {
          EpsilonSeries b(Var::NU_INV, jmax);
          if (eta.rows().empty()) {
            b.set_row(0, AsymptoticSeries::constant(Var::NU_INV, Rational(1), pmax));
          } else {
            b = eps_binomial(eta, Rational(-d));
          }
          it = inv_pow.emplace(d, std::move(b)).first;
        }
        g = eps_add(g, eps_shift(eps_shift_var(eps_scale(it->second, a), d + 2), j));
      }
    }
    g = eps_var_truncate(g, pmax);
    EpsilonSeries next = eps_binomial(eps_scale(g, Rational(-1)), Rational(1, 2));
    next = eps_sub(next, [&] {
      EpsilonSeries one(Var::NU_INV, jmax);
      one.set_row(0, AsymptoticSeries::constant(Var::NU_INV, Rational(1)));
      return one;
    }());
    next = eps_var_truncate(next, pmax);
    if (next == eta) break;
    eta = std::move(next);
  }

  InverseSeries out;
  out.order_q = jmax;
  out.lambda_order = lambda_order;
  for (const auto& [j, row] : eta.rows()) {
    if (j > jmax) continue;
    for (const auto& [key, c] : row.terms()) {
      if (key.pow - 1 > lambda_order) continue;
      out.terms[{key.pow - 1, j}] = c;
    }
  }
  return out;
}

EpsilonSeries InverseSeries::rows() const {
  const int top = lambda_order - 4;
  EpsilonSeries out(Var::U, top);
  for (int e = -1; e <= top; e += 2) {
    AsymptoticSeries row(Var::U, std::min(lambda_order, e + 2 * order_q + 3));
    if (e == -1) row.add(-1, Rational(1));
    for (const auto& [key, c] : terms) {
      auto [k, j] = key;
      if (k - 2 * j == e) row.add(k, c);
    }
    out.set_row(e, std::move(row));
  }
  return out;
}

MatchPlan match_plan(int m) {
  switch (m) {
    case 3: return {6, 21};
    case 4: return {8, 23};
    default: throw std::invalid_argument("match_plan: only m = 3 and m = 4 are matched");
  }
}

AsymptoticSeries normalized_alpha_base(int order) { return alpha_base_series(order).series; }

GeneratingOperator determine_operator(int m, const EpsilonSeries& target, const AsymptoticSeries& base) {
  if (m < 1 || m > 6) throw std::invalid_argument("determine_operator: m out of range");
  if (target.var() != Var::U || base.var() != Var::U) {
    throw VariableMismatch("determine_operator: target and base must be U series");
  }
  const int e = 2 * m - 1;
  if (e > target.trunc_eps()) throw InsufficientOrder("determine_operator: target lacks the eps^" + std::to_string(e) + " row");
  AsymptoticSeries row = target.row(e);

  std::vector<AsymptoticSeries> cols;
  int tmax = row.trunc();
  for (int j = 0; j <= m; ++j) {
    GeneratingOperator single{m, {{Rational(1), j, m + j}}};
    cols.push_back(apply_operator(single, base));
    tmax = std::min(tmax, cols.back().trunc());
  }

  RationalMatrix a;
  std::vector<Rational> b;
  for (int p = e; p <= tmax; ++p) {
    std::vector<Rational> eq;
    bool nontrivial = false;
    for (const auto& col : cols) {
      eq.push_back(col.coeff(p));
      nontrivial = nontrivial || !eq.back().is_zero();
    }
    Rational rhs = row.coeff(p);
    if (!nontrivial) {
      if (!rhs.is_zero()) throw InconsistentSystem("determine_operator: target has u^" + std::to_string(p) + " where no operator term reaches");
      continue;
    }
    a.push_back(std::move(eq));
    b.push_back(std::move(rhs));
  }
  if (static_cast<int>(a.size()) < m + 1) {
    throw InsufficientOrder("determine_operator: only " + std::to_string(a.size()) + " equations for " +
                            std::to_string(m + 1) + " unknowns");
  }
  RationalMatrix sq(a.begin(), a.begin() + m + 1);
  std::vector<Rational> sb(b.begin(), b.begin() + m + 1);
  std::vector<Rational> c;
  try {
    c = rational_linear_solve(sq, sb);
  } catch (const SingularMatrix&) {
    throw InconsistentSystem("determine_operator: singular matching system");
  }
  for (std::size_t i = m + 1; i < a.size(); ++i) {
    Rational lhs;
    for (int j = 0; j <= m; ++j) lhs += a[i][j] * c[j];
    if (lhs != b[i]) throw InconsistentSystem("determine_operator: extra coefficient disagrees with the solved operator");
  }
  for (int j = 0; j <= m; ++j) {
    if (c[j].is_zero()) {
      throw InconsistentSystem("determine_operator: solution drops the w^" + std::to_string(j) + " term");
    }
  }
  return make_operator(m, c);
}

LargeQSeries large_q_series(int order) {
  if (order < 0 || order > kLargeQOrder) throw std::invalid_argument("large_q_series: order must lie in [0, 7]");
  const int eps_order = std::max(1, order % 2 == 1 ? order : order + 1);
  EpsilonSeries nu = eps_scale(nu_series(Cycle::BETA, eps_order), Rational(kBetaOrientation));
  EpsilonSeries sigma = epsilon_reversion(nu, Var::SIGMA);

  LargeQSeries out;
  out.order = order;
  out.terms[2] = Poly(Rational(2));
  for (const auto& [n, row] : sigma.rows()) {
    int key = 2 - n;
    if (key < -order) continue;
    std::vector<Rational> coeffs;
    for (const auto& [k, c] : row.terms()) {
      int deg = -k.pow;
      if (static_cast<int>(coeffs.size()) <= deg) coeffs.resize(deg + 1);
      coeffs[deg] += Rational(2) * c;
    }
    Poly p = Poly::from_coeffs(std::move(coeffs));
    if (!p.is_zero()) out.terms[key] = out.terms.count(key) ? out.terms[key] + p : p;
  }
  if (sigma.trunc_eps() < order + 2) throw TruncationUnderflow("large_q_series: reversion did not reach the requested order");
  return out;
}

std::map<int, AsymptoticSeries> eigen_from_inverse(const EpsilonSeries& nu_rows) {
  EpsilonSeries w = epsilon_reversion(nu_rows, Var::U);
  std::map<int, AsymptoticSeries> out;
  for (const auto& [e, row] : w.rows()) out.emplace(2 - e, series_scale(row, Rational(2)));
  return out;
}

FloquetResult wkb_nu(Cycle cycle, double lambda, double q, int eps_order) {
  CurveParams cp(lambda, q);
  const long double w = cp.w().real();
  const long double eps = cp.eps();
  FloquetResult r;
  r.method = cycle == Cycle::ALPHA ? "wkb-alpha" : "wkb-beta";

  EpsilonSeries nu = nu_series(cycle, eps_order);
  long double x;
  if (cycle == Cycle::ALPHA) {
    if (w <= 0) throw std::domain_error("wkb-alpha: needs lambda/(2q) > 0");
    x = 1 / std::sqrt(2 * w);
    if (w < 2) r.warnings.push_back("wkb-alpha: w = " + std::to_string(static_cast<double>(w)) + " is not large");
  } else {
    nu = eps_scale(nu, Rational(kBetaOrientation));
    x = w - 1;
    if (std::abs(x) > 0.5L) {
      r.warnings.push_back("wkb-beta: w = " + std::to_string(static_cast<double>(w)) + " is far from 1");
    }
  }
  // first nonzero term: the leading beta row vanishes at w = 1
  long double first = 0, last = 0, sum = 0;
  for (const auto& [e, row] : nu.rows()) {
    long double term = std::pow(eps, static_cast<long double>(e)) * row.evaluate(x);
    if (first == 0) first = term;
    last = term;
    sum += term;
  }
  if (std::abs(last) > std::abs(first)) {
    std::ostringstream msg;
    msg.precision(6);
    msg << r.method << ": last kept term " << static_cast<double>(last) << " exceeds the first "
        << static_cast<double>(first);
    throw SeriesDiverges(msg.str());
  }
  r.nu = static_cast<double>(sum);
  r.est_error = static_cast<double>(std::abs(last));
  return r;
}

}  // namespace mathieu
