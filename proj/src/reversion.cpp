#include <algorithm>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "mathieu/series.hpp"

namespace mathieu {

namespace {

// Bivariate polynomial sum c * eps^r * x^k restricted to a down-closed set of
// exponents. Any product of known terms stays inside the set, so arithmetic
// never needs to track partial truncation.
using Known = std::function<bool(int, int)>;

struct Biv {
  std::map<std::pair<int, int>, Rational> c;

  void add(int r, int k, const Rational& v, const Known& known) {
    if (v.is_zero() || !known(r, k)) return;
    auto [it, inserted] = c.try_emplace({r, k}, v);
    if (!inserted) {
      it->second += v;
      if (it->second.is_zero()) c.erase(it);
    }
  }
  bool empty() const { return c.empty(); }
  friend bool operator==(const Biv&, const Biv&) = default;
};

Biv biv_mul(const Biv& a, const Biv& b, const Known& known) {
  Biv r;
  for (const auto& [ka, va] : a.c) {
    for (const auto& [kb, vb] : b.c) {
      r.add(ka.first + kb.first, ka.second + kb.second, va * vb, known);
    }
  }
  return r;
}

void biv_accumulate(Biv& into, const Biv& a, const Rational& s, int dr, int dk, const Known& known) {
  for (const auto& [k, v] : a.c) into.add(k.first + dr, k.second + dk, v * s, known);
}

void check_input_rows(const EpsilonSeries& f, Var base, const char* who) {
  if (f.var() != base) {
    throw VariableMismatch(std::string(who) + ": expected rows in " + to_string(base) + ", got " +
                           to_string(f.var()));
  }
  if (f.has_floor()) throw SeriesError(std::string(who) + ": input has unknown low rows");
  for (const auto& [e, s] : f.rows()) {
    if (e < 0) throw NonInvertible(std::string(who) + ": eps*nu has a negative power of eps");
    if (s.max_log() > 0) throw NonInvertible(std::string(who) + ": logarithmic terms cannot be reverted");
  }
}

// Truncation of row r of f (kExact for absent rows at or below trunc_eps).
int row_trunc(const EpsilonSeries& f, int r) {
  auto it = f.rows().find(r);
  return it == f.rows().end() ? kExact : it->second.trunc();
}

// F(sigma, eps) = eps*nu with F_0 = a1*sigma + ... ; solve F(G(y, eps), eps) = y
// in total degree of (eps, y), then set y = eps*nu.
EpsilonSeries revert_sigma(const EpsilonSeries& f, int max_order) {
  check_input_rows(f, Var::SIGMA, "epsilon_reversion");
  AsymptoticSeries f0 = f.row(0);
  if (f0.trunc() < 1 || f0.valuation() < 1) {
    throw NonInvertible("epsilon_reversion: eps*nu must vanish linearly at sigma = 0");
  }
  if (f0.coeff(1).is_zero()) {
    throw NonInvertible("epsilon_reversion: vanishing linear coefficient in sigma");
  }
  const Rational a1 = f0.coeff(1);

  int d = std::min(max_order, f.trunc_eps());
  for (int r = 0; r <= d; ++r) d = std::min(d, trunc_add(row_trunc(f, r), r));
  if (d < 1) throw TruncationUnderflow("epsilon_reversion: input too short to revert");
  const Known known = [d](int r, int k) { return r >= 0 && k >= 0 && r + k <= d; };

  Biv y;
  y.add(0, 1, Rational(1), known);
  Biv g;
  g.add(0, 1, Rational(1) / a1, known);
  const Rational inv_a1 = Rational(1) / a1;

  for (int iter = 0; iter <= d + 1; ++iter) {
    std::vector<Biv> powers{Biv{}};
    powers[0].add(0, 0, Rational(1), known);
    for (int k = 1; k <= d; ++k) powers.push_back(biv_mul(powers.back(), g, known));
    Biv fg;
    for (const auto& [r, row] : f.rows()) {
      if (r > d) continue;
      for (const auto& [key, c] : row.terms()) {
        if (key.pow + r > d) continue;
        biv_accumulate(fg, powers[key.pow], c, r, 0, known);
      }
    }
    Biv next = g;
    biv_accumulate(next, y, inv_a1, 0, 0, known);
    biv_accumulate(next, fg, -inv_a1, 0, 0, known);
    if (next == g) break;
    g = std::move(next);
  }

  EpsilonSeries out(Var::NU_INV, d);
  for (const auto& [key, c] : g.c) {
    out.add_to_row(key.first + key.second, AsymptoticSeries::monomial(Var::NU_INV, -key.second, c));
  }
  return out;
}

// F(u, eps) = eps*nu with F_0 = b0/u + ... . With t = b0/(eps*nu) the equation
// becomes u = t (1 + Psi(u, eps)); solve for V = u/t, then w = t^-2 V^-2 / 2.
EpsilonSeries revert_u(const EpsilonSeries& f, int max_order) {
  check_input_rows(f, Var::U, "epsilon_reversion");
  AsymptoticSeries f0 = f.row(0);
  if (f0.empty() || f0.valuation() != -1) {
    throw NonInvertible("epsilon_reversion: eps*nu must start with a 1/u term");
  }
  const Rational b0 = f0.coeff(-1);

  const int rmax = std::min(max_order, f.trunc_eps());
  std::map<int, AsymptoticSeries> psi;
  for (int r = 0; r <= rmax; ++r) {
    AsymptoticSeries p = series_scale(series_shift(f.row(r), 1), Rational(1) / b0);
    if (r == 0) p = series_sub(p, AsymptoticSeries::constant(Var::U, Rational(1)));
    if (!p.empty() && p.valuation() < (r == 0 ? 1 : 0)) {
      throw NonInvertible("epsilon_reversion: row " + std::to_string(r) +
                          " of eps*nu is too singular at u = 0");
    }
    psi.emplace(r, std::move(p));
  }

  // Staircase of known (r, k): row r of V is known through t^K[r].
  std::vector<int> kcap(rmax + 1);
  int running = max_order;
  for (int r = 0; r <= rmax; ++r) {
    running = std::min(running, psi.at(r).trunc());
    kcap[r] = running;
  }
  const Known known = [&kcap, rmax](int r, int k) {
    return r >= 0 && k >= 0 && r <= rmax && k <= kcap[r];
  };

  Biv one;
  one.add(0, 0, Rational(1), known);
  Biv v = one;
  for (int iter = 0; iter <= rmax + kcap[0] + 2; ++iter) {
    std::vector<Biv> powers{one};
    for (int k = 1; k <= kcap[0]; ++k) powers.push_back(biv_mul(powers.back(), v, known));
    Biv next = one;
    for (const auto& [r, row] : psi) {
      for (const auto& [key, c] : row.terms()) {
        if (key.pow > kcap[0]) continue;
        biv_accumulate(next, powers[key.pow], c, r, key.pow, known);
      }
    }
    if (next == v) break;
    v = std::move(next);
  }

  // W = V^-2 by the binomial series in X = V - 1 (nilpotent on the staircase).
  Biv x = v;
  biv_accumulate(x, one, Rational(-1), 0, 0, known);
  Biv w = one;
  Biv power = one;
  for (int n = 1; !x.empty(); ++n) {
    power = biv_mul(power, x, known);
    if (power.empty()) break;
    biv_accumulate(w, power, binomial(Rational(-2), n), 0, 0, known);
  }

  // eps^r t^k -> b0^k eps^(r-k) nu^-k, times t^-2 / 2.
  const int top = rmax + 2;
  const int floor = 2 - kcap[0];
  EpsilonSeries out(Var::NU_INV, top);
  out.set_floor_eps(floor);
  for (int e = floor; e <= top; ++e) {
    int r = std::max(0, e - 2);
    int last = -1;
    while (known(r, r + 2 - e)) last = r++;
    AsymptoticSeries row(Var::NU_INV, last - e);
    for (int rr = std::max(0, e - 2); rr <= last; ++rr) {
      int k = rr + 2 - e;
      auto it = w.c.find({rr, k});
      if (it == w.c.end()) continue;
      row.add(k - 2, 0, it->second * b0.pow(k - 2) / Rational(2));
    }
    out.set_row(e, std::move(row));
  }
  return out;
}

}  // namespace

EpsilonSeries epsilon_reversion(const EpsilonSeries& nu, Var base, int max_order) {
  if (max_order < 1) throw std::invalid_argument("epsilon_reversion: max_order must be positive");
  EpsilonSeries f = eps_shift(nu, 1);
  switch (base) {
    case Var::SIGMA: return revert_sigma(f, max_order);
    case Var::U: return revert_u(f, max_order);
    default: break;
  }
  throw VariableMismatch("epsilon_reversion: base must be U or SIGMA");
}

EpsilonSeries substitute_sigma(const EpsilonSeries& f, const EpsilonSeries& sigma) {
  if (f.var() != Var::SIGMA) throw VariableMismatch("substitute_sigma: f must have SIGMA rows");
  if (sigma.var() != Var::NU_INV) throw VariableMismatch("substitute_sigma: sigma must have NU_INV rows");
  if (sigma.valuation() < 1) throw NonInvertible("substitute_sigma: sigma must vanish at eps = 0");
  for (const auto& [e, s] : f.rows()) {
    if (s.max_log() > 0) throw NonInvertible("substitute_sigma: logarithmic terms in f");
    if (!s.empty() && s.valuation() < 0) throw NonInvertible("substitute_sigma: f is singular at sigma = 0");
  }

  int t = f.trunc_eps();
  for (const auto& [e, s] : f.rows()) t = std::min(t, trunc_add(s.trunc(), e));
  t = std::min(t, trunc_add(sigma.trunc_eps(), f.valuation()));
  if (t == kExact) throw SeriesError("substitute_sigma: result would be an infinite series");

  EpsilonSeries out(Var::NU_INV, t);
  EpsilonSeries power(Var::NU_INV, t);
  power.set_row(0, AsymptoticSeries::constant(Var::NU_INV, Rational(1)));
  for (int k = 0; k <= t; ++k) {
    if (k > 0) power = eps_mul(power, sigma);
    for (const auto& [e, s] : f.rows()) {
      if (e + k > t || k > s.trunc()) continue;
      Rational c = s.coeff(k);
      if (c.is_zero()) continue;
      out = eps_add(out, eps_shift(eps_scale(power, c), e));
    }
  }
  out.set_trunc_eps(t);
  return out;
}

}  // namespace mathieu
