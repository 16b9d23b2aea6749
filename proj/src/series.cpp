#include "mathieu/series.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mathieu {

std::string to_string(Var v) {
  switch (v) {
    case Var::U: return "U";
    case Var::SIGMA: return "SIGMA";
    case Var::NU_INV: return "NU_INV";
    case Var::AUX: return "AUX";
  }
  return "?";
}

Var var_from_string(const std::string& s) {
  if (s == "U") return Var::U;
  if (s == "SIGMA") return Var::SIGMA;
  if (s == "NU_INV") return Var::NU_INV;
  if (s == "AUX") return Var::AUX;
  throw std::invalid_argument("unknown series variable '" + s + "'");
}

namespace {

void require_same_var(Var a, Var b, const char* op) {
  if (a != b) {
    throw VariableMismatch(std::string(op) + ": variable mismatch (" + to_string(a) + " vs " +
                           to_string(b) + ")");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// AsymptoticSeries

AsymptoticSeries AsymptoticSeries::monomial(Var v, int pow, Rational c, int log, int trunc) {
  AsymptoticSeries s(v, trunc);
  s.add(pow, log, c);
  return s;
}

Rational AsymptoticSeries::coeff(int pow, int log) const {
  if (pow > trunc_) {
    throw TruncationUnderflow("coefficient of power " + std::to_string(pow) +
                              " lies beyond truncation order " + std::to_string(trunc_));
  }
  auto it = terms_.find({pow, log});
  return it == terms_.end() ? Rational(0) : it->second;
}

void AsymptoticSeries::add(int pow, int log, const Rational& c) {
  if (pow > trunc_ || c.is_zero()) return;
  if (log < 0) throw std::invalid_argument("AsymptoticSeries: negative log power");
  auto [it, inserted] = terms_.try_emplace(Key{pow, log}, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

int AsymptoticSeries::valuation() const {
  if (terms_.empty()) return trunc_add(trunc_, 1);
  return terms_.begin()->first.pow;
}

int AsymptoticSeries::max_pow() const {
  if (terms_.empty()) throw std::logic_error("max_pow of empty series");
  int m = terms_.begin()->first.pow;
  for (const auto& [k, c] : terms_) m = std::max(m, k.pow);
  return m;
}

int AsymptoticSeries::max_log() const {
  int m = 0;
  for (const auto& [k, c] : terms_) m = std::max(m, k.log);
  return m;
}

AsymptoticSeries AsymptoticSeries::truncated(int t) const {
  AsymptoticSeries r(var_, std::min(t, trunc_));
  for (const auto& [k, c] : terms_) {
    if (k.pow <= r.trunc_) r.terms_.emplace(k, c);
  }
  return r;
}

void AsymptoticSeries::set_trunc(int t) {
  trunc_ = std::min(trunc_, t);
  for (auto it = terms_.begin(); it != terms_.end();) {
    it = it->first.pow > trunc_ ? terms_.erase(it) : std::next(it);
  }
}

long double AsymptoticSeries::evaluate(long double x) const {
  long double lg = 0;
  if (max_log() > 0) {
    if (var_ == Var::U) {
      lg = -2.0L * std::log(x);
    } else if (var_ == Var::SIGMA) {
      lg = std::log(x);
    } else {
      throw std::logic_error("evaluate: log terms in variable " + to_string(var_));
    }
  }
  long double sum = 0;
  for (const auto& [k, c] : terms_) {
    sum += c.to_long_double() * std::pow(x, static_cast<long double>(k.pow)) *
           std::pow(lg, static_cast<long double>(k.log));
  }
  return sum;
}

std::string AsymptoticSeries::str() const {
  std::ostringstream os;
  const char* sym = var_ == Var::U ? "u" : var_ == Var::SIGMA ? "s" : var_ == Var::NU_INV ? "r" : "t";
  const char* lg = var_ == Var::U ? "L" : "ls";
  bool first = true;
  for (const auto& [k, c] : terms_) {
    os << (first ? "" : " + ") << "(" << c.str() << ")";
    if (k.pow != 0) os << "*" << sym << "^" << k.pow;
    if (k.log != 0) os << "*" << lg << (k.log > 1 ? "^" + std::to_string(k.log) : "");
    first = false;
  }
  if (first) os << "0";
  if (!exact()) os << " + O(" << sym << "^" << trunc_ + 1 << ")";
  return os.str();
}

AsymptoticSeries series_add(const AsymptoticSeries& a, const AsymptoticSeries& b) {
  require_same_var(a.var(), b.var(), "series_add");
  AsymptoticSeries r(a.var(), std::min(a.trunc(), b.trunc()));
  for (const auto& [k, c] : a.terms()) r.add(k.pow, k.log, c);
  for (const auto& [k, c] : b.terms()) r.add(k.pow, k.log, c);
  return r;
}

AsymptoticSeries series_sub(const AsymptoticSeries& a, const AsymptoticSeries& b) {
  return series_add(a, series_scale(b, Rational(-1)));
}

AsymptoticSeries series_scale(const AsymptoticSeries& a, const Rational& c) {
  AsymptoticSeries r(a.var(), a.trunc());
  if (c.is_zero()) return r;
  for (const auto& [k, v] : a.terms()) r.add(k.pow, k.log, v * c);
  return r;
}

AsymptoticSeries series_mul(const AsymptoticSeries& a, const AsymptoticSeries& b, int log_cap) {
  require_same_var(a.var(), b.var(), "series_mul");
  if (a.is_exact_zero() || b.is_exact_zero()) return AsymptoticSeries(a.var());
  int t = std::min(trunc_add(a.trunc(), b.valuation()), trunc_add(b.trunc(), a.valuation()));
  AsymptoticSeries r(a.var(), t);
  for (const auto& [ka, ca] : a.terms()) {
    for (const auto& [kb, cb] : b.terms()) {
      int p = ka.pow + kb.pow;
      if (p > t) continue;
      int l = ka.log + kb.log;
      if (l > log_cap) {
        throw LogCapOverflow("series_mul: log power " + std::to_string(l) + " exceeds cap " +
                             std::to_string(log_cap));
      }
      r.add(p, l, ca * cb);
    }
  }
  return r;
}

AsymptoticSeries series_shift(const AsymptoticSeries& a, int k) {
  AsymptoticSeries r(a.var(), trunc_add(a.trunc(), k));
  for (const auto& [key, c] : a.terms()) r.add(key.pow + k, key.log, c);
  return r;
}

AsymptoticSeries series_diff_w(const AsymptoticSeries& a) {
  if (a.var() == Var::SIGMA) {
    // d/dsigma (s^p ln^l s) = p s^(p-1) ln^l s + l s^(p-1) ln^(l-1) s
    AsymptoticSeries r(Var::SIGMA, trunc_add(a.trunc(), -1));
    for (const auto& [k, c] : a.terms()) {
      r.add(k.pow - 1, k.log, c * Rational(k.pow));
      if (k.log > 0) r.add(k.pow - 1, k.log - 1, c * Rational(k.log));
    }
    return r;
  }
  if (a.var() == Var::U) {
    // du/dw = -u^3 and d ln(2w)/dw = 2u^2
    AsymptoticSeries r(Var::U, trunc_add(a.trunc(), 2));
    for (const auto& [k, c] : a.terms()) {
      r.add(k.pow + 2, k.log, c * Rational(-k.pow));
      if (k.log > 0) r.add(k.pow + 2, k.log - 1, c * Rational(2 * k.log));
    }
    return r;
  }
  throw VariableMismatch("series_diff_w: variable " + to_string(a.var()) + " has no w-derivative");
}

AsymptoticSeries series_mul_w_pow(const AsymptoticSeries& a, int j) {
  if (j == 0) return a;
  if (a.var() == Var::U) {
    // w = u^(-2) / 2
    return series_scale(series_shift(a, -2 * j), Rational(2).pow(-j));
  }
  if (a.var() == Var::SIGMA) {
    if (j < 0) throw std::invalid_argument("series_mul_w_pow: negative power of w in SIGMA");
    AsymptoticSeries poly(Var::SIGMA);
    for (int k = 0; k <= j; ++k) poly.add(k, binomial(Rational(j), k));
    return series_mul(a, poly);
  }
  throw VariableMismatch("series_mul_w_pow: variable " + to_string(a.var()) + " has no w");
}

AsymptoticSeries series_compose(const std::vector<Rational>& coeffs, const AsymptoticSeries& x) {
  if (x.max_log() > 0) throw std::invalid_argument("series_compose: log terms in argument");
  if (!x.empty() && x.valuation() < 1) {
    throw std::invalid_argument("series_compose: argument must have positive valuation");
  }
  AsymptoticSeries result(x.var(), coeffs.size() > 1 ? x.trunc() : kExact);
  AsymptoticSeries power = AsymptoticSeries::constant(x.var(), Rational(1));
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (k > 0) power = series_mul(power, x);
    if (power.valuation() > result.trunc()) break;
    result = series_add(result, series_scale(power, coeffs[k]));
  }
  return result;
}

AsymptoticSeries series_binomial(const AsymptoticSeries& x, const Rational& alpha) {
  if (x.max_log() > 0) throw std::invalid_argument("series_binomial: log terms in argument");
  if (!x.empty() && x.valuation() < 1) {
    throw std::invalid_argument("series_binomial: argument must have positive valuation");
  }
  AsymptoticSeries result = AsymptoticSeries::constant(x.var(), Rational(1));
  if (x.is_exact_zero()) return result;
  const bool terminating = alpha.is_integer() && alpha.sign() >= 0;
  if (x.exact() && !terminating) {
    throw SeriesError("series_binomial: exact argument gives a non-terminating series");
  }
  result.set_trunc(x.trunc());
  AsymptoticSeries power = AsymptoticSeries::constant(x.var(), Rational(1));
  for (int n = 1;; ++n) {
    Rational c = binomial(alpha, n);
    if (terminating && c.is_zero()) break;
    power = series_mul(power, x);
    if (power.valuation() > result.trunc()) break;
    result = series_add(result, series_scale(power, c));
  }
  return result;
}

// ---------------------------------------------------------------------------
// EpsilonSeries

void EpsilonSeries::set_floor_eps(int f) {
  floor_eps_ = std::max(floor_eps_, f);
  rows_.erase(rows_.begin(), rows_.lower_bound(floor_eps_));
}

AsymptoticSeries EpsilonSeries::row(int e) const {
  if (e < floor_eps_) {
    throw TruncationUnderflow("epsilon row " + std::to_string(e) + " lies below the known floor " +
                              std::to_string(floor_eps_));
  }
  if (e > trunc_eps_) {
    throw TruncationUnderflow("epsilon row " + std::to_string(e) + " lies beyond truncation " +
                              std::to_string(trunc_eps_));
  }
  auto it = rows_.find(e);
  return it == rows_.end() ? AsymptoticSeries(var_) : it->second;
}

void EpsilonSeries::set_row(int e, AsymptoticSeries s) {
  require_same_var(var_, s.var(), "EpsilonSeries::set_row");
  if (e > trunc_eps_ || e < floor_eps_) return;
  if (s.is_exact_zero()) {
    rows_.erase(e);
  } else {
    rows_[e] = std::move(s);
  }
}

void EpsilonSeries::add_to_row(int e, const AsymptoticSeries& s) {
  if (e > trunc_eps_ || e < floor_eps_) return;
  auto it = rows_.find(e);
  if (it == rows_.end()) {
    set_row(e, s);
  } else {
    set_row(e, series_add(it->second, s));
  }
}

void EpsilonSeries::set_trunc_eps(int t) {
  trunc_eps_ = std::min(trunc_eps_, t);
  for (auto it = rows_.begin(); it != rows_.end();) {
    it = it->first > trunc_eps_ ? rows_.erase(it) : std::next(it);
  }
}

int EpsilonSeries::valuation() const {
  for (const auto& [e, s] : rows_) {
    if (!s.is_exact_zero()) return e;
  }
  return trunc_add(trunc_eps_, 1);
}

long double EpsilonSeries::evaluate(long double eps, long double x) const {
  long double sum = 0;
  for (const auto& [e, s] : rows_) sum += std::pow(eps, static_cast<long double>(e)) * s.evaluate(x);
  return sum;
}

std::string EpsilonSeries::str() const {
  std::ostringstream os;
  for (const auto& [e, s] : rows_) os << "eps^" << e << ": " << s.str() << "\n";
  if (trunc_eps_ != kExact) os << "+ O(eps^" << trunc_eps_ + 1 << ")\n";
  if (has_floor()) os << "rows below eps^" << floor_eps_ << " unknown\n";
  return os.str();
}

EpsilonSeries eps_add(const EpsilonSeries& a, const EpsilonSeries& b) {
  require_same_var(a.var(), b.var(), "eps_add");
  EpsilonSeries r(a.var(), std::min(a.trunc_eps(), b.trunc_eps()));
  r.set_floor_eps(std::max(a.floor_eps(), b.floor_eps()));
  for (const auto& [e, s] : a.rows()) r.add_to_row(e, s);
  for (const auto& [e, s] : b.rows()) r.add_to_row(e, s);
  return r;
}

EpsilonSeries eps_scale(const EpsilonSeries& a, const Rational& c) {
  EpsilonSeries r(a.var(), a.trunc_eps());
  r.set_floor_eps(a.floor_eps());
  for (const auto& [e, s] : a.rows()) r.set_row(e, series_scale(s, c));
  return r;
}

EpsilonSeries eps_sub(const EpsilonSeries& a, const EpsilonSeries& b) {
  return eps_add(a, eps_scale(b, Rational(-1)));
}

EpsilonSeries eps_mul(const EpsilonSeries& a, const EpsilonSeries& b) {
  require_same_var(a.var(), b.var(), "eps_mul");
  if (a.has_floor() || b.has_floor()) throw SeriesError("eps_mul: operand has unknown low rows");
  int t = std::min(trunc_add(a.trunc_eps(), b.valuation()), trunc_add(b.trunc_eps(), a.valuation()));
  EpsilonSeries r(a.var(), t);
  for (const auto& [ea, sa] : a.rows()) {
    for (const auto& [eb, sb] : b.rows()) {
      if (ea + eb > t) continue;
      r.add_to_row(ea + eb, series_mul(sa, sb));
    }
  }
  return r;
}

EpsilonSeries eps_shift(const EpsilonSeries& a, int k) {
  EpsilonSeries r(a.var(), trunc_add(a.trunc_eps(), k));
  if (a.has_floor()) r.set_floor_eps(a.floor_eps() + k);
  for (const auto& [e, s] : a.rows()) r.set_row(e + k, s);
  return r;
}

EpsilonSeries eps_shift_var(const EpsilonSeries& a, int k) {
  EpsilonSeries r(a.var(), a.trunc_eps());
  r.set_floor_eps(a.floor_eps());
  for (const auto& [e, s] : a.rows()) r.set_row(e, series_shift(s, k));
  return r;
}

EpsilonSeries eps_total_degree_truncate(const EpsilonSeries& a, int degree) {
  EpsilonSeries r(a.var(), std::min(a.trunc_eps(), degree));
  for (const auto& [e, s] : a.rows()) {
    if (e <= r.trunc_eps()) r.set_row(e, s.truncated(degree - e));
  }
  return r;
}

EpsilonSeries eps_var_truncate(const EpsilonSeries& a, int t) {
  EpsilonSeries r(a.var(), a.trunc_eps());
  r.set_floor_eps(a.floor_eps());
  for (const auto& [e, s] : a.rows()) r.set_row(e, s.truncated(t));
  return r;
}


EpsilonSeries eps_binomial(const EpsilonSeries& x, const Rational& alpha) {
  if (x.trunc_eps() == kExact) throw SeriesError("eps_binomial: argument needs a finite truncation");
  if (x.valuation() < 1) throw SeriesError("eps_binomial: argument must vanish at eps = 0");
  EpsilonSeries one(x.var());
  one.set_row(0, AsymptoticSeries::constant(x.var(), Rational(1)));
  EpsilonSeries result = one;
  result.set_trunc_eps(x.trunc_eps());
  EpsilonSeries power = one;
  for (int n = 1;; ++n) {
    power = eps_mul(power, x);
    if (power.valuation() > result.trunc_eps()) break;
    result = eps_add(result, eps_scale(power, binomial(alpha, n)));
  }
  return result;
}

}  // namespace mathieu
