#include "mathieu/ratfunc.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace mathieu {

Poly::Poly(Rational c) {
  if (!c.is_zero()) c_.push_back(std::move(c));
}

Poly Poly::x() { return from_coeffs({Rational(0), Rational(1)}); }

Poly Poly::from_coeffs(std::vector<Rational> c) {
  Poly p;
  p.c_ = std::move(c);
  p.trim();
  return p;
}

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Rational Poly::eval(const Rational& x) const {
  Rational r;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
  return r;
}

long double Poly::eval(long double x) const {
  long double r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + it->to_long_double();
  return r;
}

Poly Poly::operator+(const Poly& o) const {
  std::vector<Rational> c(std::max(c_.size(), o.c_.size()));
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = coeff(static_cast<int>(k)) + o.coeff(static_cast<int>(k));
  return from_coeffs(std::move(c));
}

Poly Poly::operator-(const Poly& o) const { return *this + o.scaled(Rational(-1)); }

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<Rational> c(c_.size() + o.c_.size() - 1);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    for (std::size_t j = 0; j < o.c_.size(); ++j) c[i + j] += c_[i] * o.c_[j];
  }
  return from_coeffs(std::move(c));
}

Poly Poly::scaled(const Rational& s) const {
  std::vector<Rational> c = c_;
  for (auto& v : c) v *= s;
  return from_coeffs(std::move(c));
}

Poly Poly::divide_root(const Rational& root) const {
  if (is_zero()) return {};
  std::vector<Rational> q(c_.size() - 1);
  Rational carry;
  for (int k = degree(); k >= 1; --k) {
    carry = carry * root + c_[k];
    q[k - 1] = carry;
  }
  if (!(carry * root + c_[0]).is_zero()) throw std::domain_error("Poly::divide_root: not a root");
  return from_coeffs(std::move(q));
}

std::string Poly::str(const std::string& var) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const Rational& v = c_[k];
    if (v.is_zero()) continue;
    Rational a = v.abs();
    os << (first ? (v.sign() < 0 ? "-" : "") : (v.sign() < 0 ? " - " : " + "));
    bool unit = a == Rational(1) && k > 0;
    if (!unit) os << a.str();
    if (k > 0) os << (unit ? "" : "*") << var << (k > 1 ? "^" + std::to_string(k) : "");
    first = false;
  }
  return os.str();
}

// ---------------------------------------------------------------------------

RatFunc::RatFunc(Poly num, std::map<int, int> den) : num_(std::move(num)), den_(std::move(den)) { reduce(); }

void RatFunc::reduce() {
  if (num_.is_zero()) {
    den_.clear();
    return;
  }
  for (auto it = den_.begin(); it != den_.end();) {
    while (it->second > 0 && num_.eval(Rational(-it->first)).is_zero()) {
      num_ = num_.divide_root(Rational(-it->first));
      --it->second;
    }
    if (it->second < 0) throw std::domain_error("RatFunc: negative denominator exponent");
    it = it->second == 0 ? den_.erase(it) : std::next(it);
  }
}

RatFunc RatFunc::operator*(const RatFunc& o) const {
  std::map<int, int> d = den_;
  for (const auto& [k, e] : o.den_) d[k] += e;
  return RatFunc(num_ * o.num_, std::move(d));
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  std::map<int, int> d = den_;
  for (const auto& [k, e] : o.den_) d[k] = std::max(d[k], e);
  auto lift = [&d](const RatFunc& f) {
    Poly p = f.num_;
    for (const auto& [k, e] : d) {
      auto it = f.den_.find(k);
      int have = it == f.den_.end() ? 0 : it->second;
      for (int n = have; n < e; ++n) p = p * Poly::from_coeffs({Rational(k), Rational(1)});
    }
    return p;
  };
  Poly num = lift(*this) + lift(o);
  return RatFunc(std::move(num), std::move(d));
}

RatFunc RatFunc::operator-(const RatFunc& o) const { return *this + o.scaled(Rational(-1)); }

RatFunc RatFunc::scaled(const Rational& s) const { return RatFunc(num_.scaled(s), den_); }

RatFunc RatFunc::over_linear(int k) const {
  std::map<int, int> d = den_;
  d[k] += 1;
  return RatFunc(num_, std::move(d));
}

Poly RatFunc::den_poly() const {
  Poly p(Rational(1));
  for (const auto& [k, e] : den_) {
    for (int n = 0; n < e; ++n) p = p * Poly::from_coeffs({Rational(k), Rational(1)});
  }
  return p;
}

long double RatFunc::eval(long double nu) const { return num_.eval(nu) / den_poly().eval(nu); }

AsymptoticSeries RatFunc::large_nu(int order) const {
  // num(nu) = sum a_d nu^d -> a_d r^-d ; 1/(nu + k) = r / (1 + k r)
  AsymptoticSeries result(Var::NU_INV);
  for (int d = 0; d <= num_.degree(); ++d) result.add(-d, num_.coeff(d));
  for (const auto& [k, e] : den_) {
    AsymptoticSeries x(Var::NU_INV, order + std::max(0, num_.degree()) + 1);
    x.add(1, Rational(k));
    AsymptoticSeries inv = series_shift(series_binomial(x, Rational(-1)), 1);
    for (int n = 0; n < e; ++n) result = series_mul(result, inv);
  }
  return result.truncated(order);
}

std::string RatFunc::str() const {
  std::string d;
  for (const auto& [k, e] : den_) {
    d += "(nu" + (k < 0 ? " - " + std::to_string(-k) : " + " + std::to_string(k)) + ")";
    if (e > 1) d += "^" + std::to_string(e);
  }
  if (d.empty()) return num_.str();
  return "(" + num_.str() + ") / " + d;
}

std::map<int, int> den_nu2_minus(std::initializer_list<std::pair<int, int>> k_and_power) {
  std::map<int, int> d;
  for (const auto& [k, e] : k_and_power) {
    d[k] += e;
    d[-k] += e;
  }
  return d;
}

}  // namespace mathieu
