#include "mathieu/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace mathieu {

Rational Rational::parse(std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  if (s.empty()) throw std::invalid_argument("Rational::parse: empty string");
  auto slash = s.find('/');
  auto valid_int = [](const std::string& t) {
    std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i >= t.size()) return false;
    for (; i < t.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    }
    return true;
  };
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+') {
    throw std::invalid_argument("Rational::parse: malformed '" + std::string(text) + "'");
  }
  if (num[0] == '+') num.erase(0, 1);
  mpz_class n(num), d(den);
  if (d == 0) throw std::domain_error("Rational::parse: zero denominator");
  return Rational(mpq_class(n, d));
}

std::string Rational::str() const {
  if (v_.get_den() == 1) return v_.get_num().get_str();
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

long double Rational::to_long_double() const {
  // mpf with 128 bits keeps the quotient exact to long double precision.
  mpf_class f(v_, 128);
  long exp = 0;
  double mant = mpf_get_d_2exp(&exp, f.get_mpf_t());
  mpf_class rem = f;
  if (exp >= 0) {
    mpf_div_2exp(rem.get_mpf_t(), f.get_mpf_t(), static_cast<mp_bitcnt_t>(exp));
  } else {
    mpf_mul_2exp(rem.get_mpf_t(), f.get_mpf_t(), static_cast<mp_bitcnt_t>(-exp));
  }
  rem -= mant;
  long double hi = static_cast<long double>(mant) + static_cast<long double>(rem.get_d());
  return std::ldexp(hi, static_cast<int>(exp));
}

Rational Rational::pow(int e) const {
  if (e == 0) return Rational(1);
  if (e < 0) {
    if (is_zero()) throw std::domain_error("Rational::pow: zero to negative power");
    return (Rational(1) / *this).pow(-e);
  }
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), v_.get_num().get_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(d.get_mpz_t(), v_.get_den().get_mpz_t(), static_cast<unsigned long>(e));
  return Rational(mpq_class(n, d));
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("Rational: division by zero");
  v_ /= o.v_;
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  Rational n = o.re * o.re + o.im * o.im;
  if (n.is_zero()) throw std::domain_error("GaussianRational: division by zero");
  *this *= o.conj();
  re /= n;
  im /= n;
  return *this;
}

std::string GaussianRational::str() const {
  if (im.is_zero()) return re.str();
  if (re.is_zero()) return im.str() + "i";
  return "(" + re.str() + (im.sign() < 0 ? " - " : " + ") + im.abs().str() + "i)";
}

Rational binomial(const Rational& alpha, int n) {
  if (n < 0) return Rational(0);
  Rational r(1);
  for (int k = 0; k < n; ++k) {
    r *= (alpha - Rational(k));
    r /= Rational(k + 1);
  }
  return r;
}

Rational pochhammer(const Rational& a, int n) {
  Rational r(1);
  for (int k = 0; k < n; ++k) r *= (a + Rational(k));
  return r;
}

}  // namespace mathieu
