#include "mathieu/serialize.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <sstream>

namespace mathieu {

namespace {

Rational rat(const json& j) {
  if (!j.is_string()) throw ParseError("expected a rational string, got " + j.dump());
  try {
    return Rational::parse(j.get<std::string>());
  } catch (const std::exception& e) {
    throw ParseError(std::string("bad rational: ") + e.what());
  }
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

// lcm of the denominators and the integer numerators over it.
std::pair<mpz_class, std::vector<mpz_class>> clear_denominators(const std::vector<Rational>& c) {
  mpz_class l = 1;
  for (const auto& v : c) l = lcm(l, v.raw().get_den());
  std::vector<mpz_class> out;
  for (const auto& v : c) out.push_back(mpz_class(v.raw().get_num() * (l / v.raw().get_den())));
  return {l, out};
}

std::string int_poly_latex(const std::vector<mpz_class>& c, const std::string& var) {
  std::ostringstream os;
  bool first = true;
  for (int k = static_cast<int>(c.size()) - 1; k >= 0; --k) {
    if (c[k] == 0) continue;
    mpz_class a = abs(c[k]);
    os << (first ? (c[k] < 0 ? "-" : "") : (c[k] < 0 ? " - " : " + "));
    if (a != 1 || k == 0) os << a.get_str();
    if (k > 0) os << var << (k > 1 ? "^{" + std::to_string(k) + "}" : "");
    first = false;
  }
  return first ? "0" : os.str();
}

// 2^n when d is a power of two, plain digits otherwise.
std::string den_latex(const mpz_class& d) {
  if (d > 2 && mpz_popcount(d.get_mpz_t()) == 1) {
    return "2^{" + std::to_string(mpz_sizeinbase(d.get_mpz_t(), 2) - 1) + "}";
  }
  return d.get_str();
}

std::string rational_latex(const Rational& r) {
  if (r.is_integer()) return r.str();
  std::string s = r.sign() < 0 ? "-" : "";
  return s + "\\frac{" + r.abs().num_str() + "}{" + r.den_str() + "}";
}

std::string half_power(int twice) {
  if (twice % 2 == 0) return std::to_string(twice / 2);
  return std::to_string(twice) + "/2";
}

}  // namespace

json to_json(const AsymptoticSeries& s) {
  json terms = json::array();
  for (const auto& [k, c] : s.terms()) terms.push_back({{"pow", k.pow}, {"log", k.log}, {"coeff", c.str()}});
  json j = {{"var", to_string(s.var())}, {"terms", terms}};
  j["trunc"] = s.exact() ? json(nullptr) : json(s.trunc());
  return j;
}

AsymptoticSeries series_from_json(const json& j) {
  Var v;
  try {
    v = var_from_string(field(j, "var").get<std::string>());
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(e.what());
  }
  const json& t = field(j, "trunc");
  AsymptoticSeries s(v, t.is_null() ? kExact : t.get<int>());
  for (const auto& term : field(j, "terms")) {
    int log = field(term, "log").get<int>();
    if (log < 0 || log > 1) throw ParseError("log power must be 0 or 1");
    s.add(field(term, "pow").get<int>(), log, rat(field(term, "coeff")));
  }
  return s;
}

json to_json(const EpsilonSeries& s) {
  json rows = json::array();
  for (const auto& [e, row] : s.rows()) rows.push_back({{"eps", e}, {"series", to_json(row)}});
  json j = {{"var", to_string(s.var())}, {"rows", rows}};
  j["trunc_eps"] = s.trunc_eps() == kExact ? json(nullptr) : json(s.trunc_eps());
  j["floor_eps"] = s.has_floor() ? json(s.floor_eps()) : json(nullptr);
  return j;
}

EpsilonSeries eps_series_from_json(const json& j) {
  const json& t = field(j, "trunc_eps");
  EpsilonSeries s(var_from_string(field(j, "var").get<std::string>()), t.is_null() ? kExact : t.get<int>());
  if (j.contains("floor_eps") && !j.at("floor_eps").is_null()) s.set_floor_eps(j.at("floor_eps").get<int>());
  for (const auto& r : field(j, "rows")) s.set_row(field(r, "eps").get<int>(), series_from_json(field(r, "series")));
  return s;
}

json to_json(const GeneratingOperator& op) {
  json a = json::array();
  for (const auto& t : op.terms) a.push_back({{"coeff", t.coeff.str()}, {"wpow", t.wpow}, {"dpow", t.dpow}});
  return a;
}

GeneratingOperator operator_from_json(int m, const json& j) {
  GeneratingOperator op;
  op.m = m;
  for (const auto& t : j) op.terms.push_back({rat(field(t, "coeff")), field(t, "wpow").get<int>(), field(t, "dpow").get<int>()});
  return op;
}

json to_json(const Poly& p) {
  json a = json::array();
  for (const auto& c : p.coeffs()) a.push_back(c.str());
  return a;
}

Poly poly_from_json(const json& j) {
  std::vector<Rational> c;
  for (const auto& v : j) c.push_back(rat(v));
  return Poly::from_coeffs(std::move(c));
}

json to_json(const RatFunc& r) {
  json den = json::array();
  for (const auto& [k, e] : r.den()) den.push_back({{"shift", k}, {"power", e}});
  return {{"num", to_json(r.num())}, {"den", den}, {"text", r.str()}};
}

RatFunc ratfunc_from_json(const json& j) {
  std::map<int, int> den;
  for (const auto& d : field(j, "den")) den[field(d, "shift").get<int>()] += field(d, "power").get<int>();
  return RatFunc(poly_from_json(field(j, "num")), std::move(den));
}

json to_json(const NuRationalSeries& s) {
  json terms = json::array();
  for (const auto& [qp, r] : s.terms) {
    json t = to_json(r);
    t["qpow"] = qp;
    terms.push_back(t);
  }
  return {{"which", "eigen1"}, {"order_q", s.order_q}, {"leading", "nu^2"}, {"terms", terms}};
}

NuRationalSeries nu_rational_from_json(const json& j) {
  NuRationalSeries s;
  s.order_q = field(j, "order_q").get<int>();
  for (const auto& t : field(j, "terms")) s.terms[field(t, "qpow").get<int>()] = ratfunc_from_json(t);
  return s;
}

json to_json(const InverseSeries& s) {
  json terms = json::array();
  for (const auto& [key, c] : s.terms) {
    terms.push_back({{"lambda_pow", Rational(-key.first, 2).str()}, {"qpow", key.second}, {"coeff", c.str()}});
  }
  return {{"which", "inverse"},
          {"order_q", s.order_q},
          {"lambda_order", s.lambda_order},
          {"leading", "lambda^(1/2)"},
          {"terms", terms}};
}

InverseSeries inverse_from_json(const json& j) {
  InverseSeries s;
  s.order_q = field(j, "order_q").get<int>();
  s.lambda_order = field(j, "lambda_order").get<int>();
  for (const auto& t : field(j, "terms")) {
    Rational lp = rat(field(t, "lambda_pow"));
    Rational k = -lp * Rational(2);
    if (!k.is_integer()) throw ParseError("lambda_pow must be a half-integer");
    s.terms[{static_cast<int>(k.to_double()), field(t, "qpow").get<int>()}] = rat(field(t, "coeff"));
  }
  return s;
}

json to_json(const LargeQSeries& s) {
  json terms = json::array();
  for (auto it = s.terms.rbegin(); it != s.terms.rend(); ++it) {
    terms.push_back({{"qpow", Rational(it->first, 2).str()}, {"poly", to_json(it->second)}, {"text", it->second.str()}});
  }
  return {{"which", "eigen2"}, {"order", s.order}, {"terms", terms}};
}

LargeQSeries large_q_from_json(const json& j) {
  LargeQSeries s;
  s.order = field(j, "order").get<int>();
  for (const auto& t : field(j, "terms")) {
    Rational k = rat(field(t, "qpow")) * Rational(2);
    if (!k.is_integer()) throw ParseError("qpow must be a half-integer");
    s.terms[static_cast<int>(k.to_double())] = poly_from_json(field(t, "poly"));
  }
  return s;
}

json to_json(const FloquetResult& r) {
  return {{"nu", r.nu},           {"method", r.method},       {"stable", r.stable},
          {"est_error", r.est_error}, {"nu_imag", r.nu_imag}, {"band_edge", r.band_edge},
          {"warnings", r.warnings}};
}

// ---------------------------------------------------------------------------

std::string to_csv(const NuRationalSeries& s) {
  std::ostringstream os;
  os << "qpow,nu_pow,num_coeff,den_shift,den_power\n";
  for (const auto& [qp, r] : s.terms) {
    const auto& c = r.num().coeffs();
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (!c[k].is_zero()) os << qp << "," << k << "," << c[k].str() << ",,\n";
    }
    for (const auto& [sh, e] : r.den()) os << qp << ",,," << sh << "," << e << "\n";
  }
  return os.str();
}

std::string to_csv(const InverseSeries& s) {
  std::ostringstream os;
  os << "lambda_pow,qpow,coeff\n";
  for (const auto& [key, c] : s.terms) os << Rational(-key.first, 2).str() << "," << key.second << "," << c.str() << "\n";
  return os.str();
}

std::string to_csv(const LargeQSeries& s) {
  std::ostringstream os;
  os << "qpow,nu_pow,coeff\n";
  for (auto it = s.terms.rbegin(); it != s.terms.rend(); ++it) {
    const auto& c = it->second.coeffs();
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (!c[k].is_zero()) os << Rational(it->first, 2).str() << "," << k << "," << c[k].str() << "\n";
    }
  }
  return os.str();
}

std::string to_csv(const GeneratingOperator& op) {
  std::ostringstream os;
  os << "coeff,wpow,dpow\n";
  for (const auto& t : op.terms) os << t.coeff.str() << "," << t.wpow << "," << t.dpow << "\n";
  return os.str();
}

std::string to_latex(const NuRationalSeries& s) {
  std::ostringstream os;
  os << "\\lambda_\\nu = \\nu^2";
  for (const auto& [qp, r] : s.terms) {
    auto [l, num] = clear_denominators(r.num().coeffs());
    std::string den = den_latex(l);
    // pair (nu + k)(nu - k) into (nu^2 - k^2)
    std::map<int, int> d = r.den();
    for (const auto& [k, e] : r.den()) {
      if (k <= 0) continue;
      int both = std::min(e, d[-k]);
      if (both > 0) {
        den += "(\\nu^2-" + std::to_string(k * k) + ")" + (both > 1 ? "^{" + std::to_string(both) + "}" : "");
        d[k] -= both;
        d[-k] -= both;
      }
    }
    for (const auto& [k, e] : d) {
      if (e == 0) continue;
      den += "(\\nu" + std::string(k < 0 ? "-" : "+") + std::to_string(std::abs(k)) + ")" +
             (e > 1 ? "^{" + std::to_string(e) + "}" : "");
    }
    os << "\n  + \\frac{" << int_poly_latex(num, "\\nu") << "}{" << den << "} q^{" << qp << "}";
  }
  return os.str() + "\n";
}

std::string to_latex(const InverseSeries& s) {
  std::map<int, std::vector<std::pair<int, Rational>>> by_lambda;
  for (const auto& [key, c] : s.terms) by_lambda[key.first].push_back({key.second, c});
  std::ostringstream os;
  os << "\\nu = \\lambda^{1/2}";
  for (const auto& [k, list] : by_lambda) {
    os << "\n  + \\left(";
    bool first = true;
    for (const auto& [j, c] : list) {
      std::string r = rational_latex(c);
      if (!first && c.sign() > 0) os << " + ";
      if (!first && c.sign() < 0) {
        os << " - ";
        r = rational_latex(c.abs());
      }
      os << r << " q^{" << j << "}";
      first = false;
    }
    os << "\\right) \\lambda^{-" << k << "/2}";
  }
  return os.str() + "\n";
}

std::string to_latex(const LargeQSeries& s) {
  std::ostringstream os;
  os << "\\lambda_\\nu =";
  bool first = true;
  for (auto it = s.terms.rbegin(); it != s.terms.rend(); ++it) {
    auto [l, num] = clear_denominators(it->second.coeffs());
    std::string q = it->first == 2   ? "q"
                    : it->first == 1 ? "\\sqrt{q}"
                    : it->first == 0 ? ""
                                     : "q^{" + half_power(it->first) + "}";
    int nonzero = static_cast<int>(std::count_if(num.begin(), num.end(), [](const mpz_class& v) { return v != 0; }));
    if (l == 1 && nonzero == 1) {
      // a single monomial: fold its sign into the joining operator
      std::vector<mpz_class> mag = num;
      bool negative = false;
      for (auto& v : mag) {
        if (v < 0) negative = true;
        v = abs(v);
      }
      os << (first ? (negative ? " -" : " ") : (negative ? "\n  - " : "\n  + ")) << int_poly_latex(mag, "\\nu") << q;
    } else {
      os << (first ? " " : "\n  + ");
      if (l == 1) {
        os << "(" << int_poly_latex(num, "\\nu") << ")" << q;
      } else {
        os << "\\frac{" << int_poly_latex(num, "\\nu") << "}{" << den_latex(l) << "}" << q;
      }
    }
    first = false;
  }
  return os.str() + "\n";
}

std::string to_latex(const GeneratingOperator& op) {
  std::ostringstream os;
  os << "D_" << op.m << " =";
  bool first = true;
  for (const auto& t : op.terms) {
    os << (first ? " " : (t.coeff.sign() < 0 ? " - " : " + "));
    os << rational_latex(first ? t.coeff : t.coeff.abs());
    if (t.wpow > 0) os << " w" << (t.wpow > 1 ? "^{" + std::to_string(t.wpow) + "}" : "");
    os << " d_w^{" << t.dpow << "}";
    first = false;
  }
  return os.str() + "\n";
}

}  // namespace mathieu
