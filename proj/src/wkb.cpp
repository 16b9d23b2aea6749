#include "mathieu/wkb.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>
#include <sstream>
#include <vector>

namespace mathieu {

namespace {

using cld = std::complex<long double>;

cld to_complex(const GaussianRational& g) { return {g.re.to_long_double(), g.im.to_long_double()}; }

std::vector<cld> powers_of(cld x, int n) {
  std::vector<cld> p(static_cast<std::size_t>(n) + 1, cld(1));
  for (int k = 1; k <= n; ++k) p[k] = p[k - 1] * x;
  return p;
}

}  // namespace

// ---------------------------------------------------------------------------
// TrigPoly

TrigPoly TrigPoly::constant(const GaussianRational& c) { return monomial(0, 0, 0, c); }

TrigPoly TrigPoly::monomial(int j, int a, int b, const GaussianRational& c) {
  TrigPoly p;
  p.add(j, a, b, c);
  return p;
}

void TrigPoly::add(int j, int a, int b, const GaussianRational& c) {
  if (c.is_zero()) return;
  if (j < 0 || a < 0 || b < 0) throw std::invalid_argument("TrigPoly: negative exponent");
  if (b >= 2) {
    // s^2 = 1 - c^2
    add(j, a, b - 2, c);
    add(j, a + 2, b - 2, -c);
    return;
  }
  auto [it, inserted] = terms_.try_emplace(Key{j, a, b}, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

TrigPoly TrigPoly::operator+(const TrigPoly& o) const {
  TrigPoly r = *this;
  for (const auto& [k, c] : o.terms_) r.add(std::get<0>(k), std::get<1>(k), std::get<2>(k), c);
  return r;
}

TrigPoly TrigPoly::operator-(const TrigPoly& o) const { return *this + o.scaled(GaussianRational(Rational(-1))); }

TrigPoly TrigPoly::operator*(const TrigPoly& o) const {
  TrigPoly r;
  for (const auto& [k1, c1] : terms_) {
    for (const auto& [k2, c2] : o.terms_) {
      r.add(std::get<0>(k1) + std::get<0>(k2), std::get<1>(k1) + std::get<1>(k2),
            std::get<2>(k1) + std::get<2>(k2), c1 * c2);
    }
  }
  return r;
}

TrigPoly TrigPoly::scaled(const GaussianRational& c) const {
  TrigPoly r;
  if (c.is_zero()) return r;
  for (const auto& [k, v] : terms_) r.terms_.emplace(k, v * c);
  return r;
}

TrigPoly TrigPoly::dz() const {
  TrigPoly r;
  for (const auto& [k, v] : terms_) {
    auto [j, a, b] = k;
    if (a > 0) r.add(j, a - 1, b + 1, v * GaussianRational(Rational(-2 * a)));
    if (b == 1) r.add(j, a + 1, 0, v * GaussianRational(Rational(2)));
  }
  return r;
}

bool TrigPoly::divide_by_w_minus_c(TrigPoly& quotient) const {
  if (terms_.empty()) {
    quotient = TrigPoly();
    return true;
  }
  int jmax = 0;
  for (const auto& [k, v] : terms_) jmax = std::max(jmax, std::get<0>(k));
  // alpha[j] = coefficient of w^j, a polynomial in (c, s) stored with j = 0.
  std::vector<TrigPoly> alpha(jmax + 1);
  for (const auto& [k, v] : terms_) alpha[std::get<0>(k)].add(0, std::get<1>(k), std::get<2>(k), v);

  const TrigPoly c = TrigPoly::monomial(0, 1, 0, GaussianRational(Rational(1)));
  std::vector<TrigPoly> q(jmax + 1);
  TrigPoly carry;
  for (int j = jmax; j >= 1; --j) {
    carry = alpha[j] + c * carry;
    q[j - 1] = carry;
  }
  TrigPoly remainder = alpha[0] + c * carry;
  if (!remainder.is_zero()) return false;
  quotient = TrigPoly();
  for (int j = 0; j < jmax; ++j) {
    for (const auto& [k, v] : q[j].terms_) quotient.add(j, std::get<1>(k), std::get<2>(k), v);
  }
  return true;
}

std::complex<long double> TrigPoly::eval(cld w, cld c, cld s) const {
  int jm = 0, am = 0;
  for (const auto& [k, v] : terms_) {
    jm = std::max(jm, std::get<0>(k));
    am = std::max(am, std::get<1>(k));
  }
  auto wp = powers_of(w, jm);
  auto cp = powers_of(c, am);
  cld sum = 0;
  for (const auto& [k, v] : terms_) {
    auto [j, a, b] = k;
    cld term = to_complex(v) * wp[j] * cp[a];
    if (b) term *= s;
    sum += term;
  }
  return sum;
}

// ---------------------------------------------------------------------------
// WkbDensity

WkbDensity::WkbDensity(TrigPoly a, TrigPoly b, int n) : a_(std::move(a)), b_(std::move(b)), n_(n) {
  normalize();
}

WkbDensity WkbDensity::p0() {
  return WkbDensity(TrigPoly(), TrigPoly::constant(GaussianRational(Rational(1))), 0);
}

void WkbDensity::normalize() {
  if (a_.is_zero() && b_.is_zero()) {
    n_ = 0;
    return;
  }
  for (;;) {
    if (a_.is_zero()) {
      a_ = std::move(b_);
      b_ = TrigPoly();
      ++n_;
      continue;
    }
    TrigPoly quotient;
    if (!a_.divide_by_w_minus_c(quotient)) break;
    // A = 2(w - c) (quotient / 2) and P^2 = 2(w - c).
    TrigPoly next_b = quotient.scaled(GaussianRational(Rational(1, 2)));
    a_ = std::move(b_);
    b_ = std::move(next_b);
    ++n_;
  }
}

WkbDensity WkbDensity::lowered_to(int n) const {
  // A P^N + B P^(N+1) = 2(w - c) B P^(N-1) + A P^N
  TrigPoly a = a_, b = b_;
  const TrigPoly two_w_minus_c = TrigPoly::monomial(1, 0, 0, GaussianRational(Rational(2))) -
                                 TrigPoly::monomial(0, 1, 0, GaussianRational(Rational(2)));
  WkbDensity r;
  int cur = n_;
  while (cur > n) {
    TrigPoly na = two_w_minus_c * b;
    b = std::move(a);
    a = std::move(na);
    --cur;
  }
  r.a_ = std::move(a);
  r.b_ = std::move(b);
  r.n_ = cur;
  return r;
}

WkbDensity WkbDensity::operator+(const WkbDensity& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  int n = std::min(n_, o.n_);
  WkbDensity x = lowered_to(n), y = o.lowered_to(n);
  return WkbDensity(x.a_ + y.a_, x.b_ + y.b_, n);
}

WkbDensity WkbDensity::operator-(const WkbDensity& o) const {
  return *this + o.scaled(GaussianRational(Rational(-1)));
}

WkbDensity WkbDensity::operator*(const WkbDensity& o) const {
  if (is_zero() || o.is_zero()) return {};
  const TrigPoly two_w_minus_c = TrigPoly::monomial(1, 0, 0, GaussianRational(Rational(2))) -
                                 TrigPoly::monomial(0, 1, 0, GaussianRational(Rational(2)));
  TrigPoly a = a_ * o.a_ + two_w_minus_c * (b_ * o.b_);
  TrigPoly b = a_ * o.b_ + b_ * o.a_;
  return WkbDensity(std::move(a), std::move(b), n_ + o.n_);
}

WkbDensity WkbDensity::scaled(const GaussianRational& c) const {
  if (c.is_zero()) return {};
  return WkbDensity(a_.scaled(c), b_.scaled(c), n_);
}

WkbDensity WkbDensity::dz() const {
  // d(A P^N) = [2(w - c) A' + 2 N s A] P^(N-2), using P' = 2s/P.
  const TrigPoly two_w_minus_c = TrigPoly::monomial(1, 0, 0, GaussianRational(Rational(2))) -
                                 TrigPoly::monomial(0, 1, 0, GaussianRational(Rational(2)));
  const TrigPoly s = TrigPoly::monomial(0, 0, 1, GaussianRational(Rational(1)));
  TrigPoly a = two_w_minus_c * a_.dz() + (s * a_).scaled(GaussianRational(Rational(2 * n_)));
  TrigPoly b = two_w_minus_c * b_.dz() + (s * b_).scaled(GaussianRational(Rational(2 * (n_ + 1))));
  return WkbDensity(std::move(a), std::move(b), n_ - 2);
}

WkbDensity WkbDensity::over_p() const { return WkbDensity(a_, b_, n_ - 1); }

WkbDensity WkbDensity::reflected() const {
  auto flip = [](const TrigPoly& p) {
    TrigPoly r;
    for (const auto& [k, v] : p.terms()) {
      auto [j, a, b] = k;
      r.add(j, a, b, b ? -v : v);
    }
    return r;
  };
  return WkbDensity(flip(a_), flip(b_), n_);
}

std::map<WkbDensity::Key, GaussianRational> WkbDensity::terms() const {
  std::map<Key, GaussianRational> out;
  for (const auto& [k, v] : a_.terms()) out.emplace(Key{std::get<0>(k), std::get<1>(k), std::get<2>(k), n_}, v);
  for (const auto& [k, v] : b_.terms()) {
    out.emplace(Key{std::get<0>(k), std::get<1>(k), std::get<2>(k), n_ + 1}, v);
  }
  return out;
}

std::complex<long double> WkbDensity::eval(cld w, cld c, cld s, cld p) const {
  cld pn(1);
  const cld base = n_ < 0 ? cld(1) / p : p;
  for (int k = 0; k < std::abs(n_); ++k) pn *= base;
  return pn * (a_.eval(w, c, s) + p * b_.eval(w, c, s));
}

std::string WkbDensity::canonical_text() const {
  std::vector<std::pair<std::array<int, 4>, GaussianRational>> rows;
  for (const auto& [k, v] : terms()) {
    auto [j, a, b, n] = k;
    rows.push_back({{n, j, a, b}, v});
  }
  std::sort(rows.begin(), rows.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  std::ostringstream os;
  for (const auto& [k, v] : rows) {
    os << "(" << v.str() << ") w^" << k[1] << " c^" << k[2] << " s^" << k[3] << " P^" << k[0] << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------

const WkbDensity& wkb_density(int m) {
  constexpr int kMemo = 8;
  static std::once_flag once;
  static std::vector<WkbDensity> table;
  std::call_once(once, [] {
    table.push_back(WkbDensity::p0());
    const GaussianRational i = GaussianRational::i();
    for (int k = 1; k <= kMemo; ++k) {
      WkbDensity rhs = table[k - 1].dz().scaled(i);
      for (int l = 1; l < k; ++l) rhs = rhs - table[l] * table[k - l];
      table.push_back(rhs.over_p().scaled(GaussianRational(Rational(1, 2))));
    }
  });
  if (m < 0) throw std::invalid_argument("wkb_density: order must be non-negative");
  if (m > kMemo) {
    // Beyond the memo table: extend on a thread-local copy.
    thread_local std::vector<WkbDensity> extra;
    if (extra.empty()) extra = table;
    const GaussianRational i = GaussianRational::i();
    while (static_cast<int>(extra.size()) <= m) {
      int k = static_cast<int>(extra.size());
      WkbDensity rhs = extra[k - 1].dz().scaled(i);
      for (int l = 1; l < k; ++l) rhs = rhs - extra[l] * extra[k - l];
      extra.push_back(rhs.over_p().scaled(GaussianRational(Rational(1, 2))));
    }
    return extra[m];
  }
  return table[m];
}

std::complex<long double> BranchTracker::root(cld w, cld z) {
  cld p2 = 2.0L * (w - std::cos(2.0L * z));
  cld p = std::sqrt(p2);
  if (std::abs(p) < 1e-12L * std::max<long double>(1, std::abs(w))) {
    throw TurningPointError("P vanishes: z is a turning point");
  }
  if (started_ && std::abs(p - last_) > std::abs(p + last_)) p = -p;
  last_ = p;
  started_ = true;
  return p;
}

std::complex<long double> wkb_eval(int m, cld w, cld z, BranchTracker& branch) {
  const WkbDensity& d = wkb_density(m);
  cld p = branch.root(w, z);
  return d.eval(w, std::cos(2.0L * z), std::sin(2.0L * z), p);
}

}  // namespace mathieu
