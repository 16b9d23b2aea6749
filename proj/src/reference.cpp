#include "mathieu/reference.hpp"

namespace mathieu::reference {
namespace {

Rational R(long long p, long long q = 1) { return Rational(p) / Rational(q); }

Poly poly(std::initializer_list<long long> c, long long den = 1) {
  std::vector<Rational> v;
  for (long long x : c) v.push_back(R(x, den));
  return Poly::from_coeffs(std::move(v));
}

}  // namespace

const std::map<int, RatFunc>& eigen_small_q() {
  static const std::map<int, RatFunc> table = [] {
    std::map<int, RatFunc> t;
    t[2] = RatFunc(poly({1}, 2), den_nu2_minus({{1, 1}}));
    t[4] = RatFunc(poly({7, 0, 5}, 32), den_nu2_minus({{1, 3}, {2, 1}}));
    t[6] = RatFunc(poly({29, 0, 58, 0, 9}, 64), den_nu2_minus({{1, 5}, {2, 1}, {3, 1}}));
    t[8] = RatFunc(poly({274748, 0, 827565, 0, 64228, 0, -140354, 0, 9144, 0, 1469}, 8192),
                   den_nu2_minus({{4, 1}, {3, 1}, {2, 3}, {1, 7}}));
    return t;
  }();
  return table;
}

const std::vector<InverseTerm>& inverse_block() {
  static const std::vector<InverseTerm> block = [] {
    std::vector<InverseTerm> b;
    // q^2 carries -1/4 at every order
    for (int k = 3; k <= 21; k += 2) b.push_back({k, 2, R(-1, 4)});
    const std::pair<int, Rational> q4[] = {
        {7, R(-15, 64)},   {9, R(-35, 32)},    {11, R(-273, 64)},   {13, R(-33, 2)},
        {15, R(-4147, 64)}, {17, R(-8229, 32)}, {19, R(-65637, 64)}, {21, R(-65569, 16)}};
    for (const auto& [k, c] : q4) b.push_back({k, 4, c});
    const std::pair<int, Rational> q6[] = {{11, R(-105, 256)},    {13, R(-1155, 256)},
                                           {15, R(-5005, 128)},   {17, R(-42185, 128)},
                                           {19, R(-722007, 256)}, {21, R(-6294301, 256)}};
    for (const auto& [k, c] : q6) b.push_back({k, 6, c});
    return b;
  }();
  return block;
}

const EpsilonSeries& inverse_rows() {
  static const EpsilonSeries rows = [] {
    EpsilonSeries s(Var::U, 7);
    auto row = [](int trunc, std::initializer_list<std::pair<int, Rational>> terms) {
      AsymptoticSeries a(Var::U, trunc);
      for (const auto& [p, c] : terms) a.add(p, c);
      return a;
    };
    s.set_row(-1, row(14, {{-1, R(1)}, {3, R(-1, 4)}, {7, R(-15, 64)}, {11, R(-105, 256)}}));
    s.set_row(1, row(16, {{5, R(-1, 4)}, {9, R(-35, 32)}, {13, R(-1155, 256)}}));
    s.set_row(3, row(18, {{7, R(-1, 4)}, {11, R(-273, 64)}, {15, R(-5005, 128)}}));
    s.set_row(5, row(20, {{9, R(-1, 4)}, {13, R(-33, 2)}, {17, R(-42185, 128)}}));
    s.set_row(7, row(23, {{11, R(-1, 4)}, {15, R(-4147, 64)}, {19, R(-722007, 256)},
                          {23, R(-1000684685, 16384)}}));
    return s;
  }();
  return rows;
}

const std::map<int, Poly>& eigen_large_q() {
  static const std::map<int, Poly> table = [] {
    std::map<int, Poly> t;
    t[2] = poly({2});
    t[1] = poly({0, -4});
    t[0] = poly({-1, 0, 4}, 8);
    t[-1] = poly({0, -3, 0, 4}, 1LL << 6);
    t[-2] = poly({9, 0, -136, 0, 80}, 1LL << 12);
    t[-3] = poly({0, 405, 0, -1640, 0, 528}, 1LL << 16);
    t[-4] = poly({-243, 0, 5886, 0, -10080, 0, 2016}, 1LL << 19);
    t[-5] = poly({0, -41607, 0, 276004, 0, -249872, 0, 33728}, 1LL << 24);
    t[-6] = poly({506979, 0, -16087536, 0, 45534368, 0, -24881920, 0, 2403072}, 1LL << 31);
    t[-7] = poly({0, 130610637, 0, -1152647184, 0, 1724770656, 0, -620967168, 0, 44811520},
                 1LL << 36);
    return t;
  }();
  return table;
}

const std::map<int, Rational>& alpha_expansion() {
  static const std::map<int, Rational> t = {
      {0, R(1)}, {2, R(-1, 4)}, {4, R(-15, 64)}, {6, R(-105, 256)}};
  return t;
}

const std::map<int, Rational>& beta_expansion() {
  static const std::map<int, Rational> t = {
      {1, R(1, 2)}, {2, R(-1, 32)}, {3, R(3, 512)}, {4, R(-25, 16384)}};
  return t;
}

}  // namespace mathieu::reference
