#include "mathieu/linear_solve.hpp"

#include <gmpxx.h>

#include <utility>

namespace mathieu {

std::vector<Rational> rational_linear_solve(const RationalMatrix& a, const std::vector<Rational>& b) {
  const std::size_t n = a.size();
  if (b.size() != n) throw std::invalid_argument("rational_linear_solve: dimension mismatch");
  for (const auto& row : a) {
    if (row.size() != n) throw std::invalid_argument("rational_linear_solve: matrix is not square");
  }
  if (n == 0) return {};

  // Clear denominators row by row so Bareiss runs over Z.
  std::vector<std::vector<mpz_class>> m(n, std::vector<mpz_class>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    mpz_class l = 1;
    for (std::size_t j = 0; j < n; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a[i][j].raw().get_den_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), b[i].raw().get_den_mpz_t());
    for (std::size_t j = 0; j < n; ++j) {
      mpq_class v = a[i][j].raw() * l;
      m[i][j] = v.get_num();
    }
    mpq_class v = b[i].raw() * l;
    m[i][n] = v.get_num();
  }

  mpz_class prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && m[piv][k] == 0) ++piv;
    if (piv == n) throw SingularMatrix("rational_linear_solve: singular matrix");
    if (piv != k) std::swap(m[piv], m[k]);
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j <= n; ++j) {
        mpz_class t = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }

  std::vector<Rational> x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    mpq_class acc(m[ii][n]);
    for (std::size_t j = ii + 1; j < n; ++j) acc -= mpq_class(m[ii][j]) * x[j].raw();
    acc /= mpq_class(m[ii][ii]);
    x[ii] = Rational(acc);
  }
  return x;
}

}  // namespace mathieu
