#ifndef WEYLSCAT_TEST_UTIL_HPP
#define WEYLSCAT_TEST_UTIL_HPP

#include <complex>
#include <random>
#include <vector>

#include "weylscat/complex_matrix.hpp"

namespace testutil {

using weylscat::Complex;
using weylscat::ComplexMatrix;

inline ComplexMatrix random_matrix(std::size_t n, std::size_t m, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ComplexMatrix a(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) a(i, j) = Complex(u(rng), u(rng));
  return a;
}

inline ComplexMatrix random_hermitian(std::size_t n, std::mt19937& rng) {
  ComplexMatrix a = random_matrix(n, n, rng);
  return weylscat::hermitize(a);
}

inline ComplexMatrix random_psd(std::size_t n, std::mt19937& rng) {
  ComplexMatrix a = random_matrix(n, n, rng);
  return a.adjoint() * a;
}

inline ComplexMatrix random_unitary(std::size_t n, std::mt19937& rng) {
  return weylscat::herm_eig(random_hermitian(n, rng)).eigenvectors;
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

}  // namespace testutil

#endif
