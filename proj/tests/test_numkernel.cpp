#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "test_util.hpp"
#include "weylscat/complex_matrix.hpp"

using namespace weylscat;
using testutil::max_abs_diff;

namespace {

double reconstruction_residual(const ComplexMatrix& h, const HermitianEig& eig) {
  const std::size_t n = h.rows();
  ComplexMatrix vdv(n, n);
  const ComplexMatrix& v = eig.eigenvectors;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Complex acc = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        acc += v(i, k) * eig.eigenvalues[k] * std::conj(v(j, k));
      vdv(i, j) = acc;
    }
  return (vdv - h).frobenius_norm();
}

double orthonormality_defect(const ComplexMatrix& v) {
  const ComplexMatrix g = v.adjoint() * v;
  return (g - ComplexMatrix::identity(v.rows())).frobenius_norm();
}

}  // namespace

TEST_CASE("herm_eig identity and diagonal cases") {
  const ComplexMatrix i2 = ComplexMatrix::identity(2);
  auto eig = herm_eig(i2);
  CHECK(eig.eigenvalues[0] == Catch::Approx(1.0));
  CHECK(eig.eigenvalues[1] == Catch::Approx(1.0));
  CHECK(orthonormality_defect(eig.eigenvectors) < 1e-13);

  ComplexMatrix d(2, 2);
  d(0, 0) = 3.0;
  d(1, 1) = -1.0;
  eig = herm_eig(d);
  CHECK(eig.eigenvalues[0] == Catch::Approx(-1.0));
  CHECK(eig.eigenvalues[1] == Catch::Approx(3.0));
}

TEST_CASE("herm_eig 2x2 closed form") {
  ComplexMatrix h(2, 2);
  h(0, 1) = 1.0;
  h(1, 0) = 1.0;
  const auto eig = herm_eig(h);
  CHECK(eig.eigenvalues[0] == Catch::Approx(-1.0).margin(1e-14));
  CHECK(eig.eigenvalues[1] == Catch::Approx(1.0).margin(1e-14));
  // eigenvectors (1, -1)/sqrt(2) and (1, 1)/sqrt(2) up to phase
  for (std::size_t k = 0; k < 2; ++k) {
    const double ratio = std::abs(eig.eigenvectors(1, k) / eig.eigenvectors(0, k) -
                                  Complex(k == 0 ? -1.0 : 1.0, 0.0));
    CHECK(ratio < 1e-13);
  }
  CHECK(reconstruction_residual(h, eig) < 1e-13);
}

TEST_CASE("herm_eig rejects non-Hermitian input") {
  ComplexMatrix h(2, 2);
  h(0, 1) = 1.0;
  h(1, 0) = 0.5;
  CHECK_THROWS_AS(herm_eig(h), NonHermitianInput);
}

TEST_CASE("herm_eig invariants on random Hermitian matrices") {
  std::mt19937 rng(12345);
  for (std::size_t n : {1u, 2u, 3u, 5u, 8u, 17u, 33u, 64u}) {
    const ComplexMatrix h = testutil::random_hermitian(n, rng);
    const auto eig = herm_eig(h);
    const double scale = 1.0 + h.frobenius_norm();
    CHECK(reconstruction_residual(h, eig) <= 1e-12 * scale);
    CHECK(orthonormality_defect(eig.eigenvectors) <= 1e-12 * double(n));
    for (std::size_t k = 1; k < n; ++k)
      CHECK(eig.eigenvalues[k - 1] <= eig.eigenvalues[k]);
  }
}

TEST_CASE("herm_eig with clustered and degenerate spectra") {
  std::mt19937 rng(42);
  // U diag(w) U^* with tightly clustered eigenvalues stresses the QL shifts.
  const std::size_t n = 24;
  const ComplexMatrix u = testutil::random_unitary(n, rng);
  std::vector<double> w(n);
  for (std::size_t k = 0; k < n; ++k)
    w[k] = (k < 8) ? 1.0 + 1e-13 * double(k) : (k < 16 ? -2.0 : 5.0 + double(k) * 1e-10);
  ComplexMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Complex acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += u(i, k) * w[k] * std::conj(u(j, k));
      h(i, j) = acc;
    }
  const auto eig = herm_eig(hermitize(h));
  CHECK(reconstruction_residual(hermitize(h), eig) <= 1e-12 * (1.0 + h.frobenius_norm()));
  CHECK(orthonormality_defect(eig.eigenvectors) <= 1e-12 * double(n));
  std::vector<double> sorted_w = w;
  std::sort(sorted_w.begin(), sorted_w.end());
  for (std::size_t k = 0; k < n; ++k)
    CHECK(eig.eigenvalues[k] == Catch::Approx(sorted_w[k]).margin(1e-12 * 6.0));
}

TEST_CASE("psd_sqrt of a rank-deficient matrix") {
  std::mt19937 rng(11);
  // A^* A with A 12x5 has rank 5 inside a 12-dim space.
  const ComplexMatrix a = testutil::random_matrix(5, 12, rng);
  const ComplexMatrix h = a.adjoint() * a;
  const ComplexMatrix r = psd_sqrt(h);
  CHECK((r * r - h).frobenius_norm() <= 1e-10 * (1.0 + h.frobenius_norm()));
  // rank through singular values; the eig(A^*A) route bottoms out near
  // sqrt(eps)*||H||, so the rank cut is relative to the top value
  const auto s = singular_values(r);
  std::size_t positive = 0;
  for (double v : s)
    if (v > 1e-6 * s.front()) ++positive;
  CHECK(positive == 5);
}

TEST_CASE("psd_sqrt diagonal, identity and rank-one cases") {
  ComplexMatrix d(2, 2);
  d(0, 0) = 4.0;
  auto r = psd_sqrt(d);
  CHECK(std::abs(r(0, 0) - Complex(2.0, 0.0)) < 1e-12);
  CHECK(std::abs(r(1, 1)) < 1e-12);

  r = psd_sqrt(ComplexMatrix::identity(3));
  CHECK(max_abs_diff(r, ComplexMatrix::identity(3)) < 1e-12);

  // H = v v^* with ||v|| = 2 -> sqrt(H) = H / 2
  std::vector<Complex> v = {Complex(1.0, 1.0), Complex(1.0, -1.0)};  // norm 2
  ComplexMatrix h(2, 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) h(i, j) = v[i] * std::conj(v[j]);
  r = psd_sqrt(h);
  ComplexMatrix expected = h;
  expected *= Complex(0.5, 0.0);
  CHECK(max_abs_diff(r, expected) < 1e-12);
}

TEST_CASE("psd_sqrt squares back to the clipped input") {
  std::mt19937 rng(777);
  for (std::size_t n : {2u, 8u, 31u, 64u}) {
    const ComplexMatrix h = testutil::random_psd(n, rng);
    const ComplexMatrix r = psd_sqrt(h);
    CHECK((r * r - h).frobenius_norm() <= 1e-10 * (1.0 + h.frobenius_norm()));
  }
}

TEST_CASE("psd_sqrt rejects indefinite input") {
  ComplexMatrix h(2, 2);
  h(0, 0) = 1.0;
  h(1, 1) = -0.5;
  CHECK_THROWS_AS(psd_sqrt(h, 1e-10), IndefiniteInput);
}

TEST_CASE("solve trivial cases") {
  std::mt19937 rng(99);
  const ComplexMatrix b = testutil::random_matrix(4, 3, rng);
  auto r = solve(ComplexMatrix::identity(4), b);
  CHECK(max_abs_diff(r.x, b) < 1e-14);
  CHECK(r.condition >= 1.0);

  ComplexMatrix d(2, 2);
  d(0, 0) = 2.0;
  d(1, 1) = 4.0;
  r = solve(d, ComplexMatrix::identity(2));
  CHECK(std::abs(r.x(0, 0) - Complex(0.5, 0.0)) < 1e-14);
  CHECK(std::abs(r.x(1, 1) - Complex(0.25, 0.0)) < 1e-14);
}

TEST_CASE("solve recovers a known solution within 1e-10 * cond") {
  std::mt19937 rng(2024);
  for (int round = 0; round < 4; ++round) {
    // Well-conditioned A: unitary plus a multiple of the identity.
    ComplexMatrix a = testutil::random_unitary(8, rng);
    for (std::size_t i = 0; i < 8; ++i) a(i, i) += 2.0;
    const ComplexMatrix x = testutil::random_matrix(8, 2, rng);
    const ComplexMatrix b = a * x;
    const auto r = solve(a, b);
    CHECK(max_abs_diff(r.x, x) <= 1e-10 * r.condition);
    CHECK((a * r.x - b).frobenius_norm() <=
          1e-10 * r.condition * (1.0 + b.frobenius_norm()));
  }
}

TEST_CASE("solve fails loudly on singular and ill-conditioned input") {
  ComplexMatrix a(2, 2);
  a(0, 0) = 1.0;
  a(0, 1) = 1.0;
  a(1, 0) = 1.0;
  a(1, 1) = 1.0;
  CHECK_THROWS_AS(solve(a, ComplexMatrix::identity(2)), SingularMatrix);

  ComplexMatrix c(2, 2);
  c(0, 0) = 1.0;
  c(1, 1) = 1e-14;
  CHECK_THROWS_AS(solve(c, ComplexMatrix::identity(2)), SingularMatrix);
  CHECK_NOTHROW(solve(c, ComplexMatrix::identity(2), 1e20));
}

TEST_CASE("singular_values basics") {
  std::vector<Complex> diag = {Complex(3.0, 0.0), Complex(-4.0, 0.0), Complex(0.0, 0.0)};
  auto s = singular_values(ComplexMatrix::diagonal(diag));
  REQUIRE(s.size() == 3);
  CHECK(s[0] == Catch::Approx(4.0));
  CHECK(s[1] == Catch::Approx(3.0));
  CHECK(s[2] == Catch::Approx(0.0).margin(1e-12));

  auto z = singular_values(ComplexMatrix(3, 3));
  for (double v : z) CHECK(v == 0.0);

  std::mt19937 rng(5);
  const ComplexMatrix u = testutil::random_unitary(5, rng);
  s = singular_values(u);
  for (double v : s) CHECK(v == Catch::Approx(1.0).margin(1e-10));
}

TEST_CASE("singular_values of A equal those of A^*") {
  std::mt19937 rng(31);
  const ComplexMatrix a = testutil::random_matrix(7, 7, rng);
  const auto s1 = singular_values(a);
  const auto s2 = singular_values(a.adjoint());
  for (std::size_t i = 0; i < s1.size(); ++i)
    CHECK(s1[i] == Catch::Approx(s2[i]).margin(1e-10));
}
