#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "weylscat/specfun.hpp"

using namespace weylscat;

namespace {

// Independent oracle: J_m(x) = (1/pi) int_0^pi cos(m t - x sin t) dt.
// The periodic extension is smooth, so the trapezoid rule converges
// spectrally; N is chosen comfortably above m + x.
double bessel_j_quadrature(int m, double x, int n = 6000) {
  double sum = 0.5 * (std::cos(0.0) + std::cos(double(m) * M_PI));
  for (int k = 1; k < n; ++k) {
    const double t = M_PI * double(k) / double(n);
    sum += std::cos(double(m) * t - x * std::sin(t));
  }
  return sum / double(n);
}

// Independent oracle for the small-argument regime: plain ascending series.
double bessel_j_series(int m, double x) {
  double coeff = 1.0;
  for (int k = 1; k <= m; ++k) coeff *= (x / 2.0) / double(k);
  double term = coeff, sum = coeff;
  for (int k = 1; k < 300; ++k) {
    term *= -(x * x / 4.0) / (double(k) * double(k + m));
    sum += term;
    if (std::abs(term) < 1e-20 * std::abs(sum)) break;
  }
  return sum;
}

double sph_j2(double x) {
  return (3.0 / (x * x) - 1.0) * std::sin(x) / x - 3.0 * std::cos(x) / (x * x);
}
double sph_j3(double x) {
  return (15.0 / (x * x * x) - 6.0 / x) * std::sin(x) / x -
         (15.0 / (x * x) - 1.0) * std::cos(x) / x;
}

}  // namespace

TEST_CASE("bessel_jy leading behaviour and frozen value") {
  CHECK(bessel_jy(0, 1e-6).J == Catch::Approx(1.0).margin(1e-9));
  // J1(1), cross-checked against the ascending series oracle.
  const double j11 = bessel_jy(1, 1.0).J;
  CHECK(j11 == Catch::Approx(0.4400505857449335).epsilon(1e-12));
  CHECK(j11 == Catch::Approx(bessel_j_series(1, 1.0)).epsilon(1e-14));
}

TEST_CASE("bessel_jy Wronskian identity") {
  const BesselEval b = bessel_jy(5, 2.3);
  const double w = b.J * b.dY - b.Y * b.dJ;
  CHECK(w == Catch::Approx(2.0 / (M_PI * 2.3)).epsilon(1e-12));

  for (int m : {0, 1, 3, 8, 21, 64}) {
    for (double x : {1e-3, 0.05, 0.7, 2.3, 6.0, 11.0, 19.9, 35.0, 120.0, 1000.0}) {
      const BesselEval e = bessel_jy(m, x);
      if (!std::isfinite(e.Y) || std::abs(e.Y) > 1e150) continue;
      const double ww = e.J * e.dY - e.Y * e.dJ;
      CHECK(ww == Catch::Approx(2.0 / (M_PI * x)).epsilon(1e-10));
    }
  }
}

TEST_CASE("bessel_jy against quadrature oracle in the oscillatory regime") {
  for (int m : {0, 1, 2, 5, 13, 33, 64}) {
    for (double x : {1.0, 2.3, 7.7, 19.5, 50.0, 240.0}) {
      const double ref = bessel_j_quadrature(m, x);
      const double got = bessel_jy(m, x).J;
      // The quadrature oracle carries ~1e-15 absolute error; compare on the
      // oscillation scale sqrt(2/(pi x)).
      const double scale = std::max(std::abs(ref), std::sqrt(2.0 / (M_PI * x)));
      CHECK(std::abs(got - ref) <= 1e-10 * scale);
    }
  }
  // x = 1e3 with a denser grid
  const double ref = bessel_j_quadrature(7, 1000.0, 40000);
  CHECK(std::abs(bessel_jy(7, 1000.0).J - ref) <= 1e-10);
}

TEST_CASE("bessel_jy against series oracle in the decaying regime") {
  for (int m : {4, 9, 17, 40, 64}) {
    for (double x : {1e-3, 0.02, 0.4, 1.9, double(m) * 0.45}) {
      const double ref = bessel_j_series(m, x);
      const double got = bessel_jy(m, x).J;
      CHECK(got == Catch::Approx(ref).epsilon(1e-10));
    }
  }
}

TEST_CASE("bessel_jy three-term recurrence consistency") {
  for (int m : {1, 2, 7, 20, 63}) {
    for (double x : {0.3, 1.7, 9.2, 77.0}) {
      const double jm = bessel_jy(m, x).J;
      const double jmm = bessel_jy(m - 1, x).J;
      const double jmp = bessel_jy(m + 1, x).J;
      const double lhs = jmm + jmp;
      const double rhs = (2.0 * double(m) / x) * jm;
      const double scale = std::abs(jmm) + std::abs(jmp) + std::abs(rhs) + 1e-300;
      CHECK(std::abs(lhs - rhs) <= 1e-9 * scale);
    }
  }
}

TEST_CASE("bessel_jy domain and order errors") {
  CHECK_THROWS_AS(bessel_jy(0, 0.0), DomainError);
  CHECK_THROWS_AS(bessel_jy(0, -1.0), DomainError);
  CHECK_THROWS_AS(bessel_jy(kOrderCap + 1, 1.0), OrderCapExceeded);
}

TEST_CASE("spherical closed forms") {
  CHECK(spherical_jyh(0, 1.0).j == Catch::Approx(std::sin(1.0)).epsilon(1e-14));
  CHECK(spherical_jyh(0, 2.0).y == Catch::Approx(-std::cos(2.0) / 2.0).epsilon(1e-14));
  CHECK(spherical_jyh(2, 0.8).j == Catch::Approx(sph_j2(0.8)).epsilon(1e-10));
  CHECK(spherical_jyh(3, 0.5).j == Catch::Approx(sph_j3(0.5)).epsilon(1e-10));
  CHECK(spherical_jyh(3, 7.5).j == Catch::Approx(sph_j3(7.5)).epsilon(1e-10));
}

TEST_CASE("spherical Wronskian identity") {
  for (int l : {0, 1, 2, 6, 15, 40}) {
    for (double x : {0.02, 0.6, 3.0, 17.0, 90.0}) {
      const SphericalEval e = spherical_jyh(l, x);
      if (!std::isfinite(e.y) || std::abs(e.y) > 1e150) continue;
      const double w = e.j * e.dy - e.y * e.dj;
      CHECK(w == Catch::Approx(1.0 / (x * x)).epsilon(1e-10));
    }
  }
}

TEST_CASE("hankel1 basics") {
  const Hankel1Eval h = hankel1(3, 2.2);
  const BesselEval b = bessel_jy(3, 2.2);
  CHECK(h.H.imag() == Catch::Approx(b.Y));
  CHECK(h.H.real() == Catch::Approx(b.J));

  // |H0(x)| decreases along [1, 50], tracking the sqrt(2/(pi x)) envelope.
  double prev = std::abs(hankel1(0, 1.0).H);
  for (double x = 1.5; x <= 50.0; x += 0.5) {
    const double cur = std::abs(hankel1(0, x).H);
    CHECK(cur < prev);
    CHECK(cur == Catch::Approx(std::sqrt(2.0 / (M_PI * x))).epsilon(0.05));
    prev = cur;
  }

  const Hankel1Eval h0 = hankel1(0, 1.0);
  const double w = h0.H.real() * h0.dH.imag() - h0.H.imag() * h0.dH.real();
  CHECK(w == Catch::Approx(2.0 / M_PI).epsilon(1e-12));
}
