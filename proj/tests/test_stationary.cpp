#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "weylscat/models.hpp"
#include "weylscat/scattering.hpp"
#include "weylscat/stationary.hpp"

using namespace weylscat;
using C = std::complex<double>;

namespace {

C engine_s(double alpha, double lambda) {
  const ModelHandle model = make_jacobi_halfline(alpha);
  const ChannelTruncation t = model->truncation(1);
  const BoundaryLimit bl = boundary_limit(model, lambda, t);
  return smatrix(bl).S(0, 0);
}

C rank_one_s(double alpha, double lambda) {
  const C m = JacobiHalflineModel::m_boundary(lambda);
  return (1.0 + alpha * std::conj(m)) / (1.0 + alpha * m);
}

}  // namespace

TEST_CASE("factorization residual and Q*Q identity") {
  const StationaryOracle st(0.7);
  const JacobiChainPair pair(st.n(), 0.7);
  CHECK(st.factorization_residual(pair.probes(8)) <= 1e-8);

  const C qq_direct = dot(st.Q(), st.Q());
  const C qq_weyl = st.qq_from_weyl();
  CHECK(std::abs(qq_direct - qq_weyl) <= 1e-10);
}

TEST_CASE("spectral density against the closed-form boundary value") {
  const StationaryOracle st(0.7);
  // K(lambda) = Im m(lambda+i0) / (pi (1 + lambda^2)); at 0 that is 1/pi.
  const SpectralDensitySample k0 = st.spectral_density(0.0);
  CHECK(std::abs(k0.K - 1.0 / M_PI) <= 1e-6);
  CHECK(k0.K >= -1e-10);

  for (double l : {-1.5, 0.5, 1.5}) {
    const SpectralDensitySample k = st.spectral_density(l);
    const double expected =
        std::sqrt(4.0 - l * l) / (2.0 * M_PI * (1.0 + l * l));
    CHECK(std::abs(k.K - expected) <= 1e-6);
  }
}

TEST_CASE("spectral density vanishes outside the band") {
  const StationarySetup setup;
  const StationaryOracle st(0.7, setup);
  const SpectralDensitySample k = st.spectral_density(2.5);
  CHECK(std::abs(k.K) <= 1e-8);
}

TEST_CASE("Z identity: stationary route equals -M(lambda+i0)^{-1}/(1+lambda^2)") {
  const double alpha = 0.7;
  const StationaryOracle st(alpha);
  for (double l : {-1.5, -0.5, 0.0, 0.5, 1.5}) {
    const auto z = st.z_value(l);
    const C m_plus = JacobiHalflineModel::m_boundary(l) + 1.0 / alpha;
    const C direct = -1.0 / ((1.0 + l * l) * m_plus);
    CHECK(std::abs(z.z - direct) <= 1e-6);
  }
}

TEST_CASE("Z identity for the free pair at near-zero coupling") {
  // alpha -> 0 keeps both routes finite and equal: M ~ 1/alpha dominates.
  const double alpha = 1e-3;
  const StationaryOracle st(alpha);
  const auto z = st.z_value(0.5);
  const C m_plus = JacobiHalflineModel::m_boundary(0.5) + 1.0 / alpha;
  CHECK(std::abs(z.z - (-1.0 / (1.25 * m_plus))) <= 1e-8);
}

TEST_CASE("three-route agreement for the chain pair") {
  const double alpha = 0.7;
  const StationaryOracle st(alpha);
  for (double l : {-1.5, -0.5, 0.0, 0.5, 1.5}) {
    const C s_engine = engine_s(alpha, l);
    const C s_classic = rank_one_s(alpha, l);
    const C s_stat = st.stationary_smatrix(l).S;
    CHECK(std::abs(s_engine - s_classic) <= 1e-12);
    CHECK(std::abs(s_stat - s_engine) <= 1e-6);
    CHECK(std::abs(s_stat - s_classic) <= 1e-6);
    CHECK(std::abs(std::abs(s_stat) - 1.0) <= 1e-6);  // unitary to tolerance
  }
}

TEST_CASE("alpha = 0 stationary route collapses to the identity") {
  // B = A: Q*(B-z)^{-1}Q and the rest cancel so S = 1. alpha = 0 breaks the
  // M-based normalization, so approach by a tiny coupling.
  const StationaryOracle st(1e-6);
  const auto s = st.stationary_smatrix(0.3);
  CHECK(std::abs(s.S - 1.0) <= 1e-5);
}

TEST_CASE("band-edge behaviour is reported, not gated") {
  // Near the band edge the limiting-absorption limits degrade; the route
  // must still produce a sane sample with an honest error estimate instead
  // of silently asserting tight agreement.
  const StationaryOracle st(0.7);
  const auto s = st.stationary_smatrix(1.9);
  CHECK(std::isfinite(s.S.real()));
  CHECK(std::isfinite(s.S.imag()));
  CHECK(std::abs(std::abs(s.S) - 1.0) < 1e-2);
  const C cls = rank_one_s(0.7, 1.9);
  CHECK(std::abs(s.S - cls) < 1e-2);
}

TEST_CASE("truncation-too-small detector") {
  StationarySetup setup;
  setup.truncation = 200;  // far too short for the default schedule
  setup.pad_fraction = 0.25;
  bool flagged = false;
  try {
    const StationaryOracle st(0.7, setup);
    const auto k = st.spectral_density(0.0);
    // if it did not throw, the density must at least be badly off
    flagged = std::abs(k.K - 1.0 / M_PI) > 1e-4;
  } catch (const TruncationTooSmall&) {
    flagged = true;
  }
  CHECK(flagged);
}
