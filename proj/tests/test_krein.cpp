#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "weylscat/krein.hpp"

using namespace weylscat;
using C = std::complex<double>;

TEST_CASE("krein residual vanishes for identical operators") {
  const JacobiChainPair pair(800, 0.0);
  const auto probes = pair.probes(4);
  CHECK(krein_residual(pair, {0.5, 0.5}, probes) <= 1e-12);
}

TEST_CASE("krein residual on the truncated chain") {
  const JacobiChainPair pair(2000, 0.7);
  const auto probes = pair.probes(16);
  CHECK(krein_residual(pair, {0.5, 0.5}, probes) <= 1e-8);

  // decreases under truncation growth
  const JacobiChainPair small(400, 0.7);
  const JacobiChainPair big(800, 0.7);
  const auto ps = small.probes(4);
  const auto pb = big.probes(4);
  const double rs = krein_residual(small, {0.1, 0.2}, ps);
  const double rb = krein_residual(big, {0.1, 0.2}, pb);
  CHECK(rb < rs);
}

TEST_CASE("krein residual on the finite-difference delta line") {
  const DeltaLineGrid grid(200.0, 0.01, 1.3);
  const auto probes = grid.probes(8);
  const double r = krein_residual(grid, {0.0, 1.0}, probes);
  CHECK(r <= 1e-4);

  // measured second-order improvement under grid halving
  const DeltaLineGrid fine(200.0, 0.005, 1.3);
  const double rf = krein_residual(fine, {0.0, 1.0}, fine.probes(8));
  CHECK(rf <= 0.3 * r);
}

TEST_CASE("gamma/M identities on the chain") {
  const JacobiChainPair pair(2000, 0.7);
  const std::vector<C> zs = {{0.5, 0.5}, {-0.3, 1.0}, {1.2, 0.25}};
  const auto rows = gamma_field_audit(pair, zs);
  REQUIRE(rows.size() == 9);
  for (const auto& row : rows) {
    CHECK(row.gutgut <= 1e-8);
    CHECK(row.imm <= 1e-8);
    CHECK(row.gform1 <= 1e-8);
    CHECK(row.range <= 1e-8);
    if (row.z == row.xi) CHECK(row.gform1 <= 1e-14);  // reduces to gamma = gamma
  }
}

TEST_CASE("gamma/M identities on the grid are discretization-limited") {
  const DeltaLineGrid grid(200.0, 0.01, 0.9);
  const std::vector<C> zs = {{0.0, 1.0}, {0.4, 0.7}};
  const auto rows = gamma_field_audit(grid, zs);
  for (const auto& row : rows) {
    CHECK(row.gutgut <= 1e-4);
    CHECK(row.imm <= 1e-4);
    CHECK(row.gform1 <= 1e-3);
    CHECK(row.range <= 1e-3);
  }
}

TEST_CASE("degenerate gutgut pair") {
  // xi = conj(z) makes both sides of gutgut vanish identically: M(z) - M(z)
  // against (z - z) gamma^* gamma.
  const JacobiChainPair pair(1000, 0.7);
  const C z(0.5, 0.5);
  const C mz = pair.weyl(z);
  const C mzbar_conj = std::conj(pair.weyl(std::conj(z)));
  CHECK(std::abs(mz - mzbar_conj) < 1e-14);
}
