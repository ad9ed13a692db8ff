// Acceptance suite: every release-gating property, one PASS/FAIL line each.
// Exit status is the number of failed criteria.

#include <chrono>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "weylscat/krein.hpp"
#include "weylscat/models.hpp"
#include "weylscat/scattering.hpp"
#include "weylscat/schatten.hpp"
#include "weylscat/stationary.hpp"
#include "weylscat/weyl.hpp"

using namespace weylscat;
using C = std::complex<double>;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int id, bool pass, const std::string& what, const std::string& detail) {
  std::printf("criterion %d [%s] %s (%s)\n", id, pass ? "PASS" : "FAIL", what.c_str(),
              detail.c_str());
  if (!pass) ++g_failures;
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2e", v);
  return buf;
}

std::vector<double> uniform_grid(double lo, double hi, int n) {
  std::vector<double> g;
  for (int i = 0; i < n; ++i) g.push_back(lo + double(i) * (hi - lo) / double(n - 1));
  return g;
}

RadialParams radial(double alpha, double R = 1.0) {
  RadialParams p;
  p.R = R;
  p.alpha = AlphaCoefficient::constant(alpha);
  return p;
}

double max_abs(const ComplexMatrix& a, const ComplexMatrix& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

// ---- 1: unitarity sweep over every shipped model --------------------------
void criterion_unitarity() {
  const auto t0 = std::chrono::steady_clock::now();
  struct Case {
    ModelHandle model;
    int budget;
  };
  std::vector<Case> cases;
  cases.push_back({make_delta_line(1.0), 1});
  cases.push_back({make_jacobi_halfline(0.7), 1});
  cases.push_back({make_radial(RadialKind::disk_dirichlet_robin, radial(1.0)), 63});
  cases.push_back({make_radial(RadialKind::disk_neumann_robin, radial(1.0)), 63});
  cases.push_back({make_radial(RadialKind::circle_dirichlet_free, radial(1.0)), 63});
  cases.push_back({make_radial(RadialKind::circle_neumann_free, radial(1.0)), 63});
  cases.push_back({make_radial(RadialKind::circle_delta_shell, radial(1.0)), 63});
  cases.push_back({make_radial(RadialKind::sphere_delta_shell, radial(1.0)), 64});

  double worst = 0.0;
  std::size_t excluded = 0, others = 0, points = 0;
  for (const Case& cs : cases) {
    const auto band = cs.model->default_band();
    const auto grid = uniform_grid(band.first, band.second, 100);
    const ChannelTruncation trunc = cs.model->truncation(cs.budget);
    const auto sweep = smatrix_sweep(cs.model, grid, trunc);
    for (const SweepPoint& pt : sweep) {
      ++points;
      if (!pt.sample) {
        if (pt.error.find("guard band") != std::string::npos ||
            pt.error.find("threshold") != std::string::npos)
          ++excluded;
        else
          ++others;
        continue;
      }
      worst = std::max(worst, pt.sample->unitarity_defect);
    }
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool pass = worst <= 1e-8 && others == 0 && secs < 60.0;
  report(1, pass, "unitarity over 8 models x 100-point sweeps",
         "max defect " + sci(worst) + ", " + std::to_string(excluded) +
             " excluded points, " + sci(secs) + " s");
}

// ---- 2: representation-formula route vs analytic oracle ----------------------------------
void criterion_oracle() {
  SweepOptions opt;
  opt.route = SweepRoute::weyl_form;
  opt.boundary.rank_tol_factor = 1e-12;  // keep threshold channels comparable
  const auto grid = uniform_grid(0.3, 9.9, 25);
  double worst = 0.0;

  auto run = [&](const ModelHandle& model, int budget) {
    const ChannelTruncation t = model->truncation(budget);
    for (double l : grid) {
      const ScatteringMatrixSample s = smatrix_at(model, l, t, opt);
      worst = std::max(worst, max_abs(embed_full(s, t.size()),
                                      model->oracle_smatrix_full(l, t)));
    }
  };
  for (double a : {0.5, 2.0, -1.0}) run(make_delta_line(a), 1);
  for (double a : {1.0, -0.5}) {
    run(make_radial(RadialKind::disk_neumann_robin, radial(a)), 33);
    run(make_radial(RadialKind::disk_dirichlet_robin, radial(a)), 33);
  }
  for (double a : {1.0, 3.0}) {
    run(make_radial(RadialKind::circle_delta_shell, radial(a)), 33);
    run(make_radial(RadialKind::sphere_delta_shell, radial(a)), 289);
  }
  report(2, worst <= 1e-8, "scattering matrix vs partial-wave/transfer oracle",
         "max entrywise deviation " + sci(worst));
}

// ---- 3 and 4: three-route agreement and the Z identity ---------------------
void criterion_three_route_and_z() {
  const auto t0 = std::chrono::steady_clock::now();
  const double alpha = 0.7;
  const StationaryOracle st(alpha);
  const ModelHandle model = make_jacobi_halfline(alpha);
  const ChannelTruncation t = model->truncation(1);
  double worst_pair = 0.0, worst_z = 0.0;
  for (double l : {-1.5, -0.5, 0.0, 0.5, 1.5}) {
    const C s_weyl = smatrix(boundary_limit(model, l, t)).S(0, 0);
    const C s_stat = st.stationary_smatrix(l).S;
    const C s_cls = model->oracle_smatrix_full(l, t)(0, 0);
    worst_pair = std::max({worst_pair, std::abs(s_weyl - s_stat),
                           std::abs(s_weyl - s_cls), std::abs(s_stat - s_cls)});
    const auto z = st.z_value(l);
    const C m_plus = model->weyl_boundary(l, t)(0, 0);
    worst_z = std::max(worst_z, std::abs(z.z + 1.0 / ((1.0 + l * l) * m_plus)));
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report(3, worst_pair <= 1e-6 && secs < 120.0,
         "three-route agreement on the half-line chain (alpha=0.7, N=4000)",
         "max pairwise deviation " + sci(worst_pair) + ", " + sci(secs) + " s");
  report(4, worst_z <= 1e-6, "Z identity: stationary route vs -M(lambda+i0)^{-1}/(1+lambda^2)",
         "max residual " + sci(worst_z));
}

// ---- 5: Krein residuals -----------------------------------------------------
void criterion_krein() {
  const JacobiChainPair pair(2000, 0.7);
  const double r_chain = krein_residual(pair, {0.5, 0.5}, pair.probes(16));

  const DeltaLineGrid grid(200.0, 0.01, 1.3);
  const double r_fd = krein_residual(grid, {0.0, 1.0}, grid.probes(16));
  const DeltaLineGrid fine(200.0, 0.005, 1.3);
  const double r_fd2 = krein_residual(fine, {0.0, 1.0}, fine.probes(16));
  const double ratio = r_fd2 / r_fd;

  const bool pass = r_chain <= 1e-8 && r_fd <= 1e-4 && ratio <= 0.3;
  report(5, pass, "Krein resolvent-formula residuals",
         "chain " + sci(r_chain) + ", fd " + sci(r_fd) + ", halving ratio " + sci(ratio));
}

// ---- 6: gamma/M identity suite ---------------------------------------------
void criterion_gamma_identities() {
  const JacobiChainPair pair(2000, 0.7);
  const std::vector<C> zs = {{0.5, 0.5}, {-0.8, 1.0}, {1.3, 0.3}};
  double worst = 0.0;
  for (const auto& row : gamma_field_audit(pair, zs))
    worst = std::max({worst, row.gutgut, row.imm, row.gform1});
  report(6, worst <= 1e-8, "gamma/M identities over a 3x3 (z, xi) grid",
         "max residual " + sci(worst));
}

// ---- 7: Schatten upper bounds ------------------------------------------------
void criterion_schatten() {
  const C zi(0.0, 1.0);
  const auto a = sv_decay(make_radial(RadialKind::circle_dirichlet_free, radial(1.0)),
                          DecayEntity::im_weyl_at_z, zi, 128, 2.0);
  const auto b = sv_decay(make_radial(RadialKind::disk_neumann_robin, radial(1.0)),
                          DecayEntity::krein_difference, zi, 128, 3.0);
  const auto c = sv_decay(make_radial(RadialKind::sphere_delta_shell, radial(1.0)),
                          DecayEntity::krein_difference, zi, 128, 1.5);
  report(7, a.pass && b.pass && c.pass, "singular-value decay upper bounds",
         "fitted exponents " + sci(a.fitted_exponent) + "/" + sci(b.fitted_exponent) +
             "/" + sci(c.fitted_exponent) + " vs bounds 2/3/1.5");
}

// ---- 8: invariance properties -------------------------------------------------
void criterion_invariance() {
  const ModelHandle model = make_radial(RadialKind::disk_neumann_robin, radial(1.0));
  const ChannelTruncation t = model->truncation(17);
  const BoundaryLimit bl = boundary_limit(model, 2.0, t);
  const ScatteringMatrixSample base = smatrix(bl);
  double worst_scale = 0.0;
  for (double cfac : {0.1, 7.0}) {
    ComplexMatrix scaled = bl.M_plus;
    scaled *= C(cfac, 0.0);
    const BoundaryLimit blc = finish_boundary_limit(2.0, scaled, t, 1e-8, 0.0);
    worst_scale = std::max(worst_scale, max_abs(embed_full(smatrix(blc), t.size()),
                                                embed_full(base, t.size())));
  }

  double prev = 1e300;
  bool monotone = true;
  for (double a : {1e-2, 1e-4, 1e-6}) {
    const ModelHandle m = make_radial(RadialKind::circle_delta_shell, radial(a));
    const ScatteringMatrixSample s = smatrix_at(m, 2.0, m->truncation(17));
    const double dist =
        (embed_full(s, 17) - ComplexMatrix::identity(17)).frobenius_norm();
    if (dist >= prev) monotone = false;
    prev = dist;
  }

  SweepOptions robin, generic;
  robin.route = SweepRoute::robin_form;
  generic.route = SweepRoute::weyl_form;
  double worst_equiv = 0.0;
  for (const RadialKind kind :
       {RadialKind::disk_neumann_robin, RadialKind::circle_delta_shell,
        RadialKind::sphere_delta_shell}) {
    const ModelHandle m = make_radial(kind, radial(1.0));
    const ChannelTruncation tt = m->truncation(17);
    const auto s1 = smatrix_at(m, 1.0, tt, robin);
    const auto s2 = smatrix_at(m, 1.0, tt, generic);
    worst_equiv = std::max(worst_equiv, max_abs(embed_full(s1, tt.size()),
                                                embed_full(s2, tt.size())));
  }

  const bool pass = worst_scale <= 1e-10 && monotone && worst_equiv <= 1e-10;
  report(8, pass, "invariances: scaling, alpha->0 continuity, robin/weyl-form equivalence",
         "scale " + sci(worst_scale) + ", monotone " + (monotone ? std::string("yes") : "no") +
             ", equivalence " + sci(worst_equiv));
}

// ---- 9: CLI determinism ---------------------------------------------------------
void criterion_determinism() {
  const char* cli = std::getenv("WEYL_SCATTER_CLI");
  if (!cli) {
    report(9, false, "CLI determinism", "WEYL_SCATTER_CLI not set");
    return;
  }
  const fs::path base = fs::temp_directory_path() / "weylscat_acceptance";
  fs::remove_all(base);
  fs::create_directories(base);
  auto slurp = [](const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
  };
  const std::string args =
      " smatrix --model circle-delta-shell --radius 1.0 --alpha 1.0 "
      "--lambda 0.5:9.5:11 --modes 17 --out-dir ";
  const std::string run1 = std::string(cli) + args + (base / "r1").string() + " >/dev/null 2>&1";
  const std::string run2 = std::string(cli) + args + (base / "r2").string() + " >/dev/null 2>&1";
  const bool ok1 = std::system(run1.c_str()) == 0;
  const bool ok2 = std::system(run2.c_str()) == 0;
  const bool identical = ok1 && ok2 &&
                         slurp(base / "r1" / "smatrix.csv") == slurp(base / "r2" / "smatrix.csv") &&
                         !slurp(base / "r1" / "smatrix.csv").empty();
  report(9, identical, "CLI determinism: identical runs, byte-identical CSV",
         identical ? "outputs match" : "outputs differ or run failed");
}

}  // namespace

int main() {
  criterion_unitarity();
  criterion_oracle();
  criterion_three_route_and_z();
  criterion_krein();
  criterion_gamma_identities();
  criterion_schatten();
  criterion_invariance();
  criterion_determinism();
  std::printf("%d criteria failed\n", g_failures);
  return g_failures;
}
