#ifndef WEYLSCAT_SCATTERING_HPP
#define WEYLSCAT_SCATTERING_HPP

// Scattering-matrix assembly from boundary values of the Weyl function:
//   S(lambda) = I - 2i sqrt(Im M) M^{-1} sqrt(Im M)   compressed to H_lambda,
// the Robin-pencil variant
//   S(lambda) = I + 2i sqrt(Im N) (I - alpha N)^{-1} alpha sqrt(Im N),
// eigenphases, and grid sweeps.

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "weylscat/complex_matrix.hpp"
#include "weylscat/errors.hpp"
#include "weylscat/parallel.hpp"
#include "weylscat/weyl.hpp"

namespace weylscat {

struct ScatteringMatrixSample {
  double lambda = 0.0;
  ComplexMatrix S;                 // r x r on H_lambda
  ComplexMatrix channel_isometry;  // n x r
  double unitarity_defect = 0.0;
  bool flagged = false;            // defect above tolerance
  std::vector<double> eigenphases;            // ascending in (-pi, pi]
  std::vector<std::size_t> eigenphase_channels;  // dominant channel per phase
};

struct EngineOptions {
  double unitarity_tol = 1e-8;
  double cond_cap = 1e12;
};

namespace enginedetail {

inline double unitarity_defect(const ComplexMatrix& s) {
  if (s.rows() == 0) return 0.0;
  return (s * s.adjoint() - ComplexMatrix::identity(s.rows())).frobenius_norm();
}

// Eigenphases of a unitary matrix through a rotated Cayley transform:
// pick a phase w on the unit circle with I + wS well conditioned, then
// H = i (I - wS)(I + wS)^{-1} is Hermitian with eigenvalues tan((th+phi)/2).
inline void unitary_eigenphases(const ComplexMatrix& s, const ComplexMatrix& isometry,
                                std::vector<double>& phases,
                                std::vector<std::size_t>& channels) {
  phases.clear();
  channels.clear();
  const std::size_t r = s.rows();
  if (r == 0) return;

  const double golden = 2.39996322972865332;  // golden angle
  for (int attempt = 0; attempt < 12; ++attempt) {
    const double phi = golden * double(attempt);
    const Complex w = std::polar(1.0, phi);
    ComplexMatrix a = s;
    a *= w;
    const ComplexMatrix ipws = ComplexMatrix::identity(r) + a;
    ComplexMatrix imws = ComplexMatrix::identity(r) - a;
    SolveResult sol;
    try {
      sol = solve(ipws, imws, 1e8);
    } catch (const SingularMatrix&) {
      continue;  // an eigenphase sits near pi - phi, rotate again
    }
    ComplexMatrix h = sol.x;
    h *= Complex(0.0, 1.0);
    h = hermitize(h);
    const HermitianEig eig = herm_eig(h);

    std::vector<std::pair<double, std::size_t>> rows;
    rows.reserve(r);
    for (std::size_t k = 0; k < r; ++k) {
      double theta = 2.0 * std::atan(eig.eigenvalues[k]) - phi;
      while (theta <= -M_PI) theta += 2.0 * M_PI;
      while (theta > M_PI) theta -= 2.0 * M_PI;
      // dominant channel of the eigenvector lifted back to the full space
      std::size_t best = 0;
      double best_mag = -1.0;
      for (std::size_t i = 0; i < isometry.rows(); ++i) {
        Complex acc = 0.0;
        for (std::size_t j = 0; j < r; ++j) acc += isometry(i, j) * eig.eigenvectors(j, k);
        const double mag = std::abs(acc);
        if (mag > best_mag + 1e-12) {
          best_mag = mag;
          best = i;
        }
      }
      rows.emplace_back(theta, best);
    }
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
      if (std::abs(a.first - b.first) > 1e-12) return a.first < b.first;
      return a.second < b.second;
    });
    for (const auto& [theta, ch] : rows) {
      phases.push_back(theta);
      channels.push_back(ch);
    }
    return;
  }
  throw ConvergenceFailure("unitary_eigenphases: no usable Cayley rotation found");
}

inline ScatteringMatrixSample finish_sample(double lambda, ComplexMatrix s_full,
                                            const BoundaryLimit& bl,
                                            const EngineOptions& opt) {
  ScatteringMatrixSample out;
  out.lambda = lambda;
  out.channel_isometry = bl.channel_isometry;
  const ComplexMatrix& p = bl.channel_isometry;
  out.S = p.adjoint() * s_full * p;
  out.unitarity_defect = unitarity_defect(out.S);
  out.flagged = out.unitarity_defect > opt.unitarity_tol;
  try {
    unitary_eigenphases(out.S, p, out.eigenphases, out.eigenphase_channels);
  } catch (const Error&) {
    // far-from-unitary samples keep their matrix but carry no phase table
    out.eigenphases.clear();
    out.eigenphase_channels.clear();
    out.flagged = true;
  }
  return out;
}

}  // namespace enginedetail

// Assembly of the representation formula on M(lambda + i0).
inline ScatteringMatrixSample smatrix(const BoundaryLimit& bl,
                                      const EngineOptions& opt = {}) {
  const std::size_t n = bl.M_plus.rows();
  const std::size_t r = bl.channel_isometry.cols();
  if (r == 0) {
    ScatteringMatrixSample out;
    out.lambda = bl.lambda;
    out.channel_isometry = bl.channel_isometry;
    out.S = ComplexMatrix(0, 0);
    return out;
  }
  const ComplexMatrix q = psd_sqrt(bl.im_M);
  ComplexMatrix x;
  try {
    x = solve(bl.M_plus, q, opt.cond_cap).x;
  } catch (const SingularMatrix& e) {
    throw SingularWeylValue(std::string("smatrix: M(lambda+i0) numerically singular: ") +
                            e.what());
  }
  ComplexMatrix s_full = q * x;
  s_full *= Complex(0.0, -2.0);
  s_full += ComplexMatrix::identity(n);
  return enginedetail::finish_sample(bl.lambda, std::move(s_full), bl, opt);
}

// Robin-pencil assembly on N(lambda + i0); valid at alpha = 0 and equal to
// smatrix on M = N - alpha^{-1} whenever alpha is invertible.
inline ScatteringMatrixSample robin_form_smatrix(const BoundaryLimit& bl_of_N,
                                                 const ComplexMatrix& alpha,
                                                 const EngineOptions& opt = {}) {
  const std::size_t n = bl_of_N.M_plus.rows();
  const std::size_t r = bl_of_N.channel_isometry.cols();
  if (r == 0) {
    ScatteringMatrixSample out;
    out.lambda = bl_of_N.lambda;
    out.channel_isometry = bl_of_N.channel_isometry;
    out.S = ComplexMatrix(0, 0);
    return out;
  }
  const ComplexMatrix q = psd_sqrt(bl_of_N.im_M);
  ComplexMatrix pencil = ComplexMatrix::identity(n) - alpha * bl_of_N.M_plus;
  ComplexMatrix x;
  try {
    x = solve(pencil, alpha * q, opt.cond_cap).x;
  } catch (const SingularMatrix& e) {
    throw SingularRobinPencil(std::string("robin_form_smatrix: I - alpha N singular: ") +
                              e.what());
  }
  ComplexMatrix s_full = q * x;
  s_full *= Complex(0.0, 2.0);
  s_full += ComplexMatrix::identity(n);
  return enginedetail::finish_sample(bl_of_N.lambda, std::move(s_full), bl_of_N, opt);
}

// Expand the compressed S back to the full truncation space: identity on the
// orthogonal complement of H_lambda.
inline ComplexMatrix embed_full(const ScatteringMatrixSample& s, std::size_t n) {
  const ComplexMatrix& p = s.channel_isometry;
  ComplexMatrix out = ComplexMatrix::identity(n);
  if (s.S.rows() == 0) return out;
  const ComplexMatrix psp = p * s.S * p.adjoint();
  const ComplexMatrix pp = p * p.adjoint();
  out += psp;
  out -= pp;
  return out;
}

enum class SweepRoute { automatic, weyl_form, robin_form };

struct SweepOptions {
  BoundaryOptions boundary;
  EngineOptions engine;
  SweepRoute route = SweepRoute::automatic;
};

struct SweepPoint {
  double lambda = 0.0;
  std::optional<ScatteringMatrixSample> sample;
  std::string error;  // nonempty when the point failed
};

inline ScatteringMatrixSample smatrix_at(const ModelHandle& model, double lambda,
                                         const ChannelTruncation& trunc,
                                         const SweepOptions& opt = {}) {
  const bool robin = opt.route == SweepRoute::robin_form ||
                     (opt.route == SweepRoute::automatic && model->has_robin_split());
  if (robin) {
    model->check_lambda(lambda);
    const ComplexMatrix n_plus = model->robin_N(lambda, trunc);
    const BoundaryLimit bl = finish_boundary_limit(lambda, n_plus, trunc,
                                                   opt.boundary.rank_tol_factor, 0.0);
    return robin_form_smatrix(bl, model->robin_alpha_matrix(trunc), opt.engine);
  }
  const BoundaryLimit bl = boundary_limit(model, lambda, trunc, opt.boundary);
  return smatrix(bl, opt.engine);
}

inline std::vector<SweepPoint> smatrix_sweep(const ModelHandle& model,
                                             const std::vector<double>& lambda_grid,
                                             const ChannelTruncation& trunc,
                                             const SweepOptions& opt = {}) {
  std::vector<SweepPoint> out(lambda_grid.size());
  parallel_for(lambda_grid.size(), [&](std::size_t i) {
    out[i].lambda = lambda_grid[i];
    try {
      out[i].sample = smatrix_at(model, lambda_grid[i], trunc, opt);
    } catch (const Error& e) {
      out[i].error = e.what();
    }
  });
  return out;
}

struct EigenphaseRow {
  double lambda = 0.0;
  std::size_t channel = 0;
  double phase_rad = 0.0;
};

inline std::vector<EigenphaseRow> eigenphase_report(
    const std::vector<ScatteringMatrixSample>& samples, double tol = 1e-8) {
  std::vector<EigenphaseRow> rows;
  for (const ScatteringMatrixSample& s : samples) {
    if (s.unitarity_defect > tol)
      throw NonUnitarySample("eigenphase_report: unitarity defect " +
                             std::to_string(s.unitarity_defect) + " above tolerance");
    for (std::size_t k = 0; k < s.eigenphases.size(); ++k)
      rows.push_back({s.lambda, s.eigenphase_channels[k], s.eigenphases[k]});
  }
  return rows;
}

}  // namespace weylscat

#endif
