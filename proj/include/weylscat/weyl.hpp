#ifndef WEYLSCAT_WEYL_HPP
#define WEYLSCAT_WEYL_HPP

// Weyl-function evaluation and boundary-value machinery: M(lambda + i0)
// either directly from the model's outgoing-solution formulas or by
// epsilon -> 0 extrapolation, plus the Nevanlinna audit.

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "weylscat/complex_matrix.hpp"
#include "weylscat/errors.hpp"
#include "weylscat/extrapolate.hpp"
#include "weylscat/models.hpp"
#include "weylscat/weyl_types.hpp"

namespace weylscat {

inline WeylSample evaluate_weyl(const ModelHandle& model, const SpectralPoint& pt,
                                const ChannelTruncation& trunc) {
  if (pt.epsilon < 0.0)
    throw ModelDomainError("evaluate_weyl: epsilon must be nonnegative");
  WeylSample s;
  s.truncation = trunc;
  if (pt.epsilon == 0.0) {
    model->check_lambda(pt.lambda);  // boundary values exist off the exclusion set
    s.z = {pt.lambda, 0.0};
    s.boundary = true;
    s.M = model->weyl_boundary(pt.lambda, trunc);
  } else {
    s.z = pt.z();
    s.boundary = false;
    s.M = model->weyl_matrix(pt.z(), trunc);
  }
  return s;
}

enum class BoundaryStrategy { direct, extrapolate };

struct BoundaryOptions {
  BoundaryStrategy strategy = BoundaryStrategy::direct;
  EpsilonSchedule schedule;
  double rank_tol_factor = 1e-8;  // rank_tol = factor * max eigenvalue of Im M
};

// Build the channel space H_lambda = ran Im M(lambda+i0) from M_plus.
inline BoundaryLimit finish_boundary_limit(double lambda, ComplexMatrix m_plus,
                                           const ChannelTruncation& trunc,
                                           double rank_tol_factor,
                                           double extrapolation_error) {
  BoundaryLimit bl;
  bl.lambda = lambda;
  bl.truncation = trunc;
  bl.M_plus = std::move(m_plus);
  const std::size_t n = bl.M_plus.rows();
  ComplexMatrix im(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Complex v = (bl.M_plus(i, j) - std::conj(bl.M_plus(j, i))) /
                        Complex(0.0, 2.0);
      im(i, j) = v;
    }
  im = hermitize(im);
  const HermitianEig eig = herm_eig(im);
  const double top = eig.eigenvalues.empty() ? 0.0 : eig.eigenvalues.back();
  // Relative rule with an absolute floor so that an Im M at roundoff level
  // yields an empty channel space instead of noise channels.
  bl.rank_tol = std::max(rank_tol_factor * std::max(top, 0.0),
                         1e-13 * (1.0 + bl.M_plus.frobenius_norm()));
  const double neg_floor =
      std::max(bl.rank_tol, 1e-10 * (1.0 + bl.M_plus.frobenius_norm()));
  if (!eig.eigenvalues.empty() && eig.eigenvalues.front() < -neg_floor)
    throw ModelDomainError("boundary_limit: Im M has an eigenvalue below -rank_tol");

  std::size_t r = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double w = eig.eigenvalues[k];
    if (w > bl.rank_tol) ++r;
    if (bl.rank_tol > 0.0 && w > bl.rank_tol / 10.0 && w < bl.rank_tol * 10.0)
      bl.rank_ambiguous = true;
  }
  bl.channel_isometry = ComplexMatrix(n, r);
  std::size_t col = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (eig.eigenvalues[k] > bl.rank_tol) {
      for (std::size_t i = 0; i < n; ++i)
        bl.channel_isometry(i, col) = eig.eigenvectors(i, k);
      ++col;
    }
  }
  // Clip roundoff negatives so im_M is PSD as stated.
  ComplexMatrix clipped(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Complex acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        const double w = std::max(eig.eigenvalues[k], 0.0);
        acc += eig.eigenvectors(i, k) * w * std::conj(eig.eigenvectors(j, k));
      }
      clipped(i, j) = acc;
    }
  bl.im_M = hermitize(clipped);
  bl.extrapolation_error = extrapolation_error;
  return bl;
}

inline BoundaryLimit boundary_limit(const ModelHandle& model, double lambda,
                                    const ChannelTruncation& trunc,
                                    const BoundaryOptions& opt = {}) {
  model->check_lambda(lambda);
  if (opt.strategy == BoundaryStrategy::direct) {
    return finish_boundary_limit(lambda, model->weyl_boundary(lambda, trunc), trunc,
                                 opt.rank_tol_factor, 0.0);
  }
  const std::vector<double> eps = opt.schedule.values();
  std::vector<ComplexMatrix> samples;
  samples.reserve(eps.size());
  for (double e : eps) samples.push_back(model->weyl_matrix({lambda, e}, trunc));

  // Divergence detector on successive differences.
  double first_diff = -1.0, last_diff = -1.0;
  for (std::size_t k = 1; k < samples.size(); ++k) {
    const double d = (samples[k] - samples[k - 1]).frobenius_norm();
    if (k == 1) first_diff = d;
    last_diff = d;
  }
  if (samples.size() > 2 && last_diff > first_diff && first_diff >= 0.0)
    throw ExtrapolationDiverged("boundary_limit: epsilon differences non-decreasing");

  const std::size_t n = trunc.size();
  ComplexMatrix m_plus(n, n);
  double err = 0.0;
  std::vector<Complex> entry(eps.size());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < eps.size(); ++k) entry[k] = samples[k](i, j);
      const auto ex = extrapolate_to_zero(eps, entry);
      m_plus(i, j) = ex.value;
      err = std::max(err, ex.error_estimate);
    }
  return finish_boundary_limit(lambda, std::move(m_plus), trunc, opt.rank_tol_factor, err);
}

struct NevanlinnaAuditRow {
  std::complex<double> z;
  double min_im_eigenvalue = 0.0;      // strictness witness, should be > 0
  double conj_symmetry_residual = 0.0; // ||M(conj z) - M(z)^*||_F
  double weyl_norm = 0.0;
};

struct NevanlinnaAuditReport {
  std::string model_id;
  std::vector<NevanlinnaAuditRow> rows;
  // Singular values of Im M(z0) across truncation sizes (decay witness).
  std::vector<std::size_t> truncation_sizes;
  std::vector<std::vector<double>> im_singular_values;
  bool strict = true;
};

inline NevanlinnaAuditReport nevanlinna_audit(const ModelHandle& model,
                                              const std::vector<SpectralPoint>& grid,
                                              const ChannelTruncation& trunc) {
  NevanlinnaAuditReport rep;
  rep.model_id = model->id();
  for (const SpectralPoint& pt : grid) {
    if (!(pt.epsilon > 0.0))
      throw ModelDomainError("nevanlinna_audit: grid must lie in the open upper half-plane");
    NevanlinnaAuditRow row;
    row.z = pt.z();
    const ComplexMatrix m = model->weyl_matrix(pt.z(), trunc);
    row.weyl_norm = m.frobenius_norm();
    const std::size_t n = m.rows();
    ComplexMatrix im(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        im(i, j) = (m(i, j) - std::conj(m(j, i))) / Complex(0.0, 2.0);
    const HermitianEig eig = herm_eig(hermitize(im));
    row.min_im_eigenvalue = eig.eigenvalues.empty() ? 0.0 : eig.eigenvalues.front();
    if (row.min_im_eigenvalue <= 0.0) rep.strict = false;

    const ComplexMatrix m_conj = model->weyl_matrix(std::conj(pt.z()), trunc);
    row.conj_symmetry_residual = (m_conj - m.adjoint()).frobenius_norm();
    rep.rows.push_back(row);
  }

  if (!grid.empty()) {
    const std::size_t full = trunc.size();
    for (std::size_t budget : {full / 4, full / 2, full}) {
      if (budget == 0) continue;
      const ChannelTruncation sub = model->truncation(int(budget));
      const std::size_t sz = sub.size();
      const ComplexMatrix m = model->weyl_matrix(grid.front().z(), sub);
      ComplexMatrix im(sz, sz);
      for (std::size_t i = 0; i < sz; ++i)
        for (std::size_t j = 0; j < sz; ++j)
          im(i, j) = (m(i, j) - std::conj(m(j, i))) / Complex(0.0, 2.0);
      rep.truncation_sizes.push_back(sz);
      rep.im_singular_values.push_back(singular_values(hermitize(im)));
    }
  }
  return rep;
}

}  // namespace weylscat

#endif
