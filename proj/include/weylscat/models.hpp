#ifndef WEYLSCAT_MODELS_HPP
#define WEYLSCAT_MODELS_HPP

// The model zoo: exactly solvable operator pairs supplying Weyl samples,
// boundary values, mode symbols and independent scattering oracles.
//
// Sign conventions, fixed once: gamma_N is the outward normal derivative of
// the domain, so the exterior of a disk/sphere of radius R has
// gamma_N = -d/dr at r = R and the interior has +d/dr. Outgoing exterior
// solutions are H^1 (cylinder) and h^1 (sphere); below both spectra this
// makes every DtN symbol positive, which tests assert.

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <string>
#include <vector>

#include "weylscat/bessel_ratios.hpp"
#include "weylscat/complex_matrix.hpp"
#include "weylscat/errors.hpp"
#include "weylscat/specfun.hpp"
#include "weylscat/weyl_types.hpp"

namespace weylscat {

class Model {
 public:
  virtual ~Model() = default;
  virtual std::string id() const = 0;

  // Truncation whose channel count does not exceed the budget.
  virtual ChannelTruncation truncation(int channel_budget) const = 0;

  // Default sweep window inside the a.c. band.
  virtual std::pair<double, double> default_band() const = 0;

  // Throws ExclusionSetHit near thresholds / interior eigenvalues.
  virtual void check_lambda(double lambda) const = 0;

  virtual ComplexMatrix weyl_matrix(std::complex<double> z,
                                    const ChannelTruncation& trunc) const = 0;
  virtual ComplexMatrix weyl_boundary(double lambda,
                                      const ChannelTruncation& trunc) const = 0;

  // Robin-pencil route S = I + 2i sqrt(Im N)(I - alpha N)^{-1} alpha sqrt(Im N).
  virtual bool has_robin_split() const { return false; }
  virtual ComplexMatrix robin_N(double /*lambda*/, const ChannelTruncation&) const {
    throw OracleUnavailable(id() + ": no Robin split");
  }
  virtual ComplexMatrix robin_alpha_matrix(const ChannelTruncation&) const {
    throw OracleUnavailable(id() + ": no Robin split");
  }

  // Independent partial-wave / transfer-matrix oracle, full truncation space
  // (identity on channels outside the a.c. spectrum).
  virtual bool oracle_available() const { return false; }
  virtual ComplexMatrix oracle_smatrix_full(double /*lambda*/,
                                            const ChannelTruncation&) const {
    throw OracleUnavailable(id() + ": no analytic oracle for this configuration");
  }

  virtual bool mode_diagonal() const = 0;
  virtual ModeSymbolTable symbols(std::complex<double> z, bool boundary,
                                  const ChannelTruncation& trunc) const = 0;
};

using ModelHandle = std::shared_ptr<const Model>;

namespace modeldetail {

inline ChannelTruncation single_channel(const std::string& name) {
  ChannelTruncation t;
  t.labels.push_back(ModeLabel{0, 0, name});
  return t;
}

// Fourier labels m = -K..K with 2K+1 <= budget.
inline ChannelTruncation fourier_truncation(int channel_budget) {
  const int K = std::max(0, (channel_budget - 1) / 2);
  ChannelTruncation t;
  for (int m = -K; m <= K; ++m)
    t.labels.push_back(ModeLabel{std::abs(m), m, "m=" + std::to_string(m)});
  return t;
}

// Spherical labels (l, m), all l with (L+1)^2 <= budget.
inline ChannelTruncation spherical_truncation(int channel_budget) {
  int L = 0;
  while ((L + 2) * (L + 2) <= channel_budget) ++L;
  if ((L + 1) * (L + 1) > channel_budget) L = 0;
  ChannelTruncation t;
  for (int l = 0; l <= L; ++l)
    for (int m = -l; m <= l; ++m)
      t.labels.push_back(
          ModeLabel{l, m, "l=" + std::to_string(l) + ",m=" + std::to_string(m)});
  return t;
}

inline int max_degree(const ChannelTruncation& trunc) {
  int d = 0;
  for (const ModeLabel& l : trunc.labels) d = std::max(d, l.ell);
  return d;
}

inline ComplexMatrix diagonal_from(const std::vector<std::complex<double>>& v) {
  ComplexMatrix m(v.size(), v.size());
  for (std::size_t i = 0; i < v.size(); ++i) m(i, i) = v[i];
  return m;
}

// S-matrix entry from two asymptotic-coefficient pairs: solutions behave as
// c * (cos-like) + d * (sin-like), the channel phase is delta = atan2(c, d),
// and S = e^{2i(delta_B - delta_A)} evaluated without branch trouble.
inline std::complex<double> phase_ratio_smatrix(std::complex<double> wB,
                                                std::complex<double> wA) {
  const std::complex<double> s = wB * std::conj(wA);
  const double a = std::abs(s);
  if (!(a > 0.0) || !std::isfinite(a)) return {1.0, 0.0};
  const std::complex<double> u = s / a;
  return u * u;
}

}  // namespace modeldetail

// ---------------------------------------------------------------------------
// delta_line: free line vs delta interaction of strength alpha at the origin,
// reduced to the even half-line channel. N(z) = i/sqrt(z), alpha_robin = -alpha/2,
// M(z) = i/sqrt(z) + 2/alpha.
// ---------------------------------------------------------------------------
class DeltaLineModel : public Model {
 public:
  explicit DeltaLineModel(double alpha) : alpha_(alpha) {}

  std::string id() const override { return "delta-line"; }
  double alpha() const { return alpha_; }

  ChannelTruncation truncation(int) const override {
    return modeldetail::single_channel("even");
  }
  std::pair<double, double> default_band() const override { return {0.05, 10.0}; }

  void check_lambda(double lambda) const override {
    if (std::abs(lambda) < 1e-12)
      throw ExclusionSetHit("delta-line: lambda at the spectral threshold 0");
  }

  std::complex<double> n_scalar(std::complex<double> z) const {
    return std::complex<double>(0.0, 1.0) / sqrt_upper(z);
  }
  std::complex<double> m_scalar(std::complex<double> z) const {
    if (alpha_ == 0.0)
      throw ModelDomainError("delta-line: M undefined at alpha = 0 (operators coincide)");
    return n_scalar(z) + 2.0 / alpha_;
  }

  ComplexMatrix weyl_matrix(std::complex<double> z, const ChannelTruncation&) const override {
    ComplexMatrix m(1, 1);
    m(0, 0) = m_scalar(z);
    return m;
  }
  ComplexMatrix weyl_boundary(double lambda, const ChannelTruncation& t) const override {
    return weyl_matrix({lambda, 0.0}, t);
  }

  bool has_robin_split() const override { return true; }
  ComplexMatrix robin_N(double lambda, const ChannelTruncation&) const override {
    ComplexMatrix n(1, 1);
    n(0, 0) = n_scalar({lambda, 0.0});
    return n;
  }
  ComplexMatrix robin_alpha_matrix(const ChannelTruncation&) const override {
    ComplexMatrix a(1, 1);
    a(0, 0) = -alpha_ / 2.0;
    return a;
  }

  bool oracle_available() const override { return true; }
  ComplexMatrix oracle_smatrix_full(double lambda, const ChannelTruncation&) const override {
    ComplexMatrix s = ComplexMatrix::identity(1);
    if (lambda > 0.0) {
      const std::complex<double> two_ik(0.0, 2.0 * std::sqrt(lambda));
      s(0, 0) = (two_ik + alpha_) / (two_ik - alpha_);
    }
    return s;
  }

  bool mode_diagonal() const override { return true; }
  ModeSymbolTable symbols(std::complex<double> z, bool boundary,
                          const ChannelTruncation& trunc) const override {
    ModeSymbolTable t;
    t.model_id = id();
    t.z = z;
    t.boundary = boundary;
    t.truncation = trunc;
    t.coupled.push_back(n_scalar(z));
    t.weyl_m.push_back(m_scalar(z));
    t.rigging.push_back(1.0);
    return t;
  }

 private:
  double alpha_;
};

// ---------------------------------------------------------------------------
// jacobi_halfline: free half-line chain (hopping 1) vs the rank-one boundary
// perturbation B = A + alpha e0 e0^T. m(z) = (sqrt(z^2-4) - z)/2 with the
// Nevanlinna branch, M(z) = m(z) + 1/alpha.
// ---------------------------------------------------------------------------
class JacobiHalflineModel : public Model {
 public:
  explicit JacobiHalflineModel(double alpha) : alpha_(alpha) {}

  std::string id() const override { return "jacobi-halfline"; }
  double alpha() const { return alpha_; }

  ChannelTruncation truncation(int) const override {
    return modeldetail::single_channel("site0");
  }
  std::pair<double, double> default_band() const override { return {-1.9, 1.9}; }

  void check_lambda(double lambda) const override {
    if (std::abs(std::abs(lambda) - 2.0) < 1e-9)
      throw ExclusionSetHit("jacobi-halfline: lambda at a band edge");
  }

  // Branch with Im m > 0 on C+, m(conj z) = conj(m(z)).
  static std::complex<double> m_function(std::complex<double> z) {
    const std::complex<double> s = std::sqrt(z - 2.0) * std::sqrt(z + 2.0);
    return 0.5 * (s - z);
  }
  static std::complex<double> m_boundary(double lambda) {
    if (std::abs(lambda) < 2.0)
      return {-lambda / 2.0, std::sqrt(4.0 - lambda * lambda) / 2.0};
    const double s = std::sqrt(lambda * lambda - 4.0);
    return {(lambda > 0.0 ? s - lambda : -s - lambda) / 2.0, 0.0};
  }

  std::complex<double> m_scalar(std::complex<double> z) const {
    if (alpha_ == 0.0)
      throw ModelDomainError("jacobi-halfline: M undefined at alpha = 0");
    return m_function(z) + 1.0 / alpha_;
  }

  ComplexMatrix weyl_matrix(std::complex<double> z, const ChannelTruncation&) const override {
    ComplexMatrix m(1, 1);
    m(0, 0) = m_scalar(z);
    return m;
  }
  ComplexMatrix weyl_boundary(double lambda, const ChannelTruncation&) const override {
    if (alpha_ == 0.0)
      throw ModelDomainError("jacobi-halfline: M undefined at alpha = 0");
    ComplexMatrix m(1, 1);
    m(0, 0) = m_boundary(lambda) + 1.0 / alpha_;
    return m;
  }

  bool has_robin_split() const override { return true; }
  ComplexMatrix robin_N(double lambda, const ChannelTruncation&) const override {
    ComplexMatrix n(1, 1);
    n(0, 0) = m_boundary(lambda);
    return n;
  }
  ComplexMatrix robin_alpha_matrix(const ChannelTruncation&) const override {
    ComplexMatrix a(1, 1);
    a(0, 0) = -alpha_;
    return a;
  }

  bool oracle_available() const override { return true; }
  // Classical rank-one formula S = (1 + alpha m(l-i0)) / (1 + alpha m(l+i0)).
  ComplexMatrix oracle_smatrix_full(double lambda, const ChannelTruncation&) const override {
    ComplexMatrix s = ComplexMatrix::identity(1);
    if (std::abs(lambda) < 2.0) {
      const std::complex<double> mp = m_boundary(lambda);
      s(0, 0) = (1.0 + alpha_ * std::conj(mp)) / (1.0 + alpha_ * mp);
    }
    return s;
  }

  bool mode_diagonal() const override { return true; }
  ModeSymbolTable symbols(std::complex<double> z, bool boundary,
                          const ChannelTruncation& trunc) const override {
    ModeSymbolTable t;
    t.model_id = id();
    t.z = z;
    t.boundary = boundary;
    t.truncation = trunc;
    const std::complex<double> mz = boundary ? m_boundary(z.real()) : m_function(z);
    t.coupled.push_back(mz);
    t.weyl_m.push_back(mz + 1.0 / alpha_);
    t.rigging.push_back(1.0);
    return t;
  }

 private:
  double alpha_;
};

// ---------------------------------------------------------------------------
// Radially symmetric continuum models.
// ---------------------------------------------------------------------------

struct RadialParams {
  double R = 1.0;
  AlphaCoefficient alpha = AlphaCoefficient::constant(1.0);
  double V0 = 0.0;  // radial constant inside r < R (coupling models only)
  RiggingWeights rigging;
};

enum class RadialKind {
  disk_dirichlet_robin,
  disk_neumann_robin,
  circle_dirichlet_free,
  circle_neumann_free,
  circle_delta_shell,
  sphere_delta_shell,
};

class RadialModel : public Model {
 public:
  RadialModel(RadialKind kind, RadialParams p) : kind_(kind), p_(p) {
    if (!(p_.R > 0.0)) throw ModelDomainError("radial model: R must be positive");
    if ((kind_ == RadialKind::disk_dirichlet_robin ||
         kind_ == RadialKind::disk_neumann_robin) &&
        p_.V0 != 0.0)
      throw ModelDomainError("exterior disk models take V = 0");
    if (kind_ == RadialKind::sphere_delta_shell &&
        p_.alpha.kind == AlphaCoefficient::Kind::fourier)
      throw ModelDomainError("sphere model: Fourier alpha not supported");
    // alpha = 0 collapses the pair to a single operator; it stays valid for
    // the Robin-pencil route and is guarded where M itself is formed.
  }

  bool has_alpha() const {
    return kind_ == RadialKind::disk_dirichlet_robin ||
           kind_ == RadialKind::disk_neumann_robin ||
           kind_ == RadialKind::circle_delta_shell ||
           kind_ == RadialKind::sphere_delta_shell;
  }

  std::string id() const override {
    switch (kind_) {
      case RadialKind::disk_dirichlet_robin: return "disk-dirichlet-robin";
      case RadialKind::disk_neumann_robin: return "disk-neumann-robin";
      case RadialKind::circle_dirichlet_free: return "circle-dirichlet-free";
      case RadialKind::circle_neumann_free: return "circle-neumann-free";
      case RadialKind::circle_delta_shell: return "circle-delta-shell";
      case RadialKind::sphere_delta_shell: return "sphere-delta-shell";
    }
    return "radial";
  }

  const RadialParams& params() const { return p_; }
  RadialKind kind() const { return kind_; }
  bool spherical() const { return kind_ == RadialKind::sphere_delta_shell; }

  ChannelTruncation truncation(int channel_budget) const override {
    return spherical() ? modeldetail::spherical_truncation(channel_budget)
                       : modeldetail::fourier_truncation(channel_budget);
  }

  std::pair<double, double> default_band() const override { return {0.1, 10.0}; }

  bool interior_dirichlet_exclusions() const {
    return kind_ == RadialKind::circle_dirichlet_free;
  }
  bool interior_neumann_exclusions() const {
    return kind_ == RadialKind::circle_neumann_free;
  }

  void check_lambda(double lambda) const override {
    if (std::abs(lambda) < 1e-12)
      throw ExclusionSetHit(id() + ": lambda at the spectral threshold 0");
    if (lambda < 0.0) return;
    if (!interior_dirichlet_exclusions() && !interior_neumann_exclusions()) return;
    // Interior eigenvalue within the relative guard band <=> a sign change of
    // J_m (or J_m') across [x(1-g), x(1+g)], x = k_in R. Only orders m <~ x
    // can have zeros that close.
    const double lam_in = lambda - p_.V0;
    if (lam_in <= 0.0) return;
    const double x = std::sqrt(lam_in) * p_.R;
    const double g = 0.5e-6;  // lambda guard 1e-6 relative -> k guard ~ 0.5e-6
    const int mmax = std::min(kOrderCap, int(x) + 2);
    for (int m = 0; m <= mmax; ++m) {
      const BesselEval lo = bessel_jy(m, x * (1.0 - g));
      const BesselEval hi = bessel_jy(m, x * (1.0 + g));
      const double a = interior_dirichlet_exclusions() ? lo.J : lo.dJ;
      const double b = interior_dirichlet_exclusions() ? hi.J : hi.dJ;
      if (a == 0.0 || b == 0.0 || (a < 0.0) != (b < 0.0))
        throw ExclusionSetHit(id() + ": lambda within guard band of an interior eigenvalue (m=" +
                              std::to_string(m) + ")");
    }
  }

  double weight(const ModeLabel& lab) const {
    switch (p_.rigging.kind) {
      case RiggingWeights::Kind::identity:
        return 1.0;
      case RiggingWeights::Kind::laplace_beltrami_quarter: {
        const double lb = spherical()
                              ? double(lab.ell) * double(lab.ell + 1) / (p_.R * p_.R)
                              : double(lab.m) * double(lab.m) / (p_.R * p_.R);
        return std::pow(1.0 + lb, 0.25);
      }
      case RiggingWeights::Kind::sqrt_dtn: {
        const double lam0 = p_.rigging.lambda0;
        if (!(lam0 < 0.0))
          throw ModelDomainError(id() + ": sqrt-DtN rigging needs lambda0 < 0");
        const std::complex<double> lam = dtn_sum_symbol(lab.ell, {lam0, 0.0});
        if (!(lam.real() > 0.0))
          throw ModelDomainError(id() + ": DtN at lambda0 not positive");
        return std::sqrt(lam.real());
      }
    }
    return 1.0;
  }

  // Full DtN symbol of the model's boundary problem at spectral parameter z:
  // exterior-only for the disk models, interior + exterior for couplings.
  std::complex<double> dtn_sum_symbol(int degree, std::complex<double> z) const {
    const auto syms = raw_symbols(z, degree);
    const bool exterior_only = kind_ == RadialKind::disk_dirichlet_robin ||
                               kind_ == RadialKind::disk_neumann_robin;
    return exterior_only ? syms.exterior[std::size_t(degree)]
                         : syms.interior[std::size_t(degree)] + syms.exterior[std::size_t(degree)];
  }

  struct RawSymbols {
    std::vector<std::complex<double>> interior;  // DtN of the interior problem
    std::vector<std::complex<double>> exterior;  // DtN of the exterior problem
    std::vector<std::complex<double>> jh;        // J_d(x) H_d(x) (V0 = 0 shortcut)
    bool have_jh = false;
  };

  RawSymbols raw_symbols(std::complex<double> z, int dmax) const {
    RawSymbols out;
    const std::complex<double> k = sqrt_upper(z);
    const std::complex<double> zeta = k * p_.R;
    const bool needs_interior = kind_ != RadialKind::disk_dirichlet_robin &&
                                kind_ != RadialKind::disk_neumann_robin;
    if (spherical()) {
      const SphChain ext = spherical_chain(zeta, dmax);
      out.exterior.resize(std::size_t(dmax) + 1);
      for (int l = 0; l <= dmax; ++l)
        out.exterior[std::size_t(l)] = -k * ext.h_logd[std::size_t(l)];
      if (p_.V0 == 0.0) {
        out.jh = ext.jh;
        out.have_jh = true;
        out.interior.resize(std::size_t(dmax) + 1);
        for (int l = 0; l <= dmax; ++l)
          out.interior[std::size_t(l)] = k * ext.j_logd[std::size_t(l)];
      } else {
        const std::complex<double> kin = sqrt_upper(z - p_.V0);
        const SphChain in = spherical_chain(kin * p_.R, dmax);
        out.interior.resize(std::size_t(dmax) + 1);
        for (int l = 0; l <= dmax; ++l)
          out.interior[std::size_t(l)] = kin * in.j_logd[std::size_t(l)];
      }
    } else {
      const CylChain ext = cylinder_chain(zeta, dmax);
      out.exterior.resize(std::size_t(dmax) + 1);
      for (int m = 0; m <= dmax; ++m)
        out.exterior[std::size_t(m)] = -k * ext.h_logd[std::size_t(m)];
      if (needs_interior) {
        if (p_.V0 == 0.0) {
          out.jh = ext.jh;
          out.have_jh = true;
          out.interior.resize(std::size_t(dmax) + 1);
          for (int m = 0; m <= dmax; ++m)
            out.interior[std::size_t(m)] = k * ext.j_logd[std::size_t(m)];
        } else {
          const std::complex<double> kin = sqrt_upper(z - p_.V0);
          const CylChain in = cylinder_chain(kin * p_.R, dmax);
          out.interior.resize(std::size_t(dmax) + 1);
          for (int m = 0; m <= dmax; ++m)
            out.interior[std::size_t(m)] = kin * in.j_logd[std::size_t(m)];
        }
      }
    }
    return out;
  }

  // NtD symbol of the delta-shell coupling: 1/(Lambda_int + Lambda_ext); for
  // V0 = 0 the Wronskian collapses it to a product form that stays regular
  // through interior Dirichlet eigenvalues.
  std::complex<double> shell_ntd(const RawSymbols& raw, int degree,
                                 std::complex<double> z) const {
    const std::size_t d = std::size_t(degree);
    if (raw.have_jh) {
      const std::complex<double> i(0.0, 1.0);
      if (spherical()) {
        const std::complex<double> k = sqrt_upper(z);
        return i * k * p_.R * p_.R * raw.jh[d];
      }
      return i * M_PI * p_.R * raw.jh[d] / 2.0;
    }
    return 1.0 / (raw.interior[d] + raw.exterior[d]);
  }

  bool requires_invertible_alpha() const {
    return kind_ == RadialKind::disk_neumann_robin ||
           kind_ == RadialKind::circle_delta_shell ||
           kind_ == RadialKind::sphere_delta_shell;
  }

  bool mode_diagonal() const override {
    return !has_alpha() || p_.alpha.kind != AlphaCoefficient::Kind::fourier;
  }

  double alpha_for_degree(int degree) const {
    switch (p_.alpha.kind) {
      case AlphaCoefficient::Kind::scalar:
        return p_.alpha.scalar;
      case AlphaCoefficient::Kind::per_mode:
        if (std::size_t(degree) >= p_.alpha.per_mode.size())
          throw ModelDomainError(id() + ": per-mode alpha shorter than truncation");
        return p_.alpha.per_mode[std::size_t(degree)];
      case AlphaCoefficient::Kind::fourier:
        throw ModelNotDiagonal(id() + ": alpha is not mode-diagonal");
    }
    return 0.0;
  }

  ModeSymbolTable symbols(std::complex<double> z, bool boundary,
                          const ChannelTruncation& trunc) const override {
    if (!mode_diagonal())
      throw ModelNotDiagonal(id() + ": Fourier alpha produces a non-diagonal Weyl matrix");
    const int dmax = modeldetail::max_degree(trunc);
    const RawSymbols raw = raw_symbols(z, dmax);

    ModeSymbolTable t;
    t.model_id = id();
    t.z = z;
    t.boundary = boundary;
    t.truncation = trunc;
    const std::size_t n = trunc.size();
    t.weyl_m.resize(n);
    t.exterior.resize(n);
    t.rigging.resize(n);
    if (!raw.interior.empty()) t.interior.resize(n);
    const bool shell = kind_ == RadialKind::circle_delta_shell ||
                       kind_ == RadialKind::sphere_delta_shell;
    if (shell || kind_ == RadialKind::disk_neumann_robin || kind_ == RadialKind::circle_neumann_free)
      t.coupled.resize(n);

    for (std::size_t i = 0; i < n; ++i) {
      const ModeLabel& lab = trunc.labels[i];
      const std::size_t d = std::size_t(lab.ell);
      const double w = weight(lab);
      t.rigging[i] = w;
      t.exterior[i] = raw.exterior[d];
      if (!raw.interior.empty()) t.interior[i] = raw.interior[d];
      switch (kind_) {
        case RadialKind::disk_dirichlet_robin: {
          t.weyl_m[i] = (alpha_for_degree(lab.ell) - raw.exterior[d]) / (w * w);
          break;
        }
        case RadialKind::disk_neumann_robin: {
          const std::complex<double> N = 1.0 / raw.exterior[d];
          t.coupled[i] = N;
          const double a = alpha_for_degree(lab.ell);
          if (a == 0.0)
            throw ModelDomainError(id() + ": Weyl function needs invertible alpha");
          t.weyl_m[i] = N - 1.0 / a;
          break;
        }
        case RadialKind::circle_dirichlet_free: {
          t.weyl_m[i] = -(raw.interior[d] + raw.exterior[d]) / (w * w);
          break;
        }
        case RadialKind::circle_neumann_free: {
          const std::complex<double> N = 1.0 / raw.interior[d] + 1.0 / raw.exterior[d];
          t.coupled[i] = N;
          t.weyl_m[i] = w * w * N;
          break;
        }
        case RadialKind::circle_delta_shell:
        case RadialKind::sphere_delta_shell: {
          const std::complex<double> N = shell_ntd(raw, lab.ell, z);
          t.coupled[i] = N;
          const double a = alpha_for_degree(lab.ell);
          if (a == 0.0)
            throw ModelDomainError(id() + ": Weyl function needs invertible alpha");
          t.weyl_m[i] = N - 1.0 / a;
          break;
        }
      }
    }
    return t;
  }

  ComplexMatrix weyl_matrix(std::complex<double> z,
                            const ChannelTruncation& trunc) const override {
    if (mode_diagonal())
      return modeldetail::diagonal_from(symbols(z, false, trunc).weyl_m);
    return dense_weyl(z, trunc);
  }
  ComplexMatrix weyl_boundary(double lambda, const ChannelTruncation& trunc) const override {
    if (mode_diagonal())
      return modeldetail::diagonal_from(symbols({lambda, 0.0}, true, trunc).weyl_m);
    return dense_weyl({lambda, 0.0}, trunc);
  }

  bool has_robin_split() const override {
    return requires_invertible_alpha();
  }

  ComplexMatrix robin_N(double lambda, const ChannelTruncation& trunc) const override {
    const int dmax = modeldetail::max_degree(trunc);
    const RawSymbols raw = raw_symbols({lambda, 0.0}, dmax);
    const std::size_t n = trunc.size();
    ComplexMatrix N(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t d = std::size_t(trunc.labels[i].ell);
      if (kind_ == RadialKind::disk_neumann_robin)
        N(i, i) = 1.0 / raw.exterior[d];
      else
        N(i, i) = shell_ntd(raw, trunc.labels[i].ell, {lambda, 0.0});
    }
    return N;
  }

  ComplexMatrix robin_alpha_matrix(const ChannelTruncation& trunc) const override {
    return alpha_matrix(trunc);
  }

  // Multiplication operator by alpha in the mode basis: diagonal for scalar
  // and per-mode coefficients, Hermitian Toeplitz for a Fourier band.
  ComplexMatrix alpha_matrix(const ChannelTruncation& trunc) const {
    const std::size_t n = trunc.size();
    ComplexMatrix a(n, n);
    if (p_.alpha.kind != AlphaCoefficient::Kind::fourier) {
      for (std::size_t i = 0; i < n; ++i) a(i, i) = alpha_for_degree(trunc.labels[i].ell);
      return a;
    }
    const auto& c = p_.alpha.fourier_cos;
    const auto& s = p_.alpha.fourier_sin;
    auto hat = [&](int k) -> std::complex<double> {
      const int ak = std::abs(k);
      if (std::size_t(ak) >= c.size() && std::size_t(ak) >= s.size() + 1)
        return {0.0, 0.0};
      const double ck = std::size_t(ak) < c.size() ? c[std::size_t(ak)] : 0.0;
      const double sk = (ak >= 1 && std::size_t(ak) <= s.size()) ? s[std::size_t(ak) - 1] : 0.0;
      if (k == 0) return {ck, 0.0};
      // alpha_hat(k) = (c_k - i s_k)/2 for k > 0, conjugate for k < 0.
      return k > 0 ? std::complex<double>(ck / 2.0, -sk / 2.0)
                   : std::complex<double>(ck / 2.0, sk / 2.0);
    };
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        a(i, j) = hat(trunc.labels[i].m - trunc.labels[j].m);
    return a;
  }

  bool oracle_available() const override {
    if (!p_.alpha.is_scalar() || p_.V0 != 0.0) return false;
    return kind_ == RadialKind::disk_dirichlet_robin ||
           kind_ == RadialKind::disk_neumann_robin ||
           kind_ == RadialKind::circle_delta_shell ||
           kind_ == RadialKind::sphere_delta_shell;
  }

  ComplexMatrix oracle_smatrix_full(double lambda,
                                    const ChannelTruncation& trunc) const override {
    if (!oracle_available())
      throw OracleUnavailable(id() + ": oracle needs scalar alpha and V = 0");
    const std::size_t n = trunc.size();
    ComplexMatrix s = ComplexMatrix::identity(n);
    if (lambda <= 0.0) return s;
    const double k = std::sqrt(lambda);
    const double x = k * p_.R;
    const double a = p_.alpha.scalar;
    const int dmax = modeldetail::max_degree(trunc);
    std::vector<std::complex<double>> per_degree(std::size_t(dmax) + 1, {1.0, 0.0});
    for (int d = 0; d <= dmax; ++d) {
      std::complex<double> wA, wB;
      if (spherical()) {
        const SphericalEval e = spherical_jyh(d, x);
        if (!std::isfinite(e.y) || !std::isfinite(e.dy)) continue;  // trivial channel
        // free vs delta shell: u_out = c j + d y, phases from c - i d
        const double c = 1.0 + (a / k) * x * x * e.y * e.j;
        const double dd = -(a / k) * x * x * e.j * e.j;
        wA = {1.0, 0.0};
        wB = {c, -dd};
      } else {
        const BesselEval e = bessel_jy(d, x);
        if (!std::isfinite(e.Y) || !std::isfinite(e.dY)) continue;
        // cylinder phases from d + i c for u = c J + d Y
        switch (kind_) {
          case RadialKind::disk_dirichlet_robin: {
            const double u = a * e.J + k * e.dJ;
            const double v = a * e.Y + k * e.dY;
            wA = {-e.J, e.Y};   // Dirichlet reference
            wB = {-u, v};       // Robin
            break;
          }
          case RadialKind::disk_neumann_robin: {
            const double u = a * e.J + k * e.dJ;
            const double v = a * e.Y + k * e.dY;
            wA = {-e.dJ, e.dY};  // Neumann reference
            wB = {-u, v};
            break;
          }
          default: {  // circle delta shell vs free
            const double c = 1.0 + (a / k) * (M_PI * x / 2.0) * e.Y * e.J;
            const double dd = -(a / k) * (M_PI * x / 2.0) * e.J * e.J;
            wA = {0.0, 1.0};  // free: (c,d) = (1,0) -> d + i c = i
            wB = {dd, c};
            break;
          }
        }
      }
      per_degree[std::size_t(d)] = modeldetail::phase_ratio_smatrix(wB, wA);
    }
    for (std::size_t i = 0; i < n; ++i)
      s(i, i) = per_degree[std::size_t(trunc.labels[i].ell)];
    return s;
  }

 private:
  ComplexMatrix dense_weyl(std::complex<double> z, const ChannelTruncation& trunc) const {
    const int dmax = modeldetail::max_degree(trunc);
    const RawSymbols raw = raw_symbols(z, dmax);
    const std::size_t n = trunc.size();
    const ComplexMatrix amat = alpha_matrix(trunc);
    ComplexMatrix m(n, n);
    switch (kind_) {
      case RadialKind::disk_dirichlet_robin: {
        // M = W^-1 (alpha - Lambda) W^-1
        for (std::size_t i = 0; i < n; ++i) {
          const double wi = weight(trunc.labels[i]);
          for (std::size_t j = 0; j < n; ++j) {
            const double wj = weight(trunc.labels[j]);
            std::complex<double> v = amat(i, j);
            if (i == j) v -= raw.exterior[std::size_t(trunc.labels[i].ell)];
            m(i, j) = v / (wi * wj);
          }
        }
        return m;
      }
      case RadialKind::disk_neumann_robin:
      case RadialKind::circle_delta_shell: {
        // M = N - inv(alpha) on the truncation
        const ComplexMatrix inv_a =
            solve(amat, ComplexMatrix::identity(n), 1e14).x;
        for (std::size_t i = 0; i < n; ++i) {
          const std::size_t d = std::size_t(trunc.labels[i].ell);
          const std::complex<double> N = kind_ == RadialKind::disk_neumann_robin
                                             ? 1.0 / raw.exterior[d]
                                             : shell_ntd(raw, trunc.labels[i].ell, z);
          for (std::size_t j = 0; j < n; ++j) m(i, j) = (i == j ? N : 0.0) - inv_a(i, j);
        }
        return m;
      }
      default:
        throw ModelNotDiagonal(id() + ": dense Weyl assembly not defined here");
    }
  }

  RadialKind kind_;
  RadialParams p_;
};

inline ModelHandle make_delta_line(double alpha) {
  return std::make_shared<DeltaLineModel>(alpha);
}
inline ModelHandle make_jacobi_halfline(double alpha) {
  return std::make_shared<JacobiHalflineModel>(alpha);
}
inline ModelHandle make_radial(RadialKind kind, RadialParams p) {
  return std::make_shared<RadialModel>(kind, std::move(p));
}

// CLI-facing factory; alpha/V0/R as parsed from a run spec.
inline ModelHandle make_model(const std::string& kind, RadialParams p) {
  if (kind == "delta-line") {
    if (!p.alpha.is_scalar()) throw ModelDomainError("delta-line takes scalar alpha");
    return make_delta_line(p.alpha.scalar);
  }
  if (kind == "jacobi-halfline") {
    if (!p.alpha.is_scalar()) throw ModelDomainError("jacobi-halfline takes scalar alpha");
    return make_jacobi_halfline(p.alpha.scalar);
  }
  if (kind == "disk-dirichlet-robin") return make_radial(RadialKind::disk_dirichlet_robin, p);
  if (kind == "disk-neumann-robin") return make_radial(RadialKind::disk_neumann_robin, p);
  if (kind == "circle-dirichlet-free") return make_radial(RadialKind::circle_dirichlet_free, p);
  if (kind == "circle-neumann-free") return make_radial(RadialKind::circle_neumann_free, p);
  if (kind == "circle-delta-shell") return make_radial(RadialKind::circle_delta_shell, p);
  if (kind == "sphere-delta-shell") return make_radial(RadialKind::sphere_delta_shell, p);
  throw ModelDomainError("unknown model kind: " + kind);
}

}  // namespace weylscat

#endif
