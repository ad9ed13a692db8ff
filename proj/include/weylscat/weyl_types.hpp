#ifndef WEYLSCAT_WEYL_TYPES_HPP
#define WEYLSCAT_WEYL_TYPES_HPP

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "weylscat/complex_matrix.hpp"

namespace weylscat {

// A point lambda + i epsilon in the closed upper half-plane.
struct SpectralPoint {
  double lambda = 0.0;
  double epsilon = 0.0;  // >= 0; 0 means the boundary value lambda + i0
  std::complex<double> z() const { return {lambda, epsilon}; }
};

// One retained boundary mode. Planar models use the signed Fourier index m
// (ell mirrors |m|); spherical models use (ell, m); the scalar models carry a
// single label.
struct ModeLabel {
  int ell = 0;
  int m = 0;
  std::string name;
};

struct ChannelTruncation {
  std::vector<ModeLabel> labels;
  std::size_t size() const { return labels.size(); }
};

// Finite section of the Weyl function at one spectral point.
struct WeylSample {
  std::complex<double> z;
  bool boundary = false;  // true when z = lambda + i0
  ComplexMatrix M;
  ChannelTruncation truncation;
};

// M(lambda + i0) together with the numerically determined channel space
// H_lambda = ran Im M(lambda+i0): columns of channel_isometry are the
// eigenvectors of im_M with eigenvalue > rank_tol.
struct BoundaryLimit {
  double lambda = 0.0;
  ComplexMatrix M_plus;
  ComplexMatrix im_M;             // Hermitized, eigenvalues >= -rank_tol
  ComplexMatrix channel_isometry; // n x r
  double rank_tol = 0.0;
  bool rank_ambiguous = false;    // some eigenvalue within 10x of rank_tol
  double extrapolation_error = 0.0;  // 0 for the direct strategy
  ChannelTruncation truncation;
};

// Per-mode positive weights realizing the rigging map between the boundary
// Sobolev spaces. The quarter-power Laplace-Beltrami choice is the default;
// sqrt_dtn uses sqrt(Lambda(lambda0)) for a model-supplied lambda0 below the
// spectra.
struct RiggingWeights {
  enum class Kind { laplace_beltrami_quarter, identity, sqrt_dtn };
  Kind kind = Kind::laplace_beltrami_quarter;
  double lambda0 = -1.0;  // only for sqrt_dtn
};

// Boundary coefficient alpha: a constant, one value per mode (indexed by
// ell = |m| or the spherical degree), or a band-limited function on the
// circle given by real Fourier coefficients
//   alpha(theta) = c[0] + sum_k ( c[k] cos(k theta) + s[k] sin(k theta) ).
struct AlphaCoefficient {
  enum class Kind { scalar, per_mode, fourier };
  Kind kind = Kind::scalar;
  double scalar = 0.0;
  std::vector<double> per_mode;
  std::vector<double> fourier_cos;  // c[0..B]
  std::vector<double> fourier_sin;  // s[1..B], s[0] ignored

  static AlphaCoefficient constant(double a) {
    AlphaCoefficient c;
    c.kind = Kind::scalar;
    c.scalar = a;
    return c;
  }
  bool is_scalar() const { return kind == Kind::scalar; }
};

enum class SymbolKind { dtn_lambda, ntd_n, interior_dtn, exterior_dtn, coupled_e, weyl_m };

struct ModeSymbolTable {
  std::string model_id;
  std::complex<double> z;
  bool boundary = false;
  ChannelTruncation truncation;
  // One row per truncation label, same order.
  std::vector<std::complex<double>> weyl_m;
  // Constituent symbols, present where the model has them (empty otherwise).
  std::vector<std::complex<double>> interior;
  std::vector<std::complex<double>> exterior;
  std::vector<std::complex<double>> coupled;    // NtD of the sum / E function
  std::vector<double> rigging;                  // weight per mode
};

}  // namespace weylscat

#endif
