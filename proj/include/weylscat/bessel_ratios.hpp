#ifndef WEYLSCAT_BESSEL_RATIOS_HPP
#define WEYLSCAT_BESSEL_RATIOS_HPP

// Logarithmic-derivative and product chains for cylinder and spherical
// Bessel families at complex argument with Im(zeta) >= 0 (second quadrant
// included, which is where the lower half-plane lands after the square-root
// branch with cut on [0, inf)).
//
// Everything is built from ratios: the recessive J-direction by a padded
// downward pass (equivalent to evaluating CF1 by tail truncation), the
// dominant H-direction by an upward ratio pass. Per-step products
// (J_k/J_{k-1}) * (H_k/H_{k-1}) -> 1, so products like J_m H_m accumulate
// without overflow at any order, which is what the high-mode symbol decay
// diagnostics need. Complex seeds come from ascending series and are
// restricted to |zeta| <= 8; real seeds route through specfun.

#include <cmath>
#include <complex>
#include <vector>

#include "weylscat/errors.hpp"
#include "weylscat/specfun.hpp"

namespace weylscat {

// Square root with branch cut along [0, inf): Im(sqrt_upper(z)) >= 0
// everywhere, and sqrt_upper(conj(z)) = -conj(sqrt_upper(z)).
inline std::complex<double> sqrt_upper(std::complex<double> z) {
  const std::complex<double> w = std::sqrt(z);
  return z.imag() < 0.0 ? -w : w;
}

struct CylChain {
  std::complex<double> zeta;
  // index m in [0, mmax]
  std::vector<std::complex<double>> j_logd;  // J'_m / J_m
  std::vector<std::complex<double>> h_logd;  // H1'_m / H1_m
  std::vector<std::complex<double>> jh;      // J_m * H1_m
};

struct SphChain {
  std::complex<double> zeta;
  std::vector<std::complex<double>> j_logd;  // j'_l / j_l
  std::vector<std::complex<double>> h_logd;  // h1'_l / h1_l
  std::vector<std::complex<double>> jh;      // j_l * h1_l
};

namespace ratiodetail {

inline void cyl_seeds(std::complex<double> zeta, std::complex<double>& j0,
                      std::complex<double>& j1, std::complex<double>& y0,
                      std::complex<double>& y1) {
  if (zeta.imag() == 0.0) {
    const BesselEval b0 = bessel_jy(0, zeta.real());
    const BesselEval b1 = bessel_jy(1, zeta.real());
    j0 = b0.J;
    y0 = b0.Y;
    j1 = b1.J;
    y1 = b1.Y;
    return;
  }
  if (std::abs(zeta) > 8.5)
    throw UnsupportedBoundaryPoint(
        "cylinder Bessel seeds: complex |zeta| > 8.5 outside the series domain");
  j0 = besseldetail::series_j(0, zeta);
  j1 = besseldetail::series_j(1, zeta);
  besseldetail::series_y01(zeta, j0, j1, y0, y1);
}

// Recessive-direction ratios sigma_k = f_k / f_{k-1} for k = 1..kmax via a
// padded downward pass; step(k) is the recurrence coefficient so that
// f_{k+1} = step(k) f_k - f_{k-1}.
template <typename StepFn>
std::vector<std::complex<double>> recessive_ratios(int kmax, std::complex<double> zeta,
                                                   StepFn step) {
  const int pad = 32 + int(2.0 * std::abs(zeta));
  const int start = kmax + pad;
  std::vector<std::complex<double>> sigma(std::size_t(kmax) + 1);
  std::complex<double> s = 0.0;  // sigma_{start+1} tail truncation
  for (int k = start; k >= 1; --k) {
    s = 1.0 / (step(k) - s);
    if (k <= kmax) sigma[std::size_t(k)] = s;
  }
  return sigma;
}

}  // namespace ratiodetail

// Cylinder chain at complex argument; orders 0..mmax.
inline CylChain cylinder_chain(std::complex<double> zeta, int mmax) {
  if (zeta == std::complex<double>(0.0, 0.0))
    throw DomainError("cylinder_chain: zeta must be nonzero");
  CylChain c;
  c.zeta = zeta;
  c.j_logd.resize(std::size_t(mmax) + 1);
  c.h_logd.resize(std::size_t(mmax) + 1);
  c.jh.resize(std::size_t(mmax) + 1);

  std::complex<double> j0, j1, y0, y1;
  ratiodetail::cyl_seeds(zeta, j0, j1, y0, y1);
  const std::complex<double> i(0.0, 1.0);
  const std::complex<double> h0 = j0 + i * y0;
  const std::complex<double> h1 = j1 + i * y1;

  const auto sigma = ratiodetail::recessive_ratios(
      mmax + 1, zeta, [&](int k) { return 2.0 * double(k) / zeta; });

  c.j_logd[0] = -sigma[1];
  c.h_logd[0] = -h1 / h0;
  c.jh[0] = j0 * h0;

  std::complex<double> t = h1 / h0;  // t_k = H_k / H_{k-1}
  for (int m = 1; m <= mmax; ++m) {
    if (m > 1) t = 2.0 * double(m - 1) / zeta - 1.0 / t;
    c.j_logd[std::size_t(m)] = 1.0 / sigma[std::size_t(m)] - double(m) / zeta;
    c.h_logd[std::size_t(m)] = 1.0 / t - double(m) / zeta;
    c.jh[std::size_t(m)] = c.jh[std::size_t(m) - 1] * (sigma[std::size_t(m)] * t);
  }
  return c;
}

// Spherical chain at complex argument; orders 0..lmax. Seeds are closed
// forms, so any zeta with Im(zeta) >= 0 (or the second quadrant) works.
inline SphChain spherical_chain(std::complex<double> zeta, int lmax) {
  if (zeta == std::complex<double>(0.0, 0.0))
    throw DomainError("spherical_chain: zeta must be nonzero");
  SphChain c;
  c.zeta = zeta;
  c.j_logd.resize(std::size_t(lmax) + 1);
  c.h_logd.resize(std::size_t(lmax) + 1);
  c.jh.resize(std::size_t(lmax) + 1);

  const std::complex<double> i(0.0, 1.0);
  // j0 h0 = (sin z / z)(-i e^{iz} / z) = -(e^{2iz} - 1) / (2 z^2); bounded
  // for Im z >= 0.
  const std::complex<double> e2 = std::exp(2.0 * i * zeta);
  const std::complex<double> p0 = -(e2 - 1.0) / (2.0 * zeta * zeta);
  const std::complex<double> t1 = 1.0 / zeta - i;  // h1/h0

  const auto sigma = ratiodetail::recessive_ratios(
      lmax + 1, zeta, [&](int k) { return (2.0 * double(k) + 1.0) / zeta; });

  c.j_logd[0] = -sigma[1];
  c.h_logd[0] = -t1;
  c.jh[0] = p0;

  std::complex<double> t = t1;
  for (int l = 1; l <= lmax; ++l) {
    if (l > 1) t = (2.0 * double(l) - 1.0) / zeta - 1.0 / t;
    c.j_logd[std::size_t(l)] = 1.0 / sigma[std::size_t(l)] - (double(l) + 1.0) / zeta;
    c.h_logd[std::size_t(l)] = 1.0 / t - (double(l) + 1.0) / zeta;
    c.jh[std::size_t(l)] = c.jh[std::size_t(l) - 1] * (sigma[std::size_t(l)] * t);
  }
  return c;
}

}  // namespace weylscat

#endif
