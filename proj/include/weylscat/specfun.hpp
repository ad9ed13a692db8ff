#ifndef WEYLSCAT_SPECFUN_HPP
#define WEYLSCAT_SPECFUN_HPP

// Bessel-family evaluation for real positive argument and integer order.
// Strategy: ascending series for small x, Steed's continued-fraction method
// in the midrange, Hankel asymptotic expansion for large x; orders reached by
// upward recurrence (Y always, J while m <= x) or Miller's normalized
// downward recurrence (J for m > x).

#include <cassert>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "weylscat/errors.hpp"

namespace weylscat {

inline constexpr int kOrderCap = 256;
inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

struct BesselEval {
  int order = 0;
  double arg = 0.0;
  double J = 0.0, Y = 0.0, dJ = 0.0, dY = 0.0;
};

struct SphericalEval {
  int order = 0;
  double arg = 0.0;
  double j = 0.0, y = 0.0, dj = 0.0, dy = 0.0;
  std::complex<double> h() const { return {j, y}; }
  std::complex<double> dh() const { return {dj, dy}; }
};

namespace besseldetail {

// Ascending series; fine for |x| <= ~8 in double precision.
template <typename T>
T series_j(int m, T x) {
  const T half = x / 2.0;
  T coeff = 1.0;
  for (int k = 1; k <= m; ++k) coeff *= half / double(k);
  T term = coeff, sum = coeff;
  const T t = -half * half;
  for (int k = 1; k < 200; ++k) {
    term *= t / (double(k) * double(k + m));
    sum += term;
    if (std::abs(term) < 1e-18 * (std::abs(sum) + 1e-280)) break;
  }
  return sum;
}

// Y0/Y1 power series with the log term split off.
template <typename T>
void series_y01(T x, T j0, T j1, T& y0, T& y1) {
  const double inv_pi = 1.0 / M_PI;
  const T lg = std::log(x / 2.0) + kEulerGamma;
  const T t = x * x / 4.0;

  T sum = 0.0, term = 1.0;  // term = t^k / (k!)^2 built incrementally
  double hk = 0.0;
  for (int k = 1; k < 200; ++k) {
    term *= t / (double(k) * double(k));
    hk += 1.0 / double(k);
    const T contrib = (k % 2 == 1 ? 1.0 : -1.0) * hk * term;
    sum += contrib;
    if (std::abs(contrib) < 1e-18 * (std::abs(sum) + 1e-30)) break;
  }
  y0 = 2.0 * inv_pi * (lg * j0 + sum);

  T sum1 = 0.0;
  term = 1.0;  // t^k / (k! (k+1)!)
  double hka = 0.0, hkb = 1.0;
  for (int k = 0; k < 200; ++k) {
    if (k > 0) {
      term *= t / (double(k) * double(k + 1));
      hka += 1.0 / double(k);
      hkb += 1.0 / double(k + 1);
    }
    const T contrib = (k % 2 == 0 ? 1.0 : -1.0) * (hka + hkb) * term;
    sum1 += contrib;
    if (std::abs(contrib) < 1e-18 * (std::abs(sum1) + 1e-30)) break;
  }
  y1 = 2.0 * inv_pi * lg * j1 - 2.0 * inv_pi / x - (x / (2.0 * M_PI)) * sum1;
}

// Hankel asymptotic P/Q sums for order nu, summed to the smallest term.
inline void asymptotic_pq(double nu, double x, double& p, double& q) {
  const double mu = 4.0 * nu * nu;
  const double ix8 = 1.0 / (8.0 * x);
  p = 1.0;
  q = 0.0;
  double ak = 1.0;  // prod (mu - (2j-1)^2) / (k! (8x)^k)
  double prev = std::numeric_limits<double>::max();
  for (int k = 1; k < 60; ++k) {
    ak *= (mu - double(2 * k - 1) * double(2 * k - 1)) * ix8 / double(k);
    const double mag = std::abs(ak);
    if (mag >= prev) break;  // divergent tail reached
    prev = mag;
    if (k % 2 == 1) {
      q += ((k / 2) % 2 == 0 ? 1.0 : -1.0) * ak;
    } else {
      p += ((k / 2) % 2 == 1 ? -1.0 : 1.0) * ak;
    }
    if (mag < 1e-18) break;
  }
}

inline void seeds_asymptotic(double x, double& j0, double& j1, double& y0, double& y1) {
  const double pref = std::sqrt(2.0 / (M_PI * x));
  double p, q;
  asymptotic_pq(0.0, x, p, q);
  const double chi0 = x - M_PI / 4.0;
  j0 = pref * (p * std::cos(chi0) - q * std::sin(chi0));
  y0 = pref * (p * std::sin(chi0) + q * std::cos(chi0));
  asymptotic_pq(1.0, x, p, q);
  const double chi1 = x - 3.0 * M_PI / 4.0;
  j1 = pref * (p * std::cos(chi1) - q * std::sin(chi1));
  y1 = pref * (p * std::sin(chi1) + q * std::cos(chi1));
}

// Steed's CF2 for (J' + iY')/(J + iY) at order mu:
//   p + iq = -1/(2x) + i + (i/x) * K_{k>=1}( a_k / b_k ),
//   a_1 = 1/4 - mu^2, a_k = (k - 1/2)^2 - mu^2, b_k = 2(x + ik).
// Evaluated by the modified Lentz algorithm.
inline std::complex<double> steed_cf2(double mu, double x) {
  using C = std::complex<double>;
  const C i(0.0, 1.0);
  C f = 1e-290, c = f, d = 0.0;
  for (int k = 1; k < 10000; ++k) {
    const double ak = (double(k) - 0.5) * (double(k) - 0.5) - mu * mu;
    const C b = C(2.0 * x, 2.0 * double(k));
    d = b + ak * d;
    if (std::abs(d) < 1e-290) d = 1e-290;
    c = b + ak / c;
    if (std::abs(c) < 1e-290) c = 1e-290;
    d = 1.0 / d;
    const C delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return C(-0.5 / x, 0.0) + i + i * f / x;
}

// Miller's downward recurrence for J_0..J_m, normalized by
// J_0 + 2 J_2 + 2 J_4 + ... = 1. Returns J_m and J_{m+1}.
inline void miller_j(int m, double x, double* jm, double* jm1) {
  const int base = std::max(m, int(std::ceil(x)));
  int start = base + 26 + int(std::sqrt(60.0 * double(base + 1)));
  if (start % 2 == 1) ++start;
  double fp1 = 0.0, f = 1e-30, sum = 0.0;
  double vm = 0.0, vm1 = 0.0;
  for (int k = start; k >= 0; --k) {
    const double fm1 = (2.0 * double(k + 1) / x) * f - fp1;
    fp1 = f;
    f = fm1;
    if (k == m) vm = f;
    if (k == m + 1) vm1 = f;
    if (k % 2 == 0 && k > 0) sum += 2.0 * f;
    if (std::abs(f) > 1e250) {
      fp1 *= 1e-250;
      f *= 1e-250;
      sum *= 1e-250;
      vm *= 1e-250;
      vm1 *= 1e-250;
    }
  }
  sum += f;  // k == 0 term
  *jm = vm / sum;
  *jm1 = vm1 / sum;
}

inline void seeds_jy01(double x, double& j0, double& j1, double& y0, double& y1) {
  if (x <= 6.0) {
    j0 = series_j(0, x);
    j1 = series_j(1, x);
    series_y01(x, j0, j1, y0, y1);
  } else if (x < 20.0) {
    double jm, jm1;
    miller_j(0, x, &jm, &jm1);
    j0 = jm;
    j1 = jm1;
    const std::complex<double> pq = steed_cf2(0.0, x);
    const double p = pq.real(), q = pq.imag();
    const double f = -j1 / j0;  // J0'/J0
    const double gam = (p - f) / q;
    y0 = j0 * gam;
    const double dy0 = y0 * p + j0 * q;  // Y0' = q J0 + p Y0
    y1 = -dy0;
  } else {
    seeds_asymptotic(x, j0, j1, y0, y1);
  }
}

}  // namespace besseldetail

// Cylindrical J_m, Y_m and derivatives at integer order m >= 0, x > 0.
inline BesselEval bessel_jy(int m, double x) {
  if (!(x > 0.0) || x > 1e8)
    throw DomainError("bessel_jy: argument must satisfy 0 < x <= 1e8");
  if (m < 0 || m > kOrderCap)
    throw OrderCapExceeded("bessel_jy: order " + std::to_string(m) + " outside [0, " +
                           std::to_string(kOrderCap) + "]");

  double j0, j1, y0, y1;
  besseldetail::seeds_jy01(x, j0, j1, y0, y1);

  BesselEval out;
  out.order = m;
  out.arg = x;

  double jm, jmm1;  // J_m and J_{m-1}
  if (m == 0) {
    jm = j0;
    jmm1 = -j1;  // only used via dJ = -J1
  } else if (m == 1) {
    jm = j1;
    jmm1 = j0;
  } else if (double(m) <= x) {
    double a = j0, b = j1;
    for (int k = 1; k < m; ++k) {
      const double c = (2.0 * double(k) / x) * b - a;
      a = b;
      b = c;
    }
    jm = b;
    jmm1 = a;
  } else {
    double v, vp1;
    besseldetail::miller_j(m - 1, x, &v, &vp1);
    jmm1 = v;
    jm = vp1;
  }

  double ym, ymm1;
  if (m == 0) {
    ym = y0;
    ymm1 = -y1;
  } else {
    double a = y0, b = y1;
    for (int k = 1; k < m; ++k) {
      const double c = (2.0 * double(k) / x) * b - a;
      a = b;
      b = c;
    }
    ym = b;
    ymm1 = a;
  }

  out.J = jm;
  out.Y = ym;
  if (m == 0) {
    out.dJ = -j1;
    out.dY = -y1;
  } else {
    out.dJ = jmm1 - (double(m) / x) * jm;
    out.dY = ymm1 - (double(m) / x) * ym;
  }

#ifndef NDEBUG
  if (std::isfinite(out.Y) && std::isfinite(out.dY) && std::abs(out.Y) < 1e150) {
    const double w = out.J * out.dY - out.Y * out.dJ;
    assert(std::abs(w - 2.0 / (M_PI * x)) < 1e-8 * (2.0 / (M_PI * x)));
  }
#endif
  return out;
}

// Spherical j_l, y_l and derivatives, h = j + i y.
inline SphericalEval spherical_jyh(int l, double x) {
  if (!(x > 0.0) || x > 1e8)
    throw DomainError("spherical_jyh: argument must satisfy 0 < x <= 1e8");
  if (l < 0 || l > kOrderCap)
    throw OrderCapExceeded("spherical_jyh: order " + std::to_string(l) + " outside [0, " +
                           std::to_string(kOrderCap) + "]");

  const double sx = std::sin(x), cx = std::cos(x);
  const double j0 = sx / x;
  const double j1 = sx / (x * x) - cx / x;
  const double y0 = -cx / x;
  const double y1 = -cx / (x * x) - sx / x;

  SphericalEval out;
  out.order = l;
  out.arg = x;

  double ym, ymm1;
  if (l == 0) {
    ym = y0;
    ymm1 = 0.0;
  } else {
    double a = y0, b = y1;
    for (int k = 1; k < l; ++k) {
      const double c = (2.0 * double(k) + 1.0) / x * b - a;
      a = b;
      b = c;
    }
    ym = b;
    ymm1 = a;
  }

  double jm, jmm1;
  if (l == 0) {
    jm = j0;
    jmm1 = 0.0;
  } else if (double(l) <= x) {
    double a = j0, b = j1;
    for (int k = 1; k < l; ++k) {
      const double c = (2.0 * double(k) + 1.0) / x * b - a;
      a = b;
      b = c;
    }
    jm = b;
    jmm1 = a;
  } else {
    // Downward recurrence normalized with sum (2l+1) j_l^2 = 1.
    const int base = std::max(l, int(std::ceil(x)));
    const int start = base + 26 + int(std::sqrt(60.0 * double(base + 1)));
    double fp1 = 0.0, f = 1e-30, sum = 0.0;
    double vm = 0.0, vmm1 = 0.0;
    for (int k = start; k >= 0; --k) {
      if (std::abs(f) > 1e100) {
        const double s = 1e-100;
        fp1 *= s;
        f *= s;
        sum *= s * s;
        vm *= s;
        vmm1 *= s;
      }
      const double fm1 = (2.0 * double(k) + 3.0) / x * f - fp1;
      fp1 = f;
      f = fm1;
      if (k == l) vm = f;
      if (k == l - 1) vmm1 = f;
      sum += (2.0 * double(k) + 1.0) * f * f;
    }
    const double norm = 1.0 / std::sqrt(sum);
    // Overall sign from whichever seed is further from a zero.
    const double sign_ref = std::abs(j0) >= std::abs(j1) ? j0 * f : j1 * fp1;
    const double sign = sign_ref >= 0.0 ? 1.0 : -1.0;
    jm = vm * norm * sign;
    jmm1 = vmm1 * norm * sign;
  }

  out.j = jm;
  out.y = ym;
  if (l == 0) {
    out.dj = -j1;
    out.dy = -y1;
  } else {
    out.dj = jmm1 - (double(l) + 1.0) / x * jm;
    out.dy = ymm1 - (double(l) + 1.0) / x * ym;
  }

#ifndef NDEBUG
  if (std::isfinite(out.y) && std::isfinite(out.dy) && std::abs(out.y) < 1e150) {
    const double w = out.j * out.dy - out.y * out.dj;
    assert(std::abs(w - 1.0 / (x * x)) < 1e-8 / (x * x));
  }
#endif
  return out;
}

struct Hankel1Eval {
  std::complex<double> H;
  std::complex<double> dH;
};

// Outgoing Hankel function H^1_m = J_m + i Y_m with derivative.
inline Hankel1Eval hankel1(int m, double x) {
  const BesselEval b = bessel_jy(m, x);
  return {{b.J, b.Y}, {b.dJ, b.dY}};
}

}  // namespace weylscat

#endif
