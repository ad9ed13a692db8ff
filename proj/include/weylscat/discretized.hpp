#ifndef WEYLSCAT_DISCRETIZED_HPP
#define WEYLSCAT_DISCRETIZED_HPP

// Finite discretizations backing the resolvent-level verification: the
// truncated half-line Jacobi chain (exact rank-one pair) and a second-order
// finite-difference line with a point delta. Both expose resolvent applies,
// gamma samples, and a masked (T - z) action; systems are tridiagonal and
// solved by the Thomas algorithm.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "weylscat/bessel_ratios.hpp"
#include "weylscat/errors.hpp"
#include "weylscat/models.hpp"

namespace weylscat {

using CVec = std::vector<std::complex<double>>;

// Solve (diag + off-diagonal ones * scale) x = b for a tridiagonal symmetric
// system with constant off-diagonal `off` and given complex diagonal.
inline CVec tridiag_solve(const CVec& diag, double off, const CVec& b) {
  const std::size_t n = diag.size();
  CVec c(n), d(n), x(n);
  c[0] = off / diag[0];
  d[0] = b[0] / diag[0];
  for (std::size_t k = 1; k < n; ++k) {
    const std::complex<double> denom = diag[k] - off * c[k - 1];
    c[k] = off / denom;
    d[k] = (b[k] - off * d[k - 1]) / denom;
  }
  x[n - 1] = d[n - 1];
  for (std::size_t k = n - 1; k-- > 0;) x[k] = d[k] - c[k] * x[k + 1];
  return x;
}

inline std::complex<double> dot(const CVec& a, const CVec& b) {
  std::complex<double> s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

inline double norm2(const CVec& a) { return std::sqrt(std::abs(dot(a, a).real())); }

// Truncated half-line chain pair: (A u)_n = u_{n+1} + u_{n-1} (u_{-1} = 0),
// B = A + alpha e0 e0^T. gamma(z) = (A - z)^{-1} e0, M(z) = m(z) + 1/alpha.
class JacobiChainPair {
 public:
  JacobiChainPair(std::size_t n, double alpha) : n_(n), alpha_(alpha) {}

  std::size_t size() const { return n_; }
  double alpha() const { return alpha_; }

  CVec resolvent_A(std::complex<double> z, const CVec& f) const {
    CVec diag(n_, -z);
    return tridiag_solve(diag, 1.0, f);
  }
  CVec resolvent_B(std::complex<double> z, const CVec& f) const {
    CVec diag(n_, -z);
    diag[0] = alpha_ - z;
    return tridiag_solve(diag, 1.0, f);
  }

  CVec gamma(std::complex<double> z) const {
    CVec e0(n_, 0.0);
    e0[0] = 1.0;
    return resolvent_A(z, e0);
  }

  std::complex<double> weyl(std::complex<double> z) const {
    if (alpha_ == 0.0) throw ModelDomainError("jacobi pair: M undefined at alpha = 0");
    return JacobiHalflineModel::m_function(z) + 1.0 / alpha_;
  }

  // || masked (T - z) v || with the boundary site and the truncation edge
  // excluded; T is the full tridiagonal action.
  double masked_defect_residual(std::complex<double> z, const CVec& v) const {
    double s = 0.0;
    for (std::size_t i = 1; i + 1 < n_; ++i) {
      const std::complex<double> r = v[i + 1] + v[i - 1] - z * v[i];
      s += std::norm(r);
    }
    return std::sqrt(s);
  }

  std::complex<double> inner(const CVec& a, const CVec& b) const { return dot(a, b); }

  // Compactly supported random probes. The physical boundary site 0 must stay
  // reachable or the coupling term is never exercised; only the truncation
  // edge is avoided.
  std::vector<CVec> probes(std::size_t count, unsigned seed = 7) const {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<CVec> out;
    const std::size_t hi = n_ / 3;
    for (std::size_t p = 0; p < count; ++p) {
      CVec f(n_, 0.0);
      for (std::size_t i = 0; i < hi; ++i) f[i] = {u(rng), u(rng)};
      out.push_back(std::move(f));
    }
    return out;
  }

 private:
  std::size_t n_;
  double alpha_;
};

// Finite-difference free line vs delta interaction: grid x_j = -L/2 + j h on
// the interior nodes of [-L/2, L/2] (Dirichlet ends), A = second-difference
// Laplacian, B = A + (alpha/h) at the midpoint node. Continuum gamma and M
// are sampled; the Krein residual is then discretization-limited, O(h^2).
class DeltaLineGrid {
 public:
  DeltaLineGrid(double length, double h, double alpha)
      : length_(length), h_(h), alpha_(alpha) {
    const std::size_t cells = std::size_t(std::llround(length_ / h_));
    if (cells < 8 || cells % 2 != 0)
      throw ModelDomainError("delta grid: need an even number of cells >= 8");
    n_ = cells - 1;       // interior nodes
    mid_ = cells / 2 - 1; // node at x = 0
  }

  std::size_t size() const { return n_; }
  double spacing() const { return h_; }
  double node(std::size_t j) const { return -length_ / 2.0 + double(j + 1) * h_; }

  CVec resolvent_A(std::complex<double> z, const CVec& f) const {
    const double off = -1.0 / (h_ * h_);
    CVec diag(n_, 2.0 / (h_ * h_) - z);
    return tridiag_solve(diag, off, f);
  }
  CVec resolvent_B(std::complex<double> z, const CVec& f) const {
    const double off = -1.0 / (h_ * h_);
    CVec diag(n_, 2.0 / (h_ * h_) - z);
    diag[mid_] += alpha_ / h_;
    return tridiag_solve(diag, off, f);
  }

  // Continuum defect element gamma(z)(x) = i/(2 sqrt z) e^{i sqrt z |x|}.
  CVec gamma(std::complex<double> z) const {
    const std::complex<double> rt = sqrt_upper(z);
    const std::complex<double> pref = std::complex<double>(0.0, 1.0) / (2.0 * rt);
    CVec g(n_);
    for (std::size_t j = 0; j < n_; ++j)
      g[j] = pref * std::exp(std::complex<double>(0.0, 1.0) * rt * std::abs(node(j)));
    return g;
  }

  std::complex<double> weyl(std::complex<double> z) const {
    if (alpha_ == 0.0) throw ModelDomainError("delta grid: M undefined at alpha = 0");
    return std::complex<double>(0.0, 1.0) / (2.0 * sqrt_upper(z)) + 1.0 / alpha_;
  }

  double masked_defect_residual(std::complex<double> z, const CVec& v) const {
    double s = 0.0;
    for (std::size_t i = 1; i + 1 < n_; ++i) {
      if (i == mid_) continue;
      const std::complex<double> r =
          (-v[i + 1] + 2.0 * v[i] - v[i - 1]) / (h_ * h_) - z * v[i];
      s += std::norm(r) * h_;
    }
    return std::sqrt(s);
  }

  std::complex<double> inner(const CVec& a, const CVec& b) const {
    return dot(a, b) * h_;
  }

  std::vector<CVec> probes(std::size_t count, unsigned seed = 7) const {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<CVec> out;
    const std::size_t lo = n_ / 3, hi = 2 * n_ / 3;
    for (std::size_t p = 0; p < count; ++p) {
      CVec f(n_, 0.0);
      for (std::size_t i = lo; i < hi; ++i) f[i] = {u(rng), u(rng)};
      out.push_back(std::move(f));
    }
    return out;
  }

 private:
  double length_, h_, alpha_;
  std::size_t n_ = 0, mid_ = 0;
};

}  // namespace weylscat

#endif
