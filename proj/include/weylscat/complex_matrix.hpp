#ifndef WEYLSCAT_COMPLEX_MATRIX_HPP
#define WEYLSCAT_COMPLEX_MATRIX_HPP

// Dense complex linear algebra used by every other header. Self-contained:
// Householder tridiagonalization + implicit-shift QL for the Hermitian
// eigenproblem, partial-pivot LU with a Hager 1-norm condition estimate.
// Sizes stay small (n <= 512), everything is O(n^3) dense.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <string>
#include <vector>

#include "weylscat/errors.hpp"

namespace weylscat {

using Complex = std::complex<double>;

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, Complex(0.0, 0.0)) {}

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }
  static ComplexMatrix diagonal(const std::vector<Complex>& d) {
    ComplexMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Complex& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  bool all_finite() const {
    for (const Complex& v : a_)
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
  }

  ComplexMatrix adjoint() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
  }

  ComplexMatrix transpose() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
    return m;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const Complex& v : a_) s += std::norm(v);
    return std::sqrt(s);
  }

  double one_norm() const {
    double best = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < rows_; ++i) s += std::abs((*this)(i, j));
      best = std::max(best, s);
    }
    return best;
  }

  std::vector<Complex> column(std::size_t j) const {
    std::vector<Complex> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  ComplexMatrix& operator+=(const ComplexMatrix& o) {
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
  }
  ComplexMatrix& operator-=(const ComplexMatrix& o) {
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
    return *this;
  }
  ComplexMatrix& operator*=(Complex c) {
    for (Complex& v : a_) v *= c;
    return *this;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(Complex c, ComplexMatrix a) { return a *= c; }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix m(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Complex aik = a(i, k);
        if (aik == Complex(0.0, 0.0)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) m(i, j) += aik * b(k, j);
      }
    return m;
  }

  std::vector<Complex> apply(const std::vector<Complex>& x) const {
    std::vector<Complex> y(rows_, Complex(0.0, 0.0));
    for (std::size_t i = 0; i < rows_; ++i) {
      Complex s = 0.0;
      for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j) * x[j];
      y[i] = s;
    }
    return y;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Complex> a_;
};

inline double hermitian_asymmetry(const ComplexMatrix& h) {
  double s = 0.0;
  for (std::size_t i = 0; i < h.rows(); ++i)
    for (std::size_t j = 0; j < h.cols(); ++j) s += std::norm(h(i, j) - std::conj(h(j, i)));
  return std::sqrt(s);
}

inline ComplexMatrix hermitize(const ComplexMatrix& h) {
  ComplexMatrix m(h.rows(), h.cols());
  for (std::size_t i = 0; i < h.rows(); ++i)
    for (std::size_t j = 0; j < h.cols(); ++j)
      m(i, j) = 0.5 * (h(i, j) + std::conj(h(j, i)));
  return m;
}

struct HermitianEig {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // unitary, columns
};

namespace detail {

// Reduce a Hermitian matrix (in place) to real symmetric tridiagonal form,
// accumulating the unitary transform into q. On exit d holds the diagonal and
// e the (real, nonnegative) subdiagonal, a = q^* A q up to phase absorption.
inline void hermitian_to_tridiagonal(ComplexMatrix& a, ComplexMatrix& q,
                                     std::vector<double>& d, std::vector<double>& e) {
  const std::size_t n = a.rows();
  q = ComplexMatrix::identity(n);
  d.assign(n, 0.0);
  e.assign(n > 0 ? n - 1 : 0, 0.0);
  if (n == 0) return;

  std::vector<Complex> v(n), p(n), w(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double sigma2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) sigma2 += std::norm(a(i, k));
    const double sigma = std::sqrt(sigma2);
    if (sigma == 0.0) continue;
    const Complex x0 = a(k + 1, k);
    const double ax0 = std::abs(x0);
    const Complex phase = (ax0 == 0.0) ? Complex(1.0, 0.0) : x0 / ax0;

    const double vnorm2 = 2.0 * sigma * (sigma + ax0);
    if (vnorm2 == 0.0) continue;
    const double tau = 2.0 / vnorm2;
    for (std::size_t i = 0; i < n; ++i) v[i] = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) v[i] = a(i, k);
    v[k + 1] += phase * sigma;

    // Hermitian rank-2 update of the trailing block: A <- A - v w^* - w v^*.
    for (std::size_t i = k + 1; i < n; ++i) {
      Complex s = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) s += a(i, j) * v[j];
      p[i] = tau * s;
    }
    Complex vp = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) vp += std::conj(v[i]) * p[i];
    const Complex kappa = 0.5 * tau * vp;
    for (std::size_t i = k + 1; i < n; ++i) w[i] = p[i] - kappa * v[i];
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) -= v[i] * std::conj(w[j]) + w[i] * std::conj(v[j]);

    a(k + 1, k) = -phase * sigma;
    a(k, k + 1) = std::conj(a(k + 1, k));
    for (std::size_t i = k + 2; i < n; ++i) {
      a(i, k) = 0.0;
      a(k, i) = 0.0;
    }

    // q <- q (I - tau v v^*)
    for (std::size_t r = 0; r < n; ++r) {
      Complex s = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) s += q(r, j) * v[j];
      s *= tau;
      for (std::size_t j = k + 1; j < n; ++j) q(r, j) -= s * std::conj(v[j]);
    }
  }

  // Absorb subdiagonal phases so the tridiagonal matrix is real.
  Complex delta = 1.0;
  for (std::size_t j = 0; j < n; ++j) {
    if (j > 0) {
      const Complex ej = a(j, j - 1);
      const double aej = std::abs(ej);
      if (aej > 0.0) {
        delta *= ej / aej;
      }
      e[j - 1] = aej;
      for (std::size_t r = 0; r < n; ++r) q(r, j) *= delta;
    }
    d[j] = a(j, j).real();
  }
}

inline double hypot2(double a, double b) { return std::hypot(a, b); }

// Implicit-shift QL on a real symmetric tridiagonal (d, e), rotations applied
// to the complex columns of z. Classic tqli with eigenvector accumulation.
inline void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e,
                           ComplexMatrix& z, int max_sweeps = 50) {
  const std::size_t n = d.size();
  if (n <= 1) return;
  e.push_back(0.0);  // sentinel
  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= 1e-300 || std::abs(e[m]) <= 2.3e-16 * dd) break;
      }
      if (m != l) {
        if (iter++ == max_sweeps)
          throw ConvergenceFailure("tridiagonal QL failed to converge");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = hypot2(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        for (std::size_t i = m; i-- > l;) {
          double f = s * e[i];
          const double b = c * e[i];
          r = hypot2(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          for (std::size_t k = 0; k < n; ++k) {
            const Complex zi1 = z(k, i + 1);
            const Complex zi = z(k, i);
            z(k, i + 1) = s * zi + c * zi1;
            z(k, i) = c * zi - s * zi1;
          }
        }
        if (r == 0.0 && m - l > 1) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
  e.pop_back();
}

}  // namespace detail

// Eigendecomposition of a Hermitian matrix. The input is Hermitized first;
// asymmetry beyond atol = 1e-12 * ||H||_F is an error.
inline HermitianEig herm_eig(const ComplexMatrix& h_in) {
  if (h_in.rows() != h_in.cols())
    throw NonHermitianInput("herm_eig: matrix not square");
  if (!h_in.all_finite()) throw NonHermitianInput("herm_eig: non-finite entries");
  const double hnorm = h_in.frobenius_norm();
  if (hermitian_asymmetry(h_in) > 1e-12 * std::max(hnorm, 1e-30) && hnorm > 0.0)
    throw NonHermitianInput("herm_eig: asymmetry exceeds 1e-12 * ||H||_F");

  ComplexMatrix a = hermitize(h_in);
  const std::size_t n = a.rows();
  HermitianEig out;
  if (n == 0) {
    out.eigenvectors = ComplexMatrix(0, 0);
    return out;
  }

  ComplexMatrix q;
  std::vector<double> d, e;
  detail::hermitian_to_tridiagonal(a, q, d, e);
  detail::tridiagonal_ql(d, e, q);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return d[i] < d[j]; });

  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    out.eigenvalues[j] = d[order[j]];
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, j) = q(i, order[j]);
  }
  return out;
}

// Square root of a Hermitian PSD matrix; eigenvalues in [-clip_tol, 0) are
// clipped to zero, anything below -clip_tol is refused.
inline ComplexMatrix psd_sqrt(const ComplexMatrix& h, double clip_tol = -1.0) {
  const HermitianEig eig = herm_eig(h);
  const std::size_t n = h.rows();
  if (clip_tol < 0.0) clip_tol = 1e-10 * std::max(h.frobenius_norm(), 1e-30);
  ComplexMatrix r(n, n);
  std::vector<double> s(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double w = eig.eigenvalues[k];
    if (w < -clip_tol)
      throw IndefiniteInput("psd_sqrt: eigenvalue " + std::to_string(w) +
                            " below -clip_tol");
    // Noise-level eigenvalues go to zero: sqrt would amplify them to O(sqrt(tol)).
    s[k] = w > clip_tol ? std::sqrt(w) : 0.0;
  }
  const ComplexMatrix& v = eig.eigenvectors;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Complex acc = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        acc += v(i, k) * s[k] * std::conj(v(j, k));
      r(i, j) = acc;
    }
  return hermitize(r);
}

struct LuFactors {
  ComplexMatrix lu;
  std::vector<std::size_t> perm;
  double one_norm_a = 0.0;
};

inline LuFactors lu_factor(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) throw SingularMatrix("lu_factor: matrix not square");
  const std::size_t n = a.rows();
  LuFactors f;
  f.lu = a;
  f.perm.resize(n);
  std::iota(f.perm.begin(), f.perm.end(), std::size_t{0});
  f.one_norm_a = a.one_norm();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(f.lu(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = std::abs(f.lu(i, k));
      if (v > best) {
        best = v;
        piv = i;
      }
    }
    if (best < 1e-300) throw SingularMatrix("lu_factor: pivot below 1e-300");
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(f.lu(k, j), f.lu(piv, j));
      std::swap(f.perm[k], f.perm[piv]);
    }
    const Complex pivot = f.lu(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex m = f.lu(i, k) / pivot;
      f.lu(i, k) = m;
      if (m == Complex(0.0, 0.0)) continue;
      for (std::size_t j = k + 1; j < n; ++j) f.lu(i, j) -= m * f.lu(k, j);
    }
  }
  return f;
}

inline std::vector<Complex> lu_solve_vec(const LuFactors& f, const std::vector<Complex>& b,
                                         bool adjoint = false) {
  const std::size_t n = f.perm.size();
  std::vector<Complex> x(n);
  if (!adjoint) {
    for (std::size_t i = 0; i < n; ++i) x[i] = b[f.perm[i]];
    for (std::size_t i = 1; i < n; ++i) {
      Complex s = x[i];
      for (std::size_t j = 0; j < i; ++j) s -= f.lu(i, j) * x[j];
      x[i] = s;
    }
    for (std::size_t i = n; i-- > 0;) {
      Complex s = x[i];
      for (std::size_t j = i + 1; j < n; ++j) s -= f.lu(i, j) * x[j];
      x[i] = s / f.lu(i, i);
    }
  } else {
    // Solve A^* x = b, i.e. U^* L^* P x = b.
    x = b;
    for (std::size_t i = 0; i < n; ++i) {
      Complex s = x[i];
      for (std::size_t j = 0; j < i; ++j) s -= std::conj(f.lu(j, i)) * x[j];
      x[i] = s / std::conj(f.lu(i, i));
    }
    for (std::size_t i = n; i-- > 0;) {
      Complex s = x[i];
      for (std::size_t j = i + 1; j < n; ++j) s -= std::conj(f.lu(j, i)) * x[j];
      x[i] = s;
    }
    std::vector<Complex> y(n);
    for (std::size_t i = 0; i < n; ++i) y[f.perm[i]] = x[i];
    x = y;
  }
  return x;
}

// Hager/Higham style estimate of ||A^-1||_1 from an LU factorization.
inline double inverse_one_norm_estimate(const LuFactors& f) {
  const std::size_t n = f.perm.size();
  if (n == 0) return 0.0;
  std::vector<Complex> x(n, Complex(1.0 / double(n), 0.0));
  double est = 0.0;
  for (int iter = 0; iter < 5; ++iter) {
    std::vector<Complex> y = lu_solve_vec(f, x);
    double ynorm = 0.0;
    for (const Complex& v : y) ynorm += std::abs(v);
    est = std::max(est, ynorm);
    std::vector<Complex> xi(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double a = std::abs(y[i]);
      xi[i] = (a == 0.0) ? Complex(1.0, 0.0) : y[i] / a;
    }
    std::vector<Complex> z = lu_solve_vec(f, xi, /*adjoint=*/true);
    double zmax = 0.0;
    std::size_t jmax = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double a = std::abs(z[i]);
      if (a > zmax) {
        zmax = a;
        jmax = i;
      }
    }
    double zx = 0.0;
    for (std::size_t i = 0; i < n; ++i) zx += (z[i] * std::conj(x[i])).real();
    if (zmax <= zx + 1e-14 * zmax) break;
    x.assign(n, Complex(0.0, 0.0));
    x[jmax] = 1.0;
  }
  return est;
}

struct SolveResult {
  ComplexMatrix x;
  double condition = 0.0;  // 1-norm condition estimate
};

// Solve A X = B with a condition cap; degeneracies fail loudly.
inline SolveResult solve(const ComplexMatrix& a, const ComplexMatrix& b,
                         double cond_cap = 1e12) {
  if (!a.all_finite() || !b.all_finite())
    throw SingularMatrix("solve: non-finite entries");
  if (a.rows() != b.rows()) throw SingularMatrix("solve: dimension mismatch");
  const LuFactors f = lu_factor(a);
  SolveResult r;
  r.condition = f.one_norm_a * inverse_one_norm_estimate(f);
  if (r.condition > cond_cap)
    throw SingularMatrix("solve: condition estimate " + std::to_string(r.condition) +
                         " above cap");
  r.x = ComplexMatrix(a.cols(), b.cols());
  std::vector<Complex> col(a.rows());
  for (std::size_t j = 0; j < b.cols(); ++j) {
    for (std::size_t i = 0; i < a.rows(); ++i) col[i] = b(i, j);
    const std::vector<Complex> x = lu_solve_vec(f, col);
    for (std::size_t i = 0; i < a.cols(); ++i) r.x(i, j) = x[i];
  }
  return r;
}

// Singular values as eigenvalues of sqrt(A^* A), descending.
inline std::vector<double> singular_values(const ComplexMatrix& a) {
  const ComplexMatrix ata = a.adjoint() * a;
  const HermitianEig eig = herm_eig(ata);
  std::vector<double> s(eig.eigenvalues.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double w = eig.eigenvalues[s.size() - 1 - i];
    s[i] = w > 0.0 ? std::sqrt(w) : 0.0;
  }
  return s;
}

}  // namespace weylscat

#endif
