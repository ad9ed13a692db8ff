#ifndef WEYLSCAT_STATIONARY_HPP
#define WEYLSCAT_STATIONARY_HPP

// Independent stationary-representation route on the half-line chain pair:
//   S(lambda) = 1 + 2 pi i (1+lambda^2)^2 sqrt(K) Z sqrt(K),
//   Z(lambda)  = Q*Q/(lambda+i) + phi(lambda) G /(lambda+i)^2
//                + lim_{eps->0} Q*(B - lambda - i eps)^{-1} Q,
// with C = gamma(-i), G = -M(i)^{-1}, Q = phi(A) C G, everything built from
// resolvents of one truncated chain. The chain carries a smooth complex
// absorbing tail so that spectral-density samples at the smallest epsilon in
// the schedule are not polluted by end reflections; the remaining l2 mass of
// the resolvent beyond a fixed anchor site is summed with a decay rate
// measured from the solution itself (no closed forms enter this route).

#include <cmath>
#include <complex>
#include <vector>

#include "weylscat/discretized.hpp"
#include "weylscat/extrapolate.hpp"

namespace weylscat {

struct StationarySetup {
  std::size_t truncation = 4000;
  double pad_fraction = 0.25;   // trailing fraction of sites carrying the CAP
  double pad_strength = 0.2;    // CAP maximum (quartic ramp)
  EpsilonSchedule schedule;     // default 1e-2, 6 halvings
  std::size_t tail_anchor = 400;
  std::size_t tail_baseline = 1600;
  double doubling_tol = 1e-7;   // TruncationTooSmall detector
};

struct SpectralDensitySample {
  double lambda = 0.0;
  double K = 0.0;               // scalar spectral density (boundary dim 1)
  double error_estimate = 0.0;
};

class StationaryOracle {
 public:
  StationaryOracle(double alpha, StationarySetup setup = {})
      : alpha_(alpha), s_(setup) {
    build_profile();
    const std::complex<double> i(0.0, 1.0);
    c_ = solve_ret(-i, unit0(), false);
    const std::complex<double> m_i = chain_m(i) + 1.0 / alpha_;
    g_ = -1.0 / m_i;
    // Q = phi(A) C G = -gamma(i) M(i)^{-1}
    const CVec gi = solve_ret(i, unit0(), false);
    q_.resize(n());
    for (std::size_t k = 0; k < n(); ++k) q_[k] = -gi[k] / m_i;
  }

  std::size_t n() const { return s_.truncation; }
  double alpha() const { return alpha_; }
  std::complex<double> G() const { return g_; }
  const CVec& C() const { return c_; }
  const CVec& Q() const { return q_; }

  // m-function of the truncated chain itself (no closed form).
  std::complex<double> chain_m(std::complex<double> z) const {
    const CVec g = solve_ret(z, unit0(), false);
    return g[0];
  }
  std::complex<double> chain_weyl(std::complex<double> z) const {
    return chain_m(z) + 1.0 / alpha_;
  }

  // || (B-i)^{-1} f - (A-i)^{-1} f - Q <C, f> || / || f || over probes.
  double factorization_residual(const std::vector<CVec>& probes) const {
    const std::complex<double> i(0.0, 1.0);
    double worst = 0.0;
    for (const CVec& f : probes) {
      const CVec rb = solve_ret(i, f, true);
      const CVec ra = solve_ret(i, f, false);
      const std::complex<double> cf = dot(c_, f);
      double num = 0.0, den = 0.0;
      for (std::size_t k = 0; k < n(); ++k) {
        num += std::norm(rb[k] - ra[k] - q_[k] * cf);
        den += std::norm(f[k]);
      }
      worst = std::max(worst, std::sqrt(num / den));
    }
    return worst;
  }

  // K(lambda; eps) = (eps/pi) || (A - lambda + i eps)^{-1} C ||^2 with the
  // mass beyond the anchor site summed from the measured decay rate.
  double density_at(double lambda, double eps, std::size_t chain_n) const {
    const std::complex<double> z(lambda, eps);
    const CVec u = solve_adv_n(z, c_, false, chain_n);
    return eps / M_PI * tail_summed_norm2(u);
  }

  SpectralDensitySample spectral_density(double lambda) const {
    const std::vector<double> eps = s_.schedule.values();
    std::vector<double> vals;
    for (double e : eps) vals.push_back(density_at(lambda, e, n()));
    // reflection-artifact detector: K must be stable under 2x truncation
    const double doubled = density_at(lambda, eps.back(), 2 * n());
    if (std::abs(doubled - vals.back()) >
        s_.doubling_tol * (1.0 + std::abs(vals.back())))
      throw TruncationTooSmall("spectral_density: K moves under chain doubling");
    const auto ex = extrapolate_to_zero(eps, vals);
    if (ex.value < -1e-10)
      throw ExtrapolationDiverged("spectral_density: negative density");
    return {lambda, ex.value, ex.error_estimate};
  }

  // lim_{eps->0} Q^* (B - lambda - i eps)^{-1} Q by the same schedule.
  Extrapolated<std::complex<double>> b_resolvent_limit(double lambda) const {
    const std::vector<double> eps = s_.schedule.values();
    std::vector<std::complex<double>> vals;
    for (double e : eps) {
      const CVec v = solve_ret({lambda, e}, q_, true);
      vals.push_back(dot(q_, v));
    }
    return extrapolate_to_zero(eps, vals);
  }

  static std::complex<double> phi(double t) {
    return std::complex<double>(t, 1.0) / std::complex<double>(t, -1.0);
  }

  struct ZValue {
    std::complex<double> z;
    double error_estimate = 0.0;
  };

  // Z(lambda) from the stationary side (Q, G and a B-resolvent limit only).
  ZValue z_value(double lambda) const {
    const std::complex<double> li(lambda, 1.0);
    const std::complex<double> qq = dot(q_, q_);
    const auto lim = b_resolvent_limit(lambda);
    return {qq / li + phi(lambda) * g_ / (li * li) + lim.value, lim.error_estimate};
  }

  // Q^*Q computed the algebraic way, (1/2i)(M(-i)^{-1} - M(i)^{-1}).
  std::complex<double> qq_from_weyl() const {
    const std::complex<double> i(0.0, 1.0);
    return (1.0 / chain_weyl(-i) - 1.0 / chain_weyl(i)) / (2.0 * i);
  }

  struct StationarySample {
    double lambda = 0.0;
    std::complex<double> S{1.0, 0.0};
    double K = 0.0;
    double error_estimate = 0.0;
  };

  StationarySample stationary_smatrix(double lambda) const {
    const SpectralDensitySample k = spectral_density(lambda);
    const ZValue z = z_value(lambda);
    StationarySample out;
    out.lambda = lambda;
    out.K = k.K;
    const double w = 1.0 + lambda * lambda;
    out.S = 1.0 + std::complex<double>(0.0, 2.0 * M_PI) * w * w * k.K * z.z;
    out.error_estimate = k.error_estimate + z.error_estimate;
    return out;
  }

 private:
  CVec unit0() const {
    CVec e(n(), 0.0);
    e[0] = 1.0;
    return e;
  }

  void build_profile() {
    profile_.assign(s_.truncation, 0.0);
    const std::size_t pad = std::size_t(double(s_.truncation) * s_.pad_fraction);
    const std::size_t start = s_.truncation - pad;
    for (std::size_t k = start; k < s_.truncation; ++k) {
      const double t = double(k - start + 1) / double(pad);
      profile_[k] = s_.pad_strength * t * t * t * t;
    }
  }

  // (A_pad - z) u = f (retarded) with A_pad = chain - i W; with_b adds the
  // rank-one boundary term alpha at site 0.
  CVec solve_ret_n(std::complex<double> z, const CVec& f, bool with_b,
                   std::size_t chain_n) const {
    CVec diag(chain_n);
    const std::size_t pad = std::size_t(double(chain_n) * s_.pad_fraction);
    const std::size_t start = chain_n - pad;
    for (std::size_t k = 0; k < chain_n; ++k) {
      double w = 0.0;
      if (k >= start) {
        const double t = double(k - start + 1) / double(pad);
        w = s_.pad_strength * t * t * t * t;
      }
      diag[k] = std::complex<double>(0.0, -w) - z;
    }
    if (with_b) diag[0] += alpha_;
    CVec rhs = f;
    rhs.resize(chain_n, 0.0);
    return tridiag_solve(diag, 1.0, rhs);
  }
  CVec solve_ret(std::complex<double> z, const CVec& f, bool with_b) const {
    return solve_ret_n(z, f, with_b, n());
  }

  // (A + iW - conj z)^{-1} f = conj( (A - iW - z)^{-1} conj f ): the adjoint
  // of the padded retarded resolvent, i.e. the advanced one.
  CVec solve_adv_n(std::complex<double> z, const CVec& f, bool with_b,
                   std::size_t chain_n) const {
    CVec fc(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) fc[k] = std::conj(f[k]);
    CVec u = solve_ret_n(z, fc, with_b, chain_n);
    for (std::size_t k = 0; k < u.size(); ++k) u[k] = std::conj(u[k]);
    return u;
  }

  // || u ||^2 with the mass beyond the anchor site summed geometrically from
  // the decay rate measured over a long baseline of the solution itself. The
  // measurement window must stay clear of the absorbing tail.
  double tail_summed_norm2(const CVec& u) const {
    const std::size_t pad = std::size_t(double(u.size()) * s_.pad_fraction);
    const std::size_t cap = (u.size() - pad) * 9 / 10;
    const std::size_t n0 = std::min(s_.tail_anchor, cap / 4);
    const std::size_t n1 = std::max(n0 + 8, std::min(n0 + s_.tail_baseline, cap));
    double head = 0.0;
    for (std::size_t k = 0; k <= n0; ++k) head += std::norm(u[k]);
    const double a0 = std::abs(u[n0]);
    const double a1 = std::abs(u[n1]);
    if (a0 == 0.0 || a1 == 0.0) return head;
    const double r = std::exp((std::log(a1) - std::log(a0)) / double(n1 - n0));
    if (!(r < 1.0 - 1e-13))
      throw TruncationTooSmall("tail_summed_norm2: resolvent tail not decaying");
    const double r2 = r * r;
    return head + a0 * a0 * r2 / (1.0 - r2);
  }

  double alpha_;
  StationarySetup s_;
  std::vector<double> profile_;
  CVec c_, q_;
  std::complex<double> g_{0.0, 0.0};
};

}  // namespace weylscat

#endif
