#ifndef WEYLSCAT_EXTRAPOLATE_HPP
#define WEYLSCAT_EXTRAPOLATE_HPP

#include <cmath>
#include <complex>
#include <vector>

#include "weylscat/errors.hpp"

namespace weylscat {

struct EpsilonSchedule {
  double eps0 = 1e-2;
  int halvings = 6;  // samples at eps0 * 2^-k, k = 0..halvings

  std::vector<double> values() const {
    std::vector<double> v;
    double e = eps0;
    for (int k = 0; k <= halvings; ++k) {
      v.push_back(e);
      e *= 0.5;
    }
    return v;
  }
};

// Neville polynomial extrapolation of f(eps) to eps -> 0 from samples at the
// schedule's nodes; the magnitude of the final correction is the error
// estimate. Values analytic in eps make this limit rapidly convergent.
template <typename T>
struct Extrapolated {
  T value{};
  double error_estimate = 0.0;
};

template <typename T>
Extrapolated<T> extrapolate_to_zero(const std::vector<double>& eps,
                                    const std::vector<T>& f) {
  const std::size_t n = eps.size();
  std::vector<T> tab = f;
  T prev = tab[0];
  double last_corr = 0.0;
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i + j < n; ++i) {
      // P_{i..i+j}(0) from the two children, nodes eps[i] and eps[i+j].
      tab[i] = (eps[i] * tab[i + 1] - eps[i + j] * tab[i]) / (eps[i] - eps[i + j]);
    }
    last_corr = std::abs(tab[0] - prev);
    prev = tab[0];
  }
  return {tab[0], last_corr};
}

}  // namespace weylscat

#endif
