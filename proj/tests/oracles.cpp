#include "oracles.hpp"

#include <cmath>
#include <stdexcept>

namespace oracles {

std::vector<double> laguerre_series(double p, int j, int T) {
  const double sp = std::sqrt(p);
  // Truncated series of the first section and of one all-pass factor,
  // both in closed form:
  //   sqrt(1-p) x / (1 - sqrt(p) x)  and  (x - sqrt(p)) / (1 - sqrt(p) x).
  std::vector<double> series(T, 0.0);
  std::vector<double> allpass(T, 0.0);
  allpass[0] = -sp;
  for (int t = 1; t < T; ++t) {
    series[t] = std::sqrt(1.0 - p) * std::pow(sp, t - 1);
    allpass[t] = (1.0 - p) * std::pow(sp, t - 1);
  }
  // Multiply the factors one at a time. A single high-order division
  // recursion would amplify rounding through the order-(j+1) pole, while
  // every partial product here is itself a unit-norm basis sequence, so
  // the accumulated error stays at rounding scale.
  for (int stage = 0; stage < j; ++stage) {
    std::vector<double> next(T, 0.0);
    for (int t = 0; t < T; ++t) {
      long double acc = 0.0L;
      for (int s = 0; s <= t; ++s) {
        acc += static_cast<long double>(series[s]) * allpass[t - s];
      }
      next[t] = static_cast<double>(acc);
    }
    series = std::move(next);
  }
  return series;
}

double binomial_multiplicative(int n, int k) {
  if (k < 0 || k > n) {
    return 0.0;
  }
  k = std::min(k, n - k);
  // Integer multiplicative formula; after each step value = C(n-k+i, i),
  // so the division is exact. For n <= 60 the intermediate product stays
  // below 2^64 (C(60,30) * 60 ~ 7.1e18).
  unsigned long long value = 1ull;
  for (int i = 1; i <= k; ++i) {
    value = value * static_cast<unsigned long long>(n - k + i) /
            static_cast<unsigned long long>(i);
  }
  return static_cast<double>(value);
}

std::vector<double> ar_autocovariance(const std::vector<double>& filter,
                                      int max_lag) {
  const int order = static_cast<int>(filter.size()) - 1;
  std::vector<double> g{1.0};
  double peak = 1.0;
  int quiet = 0;
  while (quiet < order + 8) {
    const int t = static_cast<int>(g.size());
    if (t > (1 << 22)) {
      throw std::runtime_error("oracle: impulse response failed to decay");
    }
    double value = 0.0;
    for (int k = 1; k <= order && k <= t; ++k) {
      value -= filter[k] * g[t - k];
    }
    g.push_back(value);
    peak = std::max(peak, std::abs(value));
    quiet = std::abs(value) < 1e-14 * peak ? quiet + 1 : 0;
  }
  std::vector<double> r(max_lag + 1, 0.0);
  for (int k = 0; k <= max_lag; ++k) {
    for (std::size_t t = 0; t + k < g.size(); ++t) {
      r[k] += g[t] * g[t + k];
    }
  }
  return r;
}

}  // namespace oracles
