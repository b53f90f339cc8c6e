// Independent reference computations for the test suite. Each oracle takes
// a different route than the library code it checks: basis functions come
// from convolving closed-form factor series instead of running the
// all-pass time recurrence, and Markov parameters from the explicit
// convolution-kernel polynomial.
#pragma once

#include <lagdelay/types.hpp>

#include <vector>

namespace oracles {

/// First T samples of the j-th discrete Laguerre function, from the series
/// expansion of sqrt(1-p) x (x - sqrt(p))^j / (1 - sqrt(p) x)^(j+1) in
/// x = z^{-1}, built by convolving the closed-form series of each factor.
std::vector<double> laguerre_series(double p, int j, int T);

/// Exact binomial coefficient by the multiplicative formula.
double binomial_multiplicative(int n, int k);

/// Unit-variance-driven autocovariance of 1/filter at lags 0..max_lag by
/// direct impulse-response correlation with an explicit geometric bound on
/// the truncation tail.
std::vector<double> ar_autocovariance(const std::vector<double>& filter,
                                      int max_lag);

}  // namespace oracles
