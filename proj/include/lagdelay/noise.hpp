// Disturbance models: white noise, AR-filtered colored noise, and random
// combinations of Laguerre functions, with their time-domain and
// Laguerre-domain covariance matrices.
#pragma once

#include <lagdelay/basis.hpp>
#include <lagdelay/rng.hpp>
#include <lagdelay/types.hpp>

#include <vector>

namespace lagdelay {

enum class NoiseKind { White, Colored, LaguerreCombination };

struct NoiseModel {
  NoiseKind kind = NoiseKind::White;
  /// Marginal variance. For the Laguerre combination this is the average
  /// diagonal of the (non-stationary) time covariance, informational only.
  double lambda = 0.0;
  /// Monic AR denominator {1, d1, .., dn}; Colored only.
  std::vector<double> filter;
  /// Basis pole of the noise expansion; LaguerreCombination only.
  double p_e = 0.0;
  /// Highest noise basis index; LaguerreCombination only.
  int K = 0;
  /// (K+1)x(K+1) covariance of the random coefficients.
  Matrix coef_cov;
};

NoiseModel white_noise(double lambda);
NoiseModel colored_noise(double lambda, std::vector<double> filter);
NoiseModel laguerre_noise(double p_e, const Matrix& coef_cov);

/// Time-domain and Laguerre-domain covariances of one model at a fixed
/// basis; sigma_lag = psi * sigma_time * psi^T by construction.
struct CovariancePair {
  Matrix sigma_time;
  Matrix sigma_lag;
};

/// Precomputed immutable sampling state (filter impulse response and
/// burn-in, or coefficient covariance factor). draw() is const and safe to
/// call concurrently with per-trial generators.
class NoiseSampler {
 public:
  NoiseSampler(const NoiseModel& model, int T);

  Vector draw(Rng& rng) const;

  const NoiseModel& model() const { return model_; }
  int length() const { return T_; }

 private:
  NoiseModel model_;
  int T_ = 0;
  double driving_std_ = 0.0;  // sqrt(lambda_v), Colored
  int burn_in_ = 0;           // Colored
  Matrix coef_factor_;        // LaguerreCombination, coef_cov = F F^T
  Matrix phi_e_;              // T x (K+1) synthesis matrix at p_e
};

/// One realization of length T. Convenience wrapper over NoiseSampler for
/// single draws; campaigns construct the sampler once instead.
Vector sample(const NoiseModel& model, int T, std::uint64_t rng_seed);

/// Analytic T x T covariance of the model. White: lambda I. Colored:
/// symmetric Toeplitz from the filter autocovariance. LaguerreCombination:
/// Phi_e coef_cov Phi_e^T.
Matrix time_covariance(const NoiseModel& model, int T);

/// Projection of a time covariance onto the analysis basis,
///   sigma_lag = psi sigma_time psi^T, symmetrized.
Matrix laguerre_covariance(const Matrix& sigma_time, const BasisMatrix& basis);

/// Same projection computed from the model structure without materializing
/// the T x T matrix where avoidable (White, LaguerreCombination).
Matrix laguerre_covariance(const NoiseModel& model, const BasisMatrix& basis);

CovariancePair covariance_pair(const NoiseModel& model,
                               const BasisMatrix& basis);

/// Laguerre-combination model whose coefficient covariance matches a given
/// colored time covariance on the span of the first K+1 noise basis
/// functions: coef_cov = psi_{p_e} sigma_time psi_{p_e}^T, PSD-repaired.
NoiseModel nm3_from_colored(const Matrix& sigma_time_colored, double p_e,
                            int K, int T);

/// max_{i,j} |M(i,j) - M(0, |i-j|)|; zero iff M is symmetric Toeplitz with
/// the first row as generator.
double toeplitz_deviation(const Matrix& m);

/// Impulse response of 1/filter, truncated once the tail falls below
/// 1e-12 of its peak. Exposed for the autocovariance oracle in tests.
std::vector<double> ar_impulse_response(const std::vector<double>& filter);

}  // namespace lagdelay
