// Markov parameter recovery from input/output Laguerre spectra and the
// closed-form least-squares delay estimate built on them.
#pragma once

#include <lagdelay/basis.hpp>
#include <lagdelay/types.hpp>

namespace lagdelay {

/// Inverse-filter view of a fixed input spectrum. g(s) holds the inverse
/// coefficient g_{n+s}, so that convolving u_{n..} with g reproduces a unit
/// pulse at relative index 0.
struct DeconvolutionPlan {
  int n = 0;   ///< index of the first non-zero input coefficient
  Vector g;    ///< inverse-filter coefficients, g(0) = 1/u_n
  int M = 0;   ///< number of Markov estimates the plan recovers
  Spectrum u;  ///< the input spectrum the plan was built for
};

/// Delay estimate together with the identity rows it was solved from; in
/// the noise-free case a + b*tau = 0 entrywise.
struct DelayEstimate {
  double tau_hat = 0.0;
  Vector a;
  Vector b;
  Vector h_hat;
};

DeconvolutionPlan build_deconvolution_plan(const Spectrum& u_spectrum,
                                           int count);

/// Markov estimates h_0..h_{count-1} from the lower-triangular Toeplitz
/// system y_{n+i} = sum_{k<=i} h_k u_{n+i-k}; square and invertible, so the
/// direct solve coincides with least squares.
Vector deconvolve_markov(const Spectrum& y_spectrum,
                         const Spectrum& u_spectrum, int count);

/// Identity rows over m = 1..count-2 with alpha = sqrt(p) + 1/sqrt(p) and
/// beta = sqrt(p) - 1/sqrt(p):
///   a_m = m*alpha*h_m + (m+1)*h_{m+1} + (m-1)*h_{m-1},  b_m = beta*h_m.
/// For exact delay Markov parameters a + b*tau = 0 holds entrywise.
std::pair<Vector, Vector> build_ab(const Vector& h_hat, double p);

/// Least-squares solution of a + b*tau = 0: tau_hat = -(b^T a) / (b^T b).
double estimate_delay(const Vector& a, const Vector& b);

/// Closed-form delay from three consecutive Markov parameters
/// h_{m-1}, h_m, h_{m+1}.
double estimate_delay_scalar(double h_prev, double h_m, double h_next, int m,
                             double p);

/// Full pipeline on spectra: deconvolve `markov_count` Markov estimates,
/// build the identity rows, solve for the delay.
DelayEstimate estimate_delay_from_spectra(const Spectrum& y_spectrum,
                                          const Spectrum& u_spectrum,
                                          int markov_count);

}  // namespace lagdelay
