// Laguerre-domain state-space mapping of time-domain LTI systems, the pure
// delay operator, its output spectrum and Markov parameters.
#pragma once

#include <lagdelay/basis.hpp>
#include <lagdelay/types.hpp>

namespace lagdelay {

/// Time-domain state space x(t+1) = A x(t) + B u(t), y(t) = C x(t), x(0) = 0.
struct TimeStateSpace {
  Matrix A;
  Vector B;
  RowVector C;
};

/// Laguerre-domain counterpart x_{j+1} = F x_j + G u_j, y_j = H x_j + J u_j.
struct LaguerreStateSpace {
  Matrix F;
  Vector G;
  RowVector H;
  double J;
  double p;
};

/// Markov parameters h_1..h_N of a Laguerre-domain delay realization; the
/// throughput h_0 = J = sqrt(p)^tau is kept separately.
struct MarkovSequence {
  Vector h;  ///< h(j-1) holds h_j
  double throughput;
  int tau;
  double p;
};

/// Map a time-domain system to Laguerre domain:
///   F = (I - sqrt(p) A)^{-1} (A - sqrt(p) I)
///   G = (1 - p) (I - sqrt(p) A)^{-1} B
///   H = C (I - sqrt(p) A)^{-1}
///   J = sqrt(p) C (I - sqrt(p) A)^{-1} B
/// Throws when (I - sqrt(p) A) is singular.
LaguerreStateSpace lti_to_laguerre(const TimeStateSpace& sys, double p);

/// Nilpotent shift realization of y(t) = u(t - tau): A is the tau x tau
/// down-shift, B the first unit vector, C the last unit row.
TimeStateSpace delay_state_space(int tau);

/// The polynomial value L_m^{(tau)}(sqrt(p)) entering the delay's Laguerre
/// convolution kernel,
///   (-sqrt(p))^{m-tau} * sum_{n=0}^{tau-1} C(m+n,n) C(m-1,tau-n-1) (-p)^n,
/// with C(n,k) = 0 for k > n.
double delay_polynomial(int m, int tau, double p);

/// Output spectrum of the pure delay for a given input spectrum:
///   y_j = (1-p) sum_{k<j} L_{j-k}^{(tau)}(sqrt(p)) u_k + sqrt(p)^tau u_j.
Spectrum delay_spectrum(const Spectrum& u_spectrum, int tau, double p);

/// h_j = H F^{j-1} G for j = 1..count, from the state-space realization of
/// the delay. Cross-checked internally against (1-p) L_j^{(tau)}(sqrt(p)).
MarkovSequence markov_parameters(int tau, double p, int count);

/// Time-domain delay with zero initial fill: y(t) = u(t - tau) for t >= tau.
/// tau = 0 is the identity.
Vector delay_time(const Vector& u, int tau);

/// Binomial coefficient as a double, computed in exact integer arithmetic
/// for n <= 60 and converted once; throws beyond that range.
double binomial(int n, int k);

}  // namespace lagdelay
