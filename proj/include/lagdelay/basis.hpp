// Discrete Laguerre basis: time-domain function samples plus the analysis
// and synthesis operators over a finite horizon.
#pragma once

#include <lagdelay/types.hpp>

namespace lagdelay {

/// Parameters of a finite Laguerre basis section.
struct BasisParams {
  double p;  ///< pole parameter, 0 < p < 1
  int L;     ///< number of basis functions
  int T;     ///< time horizon in samples, T >= L
};

/// Sampled basis functions together with the least-squares analysis operator.
///
/// `phi` is T x L with column j holding l_j(t; p) for t = 0..T-1, and
/// `psi` = (phi' phi)^{-1} phi' is its left inverse, so `psi * phi = I`.
///
/// Time-domain convention: the functions are strictly proper, l_j(0) = 0
/// for every j (column 0 is sqrt(1-p) * sqrt(p)^(t-1) for t >= 1). All
/// spectra produced and consumed by this library use this convention.
struct BasisMatrix {
  BasisParams params;
  Matrix phi;
  Matrix psi;
};

/// Finite Laguerre coefficient vector, tagged with the parameter it was
/// computed with so mismatched uses fail loudly.
struct Spectrum {
  Vector coefficients;
  double p;
};

/// Build the sampled basis and its analysis operator. Columns are generated
/// by the all-pass recurrence w(t) = sqrt(p) w(t-1) + v(t-1) - sqrt(p) v(t),
/// w(0) = -sqrt(p) v(0), applied to each preceding column. Throws if the
/// parameters are out of range or the Gram matrix is too ill conditioned
/// (condition number above 1e12) for a trustworthy analysis operator.
BasisMatrix build_basis(const BasisParams& params);

/// First L Laguerre coefficients of a length-T signal: psi * signal.
Spectrum analyze(const BasisMatrix& basis, const Vector& signal);

/// Time-domain signal with the given spectrum: phi * coefficients. Spectra
/// shorter than the basis are zero padded.
Vector synthesize(const BasisMatrix& basis, const Spectrum& spectrum);

/// Time-domain sample matrix alone, for callers that only synthesize.
Matrix laguerre_time_matrix(double p, int L, int T);

}  // namespace lagdelay
