// Head/tail partition of output spectra under a Laguerre-delayed input, the
// rank-m time-domain noise reconstruction, and the best linear estimator of
// the tail distortion given the head.
#pragma once

#include <lagdelay/basis.hpp>
#include <lagdelay/types.hpp>

namespace lagdelay {

/// Spectrum split at the input Laguerre delay m: with the first m input
/// coefficients zero, the head of the measured spectrum carries only noise.
struct PartitionedSpectrum {
  Vector head;  ///< coefficients 0..m-1
  Vector tail;  ///< coefficients m..L-1
  int m = 0;
};

/// Covariance blocks of the distortion at the partition point and the
/// derived estimator: gain = sigma21 sigma11^{-1},
/// err_cov = sigma22 - sigma21 sigma11^{-1} sigma12.
struct BleModel {
  Matrix sigma11;
  Matrix sigma21;
  Matrix sigma22;
  Matrix gain;
  Matrix err_cov;

  int head_size() const { return static_cast<int>(sigma11.rows()); }
  int tail_size() const { return static_cast<int>(sigma22.rows()); }
};

PartitionedSpectrum partition_spectrum(const Spectrum& spectrum, int m);

/// First m coefficients of the measured output spectrum; under the delayed
/// input design these equal e_0..e_{m-1} plus truncation residue.
Vector extract_head_distortion(const Spectrum& y_hat, int m);

/// Rank-m reconstruction of the time-domain noise realization,
///   phi_m * (first m rows of psi) * y_meas.
Vector reconstruct_noise_plain(const Vector& y_meas, const BasisMatrix& basis,
                               int m);

/// Partition sigma_lag at m and form the BLE blocks. sigma11 is jittered
/// once when singular within roundoff; a matrix that stays ill conditioned
/// after that is rejected.
BleModel fit_ble(const Matrix& sigma_lag, int m);

/// BLE of the tail distortion given the observed head: gain * head.
Vector ble_tail(const Vector& head, const BleModel& ble);

/// Noise-reduced output spectrum: the head (pure noise) is zeroed exactly
/// and the BLE of the tail distortion is subtracted from the tail.
Spectrum reduce_noise(const Vector& y_meas, const BasisMatrix& basis, int m,
                      const BleModel& ble);

}  // namespace lagdelay
