#include <lagdelay/reduction.hpp>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace lagdelay {

namespace {

void check_partition(int m, Eigen::Index L) {
  if (m < 1 || m >= L) {
    throw std::invalid_argument(
        "partition index m must satisfy 1 <= m < L");
  }
}

}  // namespace

PartitionedSpectrum partition_spectrum(const Spectrum& spectrum, int m) {
  const auto L = spectrum.coefficients.size();
  check_partition(m, L);
  return {spectrum.coefficients.head(m), spectrum.coefficients.tail(L - m),
          m};
}

Vector extract_head_distortion(const Spectrum& y_hat, int m) {
  check_partition(m, y_hat.coefficients.size());
  return y_hat.coefficients.head(m);
}

Vector reconstruct_noise_plain(const Vector& y_meas, const BasisMatrix& basis,
                               int m) {
  check_partition(m, basis.params.L);
  if (y_meas.size() != basis.params.T) {
    throw std::invalid_argument(
        "reconstruct_noise_plain: signal length does not match the basis");
  }
  return basis.phi.leftCols(m) * (basis.psi.topRows(m) * y_meas);
}

BleModel fit_ble(const Matrix& sigma_lag, int m) {
  const auto L = sigma_lag.rows();
  check_partition(m, L);
  if (sigma_lag.cols() != L) {
    throw std::invalid_argument("fit_ble: sigma_lag must be square");
  }

  BleModel ble;
  ble.sigma11 = 0.5 * (sigma_lag.topLeftCorner(m, m) +
                       sigma_lag.topLeftCorner(m, m).transpose());
  ble.sigma21 = sigma_lag.bottomLeftCorner(L - m, m);
  ble.sigma22 = 0.5 * (sigma_lag.bottomRightCorner(L - m, L - m) +
                       sigma_lag.bottomRightCorner(L - m, L - m).transpose());

  Eigen::SelfAdjointEigenSolver<Matrix> es(ble.sigma11,
                                           Eigen::EigenvaluesOnly);
  const double lambda_max = es.eigenvalues().maxCoeff();
  double lambda_min = es.eigenvalues().minCoeff();
  if (lambda_min < -1e-8 * std::max(1.0, lambda_max)) {
    throw std::invalid_argument("fit_ble: head covariance is indefinite");
  }
  Matrix sigma11 = ble.sigma11;
  if (lambda_min <= 1e-14 * std::max(1.0, lambda_max)) {
    sigma11 += (1e-10 * sigma11.trace() / m) * Matrix::Identity(m, m);
    lambda_min = Eigen::SelfAdjointEigenSolver<Matrix>(
                     sigma11, Eigen::EigenvaluesOnly)
                     .eigenvalues()
                     .minCoeff();
    if (lambda_min <= 1e-14 * std::max(1.0, lambda_max)) {
      throw std::runtime_error(
          "fit_ble: head covariance is ill conditioned beyond jitter repair");
    }
  }

  Eigen::LLT<Matrix> llt(sigma11);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("fit_ble: head covariance factorization failed");
  }
  ble.gain = llt.solve(ble.sigma21.transpose()).transpose();
  Matrix err = ble.sigma22 - ble.gain * ble.sigma21.transpose();
  ble.err_cov = 0.5 * (err + err.transpose());
  return ble;
}

Vector ble_tail(const Vector& head, const BleModel& ble) {
  if (head.size() != ble.head_size()) {
    throw std::invalid_argument("ble_tail: head length does not match model");
  }
  return ble.gain * head;
}

Spectrum reduce_noise(const Vector& y_meas, const BasisMatrix& basis, int m,
                      const BleModel& ble) {
  check_partition(m, basis.params.L);
  const Spectrum full = analyze(basis, y_meas);
  const Vector head = full.coefficients.head(m);
  Vector reduced = Vector::Zero(basis.params.L);
  reduced.tail(basis.params.L - m) =
      full.coefficients.tail(basis.params.L - m) - ble_tail(head, ble);
  return {reduced, basis.params.p};
}

}  // namespace lagdelay
