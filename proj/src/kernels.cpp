#include <lagdelay/kernels.hpp>

namespace lagdelay {

Vector Moments::mean() const {
  if (count < 1) {
    throw std::logic_error("Moments: no samples accumulated");
  }
  return sum / static_cast<double>(count);
}

Matrix Moments::covariance() const {
  if (count < 2) {
    throw std::logic_error("Moments: covariance needs at least two samples");
  }
  const double n = static_cast<double>(count);
  const Vector mu = sum / n;
  Matrix cov = (outer - n * (mu * mu.transpose())) / (n - 1.0);
  return 0.5 * (cov + cov.transpose());
}

}  // namespace lagdelay
