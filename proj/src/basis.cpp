#include <lagdelay/basis.hpp>

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace lagdelay {

namespace {

constexpr double kMaxGramCondition = 1e12;

void check_params(double p, int L, int T) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("Laguerre parameter must satisfy 0 < p < 1");
  }
  if (L < 1) {
    throw std::invalid_argument("basis size L must be at least 1");
  }
  if (T < L) {
    throw std::invalid_argument("horizon T must be at least L");
  }
}

}  // namespace

Matrix laguerre_time_matrix(double p, int L, int T) {
  check_params(p, L, T);
  const double sp = std::sqrt(p);
  Matrix phi(T, L);

  // Column 0: inverse transform of sqrt(1-p)/(z - sqrt(p)).
  phi(0, 0) = 0.0;
  if (T > 1) {
    phi(1, 0) = std::sqrt(1.0 - p);
    for (int t = 2; t < T; ++t) {
      phi(t, 0) = sp * phi(t - 1, 0);
    }
  }

  // Each further column applies the all-pass factor to the previous one.
  for (int j = 1; j < L; ++j) {
    const auto v = phi.col(j - 1);
    phi(0, j) = -sp * v(0);
    for (int t = 1; t < T; ++t) {
      phi(t, j) = sp * phi(t - 1, j) + v(t - 1) - sp * v(t);
    }
  }

  if (!phi.allFinite()) {
    throw std::runtime_error("Laguerre basis generation produced non-finite values");
  }
  return phi;
}

BasisMatrix build_basis(const BasisParams& params) {
  Matrix phi = laguerre_time_matrix(params.p, params.L, params.T);

  const Matrix gram = phi.transpose() * phi;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(gram);
  const double lambda_min = eig.eigenvalues().minCoeff();
  const double lambda_max = eig.eigenvalues().maxCoeff();
  if (!(lambda_min > 0.0) || lambda_max > kMaxGramCondition * lambda_min) {
    throw std::runtime_error(
        "basis Gram matrix is rank deficient or too ill conditioned; "
        "increase T or reduce L");
  }

  Eigen::LLT<Matrix> llt(gram);
  Matrix psi;
  if (llt.info() == Eigen::Success) {
    psi = llt.solve(phi.transpose());
  } else {
    // Rank-revealing fallback; the condition check above already passed.
    psi = phi.completeOrthogonalDecomposition().pseudoInverse();
  }

  return BasisMatrix{params, std::move(phi), std::move(psi)};
}

Spectrum analyze(const BasisMatrix& basis, const Vector& signal) {
  if (signal.size() != basis.params.T) {
    throw std::invalid_argument("signal length does not match basis horizon");
  }
  return Spectrum{basis.psi * signal, basis.params.p};
}

Vector synthesize(const BasisMatrix& basis, const Spectrum& spectrum) {
  const auto n = spectrum.coefficients.size();
  if (n > basis.params.L) {
    throw std::invalid_argument("spectrum longer than the basis");
  }
  if (std::abs(spectrum.p - basis.params.p) > 1e-12) {
    throw std::invalid_argument("spectrum parameter does not match the basis");
  }
  return basis.phi.leftCols(n) * spectrum.coefficients;
}

}  // namespace lagdelay
