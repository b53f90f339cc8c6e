#include <lagdelay/noise.hpp>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace lagdelay {

namespace {

constexpr double kImpulseTailCutoff = 1e-12;
constexpr double kPsdRoundoffSlack = 1e-8;
constexpr double kPsdJitterScale = 1e-10;

double spectral_radius(const std::vector<double>& filter) {
  const int order = static_cast<int>(filter.size()) - 1;
  Matrix companion = Matrix::Zero(order, order);
  for (int k = 0; k < order; ++k) {
    companion(0, k) = -filter[k + 1];
  }
  for (int i = 1; i < order; ++i) {
    companion(i, i - 1) = 1.0;
  }
  return companion.eigenvalues().cwiseAbs().maxCoeff();
}

void check_model(const NoiseModel& model) {
  if (!(model.lambda >= 0.0) || !std::isfinite(model.lambda)) {
    throw std::invalid_argument("noise: lambda must be finite and >= 0");
  }
  switch (model.kind) {
    case NoiseKind::White:
      break;
    case NoiseKind::Colored: {
      if (model.filter.size() < 2) {
        throw std::invalid_argument("noise: AR filter needs order >= 1");
      }
      if (std::abs(model.filter[0] - 1.0) > 1e-12) {
        throw std::invalid_argument("noise: AR filter must be monic");
      }
      const double rho = spectral_radius(model.filter);
      if (rho >= 1.0) {
        throw std::invalid_argument("noise: AR filter is unstable");
      }
      if (rho > 1.0 - 1e-6) {
        throw std::invalid_argument(
            "noise: AR filter pole too close to the unit circle for "
            "stationary sampling");
      }
      break;
    }
    case NoiseKind::LaguerreCombination: {
      if (!(model.p_e > 0.0 && model.p_e < 1.0)) {
        throw std::invalid_argument("noise: p_e must lie in (0, 1)");
      }
      const auto n = model.coef_cov.rows();
      if (n != model.K + 1 || model.coef_cov.cols() != n || n < 1) {
        throw std::invalid_argument(
            "noise: coef_cov must be (K+1) x (K+1) with K >= 0");
      }
      if ((model.coef_cov - model.coef_cov.transpose()).cwiseAbs().maxCoeff() >
          1e-9 * std::max(1.0, model.coef_cov.cwiseAbs().maxCoeff())) {
        throw std::invalid_argument("noise: coef_cov must be symmetric");
      }
      break;
    }
  }
}

// Eigen-clamped square root factor of a symmetric matrix that is PSD up to
// roundoff; throws when a genuinely negative direction is present.
Matrix psd_factor(const Matrix& sym, const char* what) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(
      0.5 * (sym + sym.transpose()));
  if (es.info() != Eigen::Success) {
    throw std::runtime_error(std::string(what) +
                             ": eigendecomposition failed");
  }
  const Vector& ev = es.eigenvalues();
  const double floor = -kPsdRoundoffSlack * std::max(1.0, ev.maxCoeff());
  if (ev.minCoeff() < floor) {
    throw std::invalid_argument(std::string(what) +
                                ": matrix is not positive semi-definite");
  }
  return es.eigenvectors() *
         ev.cwiseMax(0.0).cwiseSqrt().asDiagonal();
}

}  // namespace

NoiseModel white_noise(double lambda) {
  NoiseModel m;
  m.kind = NoiseKind::White;
  m.lambda = lambda;
  check_model(m);
  return m;
}

NoiseModel colored_noise(double lambda, std::vector<double> filter) {
  NoiseModel m;
  m.kind = NoiseKind::Colored;
  m.lambda = lambda;
  m.filter = std::move(filter);
  check_model(m);
  return m;
}

NoiseModel laguerre_noise(double p_e, const Matrix& coef_cov) {
  if (coef_cov.rows() < 1 || coef_cov.cols() != coef_cov.rows()) {
    throw std::invalid_argument(
        "laguerre_noise: coefficient covariance must be square and "
        "non-empty");
  }
  // Reject asymmetry here, before the cleanup below hides it.
  const double scale = std::max(1.0, coef_cov.cwiseAbs().maxCoeff());
  if ((coef_cov - coef_cov.transpose()).cwiseAbs().maxCoeff() >
      1e-10 * scale) {
    throw std::invalid_argument(
        "laguerre_noise: coefficient covariance must be symmetric");
  }
  NoiseModel m;
  m.kind = NoiseKind::LaguerreCombination;
  m.p_e = p_e;
  m.K = static_cast<int>(coef_cov.rows()) - 1;
  m.coef_cov = 0.5 * (coef_cov + coef_cov.transpose());
  m.lambda = m.coef_cov.trace() / m.coef_cov.rows();
  check_model(m);
  return m;
}

std::vector<double> ar_impulse_response(const std::vector<double>& filter) {
  const int order = static_cast<int>(filter.size()) - 1;
  std::vector<double> g;
  g.push_back(1.0);
  double peak = 1.0;
  int quiet = 0;
  const std::size_t cap = 1u << 22;
  while (quiet < order + 8 && g.size() < cap) {
    const int t = static_cast<int>(g.size());
    double value = 0.0;
    for (int k = 1; k <= order && k <= t; ++k) {
      value -= filter[k] * g[t - k];
    }
    g.push_back(value);
    peak = std::max(peak, std::abs(value));
    quiet = std::abs(value) < kImpulseTailCutoff * peak ? quiet + 1 : 0;
  }
  if (g.size() >= cap) {
    throw std::runtime_error("noise: AR impulse response failed to decay");
  }
  return g;
}

NoiseSampler::NoiseSampler(const NoiseModel& model, int T)
    : model_(model), T_(T) {
  check_model(model_);
  if (T < 1) {
    throw std::invalid_argument("noise: sample length must be >= 1");
  }
  switch (model_.kind) {
    case NoiseKind::White:
      break;
    case NoiseKind::Colored: {
      const std::vector<double> g = ar_impulse_response(model_.filter);
      double energy = 0.0;
      for (double v : g) energy += v * v;
      driving_std_ = std::sqrt(model_.lambda / energy);
      const double rho = spectral_radius(model_.filter);
      const double time_constant = -1.0 / std::log(rho);
      burn_in_ = std::max<int>(static_cast<int>(model_.filter.size()),
                               static_cast<int>(std::ceil(10.0 * time_constant)));
      break;
    }
    case NoiseKind::LaguerreCombination: {
      coef_factor_ = psd_factor(model_.coef_cov, "noise: coef_cov");
      phi_e_ = laguerre_time_matrix(model_.p_e, model_.K + 1, T);
      break;
    }
  }
}

Vector NoiseSampler::draw(Rng& rng) const {
  switch (model_.kind) {
    case NoiseKind::White: {
      Vector e(T_);
      const double s = std::sqrt(model_.lambda);
      for (int t = 0; t < T_; ++t) {
        e(t) = rng.gaussian(s);
      }
      return e;
    }
    case NoiseKind::Colored: {
      const int order = static_cast<int>(model_.filter.size()) - 1;
      const int total = burn_in_ + T_;
      std::vector<double> e(total);
      for (int t = 0; t < total; ++t) {
        double value = rng.gaussian(driving_std_);
        for (int k = 1; k <= order && k <= t; ++k) {
          value -= model_.filter[k] * e[t - k];
        }
        e[t] = value;
      }
      return Eigen::Map<const Vector>(e.data() + burn_in_, T_);
    }
    case NoiseKind::LaguerreCombination: {
      Vector z(model_.K + 1);
      for (int k = 0; k <= model_.K; ++k) {
        z(k) = rng.gaussian();
      }
      return phi_e_ * (coef_factor_ * z);
    }
  }
  throw std::logic_error("noise: unknown model kind");
}

Vector sample(const NoiseModel& model, int T, std::uint64_t rng_seed) {
  NoiseSampler sampler(model, T);
  Rng rng(rng_seed);
  return sampler.draw(rng);
}

Matrix time_covariance(const NoiseModel& model, int T) {
  check_model(model);
  if (T < 1) {
    throw std::invalid_argument("noise: covariance length must be >= 1");
  }
  switch (model.kind) {
    case NoiseKind::White:
      return model.lambda * Matrix::Identity(T, T);
    case NoiseKind::Colored: {
      const std::vector<double> g = ar_impulse_response(model.filter);
      double energy = 0.0;
      for (double v : g) energy += v * v;
      const double lambda_v = model.lambda / energy;
      const int n = static_cast<int>(g.size());
      Vector r = Vector::Zero(T);
      for (int k = 0; k < T && k < n; ++k) {
        double acc = 0.0;
        for (int t = 0; t + k < n; ++t) {
          acc += g[t] * g[t + k];
        }
        r(k) = lambda_v * acc;
      }
      Matrix sigma(T, T);
      for (int i = 0; i < T; ++i) {
        for (int j = 0; j < T; ++j) {
          sigma(i, j) = r(std::abs(i - j));
        }
      }
      return sigma;
    }
    case NoiseKind::LaguerreCombination: {
      const Matrix phi = laguerre_time_matrix(model.p_e, model.K + 1, T);
      Matrix sigma = phi * model.coef_cov * phi.transpose();
      return 0.5 * (sigma + sigma.transpose());
    }
  }
  throw std::logic_error("noise: unknown model kind");
}

Matrix laguerre_covariance(const Matrix& sigma_time,
                           const BasisMatrix& basis) {
  if (sigma_time.rows() != basis.params.T ||
      sigma_time.cols() != basis.params.T) {
    throw std::invalid_argument(
        "laguerre_covariance: sigma_time must be T x T for the basis");
  }
  Matrix sigma = basis.psi * sigma_time * basis.psi.transpose();
  return 0.5 * (sigma + sigma.transpose());
}

Matrix laguerre_covariance(const NoiseModel& model, const BasisMatrix& basis) {
  check_model(model);
  switch (model.kind) {
    case NoiseKind::White: {
      Matrix sigma = model.lambda * (basis.psi * basis.psi.transpose());
      return 0.5 * (sigma + sigma.transpose());
    }
    case NoiseKind::Colored:
      return laguerre_covariance(time_covariance(model, basis.params.T),
                                 basis);
    case NoiseKind::LaguerreCombination: {
      const Matrix phi_e =
          laguerre_time_matrix(model.p_e, model.K + 1, basis.params.T);
      const Matrix proj = basis.psi * phi_e;
      Matrix sigma = proj * model.coef_cov * proj.transpose();
      return 0.5 * (sigma + sigma.transpose());
    }
  }
  throw std::logic_error("noise: unknown model kind");
}

CovariancePair covariance_pair(const NoiseModel& model,
                               const BasisMatrix& basis) {
  CovariancePair pair;
  pair.sigma_time = time_covariance(model, basis.params.T);
  pair.sigma_lag = laguerre_covariance(pair.sigma_time, basis);
  return pair;
}

NoiseModel nm3_from_colored(const Matrix& sigma_time_colored, double p_e,
                            int K, int T) {
  if (K + 1 > T) {
    throw std::invalid_argument("nm3_from_colored: K+1 must be <= T");
  }
  const BasisMatrix noise_basis = build_basis({p_e, K + 1, T});
  if (sigma_time_colored.rows() != T || sigma_time_colored.cols() != T) {
    throw std::invalid_argument("nm3_from_colored: sigma_time must be T x T");
  }
  Matrix coef_cov =
      noise_basis.psi * sigma_time_colored * noise_basis.psi.transpose();
  coef_cov = 0.5 * (coef_cov + coef_cov.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(coef_cov,
                                           Eigen::EigenvaluesOnly);
  const double lambda_min = es.eigenvalues().minCoeff();
  const double lambda_max = es.eigenvalues().maxCoeff();
  if (lambda_min < -kPsdRoundoffSlack * std::max(1.0, lambda_max)) {
    throw std::runtime_error(
        "nm3_from_colored: projected covariance is indefinite beyond "
        "roundoff");
  }
  if (lambda_min < 0.0) {
    coef_cov += (kPsdJitterScale * coef_cov.trace() / coef_cov.rows()) *
                Matrix::Identity(coef_cov.rows(), coef_cov.cols());
  }
  NoiseModel m = laguerre_noise(p_e, coef_cov);
  // Average marginal variance of the projected (non-stationary) process,
  // trace(phi coef_cov phi^T) / T without the T x T product.
  m.lambda = (noise_basis.phi * coef_cov)
                 .cwiseProduct(noise_basis.phi)
                 .sum() /
             T;
  return m;
}

double toeplitz_deviation(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("toeplitz_deviation: matrix must be square");
  }
  double worst = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      worst = std::max(worst, std::abs(m(i, j) - m(0, std::abs(i - j))));
    }
  }
  return worst;
}

}  // namespace lagdelay
