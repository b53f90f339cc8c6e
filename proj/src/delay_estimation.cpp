#include <lagdelay/delay_estimation.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lagdelay {

namespace {

int first_nonzero_index(const Vector& u) {
  const double scale = u.cwiseAbs().maxCoeff();
  if (scale == 0.0) {
    throw std::invalid_argument(
        "deconvolution: input spectrum is identically zero");
  }
  for (Eigen::Index k = 0; k < u.size(); ++k) {
    if (std::abs(u(k)) > 1e-12 * scale) {
      return static_cast<int>(k);
    }
  }
  throw std::invalid_argument(
      "deconvolution: input spectrum is identically zero");
}

void check_count(const Spectrum& u_spectrum, int n, int count) {
  if (count < 1) {
    throw std::invalid_argument("deconvolution: count must be >= 1");
  }
  if (n + count > u_spectrum.coefficients.size()) {
    throw std::invalid_argument(
        "deconvolution: count exceeds the available input coefficients");
  }
}

}  // namespace

DeconvolutionPlan build_deconvolution_plan(const Spectrum& u_spectrum,
                                           int count) {
  const Vector& u = u_spectrum.coefficients;
  const int n = first_nonzero_index(u);
  check_count(u_spectrum, n, count);
  DeconvolutionPlan plan;
  plan.n = n;
  plan.M = count;
  plan.u = u_spectrum;
  plan.g.resize(count);
  plan.g(0) = 1.0 / u(n);
  for (int s = 1; s < count; ++s) {
    double acc = 0.0;
    for (int j = 0; j < s; ++j) {
      acc += plan.g(j) * u(n + s - j);
    }
    plan.g(s) = -acc / u(n);
  }
  return plan;
}

Vector deconvolve_markov(const Spectrum& y_spectrum,
                         const Spectrum& u_spectrum, int count) {
  if (y_spectrum.p != u_spectrum.p) {
    throw std::invalid_argument("deconvolution: spectra use different poles");
  }
  const Vector& u = u_spectrum.coefficients;
  const Vector& y = y_spectrum.coefficients;
  const int n = first_nonzero_index(u);
  check_count(u_spectrum, n, count);
  if (n + count > y.size()) {
    throw std::invalid_argument(
        "deconvolution: count exceeds the available output coefficients");
  }
  Vector h(count);
  for (int i = 0; i < count; ++i) {
    double acc = y(n + i);
    for (int k = 0; k < i; ++k) {
      acc -= h(k) * u(n + i - k);
    }
    h(i) = acc / u(n);
  }
  return h;
}

std::pair<Vector, Vector> build_ab(const Vector& h_hat, double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("build_ab: pole p must lie in (0, 1)");
  }
  const auto count = h_hat.size();
  if (count < 4) {
    throw std::invalid_argument(
        "build_ab: at least 4 Markov estimates are needed to form an "
        "identity row");
  }
  if (h_hat.cwiseAbs().maxCoeff() == 0.0) {
    throw std::invalid_argument("build_ab: Markov estimates are all zero");
  }
  const double sp = std::sqrt(p);
  const double alpha = sp + 1.0 / sp;
  const double beta = sp - 1.0 / sp;
  const auto rows = count - 2;
  Vector a(rows);
  Vector b(rows);
  for (Eigen::Index m = 1; m <= rows; ++m) {
    a(m - 1) = m * alpha * h_hat(m) + (m + 1) * h_hat(m + 1) +
               (m - 1) * h_hat(m - 1);
    b(m - 1) = beta * h_hat(m);
  }
  return {a, b};
}

double estimate_delay(const Vector& a, const Vector& b) {
  if (a.size() != b.size() || a.size() == 0) {
    throw std::invalid_argument("estimate_delay: a and b must match in size");
  }
  const double btb = b.squaredNorm();
  if (btb <= 1e-12 * a.squaredNorm()) {
    throw std::runtime_error(
        "estimate_delay: degenerate identity rows, b is numerically zero");
  }
  return -b.dot(a) / btb;
}

double estimate_delay_scalar(double h_prev, double h_m, double h_next, int m,
                             double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument(
        "estimate_delay_scalar: pole p must lie in (0, 1)");
  }
  if (m < 1) {
    throw std::invalid_argument("estimate_delay_scalar: m must be >= 1");
  }
  // The ratio divides by h_m, so a center value at rounding scale relative
  // to its neighbours carries no delay information.
  const double scale =
      std::max({std::abs(h_prev), std::abs(h_m), std::abs(h_next)});
  if (std::abs(h_m) <= 1e-12 * scale) {
    throw std::runtime_error(
        "estimate_delay_scalar: h_m is numerically zero");
  }
  const double sp = std::sqrt(p);
  const double alpha = sp + 1.0 / sp;
  const double beta = sp - 1.0 / sp;
  return -((m + 1) * h_next + (m - 1) * h_prev) / (beta * h_m) -
         m * alpha / beta;
}

DelayEstimate estimate_delay_from_spectra(const Spectrum& y_spectrum,
                                          const Spectrum& u_spectrum,
                                          int markov_count) {
  DelayEstimate est;
  est.h_hat = deconvolve_markov(y_spectrum, u_spectrum, markov_count);
  auto [a, b] = build_ab(est.h_hat, u_spectrum.p);
  est.tau_hat = estimate_delay(a, b);
  est.a = std::move(a);
  est.b = std::move(b);
  return est;
}

}  // namespace lagdelay
