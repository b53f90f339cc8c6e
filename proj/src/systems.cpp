#include <lagdelay/systems.hpp>

#include <Eigen/LU>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace lagdelay {

namespace {

void check_p(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("systems: pole p must lie in (0, 1)");
  }
}

void check_tau(int tau) {
  if (tau < 1) {
    throw std::invalid_argument("systems: delay tau must be >= 1");
  }
}

constexpr int kBinomialMax = 60;

// Pascal triangle cache; row n holds C(n, 0..n). Every entry for n <= 60
// fits a 64-bit integer (largest is C(60,30) ~ 1.18e17 < 2^63), so the
// table is exact and the double conversion rounds once.
const std::vector<std::vector<unsigned long long>>& binomial_table() {
  static const std::vector<std::vector<unsigned long long>> table = [] {
    std::vector<std::vector<unsigned long long>> t(kBinomialMax + 1);
    for (int n = 0; n <= kBinomialMax; ++n) {
      t[n].resize(n + 1);
      t[n][0] = t[n][n] = 1ull;
      for (int k = 1; k < n; ++k) {
        t[n][k] = t[n - 1][k - 1] + t[n - 1][k];
      }
    }
    return t;
  }();
  return table;
}

unsigned long long binomial_exact(int n, int k) {
  if (n < 0) {
    throw std::invalid_argument("binomial: n must be >= 0");
  }
  if (k < 0 || k > n) {
    return 0ull;
  }
  if (n > kBinomialMax) {
    throw std::domain_error("binomial: n exceeds the exact integer range");
  }
  return binomial_table()[n][k];
}

}  // namespace

double binomial(int n, int k) {
  return static_cast<double>(binomial_exact(n, k));
}

LaguerreStateSpace lti_to_laguerre(const TimeStateSpace& sys, double p) {
  check_p(p);
  const auto n = sys.A.rows();
  if (sys.A.cols() != n || sys.B.size() != n || sys.C.size() != n) {
    throw std::invalid_argument("lti_to_laguerre: inconsistent dimensions");
  }
  const double sp = std::sqrt(p);
  const Matrix M = Matrix::Identity(n, n) - sp * sys.A;
  Eigen::FullPivLU<Matrix> lu(M);
  if (!lu.isInvertible()) {
    throw std::runtime_error(
        "lti_to_laguerre: I - sqrt(p) A is singular; 1/sqrt(p) is an "
        "eigenvalue of A");
  }
  LaguerreStateSpace out;
  out.F = lu.solve(sys.A - sp * Matrix::Identity(n, n));
  out.G = (1.0 - p) * lu.solve(sys.B);
  out.H = sys.C * lu.inverse();
  out.J = sp * sys.C * lu.solve(sys.B);
  out.p = p;
  return out;
}

TimeStateSpace delay_state_space(int tau) {
  check_tau(tau);
  TimeStateSpace sys;
  sys.A = Matrix::Zero(tau, tau);
  for (int i = 1; i < tau; ++i) {
    sys.A(i, i - 1) = 1.0;
  }
  sys.B = Vector::Zero(tau);
  sys.B(0) = 1.0;
  sys.C = RowVector::Zero(tau);
  sys.C(tau - 1) = 1.0;
  return sys;
}

double delay_polynomial(int m, int tau, double p) {
  check_p(p);
  check_tau(tau);
  if (m < 1) {
    throw std::invalid_argument("delay_polynomial: index m must be >= 1");
  }
  // The sum alternates and its terms grow large at high tau, so accumulate
  // in extended precision with exact integer binomials. The binomials reach
  // ~1e17 and their pairwise products overflow 64-bit integers, so each
  // factor is widened to long double before multiplying.
  long double sum = 0.0L;
  long double neg_p_pow = 1.0L;  // (-p)^n
  for (int n = 0; n < tau; ++n) {
    sum += static_cast<long double>(binomial_exact(m + n, n)) *
           static_cast<long double>(binomial_exact(m - 1, tau - n - 1)) *
           neg_p_pow;
    neg_p_pow *= -static_cast<long double>(p);
  }
  // (-sqrt(p))^(m - tau) with m - tau possibly negative.
  const int e = m - tau;
  long double prefactor = powl(sqrtl(static_cast<long double>(p)), e);
  if (e < 0 ? ((-e) % 2 != 0) : (e % 2 != 0)) {
    prefactor = -prefactor;
  }
  return static_cast<double>(prefactor * sum);
}

Spectrum delay_spectrum(const Spectrum& u_spectrum, int tau, double p) {
  check_p(p);
  check_tau(tau);
  if (u_spectrum.p != p) {
    throw std::invalid_argument("delay_spectrum: pole mismatch with input");
  }
  const auto n = u_spectrum.coefficients.size();
  const double sp = std::sqrt(p);
  const double throughput = std::pow(sp, tau);
  Vector y = throughput * u_spectrum.coefficients;
  for (Eigen::Index j = 1; j < n; ++j) {
    double acc = 0.0;
    for (Eigen::Index k = 0; k < j; ++k) {
      acc += delay_polynomial(static_cast<int>(j - k), tau, p) *
             u_spectrum.coefficients(k);
    }
    y(j) += (1.0 - p) * acc;
  }
  return {y, p};
}

MarkovSequence markov_parameters(int tau, double p, int count) {
  check_p(p);
  check_tau(tau);
  if (count < 1) {
    throw std::invalid_argument("markov_parameters: count must be >= 1");
  }
  const LaguerreStateSpace lag = lti_to_laguerre(delay_state_space(tau), p);
  MarkovSequence seq;
  seq.h.resize(count);
  seq.tau = tau;
  seq.p = p;
  seq.throughput = lag.J;
  Vector state = lag.G;  // F^{j-1} G for j = 1
  for (int j = 1; j <= count; ++j) {
    seq.h(j - 1) = lag.H * state;
    state = lag.F * state;
  }
  // The polynomial route is exact while the binomial arguments stay in the
  // exact-double range; disagreement means one of the two paths is broken.
  for (int j = 1; j <= count && j + tau - 1 <= kBinomialMax; ++j) {
    const double poly = (1.0 - p) * delay_polynomial(j, tau, p);
    if (std::abs(seq.h(j - 1) - poly) > 1e-8) {
      throw std::runtime_error(
          "markov_parameters: state-space and polynomial routes disagree");
    }
  }
  return seq;
}

Vector delay_time(const Vector& u, int tau) {
  if (tau < 0) {
    throw std::invalid_argument("delay_time: tau must be >= 0");
  }
  Vector y = Vector::Zero(u.size());
  for (Eigen::Index t = tau; t < u.size(); ++t) {
    y(t) = u(t - tau);
  }
  return y;
}

}  // namespace lagdelay
