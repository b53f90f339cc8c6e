#include <lagdelay/systems.hpp>

#include <doctest.h>

#include <cmath>

#include "oracles.hpp"

using namespace lagdelay;

namespace {

TimeStateSpace scalar_integrator_free() {
  TimeStateSpace sys;
  sys.A = Matrix::Zero(1, 1);
  sys.B = Vector::Ones(1);
  sys.C = RowVector::Ones(1);
  return sys;
}

}  // namespace

TEST_CASE("binomial matches the multiplicative oracle and conventions") {
  for (int n = 0; n <= 60; ++n) {
    for (int k = 0; k <= n; ++k) {
      CHECK(binomial(n, k) == oracles::binomial_multiplicative(n, k));
    }
  }
  CHECK(binomial(5, 7) == 0.0);
  CHECK(binomial(5, -1) == 0.0);
  CHECK_THROWS_AS(binomial(61, 3), std::domain_error);
  CHECK_THROWS_AS(binomial(-1, 0), std::invalid_argument);
}

TEST_CASE("scalar delay maps to the expected Laguerre realization") {
  const LaguerreStateSpace lag = lti_to_laguerre(scalar_integrator_free(), 0.5);
  const double sp = std::sqrt(0.5);
  CHECK(lag.F(0, 0) == doctest::Approx(-sp).epsilon(1e-12));
  CHECK(lag.G(0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(lag.H(0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(lag.J == doctest::Approx(sp).epsilon(1e-12));
}

TEST_CASE("the mapping degenerates to the identity as p goes to zero") {
  TimeStateSpace sys;
  sys.A = Matrix::Zero(2, 2);
  sys.A(0, 1) = 0.25;
  sys.A(1, 0) = -0.5;
  sys.B = Vector::Ones(2);
  sys.C = RowVector::Ones(2);
  const LaguerreStateSpace lag = lti_to_laguerre(sys, 1e-12);
  CHECK((lag.F - sys.A).cwiseAbs().maxCoeff() < 1e-5);
  CHECK((lag.G - sys.B).cwiseAbs().maxCoeff() < 1e-5);
  CHECK((lag.H - sys.C).cwiseAbs().maxCoeff() < 1e-5);
  CHECK(std::abs(lag.J) < 1e-5);
}

TEST_CASE("the mapping rejects a pole collision") {
  TimeStateSpace sys;
  const double p = 0.25;
  sys.A = (1.0 / std::sqrt(p)) * Matrix::Identity(2, 2);
  sys.B = Vector::Ones(2);
  sys.C = RowVector::Ones(2);
  CHECK_THROWS_AS(lti_to_laguerre(sys, p), std::runtime_error);
}

TEST_CASE("delay realization has the shift structure and delays impulses") {
  const TimeStateSpace sys = delay_state_space(4);
  Vector x = Vector::Zero(4);
  std::vector<double> y;
  for (int t = 0; t < 8; ++t) {
    y.push_back(sys.C * x);
    x = sys.A * x + sys.B * (t == 0 ? 1.0 : 0.0);
  }
  for (int t = 0; t < 8; ++t) {
    CHECK(y[t] == (t == 4 ? 1.0 : 0.0));
  }
}

TEST_CASE("delay throughput equals sqrt(p) to the power tau") {
  for (int tau = 1; tau <= 10; ++tau) {
    for (double p : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      const LaguerreStateSpace lag =
          lti_to_laguerre(delay_state_space(tau), p);
      CHECK(std::abs(lag.J - std::pow(std::sqrt(p), tau)) < 1e-12);
    }
  }
}

TEST_CASE("delay polynomial hand values") {
  for (double p : {0.1, 0.4, 0.8}) {
    CHECK(delay_polynomial(1, 1, p) == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(delay_polynomial(2, 1, 0.5) ==
        doctest::Approx(-std::sqrt(0.5)).epsilon(1e-12));
  // m=1, tau=4: only the n=3 term survives the zero-binomial convention.
  CHECK(delay_polynomial(1, 4, 0.5) ==
        doctest::Approx(4.0 * std::pow(std::sqrt(0.5), 3)).epsilon(1e-12));
  CHECK(delay_polynomial(2, 4, 0.5) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("state-space and polynomial Markov routes agree on a grid") {
  for (int tau = 1; tau <= 10; ++tau) {
    for (double p : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      const MarkovSequence seq = markov_parameters(tau, p, 30);
      double worst = 0.0;
      for (int j = 1; j <= 30; ++j) {
        worst = std::max(worst,
                         std::abs(seq.h(j - 1) -
                                  (1.0 - p) * delay_polynomial(j, tau, p)));
      }
      CAPTURE(tau);
      CAPTURE(p);
      CHECK(worst < 1e-9);
    }
  }
}

TEST_CASE("markov parameters of the unit delay") {
  const MarkovSequence seq = markov_parameters(1, 0.5, 3);
  CHECK(seq.throughput == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  CHECK(seq.h(0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(seq.h(1) == doctest::Approx(-0.5 * std::sqrt(0.5)).epsilon(1e-9));
  CHECK(seq.h(2) == doctest::Approx(0.25).epsilon(1e-9));
}

TEST_CASE("delay spectrum of a unit first coefficient") {
  Vector u = Vector::Zero(4);
  u(0) = 1.0;
  const Spectrum y = delay_spectrum({u, 0.5}, 1, 0.5);
  CHECK(y.coefficients(0) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
  CHECK(y.coefficients(1) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(y.coefficients(2) ==
        doctest::Approx(-0.5 * std::sqrt(0.5)).epsilon(1e-12));
}

TEST_CASE("delay spectrum maps zero to zero and respects causality") {
  const Spectrum zero = delay_spectrum({Vector::Zero(10), 0.5}, 3, 0.5);
  CHECK(zero.coefficients.cwiseAbs().maxCoeff() == 0.0);

  Vector u = Vector::Zero(12);
  u(2) = 1.0;
  u(5) = -2.0;
  Vector u_perturbed = u;
  u_perturbed(9) = 100.0;
  const Spectrum y = delay_spectrum({u, 0.4}, 2, 0.4);
  const Spectrum y_perturbed = delay_spectrum({u_perturbed, 0.4}, 2, 0.4);
  for (int j = 0; j < 9; ++j) {
    CHECK(y.coefficients(j) == y_perturbed.coefficients(j));
  }
}

TEST_CASE("delayed input design exposes the throughput at index m") {
  Vector u = Vector::Zero(20);
  u(15) = 3.1;
  u(16) = 3.0;
  const Spectrum y = delay_spectrum({u, 0.5}, 4, 0.5);
  for (int j = 0; j < 15; ++j) {
    CHECK(y.coefficients(j) == 0.0);
  }
  CHECK(y.coefficients(15) == doctest::Approx(0.775).epsilon(1e-12));
}

TEST_CASE("time-domain delay basics") {
  Vector u(6);
  u << 1, 2, 3, 4, 5, 6;
  const Vector y = delay_time(u, 2);
  CHECK(y(0) == 0.0);
  CHECK(y(1) == 0.0);
  CHECK(y(2) == 1.0);
  CHECK(y(5) == 4.0);
  CHECK((delay_time(u, 0) - u).cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(delay_time(u, -1), std::invalid_argument);
}

TEST_CASE("time-domain and Laguerre-domain delays agree through analysis") {
  const BasisMatrix basis = build_basis({0.5, 20, 300});
  Vector u_coeffs = Vector::Zero(20);
  u_coeffs(15) = 3.1;
  u_coeffs(16) = 3.0;
  const Spectrum u{u_coeffs, 0.5};
  const Vector y_time = delay_time(synthesize(basis, u), 4);
  const Spectrum via_time = analyze(basis, y_time);
  const Spectrum via_formula = delay_spectrum(u, 4, 0.5);
  CHECK((via_time.coefficients - via_formula.coefficients)
            .cwiseAbs()
            .maxCoeff() < 1e-3);
}

TEST_CASE("systems operations reject invalid arguments") {
  CHECK_THROWS_AS(delay_state_space(0), std::invalid_argument);
  CHECK_THROWS_AS(delay_polynomial(0, 1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(delay_polynomial(1, 0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(delay_polynomial(1, 1, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(markov_parameters(1, 0.5, 0), std::invalid_argument);
  Vector u = Vector::Zero(3);
  CHECK_THROWS_AS(delay_spectrum({u, 0.5}, 1, 0.3), std::invalid_argument);
}
