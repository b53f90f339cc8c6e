#include <lagdelay/kernels.hpp>

#include <lagdelay/rng.hpp>

#include <doctest.h>

#include <stdexcept>
#include <string>
#include <vector>

using namespace lagdelay;

TEST_CASE("for_each_index covers every index exactly once in both modes") {
  for (ExecMode mode : {ExecMode::Serial, ExecMode::Parallel}) {
    std::vector<int> hits(1000, 0);
    for_each_index(1000, mode, [&](std::int64_t i) { hits[i] += 1; });
    for (int h : hits) {
      CHECK(h == 1);
    }
  }
  // Empty and tiny ranges are legal.
  for_each_index(0, ExecMode::Parallel, [](std::int64_t) { REQUIRE(false); });
  int count = 0;
  for_each_index(3, ExecMode::Parallel, [&](std::int64_t) { ++count; });
  CHECK(count == 3);
}

TEST_CASE("the first failing chunk wins when bodies throw") {
  auto run = [](ExecMode mode) -> std::string {
    try {
      for_each_index(64, mode, [](std::int64_t i) {
        if (i == 10) throw std::runtime_error("boom at 10");
        if (i == 50) throw std::runtime_error("boom at 50");
      });
    } catch (const std::runtime_error& e) {
      return e.what();
    }
    return "";
  };
  // With 64 indices each chunk holds one index, so chunk order is index
  // order and the earlier throw must surface in both modes.
  CHECK(run(ExecMode::Serial) == "boom at 10");
  CHECK(run(ExecMode::Parallel) == "boom at 10");
}

TEST_CASE("moment accumulation matches a direct two-pass computation") {
  const int n = 257;
  const int dim = 6;
  std::vector<Vector> draws(n);
  for (int i = 0; i < n; ++i) {
    Rng rng(trial_seed(900, i));
    Vector x(dim);
    for (int k = 0; k < dim; ++k) {
      x(k) = rng.gaussian();
    }
    draws[i] = x;
  }

  const Moments mom = accumulate_moments(
      n, dim, ExecMode::Serial,
      [&](std::int64_t i, Vector& out) { out = draws[i]; });
  CHECK(mom.count == n);

  Vector mean = Vector::Zero(dim);
  for (const Vector& x : draws) mean += x;
  mean /= n;
  Matrix cov = Matrix::Zero(dim, dim);
  for (const Vector& x : draws) {
    cov += (x - mean) * (x - mean).transpose();
  }
  cov /= n - 1;

  CHECK((mom.mean() - mean).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((mom.covariance() - cov).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((mom.covariance() - mom.covariance().transpose())
            .cwiseAbs()
            .maxCoeff() == 0.0);
}

TEST_CASE("serial and parallel accumulation are bitwise identical") {
  const int n = 5000;
  const int dim = 8;
  auto fill = [](std::int64_t i, Vector& out) {
    Rng rng(trial_seed(42, i));
    for (int k = 0; k < out.size(); ++k) {
      out(k) = rng.gaussian();
    }
  };
  const Moments serial = accumulate_moments(n, dim, ExecMode::Serial, fill);
  const Moments parallel =
      accumulate_moments(n, dim, ExecMode::Parallel, fill);
  CHECK(serial.count == parallel.count);
  CHECK((serial.sum - parallel.sum).cwiseAbs().maxCoeff() == 0.0);
  CHECK((serial.outer - parallel.outer).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("moment queries guard their preconditions") {
  Moments empty;
  empty.sum = Vector::Zero(2);
  empty.outer = Matrix::Zero(2, 2);
  CHECK_THROWS_AS(empty.mean(), std::logic_error);
  empty.count = 1;
  empty.sum << 1.0, 2.0;
  CHECK(empty.mean()(1) == doctest::Approx(2.0));
  CHECK_THROWS_AS(empty.covariance(), std::logic_error);
}
