// Timing comparison of the serial reference path against the OpenMP path
// for the Monte Carlo campaign and the moment-accumulation kernel, plus a
// bitwise check that both modes agree.
#include <lagdelay/experiments.hpp>
#include <lagdelay/kernels.hpp>
#include <lagdelay/noise.hpp>
#include <lagdelay/rng.hpp>

#include <chrono>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

lagdelay::McConfig bench_config(long trials) {
  lagdelay::McConfig config;
  config.tau_true = 4;
  config.p = 0.5;
  config.L = 20;
  config.T = 300;
  config.m = 15;
  config.markov_rows = 3;
  config.input_spectrum = lagdelay::Vector::Zero(20);
  config.input_spectrum(15) = 3.1;
  config.input_spectrum(16) = 3.0;
  config.noise = lagdelay::colored_noise(0.3, {1.0, -0.9464, 0.7408});
  config.trials = trials;
  config.base_seed = 1;
  config.reduction = lagdelay::Reduction::Ble;
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  long trials = 20000;
  if (argc > 1) {
    trials = std::atol(argv[1]);
  }
#ifdef _OPENMP
  std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
  std::printf("openmp threads: built without OpenMP\n");
#endif
  std::printf("%-28s %10s %10s %8s\n", "benchmark", "serial[s]", "openmp[s]",
              "speedup");

  const lagdelay::McConfig config = bench_config(trials);
  const lagdelay::CampaignContext ctx(config);

  auto start = Clock::now();
  const lagdelay::McSummary serial =
      lagdelay::run_montecarlo(ctx, lagdelay::ExecMode::Serial);
  const double t_serial = seconds_since(start);

  start = Clock::now();
  const lagdelay::McSummary parallel =
      lagdelay::run_montecarlo(ctx, lagdelay::ExecMode::Parallel);
  const double t_parallel = seconds_since(start);

  std::printf("%-28s %10.3f %10.3f %7.2fx\n", "mc-campaign (colored)",
              t_serial, t_parallel, t_serial / t_parallel);
  if (serial.mean_raw != parallel.mean_raw ||
      serial.var_raw != parallel.var_raw ||
      serial.mean_reduced != parallel.mean_reduced) {
    std::printf("MISMATCH: serial and openmp summaries differ\n");
    return 1;
  }

  const lagdelay::NoiseSampler sampler(config.noise, config.T);
  auto fill = [&](long i, lagdelay::Vector& x) {
    lagdelay::Rng rng(lagdelay::trial_seed(config.base_seed, i));
    x = ctx.basis.psi * sampler.draw(rng);
  };

  start = Clock::now();
  const lagdelay::Moments m_serial = lagdelay::accumulate_moments(
      trials, config.L, lagdelay::ExecMode::Serial, fill);
  const double a_serial = seconds_since(start);

  start = Clock::now();
  const lagdelay::Moments m_parallel = lagdelay::accumulate_moments(
      trials, config.L, lagdelay::ExecMode::Parallel, fill);
  const double a_parallel = seconds_since(start);

  std::printf("%-28s %10.3f %10.3f %7.2fx\n", "moment accumulation",
              a_serial, a_parallel, a_serial / a_parallel);
  if (m_serial.sum != m_parallel.sum || m_serial.outer != m_parallel.outer) {
    std::printf("MISMATCH: serial and openmp moments differ\n");
    return 1;
  }
  std::printf("serial and openmp results are bitwise identical\n");
  return 0;
}
