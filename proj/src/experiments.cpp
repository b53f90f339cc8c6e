#include <lagdelay/experiments.hpp>

#include <lagdelay/config.hpp>
#include <lagdelay/delay_estimation.hpp>
#include <lagdelay/rng.hpp>
#include <lagdelay/systems.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace lagdelay {

const char* const kBasisConvention = "strictly-proper";

std::string noise_kind_label(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::White:
      return "white";
    case NoiseKind::Colored:
      return "colored";
    case NoiseKind::LaguerreCombination:
      return "laguerre";
  }
  return "unknown";
}

void validate(const McConfig& config) {
  if (config.tau_true < 1) {
    throw std::invalid_argument("config: tau_true must be >= 1");
  }
  if (!(config.p > 0.0 && config.p < 1.0)) {
    throw std::invalid_argument("config: p must lie in (0, 1)");
  }
  if (config.m < 1 || config.m >= config.L) {
    throw std::invalid_argument("config: m must satisfy 1 <= m < L");
  }
  if (config.input_spectrum.size() != config.L) {
    throw std::invalid_argument("config: input_spectrum must have L entries");
  }
  for (int k = 0; k < config.m; ++k) {
    if (config.input_spectrum(k) != 0.0) {
      throw std::invalid_argument(
          "config: input_spectrum must be zero below index m");
    }
  }
  if (config.input_spectrum(config.m) == 0.0) {
    throw std::invalid_argument(
        "config: input_spectrum must be non-zero at index m");
  }
  if (config.markov_rows < 2) {
    throw std::invalid_argument("config: markov_rows must be >= 2");
  }
  if (config.m + config.markov_rows + 2 > config.L) {
    throw std::invalid_argument(
        "config: m + markov_rows + 2 must not exceed L");
  }
  if (config.trials < 1) {
    throw std::invalid_argument("config: trials must be >= 1");
  }
}

CampaignContext::CampaignContext(const McConfig& cfg)
    : config(cfg),
      basis((validate(cfg), build_basis({cfg.p, cfg.L, cfg.T}))),
      u_spec{cfg.input_spectrum, cfg.p},
      y_clean_time(delay_time(synthesize(basis, u_spec), cfg.tau_true)),
      clean_spec(analyze(basis, y_clean_time)),
      sampler(cfg.noise, cfg.T),
      sigma_lag(laguerre_covariance(cfg.noise, basis)),
      markov_count(cfg.markov_rows + 2) {
  if (config.reduction == Reduction::Ble) {
    ble = fit_ble(sigma_lag, config.m);
  }
}

namespace {

TrialRecord run_trial_inner(const CampaignContext& ctx, std::uint64_t seed,
                            Vector* noise_out) {
  Rng rng(seed);
  const Vector e = ctx.sampler.draw(rng);
  const Vector y = ctx.y_clean_time + e;
  const Spectrum y_spec = analyze(ctx.basis, y);
  const int L = ctx.config.L;
  const int m = ctx.config.m;

  TrialRecord rec;
  rec.head_distortion = y_spec.coefficients.head(m);
  rec.tau_hat_raw =
      estimate_delay_from_spectra(y_spec, ctx.u_spec, ctx.markov_count)
          .tau_hat;
  if (ctx.ble) {
    const Spectrum reduced = reduce_noise(y, ctx.basis, m, *ctx.ble);
    rec.tau_hat_reduced =
        estimate_delay_from_spectra(reduced, ctx.u_spec, ctx.markov_count)
            .tau_hat;
    rec.tail_error = reduced.coefficients.tail(L - m) -
                     ctx.clean_spec.coefficients.tail(L - m);
  } else {
    rec.tau_hat_reduced = std::numeric_limits<double>::quiet_NaN();
    rec.tail_error = y_spec.coefficients.tail(L - m) -
                     ctx.clean_spec.coefficients.tail(L - m);
  }
  if (noise_out != nullptr) {
    *noise_out = e;
  }
  return rec;
}

}  // namespace

TrialRecord run_trial(const CampaignContext& ctx, std::uint64_t seed) {
  try {
    return run_trial_inner(ctx, seed, nullptr);
  } catch (const std::exception& e) {
    throw std::runtime_error("trial with seed " + std::to_string(seed) +
                             " failed: " + e.what());
  }
}

TrialRecord run_trial(const McConfig& config, std::uint64_t seed) {
  return run_trial(CampaignContext(config), seed);
}

TrialDetail run_trial_detail(const CampaignContext& ctx, std::uint64_t seed) {
  TrialDetail detail;
  detail.seed = seed;
  detail.record = run_trial_inner(ctx, seed, &detail.noise_time);

  const int L = ctx.config.L;
  const int m = ctx.config.m;
  detail.distortion_true =
      analyze(ctx.basis, detail.noise_time).coefficients;
  detail.distortion_estimated = Vector::Zero(L);
  detail.distortion_estimated.head(m) = detail.record.head_distortion;
  if (ctx.ble) {
    detail.distortion_estimated.tail(L - m) =
        ble_tail(detail.record.head_distortion, *ctx.ble);
  }
  detail.noise_reconstructed =
      synthesize(ctx.basis, {detail.distortion_estimated, ctx.config.p});
  detail.err_lag =
      (detail.distortion_true - detail.distortion_estimated).squaredNorm();
  detail.err_time =
      (detail.noise_time - detail.noise_reconstructed).squaredNorm();
  return detail;
}

std::vector<TrialRecord> run_trials(const CampaignContext& ctx,
                                    ExecMode mode) {
  std::vector<TrialRecord> records(ctx.config.trials);
  for_each_index(ctx.config.trials, mode, [&](long i) {
    records[i] = run_trial(ctx, trial_seed(ctx.config.base_seed, i));
  });
  return records;
}

McSummary summarize(const CampaignContext& ctx,
                    const std::vector<TrialRecord>& records) {
  const long n = static_cast<long>(records.size());
  if (n < 1) {
    throw std::invalid_argument("summarize: no trial records");
  }
  McSummary s;
  s.model = noise_kind_label(ctx.config.noise.kind);
  s.trials = n;
  s.reduced_available = ctx.config.reduction == Reduction::Ble;
  s.degenerate_stats = n < 2;
  s.config_digest = config_digest(ctx.config);
  s.basis_convention = kBasisConvention;

  // Two-pass moments in trial order; deterministic for any execution mode.
  double sum_raw = 0.0;
  double sum_red = 0.0;
  for (const TrialRecord& r : records) {
    sum_raw += r.tau_hat_raw;
    if (s.reduced_available) {
      sum_red += r.tau_hat_reduced;
    }
  }
  s.mean_raw = sum_raw / n;
  s.mean_reduced = s.reduced_available
                       ? sum_red / n
                       : std::numeric_limits<double>::quiet_NaN();

  double ss_raw = 0.0;
  double ss_red = 0.0;
  for (const TrialRecord& r : records) {
    const double dr = r.tau_hat_raw - s.mean_raw;
    ss_raw += dr * dr;
    if (s.reduced_available) {
      const double dd = r.tau_hat_reduced - s.mean_reduced;
      ss_red += dd * dd;
    }
  }
  s.var_raw = n < 2 ? 0.0 : ss_raw / (n - 1);
  s.bias_raw = s.mean_raw - ctx.config.tau_true;
  if (s.reduced_available) {
    s.var_reduced = n < 2 ? 0.0 : ss_red / (n - 1);
    s.bias_reduced = s.mean_reduced - ctx.config.tau_true;
  } else {
    s.var_reduced = std::numeric_limits<double>::quiet_NaN();
    s.bias_reduced = std::numeric_limits<double>::quiet_NaN();
  }
  return s;
}

McSummary run_montecarlo(const CampaignContext& ctx, ExecMode mode) {
  return summarize(ctx, run_trials(ctx, mode));
}

McSummary run_montecarlo(const McConfig& config, ExecMode mode) {
  CampaignContext ctx(config);
  return run_montecarlo(ctx, mode);
}

}  // namespace lagdelay
