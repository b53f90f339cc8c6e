// Configuration-driven experiment layer: single trials and Monte Carlo
// campaigns over one noise model, with paired raw/reduced delay estimates.
#pragma once

#include <lagdelay/basis.hpp>
#include <lagdelay/kernels.hpp>
#include <lagdelay/noise.hpp>
#include <lagdelay/reduction.hpp>
#include <lagdelay/types.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lagdelay {

enum class Reduction { None, Ble };

struct McConfig {
  int tau_true = 0;
  double p = 0.0;
  int L = 0;
  int T = 0;
  int m = 0;             ///< input Laguerre delay (leading zero coefficients)
  int markov_rows = 0;   ///< identity rows; markov_rows + 2 estimates are used
  Vector input_spectrum;
  NoiseModel noise;
  long trials = 0;
  std::uint64_t base_seed = 0;
  Reduction reduction = Reduction::None;
};

/// Throws when a field violates the experiment design (m < L, zeros below
/// index m, enough coefficients for the deconvolution, trials >= 1).
void validate(const McConfig& config);

/// Everything shared across the trials of one campaign; immutable after
/// construction and safe for concurrent run_trial calls.
struct CampaignContext {
  explicit CampaignContext(const McConfig& config);

  McConfig config;
  BasisMatrix basis;
  Spectrum u_spec;
  Vector y_clean_time;
  Spectrum clean_spec;
  NoiseSampler sampler;
  Matrix sigma_lag;
  std::optional<BleModel> ble;  ///< present when reduction == Ble
  int markov_count = 0;
};

struct TrialRecord {
  double tau_hat_raw = 0.0;
  /// NaN when the campaign runs without reduction.
  double tau_hat_reduced = 0.0;
  Vector head_distortion;  ///< first m measured coefficients
  Vector tail_error;       ///< residual tail distortion after the active path
};

/// Trial with the full per-realization data behind the distortion and
/// noise-reconstruction outputs.
struct TrialDetail {
  TrialRecord record;
  std::uint64_t seed = 0;
  Vector noise_time;           ///< e(t)
  Vector noise_reconstructed;  ///< synthesized estimate of e(t)
  Vector distortion_true;      ///< Laguerre projection of e
  Vector distortion_estimated;
  double err_lag = 0.0;   ///< squared Laguerre-domain estimation error
  double err_time = 0.0;  ///< squared time-domain reconstruction error
};

TrialRecord run_trial(const CampaignContext& ctx, std::uint64_t seed);
TrialRecord run_trial(const McConfig& config, std::uint64_t seed);
TrialDetail run_trial_detail(const CampaignContext& ctx, std::uint64_t seed);

struct McSummary {
  std::string model;  ///< noise kind label: white, colored, laguerre
  long trials = 0;
  double mean_raw = 0.0;
  double var_raw = 0.0;
  double bias_raw = 0.0;
  bool reduced_available = false;
  double mean_reduced = 0.0;
  double var_reduced = 0.0;
  double bias_reduced = 0.0;
  /// Set when trials < 2 so var is reported as 0 without being meaningful.
  bool degenerate_stats = false;
  std::string config_digest;
  std::string basis_convention;
};

std::string noise_kind_label(NoiseKind kind);

/// Runs all trials with seeds base_seed + 0..trials-1 and aggregates them in
/// trial order; the result is independent of the execution mode.
McSummary run_montecarlo(const McConfig& config,
                         ExecMode mode = ExecMode::Parallel);
McSummary run_montecarlo(const CampaignContext& ctx,
                         ExecMode mode = ExecMode::Parallel);

/// All trial records of one campaign, in trial order.
std::vector<TrialRecord> run_trials(const CampaignContext& ctx,
                                    ExecMode mode);

McSummary summarize(const CampaignContext& ctx,
                    const std::vector<TrialRecord>& records);

/// FNV-1a digest of the canonical config serialization; embedded in outputs
/// so results can be traced back to their exact configuration.
std::string config_digest(const McConfig& config);

/// Label of the time-domain basis convention recorded alongside results.
extern const char* const kBasisConvention;

}  // namespace lagdelay
