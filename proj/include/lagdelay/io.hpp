// CSV and JSON emission for campaign summaries, per-trial realizations, the
// covariance map and basis dumps. CSV carries 6 significant digits; JSON is
// full precision.
#pragma once

#include <lagdelay/basis.hpp>
#include <lagdelay/experiments.hpp>
#include <lagdelay/types.hpp>

#include <string>
#include <utility>
#include <vector>

namespace lagdelay {

void write_summary_csv(const std::string& path, const McSummary& summary);
void write_summary_json(const std::string& path, const McSummary& summary);

/// distortion.csv (k,true,estimated) and noise_time.csv
/// (t,true,reconstructed) under out_dir, plus trial.json with the delay
/// estimates and squared errors.
void write_trial_outputs(const std::string& out_dir, const TrialDetail& detail,
                         const std::string& digest);

/// One row per matrix entry: p,row,col,value.
void write_covmap_csv(const std::string& path,
                      const std::vector<std::pair<double, Matrix>>& blocks);

/// Sampled basis functions, one row per time step: t,l0,...,l{L-1}.
void write_basis_csv(const std::string& path, const BasisMatrix& basis);

}  // namespace lagdelay
