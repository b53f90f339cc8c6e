#include <lagdelay/io.hpp>

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace lagdelay {

namespace {

std::ofstream open_for_write(const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write " + path);
  }
  return out;
}

void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) {
    throw std::runtime_error("write failed for " + path);
  }
}

// 6 significant digits, the CSV-wide precision contract.
std::string csv6(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.6g", value);
  return buffer;
}

}  // namespace

void write_summary_csv(const std::string& path, const McSummary& summary) {
  std::ofstream out = open_for_write(path);
  out << "model,reduction,trials,mean,var,bias\n";
  out << summary.model << ",none," << summary.trials << ","
      << csv6(summary.mean_raw) << "," << csv6(summary.var_raw) << ","
      << csv6(summary.bias_raw) << "\n";
  if (summary.reduced_available) {
    out << summary.model << ",ble," << summary.trials << ","
        << csv6(summary.mean_reduced) << "," << csv6(summary.var_reduced)
        << "," << csv6(summary.bias_reduced) << "\n";
  }
  finish(out, path);
}

void write_summary_json(const std::string& path, const McSummary& summary) {
  nlohmann::json doc;
  doc["model"] = summary.model;
  doc["trials"] = summary.trials;
  doc["raw"] = {{"mean", summary.mean_raw},
                {"var", summary.var_raw},
                {"bias", summary.bias_raw}};
  if (summary.reduced_available) {
    doc["reduced"] = {{"mean", summary.mean_reduced},
                      {"var", summary.var_reduced},
                      {"bias", summary.bias_reduced}};
  }
  doc["degenerate_stats"] = summary.degenerate_stats;
  doc["config_digest"] = summary.config_digest;
  doc["basis_convention"] = summary.basis_convention;
  std::ofstream out = open_for_write(path);
  out << doc.dump(2) << "\n";
  finish(out, path);
}

void write_trial_outputs(const std::string& out_dir, const TrialDetail& detail,
                         const std::string& digest) {
  {
    const std::string path = out_dir + "/distortion.csv";
    std::ofstream out = open_for_write(path);
    out << "k,true,estimated\n";
    for (Eigen::Index k = 0; k < detail.distortion_true.size(); ++k) {
      out << k << "," << csv6(detail.distortion_true(k)) << ","
          << csv6(detail.distortion_estimated(k)) << "\n";
    }
    finish(out, path);
  }
  {
    const std::string path = out_dir + "/noise_time.csv";
    std::ofstream out = open_for_write(path);
    out << "t,true,reconstructed\n";
    for (Eigen::Index t = 0; t < detail.noise_time.size(); ++t) {
      out << t << "," << csv6(detail.noise_time(t)) << ","
          << csv6(detail.noise_reconstructed(t)) << "\n";
    }
    finish(out, path);
  }
  {
    const std::string path = out_dir + "/trial.json";
    nlohmann::json doc;
    doc["seed"] = detail.seed;
    doc["tau_hat_raw"] = detail.record.tau_hat_raw;
    if (std::isfinite(detail.record.tau_hat_reduced)) {
      doc["tau_hat_reduced"] = detail.record.tau_hat_reduced;
    }
    doc["squared_error_laguerre"] = detail.err_lag;
    doc["squared_error_time"] = detail.err_time;
    doc["config_digest"] = digest;
    doc["basis_convention"] = kBasisConvention;
    std::ofstream out = open_for_write(path);
    out << doc.dump(2) << "\n";
    finish(out, path);
  }
}

void write_covmap_csv(const std::string& path,
                      const std::vector<std::pair<double, Matrix>>& blocks) {
  std::ofstream out = open_for_write(path);
  out << "p,row,col,value\n";
  for (const auto& [p, sigma] : blocks) {
    for (Eigen::Index i = 0; i < sigma.rows(); ++i) {
      for (Eigen::Index j = 0; j < sigma.cols(); ++j) {
        out << csv6(p) << "," << i << "," << j << "," << csv6(sigma(i, j))
            << "\n";
      }
    }
  }
  finish(out, path);
}

void write_basis_csv(const std::string& path, const BasisMatrix& basis) {
  std::ofstream out = open_for_write(path);
  out << "t";
  for (int j = 0; j < basis.params.L; ++j) {
    out << ",l" << j;
  }
  out << "\n";
  for (int t = 0; t < basis.params.T; ++t) {
    out << t;
    for (int j = 0; j < basis.params.L; ++j) {
      out << "," << csv6(basis.phi(t, j));
    }
    out << "\n";
  }
  finish(out, path);
}

}  // namespace lagdelay
