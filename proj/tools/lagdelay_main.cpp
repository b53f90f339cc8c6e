// Experiment runner: Monte Carlo campaigns, single trials, the covariance
// map over a grid of Laguerre parameters, and raw basis dumps.
#include <lagdelay/config.hpp>
#include <lagdelay/experiments.hpp>
#include <lagdelay/io.hpp>
#include <lagdelay/noise.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

namespace {

struct PGrid {
  double begin = 0.1;
  double end = 0.9;
  double step = 0.1;
};

// "begin:end:step" with begin <= end and step > 0.
PGrid parse_grid(const std::string& text) {
  PGrid grid;
  const auto first = text.find(':');
  const auto second = text.find(':', first + 1);
  if (first == std::string::npos || second == std::string::npos) {
    throw std::runtime_error("grid must look like 0.1:0.9:0.1, got '" +
                             text + "'");
  }
  grid.begin = std::stod(text.substr(0, first));
  grid.end = std::stod(text.substr(first + 1, second - first - 1));
  grid.step = std::stod(text.substr(second + 1));
  if (!(grid.step > 0.0) || grid.end < grid.begin) {
    throw std::runtime_error("grid must ascend with a positive step");
  }
  return grid;
}

std::vector<double> grid_points(const PGrid& grid) {
  std::vector<double> points;
  for (int k = 0;; ++k) {
    const double p = grid.begin + k * grid.step;
    if (p > grid.end + 1e-12) {
      break;
    }
    points.push_back(p);
  }
  return points;
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    throw std::runtime_error("cannot create directory " + dir + ": " +
                             ec.message());
  }
}

int run_mc(const std::string& config_path, long trials_override,
           const std::string& out_dir, bool serial) {
  lagdelay::McConfig config = lagdelay::load_config(config_path);
  if (trials_override > 0) {
    config.trials = trials_override;
  }
  ensure_dir(out_dir);
  const lagdelay::McSummary summary = lagdelay::run_montecarlo(
      config,
      serial ? lagdelay::ExecMode::Serial : lagdelay::ExecMode::Parallel);
  lagdelay::write_summary_csv(out_dir + "/summary.csv", summary);
  lagdelay::write_summary_json(out_dir + "/summary.json", summary);
  std::cout << "model " << summary.model << ", " << summary.trials
            << " trials, basis " << summary.basis_convention << "\n";
  std::cout << "raw     mean " << summary.mean_raw << ", var "
            << summary.var_raw << ", bias " << summary.bias_raw << "\n";
  if (summary.reduced_available) {
    std::cout << "reduced mean " << summary.mean_reduced << ", var "
              << summary.var_reduced << ", bias " << summary.bias_reduced
              << "\n";
  }
  return 0;
}

int run_single_trial(const std::string& config_path, std::uint64_t seed,
                     const std::string& out_dir) {
  const lagdelay::McConfig config = lagdelay::load_config(config_path);
  ensure_dir(out_dir);
  const lagdelay::CampaignContext ctx(config);
  const lagdelay::TrialDetail detail = lagdelay::run_trial_detail(ctx, seed);
  lagdelay::write_trial_outputs(out_dir, detail,
                                lagdelay::config_digest(config));
  std::cout << "seed " << seed << ": tau_hat_raw " << detail.record.tau_hat_raw;
  if (std::isfinite(detail.record.tau_hat_reduced)) {
    std::cout << ", tau_hat_reduced " << detail.record.tau_hat_reduced;
  }
  std::cout << "\nsquared error laguerre " << detail.err_lag << ", time "
            << detail.err_time << "\n";
  return 0;
}

int run_covariance_map(const std::string& config_path,
                       const std::string& grid_text,
                       const std::string& out_file) {
  const lagdelay::McConfig config = lagdelay::load_config(config_path);
  std::vector<std::pair<double, lagdelay::Matrix>> blocks;
  for (double p : grid_points(parse_grid(grid_text))) {
    const lagdelay::BasisMatrix basis =
        lagdelay::build_basis({p, config.L, config.T});
    blocks.emplace_back(p, lagdelay::laguerre_covariance(config.noise, basis));
  }
  lagdelay::write_covmap_csv(out_file, blocks);
  std::cout << "wrote " << blocks.size() << " covariance blocks to "
            << out_file << "\n";
  return 0;
}

int run_basis_dump(double p, int L, int T, const std::string& out_file) {
  lagdelay::write_basis_csv(out_file, lagdelay::build_basis({p, L, T}));
  std::cout << "wrote " << L << " basis functions over " << T
            << " samples to " << out_file << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Laguerre-domain delay estimation experiments"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  std::string out_file;
  long trials_override = 0;
  std::uint64_t seed = 0;
  std::string grid_text = "0.1:0.9:0.1";
  bool serial = false;
  double p = 0.5;
  int L = 20;
  int T = 300;

  CLI::App* mc = app.add_subcommand("mc-run", "Monte Carlo campaign");
  mc->add_option("--config", config_path, "config file")->required();
  mc->add_option("--trials", trials_override, "override the trial count");
  mc->add_option("--out", out_dir, "output directory");
  mc->add_flag("--serial", serial, "run the serial reference path");

  CLI::App* trial = app.add_subcommand("trial", "single seeded trial");
  trial->add_option("--config", config_path, "config file")->required();
  trial->add_option("--seed", seed, "trial seed")->required();
  trial->add_option("--out", out_dir, "output directory")->required();

  CLI::App* covmap =
      app.add_subcommand("covariance-map", "noise covariance over a p grid");
  covmap->add_option("--config", config_path, "config file")->required();
  covmap->add_option("--p-grid", grid_text, "grid as begin:end:step");
  covmap->add_option("--out", out_file, "output CSV file")->required();

  CLI::App* basis = app.add_subcommand("basis-dump", "sampled basis functions");
  basis->add_option("--p", p, "Laguerre parameter")->required();
  basis->add_option("--L", L, "number of functions")->required();
  basis->add_option("--T", T, "time horizon")->required();
  basis->add_option("--out", out_file, "output CSV file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (mc->parsed()) {
      return run_mc(config_path, trials_override, out_dir, serial);
    }
    if (trial->parsed()) {
      return run_single_trial(config_path, seed, out_dir);
    }
    if (covmap->parsed()) {
      return run_covariance_map(config_path, grid_text, out_file);
    }
    if (basis->parsed()) {
      return run_basis_dump(p, L, T, out_file);
    }
  } catch (const std::exception& e) {
    nlohmann::json record;
    record["error"] = e.what();
    record["command"] = app.get_subcommands().empty()
                            ? ""
                            : app.get_subcommands().front()->get_name();
    std::cerr << record.dump() << "\n";
    return 1;
  }
  return 0;
}
