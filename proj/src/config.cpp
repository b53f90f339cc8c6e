#include <lagdelay/config.hpp>

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace lagdelay {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) {
    return "";
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

class KeyValues {
 public:
  KeyValues(const std::string& text, std::string origin)
      : origin_(std::move(origin)) {
    std::istringstream stream(text);
    std::string line;
    int line_no = 0;
    while (std::getline(stream, line)) {
      ++line_no;
      const auto hash = line.find('#');
      if (hash != std::string::npos) {
        line.erase(hash);
      }
      const std::string entry = trim(line);
      if (entry.empty()) {
        continue;
      }
      const auto eq = entry.find('=');
      if (eq == std::string::npos) {
        fail("line " + std::to_string(line_no) + " is not 'key = value'");
      }
      const std::string key = trim(entry.substr(0, eq));
      const std::string value = trim(entry.substr(eq + 1));
      if (key.empty()) {
        fail("line " + std::to_string(line_no) + " has an empty key");
      }
      if (!values_.emplace(key, value).second) {
        fail("duplicate key '" + key + "'");
      }
    }
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw std::runtime_error("config " + origin_ + ": " + what);
  }

  std::string take(const std::string& key) {
    const auto it = values_.find(key);
    if (it == values_.end()) {
      fail("missing required key '" + key + "'");
    }
    std::string value = it->second;
    values_.erase(it);
    return value;
  }

  void reject_leftovers() const {
    if (!values_.empty()) {
      fail("unknown key '" + values_.begin()->first + "'");
    }
  }

  double take_double(const std::string& key) {
    return parse_double(key, take(key));
  }

  long take_long(const std::string& key) {
    const std::string value = take(key);
    std::size_t used = 0;
    long parsed = 0;
    try {
      parsed = std::stol(value, &used);
    } catch (const std::exception&) {
      fail("key '" + key + "' is not an integer: '" + value + "'");
    }
    if (used != value.size()) {
      fail("key '" + key + "' is not an integer: '" + value + "'");
    }
    return parsed;
  }

  int take_int(const std::string& key) {
    return static_cast<int>(take_long(key));
  }

  std::vector<double> take_list(const std::string& key) {
    const std::string value = take(key);
    std::vector<double> out;
    std::string item;
    std::istringstream stream(value);
    while (std::getline(stream, item, ',')) {
      out.push_back(parse_double(key, trim(item)));
    }
    if (out.empty()) {
      fail("key '" + key + "' has an empty list");
    }
    return out;
  }

 private:
  double parse_double(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    double parsed = 0.0;
    try {
      parsed = std::stod(value, &used);
    } catch (const std::exception&) {
      fail("key '" + key + "' is not a number: '" + value + "'");
    }
    if (used != value.size()) {
      fail("key '" + key + "' is not a number: '" + value + "'");
    }
    return parsed;
  }

  std::string origin_;
  std::map<std::string, std::string> values_;
};

Matrix load_square_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("config: cannot open matrix file " + path);
  }
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    const std::string entry = trim(line);
    if (entry.empty()) {
      continue;
    }
    std::vector<double> row;
    std::string item;
    std::istringstream stream(entry);
    while (std::getline(stream, item, ',')) {
      row.push_back(std::stod(trim(item)));
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw std::runtime_error("config: ragged matrix in " + path);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty() || rows.size() != rows.front().size()) {
    throw std::runtime_error("config: matrix in " + path +
                             " must be square and non-empty");
  }
  Matrix out(rows.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows.size(); ++j) {
      out(i, j) = rows[i][j];
    }
  }
  return out;
}

std::string format_full(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

}  // namespace

McConfig parse_config_text(const std::string& text,
                           const std::string& origin) {
  KeyValues kv(text, origin);
  McConfig config;
  config.tau_true = kv.take_int("tau_true");
  config.p = kv.take_double("p");
  config.L = kv.take_int("L");
  config.T = kv.take_int("T");
  config.m = kv.take_int("m");
  config.markov_rows = kv.take_int("markov_rows");
  const std::vector<double> u = kv.take_list("input_spectrum");
  config.input_spectrum =
      Eigen::Map<const Vector>(u.data(), static_cast<Eigen::Index>(u.size()));
  config.trials = kv.take_long("trials");
  config.base_seed = static_cast<std::uint64_t>(kv.take_long("base_seed"));

  const std::string reduction = kv.take("reduction");
  if (reduction == "none") {
    config.reduction = Reduction::None;
  } else if (reduction == "ble") {
    config.reduction = Reduction::Ble;
  } else {
    kv.fail("reduction must be 'none' or 'ble', got '" + reduction + "'");
  }

  const std::string kind = kv.take("noise.kind");
  if (kind == "white") {
    config.noise = white_noise(kv.take_double("noise.lambda"));
  } else if (kind == "colored") {
    config.noise = colored_noise(kv.take_double("noise.lambda"),
                                 kv.take_list("noise.filter"));
  } else if (kind == "laguerre-from-colored") {
    const NoiseModel colored = colored_noise(kv.take_double("noise.lambda"),
                                             kv.take_list("noise.filter"));
    config.noise =
        nm3_from_colored(time_covariance(colored, config.T),
                         kv.take_double("noise.p_e"), kv.take_int("noise.K"),
                         config.T);
  } else if (kind == "laguerre") {
    config.noise = laguerre_noise(kv.take_double("noise.p_e"),
                                  load_square_csv(kv.take("noise.coef_cov_csv")));
  } else {
    kv.fail("noise.kind must be white, colored, laguerre or "
            "laguerre-from-colored, got '" +
            kind + "'");
  }

  kv.reject_leftovers();
  validate(config);
  return config;
}

McConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("config: cannot open " + path);
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config_text(text.str(), path);
}

std::string canonical_config_text(const McConfig& config) {
  std::ostringstream out;
  out << "tau_true=" << config.tau_true << "\n";
  out << "p=" << format_full(config.p) << "\n";
  out << "L=" << config.L << "\n";
  out << "T=" << config.T << "\n";
  out << "m=" << config.m << "\n";
  out << "markov_rows=" << config.markov_rows << "\n";
  out << "input_spectrum=";
  for (Eigen::Index k = 0; k < config.input_spectrum.size(); ++k) {
    out << (k > 0 ? "," : "") << format_full(config.input_spectrum(k));
  }
  out << "\n";
  out << "trials=" << config.trials << "\n";
  out << "base_seed=" << config.base_seed << "\n";
  out << "reduction="
      << (config.reduction == Reduction::Ble ? "ble" : "none") << "\n";
  out << "noise.kind=" << noise_kind_label(config.noise.kind) << "\n";
  out << "noise.lambda=" << format_full(config.noise.lambda) << "\n";
  switch (config.noise.kind) {
    case NoiseKind::White:
      break;
    case NoiseKind::Colored:
      out << "noise.filter=";
      for (std::size_t k = 0; k < config.noise.filter.size(); ++k) {
        out << (k > 0 ? "," : "") << format_full(config.noise.filter[k]);
      }
      out << "\n";
      break;
    case NoiseKind::LaguerreCombination:
      out << "noise.p_e=" << format_full(config.noise.p_e) << "\n";
      out << "noise.K=" << config.noise.K << "\n";
      out << "noise.coef_cov=";
      for (Eigen::Index i = 0; i < config.noise.coef_cov.rows(); ++i) {
        for (Eigen::Index j = 0; j < config.noise.coef_cov.cols(); ++j) {
          if (i != 0 || j != 0) {
            out << ",";
          }
          out << format_full(config.noise.coef_cov(i, j));
        }
      }
      out << "\n";
      break;
  }
  return out.str();
}

std::string config_digest(const McConfig& config) {
  const std::string text = canonical_config_text(config);
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001b3ull;
  }
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx",
                static_cast<unsigned long long>(hash));
  return buffer;
}

}  // namespace lagdelay
