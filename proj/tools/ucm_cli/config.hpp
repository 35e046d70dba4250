#pragma once

// Experiment configuration: one JSON document with sections
// profile, noise, sim, quadrature and output. Every section and key is
// optional; unknown keys are rejected.

#include "json.hpp"
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ucm_cli/ucm_cxx.hpp"

namespace ucm_cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ProfileConfig {
  std::string kind = "constant";  // constant | polynomial | table
  double mu0 = 5.0;
  std::vector<double> coefficients;
  std::vector<std::pair<double, double>> samples;  // (s, mu)
  double theta0 = 0.0;
  double s_max = 1.0;
};

struct OutputConfig {
  std::string directory;  // empty: stdout only
  bool per_trial_csv = false;
};

struct Config {
  ProfileConfig profile;
  ucm_noise noise{0.01, 0.01};
  ucm_sim_config sim{1.0, 10000, 1000, 42, 1};
  ucm_quadrature quadrature{};
  OutputConfig output;

  Config() { ucm_quadrature_defaults(&quadrature); }
};

// A results document is accepted too; its embedded "config" is used.
Config parse_config(const nlohmann::ordered_json& doc);
Config load_config(const std::string& path);
nlohmann::ordered_json to_json(const Config& config);

ProfilePtr make_profile(const ProfileConfig& profile);

}  // namespace ucm_cli
