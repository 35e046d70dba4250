#include "ucm_cli/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace ucm_cli {
namespace {

using json = nlohmann::ordered_json;

void reject_unknown(const json& obj, const std::string& section, std::set<std::string> allowed) {
  if (!obj.is_object()) throw ConfigError("section '" + section + "' must be an object");
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (!allowed.count(key)) throw ConfigError("unknown key '" + key + "' in '" + section + "'");
  }
}

template <class T>
void read(const json& obj, const char* key, T& out, const std::string& section) {
  if (!obj.contains(key)) return;
  try {
    out = obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(section + "." + key + ": " + e.what());
  }
}

}  // namespace

Config parse_config(const json& input) {
  const json& doc = input.contains("config") ? input.at("config") : input;
  reject_unknown(doc, "config", {"profile", "noise", "sim", "quadrature", "output"});
  Config c;
  if (doc.contains("profile")) {
    const auto& p = doc.at("profile");
    reject_unknown(p, "profile", {"kind", "mu0", "coefficients", "samples", "theta0", "s_max"});
    read(p, "kind", c.profile.kind, "profile");
    read(p, "mu0", c.profile.mu0, "profile");
    read(p, "coefficients", c.profile.coefficients, "profile");
    read(p, "samples", c.profile.samples, "profile");
    read(p, "theta0", c.profile.theta0, "profile");
    read(p, "s_max", c.profile.s_max, "profile");
    if (c.profile.kind != "constant" && c.profile.kind != "polynomial" &&
        c.profile.kind != "table") {
      throw ConfigError("profile.kind must be constant, polynomial or table");
    }
  }
  if (doc.contains("noise")) {
    const auto& n = doc.at("noise");
    reject_unknown(n, "noise", {"k_r", "k_theta"});
    read(n, "k_r", c.noise.k_r, "noise");
    read(n, "k_theta", c.noise.k_theta, "noise");
  }
  if (doc.contains("sim")) {
    const auto& s = doc.at("sim");
    reject_unknown(s, "sim", {"s_final", "steps", "trials", "seed", "threads"});
    read(s, "s_final", c.sim.s_final, "sim");
    read(s, "steps", c.sim.steps, "sim");
    read(s, "trials", c.sim.trials, "sim");
    read(s, "seed", c.sim.master_seed, "sim");
    read(s, "threads", c.sim.threads, "sim");
  }
  if (doc.contains("quadrature")) {
    const auto& q = doc.at("quadrature");
    reject_unknown(q, "quadrature",
                   {"nodes_per_level", "max_dim_deterministic", "qmc_samples", "rel_tol", "threads"});
    read(q, "nodes_per_level", c.quadrature.nodes_per_level, "quadrature");
    read(q, "max_dim_deterministic", c.quadrature.max_dim_deterministic, "quadrature");
    read(q, "qmc_samples", c.quadrature.qmc_samples, "quadrature");
    read(q, "rel_tol", c.quadrature.rel_tol, "quadrature");
    read(q, "threads", c.quadrature.threads, "quadrature");
  }
  if (doc.contains("output")) {
    const auto& o = doc.at("output");
    reject_unknown(o, "output", {"directory", "per_trial_csv"});
    read(o, "directory", c.output.directory, "output");
    read(o, "per_trial_csv", c.output.per_trial_csv, "output");
  }
  return c;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config parse error in '" + path + "': " + e.what());
  }
  return parse_config(doc);
}

json to_json(const Config& c) {
  json profile = {{"kind", c.profile.kind}};
  if (c.profile.kind == "constant") profile["mu0"] = c.profile.mu0;
  if (c.profile.kind == "polynomial") profile["coefficients"] = c.profile.coefficients;
  if (c.profile.kind == "table") profile["samples"] = c.profile.samples;
  profile["theta0"] = c.profile.theta0;
  profile["s_max"] = c.profile.s_max;
  return {
      {"profile", profile},
      {"noise", {{"k_r", c.noise.k_r}, {"k_theta", c.noise.k_theta}}},
      {"sim",
       {{"s_final", c.sim.s_final},
        {"steps", c.sim.steps},
        {"trials", c.sim.trials},
        {"seed", c.sim.master_seed},
        {"threads", c.sim.threads}}},
      {"quadrature",
       {{"nodes_per_level", c.quadrature.nodes_per_level},
        {"max_dim_deterministic", c.quadrature.max_dim_deterministic},
        {"qmc_samples", c.quadrature.qmc_samples},
        {"rel_tol", c.quadrature.rel_tol},
        {"threads", c.quadrature.threads}}},
      {"output", {{"directory", c.output.directory}, {"per_trial_csv", c.output.per_trial_csv}}},
  };
}

ProfilePtr make_profile(const ProfileConfig& p) {
  ucm_profile* raw = nullptr;
  if (p.kind == "constant") {
    check(ucm_profile_constant(p.mu0, p.theta0, p.s_max, &raw));
  } else if (p.kind == "polynomial") {
    check(ucm_profile_polynomial(p.coefficients.data(), p.coefficients.size(), p.theta0, p.s_max,
                                 &raw));
  } else {
    std::vector<double> s, mu;
    for (const auto& [si, mi] : p.samples) {
      s.push_back(si);
      mu.push_back(mi);
    }
    check(ucm_profile_table(s.data(), mu.data(), s.size(), p.theta0, p.s_max, &raw));
  }
  return ProfilePtr(raw);
}

}  // namespace ucm_cli
