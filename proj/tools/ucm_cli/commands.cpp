#include "ucm_cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ucm_cli/config.hpp"

namespace ucm_cli {
namespace {

using json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string human(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

json optional_number(int has, double v) { return has ? json(v) : json(nullptr); }

struct Options {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  bool closed_form = false;
  bool force = false;
};

struct Context {
  Config config;
  std::ostream& out;
  std::ostream& err;
};

Context make_context(const Options& opt, std::ostream& out, std::ostream& err) {
  Config c = opt.config_path.empty() ? Config{} : load_config(opt.config_path);
  if (opt.seed) c.sim.master_seed = *opt.seed;
  if (opt.threads) {
    if (*opt.threads < 1) throw UsageError("--threads must be >= 1");
    c.sim.threads = *opt.threads;
    c.quadrature.threads = *opt.threads;
  }
  return {c, out, err};
}

// Writes `content` to output.directory/name when a directory is configured.
void persist(const Config& c, const std::string& name, const std::string& content) {
  if (c.output.directory.empty()) return;
  std::filesystem::create_directories(c.output.directory);
  const auto path = std::filesystem::path(c.output.directory) / name;
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write '" + path.string() + "'");
  f << content;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

double require_constant(const ucm_profile* profile) {
  double mu0 = 0.0;
  if (!ucm_profile_constant_mu(profile, &mu0)) {
    throw UsageError("--closed-form requires a constant profile");
  }
  return mu0;
}

int cmd_moment(Context& ctx, const Options& opt, int p, int q, int r) {
  const auto profile = make_profile(ctx.config.profile);
  ucm_moment_result res{};
  const auto t0 = std::chrono::steady_clock::now();
  check(ucm_uv_moment(p, q, r, profile.get(), &ctx.config.noise, ctx.config.sim.s_final,
                      &ctx.config.quadrature, opt.force ? 1 : 0, &res));
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  json j = {{"p", p},
            {"q", q},
            {"r", r},
            {"s", ctx.config.sim.s_final},
            {"value_re", res.value_re},
            {"value_im", res.value_im},
            {"err_estimate", res.err_estimate},
            {"terms", res.terms_evaluated},
            {"term_keys", res.term_keys},
            {"cost_warning", res.cost_warning != 0},
            {"config", to_json(ctx.config)}};
  persist(ctx.config, "moment_" + std::to_string(p) + "_" + std::to_string(q) + "_" +
                          std::to_string(r) + ".json",
          dump(j));
  j["wall_time"] = wall;
  ctx.out << dump(j);
  ctx.err << "<u^" << p << " w^" << q << " theta~^" << r << "> = " << human(res.value_re)
          << (res.value_im < 0 ? " - " : " + ") << human(std::abs(res.value_im)) << "i  (err "
          << human(res.err_estimate) << ", " << res.terms_evaluated << " integrals)\n";
  if (res.cost_warning) ctx.err << "warning: order outside the supported envelope\n";
  return kExitOk;
}

int cmd_d2(Context& ctx, const Options& opt) {
  const auto profile = make_profile(ctx.config.profile);
  const double s = ctx.config.sim.s_final;
  double d2 = 0.0;
  if (opt.closed_form) {
    check(ucm_d2_constmu(require_constant(profile.get()), &ctx.config.noise, s, &d2));
  } else {
    check(ucm_mean_squared_distance(profile.get(), &ctx.config.noise, s, &ctx.config.quadrature,
                                    &d2));
  }
  const json j = {{"quantity", "d2"},
                  {"method", opt.closed_form ? "closed_form" : "quadrature"},
                  {"s", s},
                  {"mean_d2", d2},
                  {"config", to_json(ctx.config)}};
  persist(ctx.config, "d2.json", dump(j));
  ctx.out << dump(j);
  ctx.err << "<D^2>(" << human(s) << ") = " << human(d2) << "\n";
  return kExitOk;
}

int cmd_d4(Context& ctx, const Options& opt) {
  const auto profile = make_profile(ctx.config.profile);
  const double s = ctx.config.sim.s_final;
  double d2 = 0.0, d4 = 0.0, var = 0.0;
  if (opt.closed_form) {
    const double mu0 = require_constant(profile.get());
    check(ucm_d2_constmu(mu0, &ctx.config.noise, s, &d2));
    check(ucm_d4_constmu(mu0, &ctx.config.noise, s, &d4));
    check(ucm_variance_d2_constmu(mu0, &ctx.config.noise, s, &var));
  } else {
    const auto* qs = &ctx.config.quadrature;
    check(ucm_mean_squared_distance(profile.get(), &ctx.config.noise, s, qs, &d2));
    check(ucm_d4_moment(profile.get(), &ctx.config.noise, s, qs, &d4));
    check(ucm_variance_d2(profile.get(), &ctx.config.noise, s, qs, &var));
  }
  const json j = {{"quantity", "d4"},
                  {"method", opt.closed_form ? "closed_form" : "quadrature"},
                  {"s", s},
                  {"mean_d2", d2},
                  {"mean_d4", d4},
                  {"variance_d2", var},
                  {"config", to_json(ctx.config)}};
  persist(ctx.config, "d4.json", dump(j));
  ctx.out << dump(j);
  ctx.err << "<D^2> = " << human(d2) << "  <D^4> = " << human(d4) << "  var(D^2) = " << human(var)
          << "\n";
  return kExitOk;
}

json stats_json(const ucm_trial_stats* stats) {
  json q = json::object();
  for (int i = 0; i < UCM_Q_COUNT; ++i) {
    ucm_quantity_stats s{};
    check(ucm_trial_stats_quantity(stats, static_cast<ucm_quantity>(i), &s));
    q[ucm_quantity_name(static_cast<ucm_quantity>(i))] = {
        {"mean", s.mean},
        {"variance", optional_number(s.has_variance, s.variance)},
        {"std_error", optional_number(s.has_variance, s.std_error)},
        {"variance_se", optional_number(s.has_variance, s.variance_se)}};
  }
  return q;
}

int cmd_simulate(Context& ctx) {
  const auto& c = ctx.config;
  if (c.output.per_trial_csv && c.output.directory.empty()) {
    throw ConfigError("output.per_trial_csv requires output.directory");
  }
  const auto profile = make_profile(c.profile);
  ucm_trial_stats* raw = nullptr;
  check(ucm_run_experiment(profile.get(), &c.noise, &c.sim, &raw));
  const StatsPtr stats(raw);
  const json j = {{"trials", ucm_trial_stats_trials(stats.get())},
                  {"s_final", c.sim.s_final},
                  {"steps", c.sim.steps},
                  {"seed", c.sim.master_seed},
                  {"quantities", stats_json(stats.get())},
                  {"config", to_json(c)}};
  persist(c, "simulate.json", dump(j));
  if (c.output.per_trial_csv) {
    std::ostringstream csv;
    csv << "trial_index,x,y,theta,d2\n";
    for (std::int64_t t = 0; t < ucm_trial_stats_trials(stats.get()); ++t) {
      ucm_pose p{};
      check(ucm_trial_stats_final(stats.get(), t, &p));
      csv << t << ',' << num(p.x) << ',' << num(p.y) << ',' << num(p.theta) << ','
          << num(p.x * p.x + p.y * p.y) << '\n';
    }
    persist(c, "trials.csv", csv.str());
  }
  ctx.out << dump(j);
  ucm_quantity_stats d2{};
  check(ucm_trial_stats_quantity(stats.get(), UCM_Q_D2, &d2));
  ctx.err << "trials " << ucm_trial_stats_trials(stats.get()) << "  <D^2> = " << human(d2.mean);
  if (d2.has_variance) {
    ctx.err << " +- " << human(d2.std_error) << "  var(D^2) = " << human(d2.variance) << " +- "
            << human(d2.variance_se);
  }
  ctx.err << "\n";
  return kExitOk;
}

int cmd_reproduce(Context& ctx, const std::string& table, std::vector<std::int64_t> trials) {
  if (table != "table1" && table != "table2") throw UsageError("table must be table1 or table2");
  if (trials.empty()) throw UsageError("--trials needs at least one count");
  for (auto t : trials) {
    if (t < 2) throw UsageError("trial counts must be >= 2");
  }
  const auto& c = ctx.config;
  const double s = 1.0;
  ProfilePtr profile;
  {
    ucm_profile* raw = nullptr;
    if (table == "table1") {
      check(ucm_profile_constant(5.0, 0.0, s, &raw));
    } else {
      const double coeffs[] = {0.0, 10.0};
      check(ucm_profile_polynomial(coeffs, 2, 0.0, s, &raw));
    }
    profile.reset(raw);
  }
  std::ostringstream csv;
  csv << "K,trials,mc_mean_d2,mc_var_d2,analytic_mean_d2,analytic_var_d2,n_sigma_deviation\n";
  ctx.err << table << "\n" << "       K    trials   mc_mean    mc_var  an_mean    an_var  n_sigma\n";
  for (const double k : {0.01, 1.0}) {
    const ucm_noise noise{k, k};
    double a_mean = 0.0, a_var = 0.0;
    if (table == "table1") {
      check(ucm_d2_constmu(5.0, &noise, s, &a_mean));
      check(ucm_variance_d2_constmu(5.0, &noise, s, &a_var));
    } else {
      check(ucm_mean_squared_distance(profile.get(), &noise, s, &c.quadrature, &a_mean));
      check(ucm_variance_d2(profile.get(), &noise, s, &c.quadrature, &a_var));
    }
    ucm_sim_config sim = c.sim;
    sim.s_final = s;
    sim.trials = *std::max_element(trials.begin(), trials.end());
    ucm_trial_stats* raw = nullptr;
    check(ucm_run_experiment(profile.get(), &noise, &sim, &raw));
    const StatsPtr all(raw);
    for (const auto t : trials) {
      ucm_trial_stats* pre = nullptr;
      check(ucm_trial_stats_prefix(all.get(), t, &pre));
      const StatsPtr stats(pre);
      ucm_quantity_stats d2{};
      check(ucm_trial_stats_quantity(stats.get(), UCM_Q_D2, &d2));
      const double n_sigma = std::max(std::abs(d2.mean - a_mean) / d2.std_error,
                                      std::abs(d2.variance - a_var) / d2.variance_se);
      csv << num(k) << ',' << t << ',' << num(d2.mean) << ',' << num(d2.variance) << ','
          << num(a_mean) << ',' << num(a_var) << ',' << num(n_sigma) << '\n';
      char line[160];
      std::snprintf(line, sizeof line, "%8.6g %9lld %9.6g %9.6g %8.6g %9.6g %8.3g\n", k,
                    static_cast<long long>(t), d2.mean, d2.variance, a_mean, a_var, n_sigma);
      ctx.err << line;
    }
  }
  persist(c, table + ".csv", csv.str());
  ctx.out << csv.str();
  return kExitOk;
}

int cmd_traj(Context& ctx, int count, int every) {
  if (count < 0) throw UsageError("--count must be >= 0");
  if (every < 1) throw UsageError("--every must be >= 1");
  const auto& c = ctx.config;
  const auto profile = make_profile(c.profile);
  ucm_sim_config sim = c.sim;
  sim.trials = std::max(count, 1);
  const auto n = static_cast<std::size_t>(sim.steps) + 1;
  std::ostringstream csv;
  csv << "path_id,s,x,y,theta\n";
  const double ds = sim.s_final / static_cast<double>(sim.steps);
  for (std::size_t j = 0; j < n; ++j) {
    if (j % static_cast<std::size_t>(every) != 0 && j + 1 != n) continue;
    const double s = j + 1 == n ? sim.s_final : ds * static_cast<double>(j);
    ucm_pose p{};
    check(ucm_deterministic_pose(profile.get(), s, &p));
    csv << 0 << ',' << num(s) << ',' << num(p.x) << ',' << num(p.y) << ',' << num(p.theta) << '\n';
  }
  std::vector<ucm_path_sample> path(n);
  for (int k = 0; k < count; ++k) {
    std::size_t got = 0;
    check(ucm_simulate_path(profile.get(), &c.noise, &sim, k, path.data(), path.size(), &got));
    for (std::size_t j = 0; j < got; ++j) {
      if (j % static_cast<std::size_t>(every) != 0 && j + 1 != got) continue;
      const auto& p = path[j];
      csv << k + 1 << ',' << num(p.s) << ',' << num(p.x) << ',' << num(p.y) << ','
          << num(p.theta) << '\n';
    }
  }
  persist(c, "traj.csv", csv.str());
  ctx.out << csv.str();
  ctx.err << "wrote " << count + 1 << " paths\n";
  return kExitOk;
}

int exit_for_status(ucm_status st) {
  switch (st) {
    case UCM_ERR_ENVELOPE: return kExitEnvelope;
    case UCM_ERR_CONSISTENCY:
    case UCM_ERR_CANCELLATION:
    case UCM_ERR_EVALUATION:
    case UCM_ERR_INTERNAL: return kExitConsistency;
    default: return kExitConfig;
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Moments of the Brownian unicycle"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--config", opt.config_path, "JSON configuration file");
  app.add_option("--seed", opt.seed, "master seed, overrides sim.seed");
  app.add_option("--threads", opt.threads, "worker threads for simulation and quadrature");
  app.add_flag("--closed-form", opt.closed_form, "constant-ratio closed form (d2, d4)");
  app.add_flag("--force", opt.force, "evaluate moments outside the supported envelope");

  int p = 0, q = 0, r = 0;
  auto* moment = app.add_subcommand("moment", "general moment <u^p w^q theta~^r>");
  moment->add_option("p", p)->required()->check(CLI::NonNegativeNumber);
  moment->add_option("q", q)->required()->check(CLI::NonNegativeNumber);
  moment->add_option("r", r)->required()->check(CLI::NonNegativeNumber);
  auto* d2 = app.add_subcommand("d2", "mean squared distance");
  auto* d4 = app.add_subcommand("d4", "fourth moment and variance of D^2");
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo statistics");
  std::string table;
  std::vector<std::int64_t> trials = {1000, 10000, 100000};
  auto* reproduce = app.add_subcommand("reproduce", "Monte Carlo against analytic tables");
  reproduce->add_option("table", table, "table1 (constant ratio) or table2 (mu = 10 s)")->required();
  reproduce->add_option("--trials", trials, "comma-separated trial counts")->delimiter(',');
  int count = 5;
  int every = 1;
  auto* traj = app.add_subcommand("traj", "sample paths as CSV");
  traj->add_option("--count", count, "number of noisy paths");
  traj->add_option("--every", every, "keep every k-th step");
  for (auto* sub : {moment, d2, d4, simulate, reproduce, traj}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (opt.closed_form && !d2->parsed() && !d4->parsed()) {
      throw UsageError("--closed-form applies to d2 and d4 only");
    }
    Context ctx = make_context(opt, out, err);
    if (moment->parsed()) return cmd_moment(ctx, opt, p, q, r);
    if (d2->parsed()) return cmd_d2(ctx, opt);
    if (d4->parsed()) return cmd_d4(ctx, opt);
    if (simulate->parsed()) return cmd_simulate(ctx);
    if (reproduce->parsed()) return cmd_reproduce(ctx, table, trials);
    if (traj->parsed()) return cmd_traj(ctx, count, every);
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ApiError& e) {
    err << "error: " << e.what() << "\n";
    return exit_for_status(e.status());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitConsistency;
  }
}

}  // namespace ucm_cli
