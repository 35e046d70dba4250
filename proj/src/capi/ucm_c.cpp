#include "ucm/ucm.h"

#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "ucm/constmu_closed.hpp"
#include "ucm/d4.hpp"
#include "ucm/errors.hpp"
#include "ucm/general_moments.hpp"
#include "ucm/low_moments.hpp"
#include "ucm/moment_terms.hpp"
#include "ucm/montecarlo.hpp"
#include "ucm/trajectory.hpp"

struct ucm_profile {
  ucm::SpeedRatioProfile impl;
};

struct ucm_trial_stats {
  ucm::TrialStatistics impl;
  double theta_bar_final;
};

namespace {

thread_local std::string g_last_error;

ucm_status fail(ucm_status st, const char* msg) {
  g_last_error = msg;
  return st;
}

template <class F>
ucm_status guarded(F&& f) {
  try {
    f();
    g_last_error.clear();
    return UCM_OK;
  } catch (const ucm::Error& e) {
    return fail(static_cast<ucm_status>(static_cast<int>(e.kind())), e.what());
  } catch (const std::bad_alloc&) {
    return fail(UCM_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(UCM_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(UCM_ERR_INTERNAL, "unknown exception");
  }
}

#define UCM_REQUIRE(ptr) \
  if ((ptr) == nullptr) return fail(UCM_ERR_NULL_POINTER, #ptr " is NULL")

ucm::NoiseParams noise_of(const ucm_noise* n) { return {n->k_r, n->k_theta}; }

ucm::QuadratureSettings quad_of(const ucm_quadrature* q) {
  ucm::QuadratureSettings s;
  if (q != nullptr) {
    s.nodes_per_level = q->nodes_per_level;
    s.max_dim_deterministic = q->max_dim_deterministic;
    s.qmc_samples = q->qmc_samples;
    s.rel_tol = q->rel_tol;
    s.threads = q->threads;
    s.validate();
  }
  return s;
}

ucm::SimConfig sim_of(const ucm_profile* p, const ucm_noise* n, const ucm_sim_config* c) {
  return ucm::SimConfig{p->impl, noise_of(n), c->s_final, c->steps, c->trials, c->master_seed,
                        c->threads};
}

ucm::MomentSpec spec_of(int p, int q, int r) {
  ucm::MomentSpec spec{p, q, r};
  spec.validate();
  return spec;
}

ucm_pose pose_of(const ucm::Pose& p) { return {p.x, p.y, p.theta}; }

}  // namespace

extern "C" {

const char* ucm_version(void) { return "0.1.0"; }

const char* ucm_last_error(void) { return g_last_error.c_str(); }

const char* ucm_status_string(ucm_status status) {
  switch (status) {
    case UCM_OK: return "ok";
    case UCM_ERR_DOMAIN: return "domain error";
    case UCM_ERR_INVALID_ARGUMENT: return "invalid argument";
    case UCM_ERR_CONSTRAINT: return "constraint violation";
    case UCM_ERR_EVALUATION: return "evaluation error";
    case UCM_ERR_ENVELOPE: return "outside supported envelope";
    case UCM_ERR_CONSISTENCY: return "numerical consistency failure";
    case UCM_ERR_CANCELLATION: return "cancellation";
    case UCM_ERR_NULL_POINTER: return "null pointer";
    case UCM_ERR_BUFFER_TOO_SMALL: return "buffer too small";
    case UCM_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void ucm_quadrature_defaults(ucm_quadrature* out) {
  if (out == nullptr) return;
  const ucm::QuadratureSettings d;
  *out = {d.nodes_per_level, d.max_dim_deterministic, d.qmc_samples, d.rel_tol, d.threads};
}

const char* ucm_quantity_name(ucm_quantity q) {
  if (q < 0 || q >= UCM_Q_COUNT) return nullptr;
  return ucm::quantity_name(static_cast<ucm::Quantity>(q)).data();
}

ucm_status ucm_profile_constant(double mu0, double theta0, double s_max, ucm_profile** out) {
  UCM_REQUIRE(out);
  return guarded([&] {
    *out = new ucm_profile{ucm::SpeedRatioProfile::constant(mu0, theta0, s_max)};
  });
}

ucm_status ucm_profile_polynomial(const double* coeffs, size_t n, double theta0, double s_max,
                                  ucm_profile** out) {
  UCM_REQUIRE(out);
  if (n > 0) UCM_REQUIRE(coeffs);
  return guarded([&] {
    std::vector<double> c(coeffs, coeffs + n);
    *out = new ucm_profile{ucm::SpeedRatioProfile::polynomial(std::move(c), theta0, s_max)};
  });
}

ucm_status ucm_profile_table(const double* s, const double* mu, size_t n, double theta0,
                             double s_max, ucm_profile** out) {
  UCM_REQUIRE(out);
  if (n > 0) {
    UCM_REQUIRE(s);
    UCM_REQUIRE(mu);
  }
  return guarded([&] {
    std::vector<ucm::TableSample> samples(n);
    for (size_t i = 0; i < n; ++i) samples[i] = {s[i], mu[i]};
    *out = new ucm_profile{ucm::SpeedRatioProfile::table(std::move(samples), theta0, s_max)};
  });
}

void ucm_profile_free(ucm_profile* profile) { delete profile; }

int ucm_profile_constant_mu(const ucm_profile* profile, double* mu0) {
  if (profile == nullptr) return 0;
  const auto c = profile->impl.constant_mu();
  if (!c) return 0;
  if (mu0 != nullptr) *mu0 = *c;
  return 1;
}

ucm_status ucm_profile_s_max(const ucm_profile* profile, double* out) {
  UCM_REQUIRE(profile);
  UCM_REQUIRE(out);
  *out = profile->impl.s_max();
  return UCM_OK;
}

ucm_status ucm_profile_mu(const ucm_profile* profile, double s, double* out) {
  UCM_REQUIRE(profile);
  UCM_REQUIRE(out);
  return guarded([&] { *out = profile->impl.mu(s); });
}

ucm_status ucm_heading_bar(const ucm_profile* profile, double s, double* out) {
  UCM_REQUIRE(profile);
  UCM_REQUIRE(out);
  return guarded([&] { *out = ucm::heading_bar(profile->impl, s); });
}

ucm_status ucm_deterministic_pose(const ucm_profile* profile, double s, ucm_pose* out) {
  UCM_REQUIRE(profile);
  UCM_REQUIRE(out);
  return guarded([&] { *out = pose_of(ucm::deterministic_pose(profile->impl, s)); });
}

ucm_status ucm_orientation(const ucm_profile* profile, const ucm_noise* noise, double s,
                           double* mean, double* variance) {
  UCM_REQUIRE(profile);
  UCM_REQUIRE(noise);
  UCM_REQUIRE(mean);
  UCM_REQUIRE(variance);
  return guarded([&] {
    const auto d = ucm::orientation_distribution(profile->impl, noise_of(noise), s);
    *mean = d.mean;
    *variance = d.variance;
  });
}

ucm_status ucm_mean_position(const ucm_profile* profile, const ucm_noise* noise, double s,
                             const ucm_quadrature* quad, double* x, double* y) {
  UCM_REQUIRE(profile);
  UCM_REQUIRE(noise);
  UCM_REQUIRE(x);
  UCM_REQUIRE(y);
  return guarded([&] {
    const auto m = ucm::mean_position(profile->impl, noise_of(noise), s, quad_of(quad));
    *x = m.real();
    *y = m.imag();
  });
}

ucm_status ucm_second_moments(const ucm_profile* profile, const ucm_noise* noise, double s,
                              const ucm_quadrature* quad, double* xx, double* yy, double* xy) {
  UCM_REQUIRE(profile);
  UCM_REQUIRE(noise);
  UCM_REQUIRE(xx);
  UCM_REQUIRE(yy);
  UCM_REQUIRE(xy);
  return guarded([&] {
    const auto m = ucm::second_moments(profile->impl, noise_of(noise), s, quad_of(quad));
    *xx = m.xx;
    *yy = m.yy;
    *xy = m.xy;
  });
}

ucm_status ucm_heading_covariance(const ucm_profile* profile, const ucm_noise* noise, double s,
                                  const ucm_quadrature* quad, double* x_theta, double* y_theta) {
  UCM_REQUIRE(profile);
  UCM_REQUIRE(noise);
  UCM_REQUIRE(x_theta);
  UCM_REQUIRE(y_theta);
  return guarded([&] {
    const auto h = ucm::heading_covariance(profile->impl, noise_of(noise), s, quad_of(quad));
    *x_theta = h.x_theta;
    *y_theta = h.y_theta;
  });
}

ucm_status ucm_mean_squared_distance(const ucm_profile* profile, const ucm_noise* noise,
                                     double s, const ucm_quadrature* quad, double* out) {
  UCM_REQUIRE(profile);
  UCM_REQUIRE(noise);
  UCM_REQUIRE(out);
  return guarded([&] {
    *out = ucm::mean_squared_distance(profile->impl, noise_of(noise), s, quad_of(quad));
  });
}

ucm_status ucm_uv_moment(int p, int q, int r, const ucm_profile* profile, const ucm_noise* noise,
                         double s, const ucm_quadrature* quad, int force,
                         ucm_moment_result* out) {
  UCM_REQUIRE(profile);
  UCM_REQUIRE(noise);
  UCM_REQUIRE(out);
  return guarded([&] {
    const auto spec = spec_of(p, q, r);
    const auto policy = force ? ucm::EnvelopePolicy::warn : ucm::EnvelopePolicy::refuse;
    const auto settings = quad_of(quad);
    const auto res = r == 0 ? ucm::uv_moment(spec, profile->impl, noise_of(noise), s, settings,
                                             policy)
                            : ucm::uvtheta_moment(spec, profile->impl, noise_of(noise), s,
                                                  settings, policy);
    *out = {res.value.real(), res.value.imag(), res.err_estimate, res.terms_evaluated,
            res.term_keys, res.cost_warning ? 1 : 0};
  });
}

ucm_status ucm_xy_moment(int i, int j, int k, const ucm_profile* profile, const ucm_noise* noise,
                         double s, const ucm_quadrature* quad, int force, double* out) {
  UCM_REQUIRE(profile);
  UCM_REQUIRE(noise);
  UCM_REQUIRE(out);
  return guarded([&] {
    const auto policy = force ? ucm::EnvelopePolicy::warn : ucm::EnvelopePolicy::refuse;
    *out = ucm::xy_moment(i, j, k, profile->impl, noise_of(noise), s, quad_of(quad), policy);
  });
}

ucm_status ucm_term_key_count(int p, int q, int r, int64_t* out) {
  UCM_REQUIRE(out);
  return guarded([&] {
    *out = static_cast<int64_t>(ucm::enumerate_term_keys(spec_of(p, q, r)).size());
  });
}

ucm_status ucm_term_coefficient(int p, int q, int n, int l, int m, char* buf, size_t cap,
                                size_t* needed) {
  std::string text;
  const ucm_status st = guarded([&] {
    const auto spec = spec_of(p, q, 0);
    text = ucm::coefficient(spec, ucm::TermKey::make(spec, n, l, m)).str();
  });
  if (st != UCM_OK) return st;
  if (needed != nullptr) *needed = text.size() + 1;
  if (buf == nullptr || cap < text.size() + 1) {
    return fail(UCM_ERR_BUFFER_TOO_SMALL, "coefficient buffer too small");
  }
  std::memcpy(buf, text.c_str(), text.size() + 1);
  return UCM_OK;
}

ucm_status ucm_d4_moment(const ucm_profile* profile, const ucm_noise* noise, double s,
                         const ucm_quadrature* quad, double* out) {
  UCM_REQUIRE(profile);
  UCM_REQUIRE(noise);
  UCM_REQUIRE(out);
  return guarded([&] { *out = ucm::d4_moment(profile->impl, noise_of(noise), s, quad_of(quad)); });
}

ucm_status ucm_variance_d2(const ucm_profile* profile, const ucm_noise* noise, double s,
                           const ucm_quadrature* quad, double* out) {
  UCM_REQUIRE(profile);
  UCM_REQUIRE(noise);
  UCM_REQUIRE(out);
  return guarded(
      [&] { *out = ucm::variance_d2(profile->impl, noise_of(noise), s, quad_of(quad)); });
}

ucm_status ucm_d2_constmu(double mu0, const ucm_noise* noise, double s, double* out) {
  UCM_REQUIRE(noise);
  UCM_REQUIRE(out);
  return guarded([&] { *out = ucm::d2_constmu(mu0, noise_of(noise), s); });
}

ucm_status ucm_d4_constmu(double mu0, const ucm_noise* noise, double s, double* out) {
  UCM_REQUIRE(noise);
  UCM_REQUIRE(out);
  return guarded([&] { *out = ucm::d4_constmu(mu0, noise_of(noise), s); });
}

ucm_status ucm_variance_d2_constmu(double mu0, const ucm_noise* noise, double s, double* out) {
  UCM_REQUIRE(noise);
  UCM_REQUIRE(out);
  return guarded([&] { *out = ucm::variance_d2_constmu(mu0, noise_of(noise), s); });
}

ucm_status ucm_mean_pose_constmu(double mu0, const ucm_noise* noise, double theta0, double s,
                                 double* x, double* y) {
  UCM_REQUIRE(noise);
  UCM_REQUIRE(x);
  UCM_REQUIRE(y);
  return guarded([&] {
    const auto m = ucm::mean_pose_constmu(mu0, noise_of(noise), theta0, s);
    *x = m.real();
    *y = m.imag();
  });
}

ucm_status ucm_d4_constmu_rates(double mu0, const ucm_noise* noise, double s, double* re,
                                double* im, size_t cap, size_t* count) {
  UCM_REQUIRE(noise);
  UCM_REQUIRE(count);
  std::vector<std::complex<double>> rates;
  const ucm_status st = guarded([&] { rates = ucm::d4_constmu_rates(mu0, noise_of(noise), s); });
  if (st != UCM_OK) return st;
  *count = rates.size();
  if (cap < rates.size() || (rates.size() > 0 && (re == nullptr || im == nullptr))) {
    return fail(UCM_ERR_BUFFER_TOO_SMALL, "rate buffer too small");
  }
  for (size_t i = 0; i < rates.size(); ++i) {
    re[i] = rates[i].real();
    im[i] = rates[i].imag();
  }
  return UCM_OK;
}

ucm_status ucm_simulate_trial(const ucm_profile* profile, const ucm_noise* noise,
                              const ucm_sim_config* config, int64_t trial, ucm_pose* out) {
  UCM_REQUIRE(profile);
  UCM_REQUIRE(noise);
  UCM_REQUIRE(config);
  UCM_REQUIRE(out);
  return guarded(
      [&] { *out = pose_of(ucm::simulate_trial(sim_of(profile, noise, config), trial)); });
}

ucm_status ucm_simulate_path(const ucm_profile* profile, const ucm_noise* noise,
                             const ucm_sim_config* config, int64_t trial, ucm_path_sample* buf,
                             size_t cap, size_t* count) {
  UCM_REQUIRE(profile);
  UCM_REQUIRE(noise);
  UCM_REQUIRE(config);
  UCM_REQUIRE(count);
  std::vector<ucm::PathSample> path;
  const ucm_status st =
      guarded([&] { path = ucm::simulate_path(sim_of(profile, noise, config), trial); });
  if (st != UCM_OK) return st;
  *count = path.size();
  if (buf == nullptr || cap < path.size()) {
    return fail(UCM_ERR_BUFFER_TOO_SMALL, "path buffer too small");
  }
  for (size_t i = 0; i < path.size(); ++i) buf[i] = {path[i].s, path[i].x, path[i].y, path[i].theta};
  return UCM_OK;
}

ucm_status ucm_run_experiment(const ucm_profile* profile, const ucm_noise* noise,
                              const ucm_sim_config* config, ucm_trial_stats** out) {
  UCM_REQUIRE(profile);
  UCM_REQUIRE(noise);
  UCM_REQUIRE(config);
  UCM_REQUIRE(out);
  return guarded([&] {
    const auto cfg = sim_of(profile, noise, config);
    auto stats = ucm::run_experiment(cfg);
    *out = new ucm_trial_stats{std::move(stats), cfg.profile.heading_bar(cfg.s_final)};
  });
}

ucm_status ucm_trial_stats_prefix(const ucm_trial_stats* stats, int64_t count,
                                  ucm_trial_stats** out) {
  UCM_REQUIRE(stats);
  UCM_REQUIRE(out);
  if (count < 1 || count > stats->impl.trials_used) {
    return fail(UCM_ERR_DOMAIN, "prefix count outside [1, trials]");
  }
  return guarded([&] {
    const std::span<const ucm::Pose> finals(stats->impl.finals.data(),
                                            static_cast<size_t>(count));
    *out = new ucm_trial_stats{ucm::summarize(finals, stats->theta_bar_final),
                               stats->theta_bar_final};
  });
}

void ucm_trial_stats_free(ucm_trial_stats* stats) { delete stats; }

int64_t ucm_trial_stats_trials(const ucm_trial_stats* stats) {
  return stats == nullptr ? 0 : stats->impl.trials_used;
}

ucm_status ucm_trial_stats_quantity(const ucm_trial_stats* stats, ucm_quantity q,
                                    ucm_quantity_stats* out) {
  UCM_REQUIRE(stats);
  UCM_REQUIRE(out);
  if (q < 0 || q >= UCM_Q_COUNT) return fail(UCM_ERR_INVALID_ARGUMENT, "unknown quantity");
  const auto& s = stats->impl[static_cast<ucm::Quantity>(q)];
  *out = {s.mean, s.variance ? 1 : 0, s.variance.value_or(0.0), s.std_error.value_or(0.0),
          s.variance_se.value_or(0.0)};
  return UCM_OK;
}

ucm_status ucm_trial_stats_final(const ucm_trial_stats* stats, int64_t trial, ucm_pose* out) {
  UCM_REQUIRE(stats);
  UCM_REQUIRE(out);
  if (trial < 0 || trial >= stats->impl.trials_used) {
    return fail(UCM_ERR_DOMAIN, "trial index outside [0, trials)");
  }
  *out = pose_of(stats->impl.finals[static_cast<size_t>(trial)]);
  return UCM_OK;
}

}  // extern "C"
