/* C interface to the ucmoments library.
 *
 * Every function returns a ucm_status. On failure the thread-local message
 * from ucm_last_error() describes the cause. Handles are opaque and owned by
 * the caller; release them with the matching _free function. */
#ifndef UCM_UCM_H
#define UCM_UCM_H

#include <stddef.h>
#include <stdint.h>

#if defined(UCM_BUILDING_LIBRARY)
#define UCM_API __attribute__((visibility("default")))
#else
#define UCM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ucm_status {
  UCM_OK = 0,
  UCM_ERR_DOMAIN = 1,
  UCM_ERR_INVALID_ARGUMENT = 2,
  UCM_ERR_CONSTRAINT = 3,
  UCM_ERR_EVALUATION = 4,
  UCM_ERR_ENVELOPE = 5,
  UCM_ERR_CONSISTENCY = 6,
  UCM_ERR_CANCELLATION = 7,
  UCM_ERR_NULL_POINTER = 8,
  UCM_ERR_BUFFER_TOO_SMALL = 9,
  UCM_ERR_INTERNAL = 10
} ucm_status;

typedef struct ucm_profile ucm_profile;
typedef struct ucm_trial_stats ucm_trial_stats;

typedef struct ucm_noise {
  double k_r;
  double k_theta;
} ucm_noise;

typedef struct ucm_quadrature {
  int nodes_per_level;
  int max_dim_deterministic;
  int64_t qmc_samples;
  double rel_tol;
  int threads;
} ucm_quadrature;

typedef struct ucm_pose {
  double x;
  double y;
  double theta;
} ucm_pose;

typedef struct ucm_path_sample {
  double s;
  double x;
  double y;
  double theta;
} ucm_path_sample;

typedef struct ucm_moment_result {
  double value_re;
  double value_im;
  double err_estimate;
  int64_t terms_evaluated;
  int64_t term_keys;
  int cost_warning;
} ucm_moment_result;

typedef struct ucm_sim_config {
  double s_final;
  int64_t steps;
  int64_t trials;
  uint64_t master_seed;
  int threads;
} ucm_sim_config;

/* Mirrors the quantity order of the simulator. */
typedef enum ucm_quantity {
  UCM_Q_X = 0,
  UCM_Q_Y,
  UCM_Q_THETA,
  UCM_Q_D2,
  UCM_Q_D4,
  UCM_Q_XX,
  UCM_Q_YY,
  UCM_Q_XY,
  UCM_Q_X_THETA,
  UCM_Q_Y_THETA,
  UCM_Q_THETA2,
  UCM_Q_COUNT
} ucm_quantity;

typedef struct ucm_quantity_stats {
  double mean;
  int has_variance; /* 0 when trials_used < 2 */
  double variance;
  double std_error;
  double variance_se;
} ucm_quantity_stats;

UCM_API const char* ucm_version(void);
UCM_API const char* ucm_last_error(void);
UCM_API const char* ucm_status_string(ucm_status status);
UCM_API void ucm_quadrature_defaults(ucm_quadrature* out);
UCM_API const char* ucm_quantity_name(ucm_quantity q);

/* Profiles */
UCM_API ucm_status ucm_profile_constant(double mu0, double theta0, double s_max, ucm_profile** out);
UCM_API ucm_status ucm_profile_polynomial(const double* coeffs, size_t n, double theta0,
                                          double s_max, ucm_profile** out);
UCM_API ucm_status ucm_profile_table(const double* s, const double* mu, size_t n, double theta0,
                                     double s_max, ucm_profile** out);
UCM_API void ucm_profile_free(ucm_profile* profile);
/* 1 and *mu0 set for constant profiles, 0 otherwise */
UCM_API int ucm_profile_constant_mu(const ucm_profile* profile, double* mu0);
UCM_API ucm_status ucm_profile_s_max(const ucm_profile* profile, double* out);
UCM_API ucm_status ucm_profile_mu(const ucm_profile* profile, double s, double* out);
UCM_API ucm_status ucm_heading_bar(const ucm_profile* profile, double s, double* out);
UCM_API ucm_status ucm_deterministic_pose(const ucm_profile* profile, double s, ucm_pose* out);

/* Low-order moments. quad may be NULL for defaults. */
UCM_API ucm_status ucm_orientation(const ucm_profile* profile, const ucm_noise* noise, double s,
                                   double* mean, double* variance);
UCM_API ucm_status ucm_mean_position(const ucm_profile* profile, const ucm_noise* noise, double s,
                                     const ucm_quadrature* quad, double* x, double* y);
UCM_API ucm_status ucm_second_moments(const ucm_profile* profile, const ucm_noise* noise, double s,
                                      const ucm_quadrature* quad, double* xx, double* yy,
                                      double* xy);
UCM_API ucm_status ucm_heading_covariance(const ucm_profile* profile, const ucm_noise* noise,
                                          double s, const ucm_quadrature* quad, double* x_theta,
                                          double* y_theta);
UCM_API ucm_status ucm_mean_squared_distance(const ucm_profile* profile, const ucm_noise* noise,
                                             double s, const ucm_quadrature* quad, double* out);

/* General moments. r == 0 gives <u^p w^q>, r > 0 <u^p w^q theta~^r>.
 * force != 0 evaluates outside the envelope and sets cost_warning. */
UCM_API ucm_status ucm_uv_moment(int p, int q, int r, const ucm_profile* profile,
                                 const ucm_noise* noise, double s, const ucm_quadrature* quad,
                                 int force, ucm_moment_result* out);
UCM_API ucm_status ucm_xy_moment(int i, int j, int k, const ucm_profile* profile,
                                 const ucm_noise* noise, double s, const ucm_quadrature* quad,
                                 int force, double* out);
UCM_API ucm_status ucm_term_key_count(int p, int q, int r, int64_t* out);
/* Decimal coefficient of key (n, l, m) of <u^p w^q>. *needed includes the NUL. */
UCM_API ucm_status ucm_term_coefficient(int p, int q, int n, int l, int m, char* buf, size_t cap,
                                        size_t* needed);

/* <D^4> and the variance of D^2 by quadrature */
UCM_API ucm_status ucm_d4_moment(const ucm_profile* profile, const ucm_noise* noise, double s,
                                 const ucm_quadrature* quad, double* out);
UCM_API ucm_status ucm_variance_d2(const ucm_profile* profile, const ucm_noise* noise, double s,
                                   const ucm_quadrature* quad, double* out);

/* Constant speed ratio closed forms */
UCM_API ucm_status ucm_d2_constmu(double mu0, const ucm_noise* noise, double s, double* out);
UCM_API ucm_status ucm_d4_constmu(double mu0, const ucm_noise* noise, double s, double* out);
UCM_API ucm_status ucm_variance_d2_constmu(double mu0, const ucm_noise* noise, double s,
                                           double* out);
UCM_API ucm_status ucm_mean_pose_constmu(double mu0, const ucm_noise* noise, double theta0,
                                         double s, double* x, double* y);
UCM_API ucm_status ucm_d4_constmu_rates(double mu0, const ucm_noise* noise, double s, double* re,
                                        double* im, size_t cap, size_t* count);

/* Monte Carlo */
UCM_API ucm_status ucm_simulate_trial(const ucm_profile* profile, const ucm_noise* noise,
                                      const ucm_sim_config* config, int64_t trial, ucm_pose* out);
/* cap must be at least steps + 1 */
UCM_API ucm_status ucm_simulate_path(const ucm_profile* profile, const ucm_noise* noise,
                                     const ucm_sim_config* config, int64_t trial,
                                     ucm_path_sample* buf, size_t cap, size_t* count);
UCM_API ucm_status ucm_run_experiment(const ucm_profile* profile, const ucm_noise* noise,
                                      const ucm_sim_config* config, ucm_trial_stats** out);
/* Statistics of the first `count` trials of an experiment. */
UCM_API ucm_status ucm_trial_stats_prefix(const ucm_trial_stats* stats, int64_t count,
                                          ucm_trial_stats** out);
UCM_API void ucm_trial_stats_free(ucm_trial_stats* stats);
UCM_API int64_t ucm_trial_stats_trials(const ucm_trial_stats* stats);
UCM_API ucm_status ucm_trial_stats_quantity(const ucm_trial_stats* stats, ucm_quantity q,
                                            ucm_quantity_stats* out);
UCM_API ucm_status ucm_trial_stats_final(const ucm_trial_stats* stats, int64_t trial,
                                         ucm_pose* out);

#ifdef __cplusplus
}
#endif

#endif
