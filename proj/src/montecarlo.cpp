#include "ucm/montecarlo.hpp"

#include <cmath>
#include <complex>
#include <sstream>

#include "ucm/errors.hpp"
#include "ucm/parallel.hpp"
#include "ucm/philox.hpp"

namespace ucm {
namespace {

struct HeadingGrid {
  std::vector<double> theta;               // thetabar(j ds)
  std::vector<std::complex<double>> unit;  // e^{i thetabar(j ds)}
};

HeadingGrid heading_grid(const SimConfig& c) {
  HeadingGrid g;
  g.theta.resize(static_cast<std::size_t>(c.steps) + 1);
  g.unit.resize(g.theta.size());
  const double ds = c.s_final / static_cast<double>(c.steps);
  for (std::int64_t j = 0; j <= c.steps; ++j) {
    const double s = j == c.steps ? c.s_final : ds * static_cast<double>(j);
    const auto ju = static_cast<std::size_t>(j);
    g.theta[ju] = c.profile.heading_bar(s);
    g.unit[ju] = std::polar(1.0, g.theta[ju]);
  }
  return g;
}

// e^{i a}; Taylor series through a^11 for the small heading increments.
inline std::complex<double> small_rotation(double a) {
  if (std::abs(a) > 0.1) return {std::cos(a), std::sin(a)};
  const double a2 = a * a;
  const double c =
      1.0 + a2 * (-1.0 / 2 + a2 * (1.0 / 24 + a2 * (-1.0 / 720 + a2 * (1.0 / 40320 +
      a2 * (-1.0 / 3628800)))));
  const double sn =
      a * (1.0 + a2 * (-1.0 / 6 + a2 * (1.0 / 120 + a2 * (-1.0 / 5040 + a2 * (1.0 / 362880 +
      a2 * (-1.0 / 39916800))))));
  return {c, sn};
}

// cos/sin of theta_j come from e^{i thetabar_j} times a unit rotor carrying
// the accumulated heading noise; theta_j itself is kept as an exact sum.
template <class Sink>
Pose run_steps(const SimConfig& c, const HeadingGrid& grid, std::int64_t trial, Sink&& sink) {
  const double ds = c.s_final / static_cast<double>(c.steps);
  const double sd_theta = std::sqrt(c.params.k_theta * ds);
  const double sd_r = std::sqrt(c.params.k_r * ds);
  double x = 0.0;
  double y = 0.0;
  double noise = 0.0;
  std::complex<double> rotor(1.0, 0.0);
  double theta = grid.theta[0];
  for (std::int64_t j = 1; j <= c.steps; ++j) {
    const auto ju = static_cast<std::size_t>(j);
    const NormalPair z = normal_pair(c.master_seed, static_cast<std::uint64_t>(trial),
                                     static_cast<std::uint64_t>(j - 1));
    const double dtheta = sd_theta * z.first;
    noise += dtheta;
    theta = grid.theta[ju] + noise;
    const std::complex<double> inc = small_rotation(dtheta);
    rotor = {rotor.real() * inc.real() - rotor.imag() * inc.imag(),
             rotor.real() * inc.imag() + rotor.imag() * inc.real()};
    const std::complex<double> g = grid.unit[ju];
    const double len = ds + sd_r * z.second;
    x += len * (g.real() * rotor.real() - g.imag() * rotor.imag());
    y += len * (g.real() * rotor.imag() + g.imag() * rotor.real());
    sink(j, x, y, theta);
  }
  return {x, y, theta};
}

void check_trial(const SimConfig& c, std::int64_t trial) {
  if (trial < 0 || trial >= c.trials) {
    std::ostringstream os;
    os << "trial index " << trial << " outside [0, " << c.trials << ")";
    throw DomainError(os.str());
  }
}

QuantityStats stats_of(std::span<const double> v) {
  QuantityStats out;
  const auto n = static_cast<double>(v.size());
  out.mean = pairwise_sum(v) / n;
  if (v.size() < 2) return out;
  std::vector<double> d2(v.size());
  std::vector<double> d4(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double d = v[i] - out.mean;
    d2[i] = d * d;
    d4[i] = d2[i] * d2[i];
  }
  const double m2 = pairwise_sum(d2) / n;
  const double m4 = pairwise_sum(d4) / n;
  const double var = m2 * n / (n - 1.0);
  out.variance = var;
  out.std_error = std::sqrt(var / n);
  out.variance_se = std::sqrt(std::max(0.0, m4 - m2 * m2) / n);
  return out;
}

}  // namespace

void SimConfig::validate() const {
  params.validate();
  if (steps < 1) throw InvalidArgument("steps must be >= 1");
  if (trials < 1) throw InvalidArgument("trials must be >= 1");
  if (threads < 1) throw InvalidArgument("threads must be >= 1");
  if (!(s_final >= 0.0) || !std::isfinite(s_final)) throw DomainError("s_final must be >= 0");
  if (s_final > profile.s_max()) {
    std::ostringstream os;
    os << "s_final " << s_final << " exceeds profile s_max " << profile.s_max();
    throw DomainError(os.str());
  }
}

Pose simulate_trial(const SimConfig& config, std::int64_t trial_index) {
  config.validate();
  check_trial(config, trial_index);
  const auto grid = heading_grid(config);
  return run_steps(config, grid, trial_index, [](std::int64_t, double, double, double) {});
}

std::vector<PathSample> simulate_path(const SimConfig& config, std::int64_t trial_index) {
  config.validate();
  check_trial(config, trial_index);
  const auto grid = heading_grid(config);
  const double ds = config.s_final / static_cast<double>(config.steps);
  std::vector<PathSample> path;
  path.reserve(static_cast<std::size_t>(config.steps) + 1);
  path.push_back({0.0, 0.0, 0.0, grid.theta[0]});
  run_steps(config, grid, trial_index, [&](std::int64_t j, double x, double y, double th) {
    const double s = j == config.steps ? config.s_final : ds * static_cast<double>(j);
    path.push_back({s, x, y, th});
  });
  return path;
}

std::string_view quantity_name(Quantity q) {
  switch (q) {
    case Quantity::x: return "x";
    case Quantity::y: return "y";
    case Quantity::theta: return "theta";
    case Quantity::d2: return "d2";
    case Quantity::d4: return "d4";
    case Quantity::xx: return "xx";
    case Quantity::yy: return "yy";
    case Quantity::xy: return "xy";
    case Quantity::x_theta: return "x_theta";
    case Quantity::y_theta: return "y_theta";
    case Quantity::theta2: return "theta2";
  }
  return "?";
}

TrialStatistics summarize(std::span<const Pose> finals, double theta_bar_final) {
  if (finals.empty()) throw InvalidArgument("no trials to summarize");
  TrialStatistics out;
  out.trials_used = static_cast<std::int64_t>(finals.size());
  std::vector<double> v(finals.size());
  for (std::size_t qi = 0; qi < kQuantityCount; ++qi) {
    const auto q = static_cast<Quantity>(qi);
    for (std::size_t i = 0; i < finals.size(); ++i) {
      const Pose& p = finals[i];
      const double th = p.theta - theta_bar_final;
      const double d2 = p.x * p.x + p.y * p.y;
      double val = 0.0;
      switch (q) {
        case Quantity::x: val = p.x; break;
        case Quantity::y: val = p.y; break;
        case Quantity::theta: val = p.theta; break;
        case Quantity::d2: val = d2; break;
        case Quantity::d4: val = d2 * d2; break;
        case Quantity::xx: val = p.x * p.x; break;
        case Quantity::yy: val = p.y * p.y; break;
        case Quantity::xy: val = p.x * p.y; break;
        case Quantity::x_theta: val = p.x * th; break;
        case Quantity::y_theta: val = p.y * th; break;
        case Quantity::theta2: val = th * th; break;
      }
      v[i] = val;
    }
    out.quantities[qi] = stats_of(v);
  }
  out.finals.assign(finals.begin(), finals.end());
  return out;
}

TrialStatistics run_experiment(const SimConfig& config) {
  config.validate();
  const auto grid = heading_grid(config);
  std::vector<Pose> finals(static_cast<std::size_t>(config.trials));
  parallel_for(finals.size(), config.threads, [&](std::size_t i) {
    finals[i] = run_steps(config, grid, static_cast<std::int64_t>(i),
                          [](std::int64_t, double, double, double) {});
  });
  return summarize(finals, grid.theta.back());
}

}  // namespace ucm
