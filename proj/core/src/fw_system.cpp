#include "fwb/fw_system.hpp"

#include <cmath>
#include <stdexcept>

namespace fwb {
namespace {

constexpr double kTimeTol = 1e-12;

template <typename Y, typename RhsF>
Y rk4_generic(double t, const Y& y, double h, RhsF&& f) {
  const Y k1 = f(t, y);
  const Y k2 = f(t + 0.5 * h, y + 0.5 * h * k1);
  const Y k3 = f(t + 0.5 * h, y + 0.5 * h * k2);
  const Y k4 = f(t + h, y + h * k3);
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

template <typename Y>
struct RunResult {
  std::vector<std::pair<double, Y>> samples;
  SolveStatus status = SolveStatus::completed;
  double blowup_time = std::numeric_limits<double>::quiet_NaN();
};

// Shared fixed-step driver. Each segment between consecutive sample times
// (and the final leg to t_end) is covered by an integer number of steps of
// size <= config.dt, so samples land exactly on requested times.
template <typename Y, typename RhsF, typename NormF>
RunResult<Y> run_rk4(const Y& y0, const SolverConfig& config, RhsF&& f, NormF&& norm_of) {
  config.validate();
  RunResult<Y> res;
  const double guard0 = norm_of(y0);

  std::vector<std::pair<double, bool>> stops;  // (time, record?)
  for (double st : config.sample_times) stops.emplace_back(st, true);
  if (stops.empty() || stops.back().first < config.t_end - kTimeTol) {
    stops.emplace_back(config.t_end, false);
  }

  Y y = y0;
  double t_prev = 0.0;
  for (const auto& [t_stop, record] : stops) {
    const double len = t_stop - t_prev;
    if (len > kTimeTol) {
      const int steps = std::max(1, static_cast<int>(std::ceil(len / config.dt - 1e-9)));
      const double h = len / steps;
      for (int i = 0; i < steps; ++i) {
        y = rk4_generic(t_prev + i * h, y, h, f);
        const double t_now = i + 1 == steps ? t_stop : t_prev + (i + 1) * h;
        if (!y.is_finite()) {
          throw std::overflow_error("solve: non-finite values at t = " + std::to_string(t_now));
        }
        if (guard0 > 0.0 && norm_of(y) > config.blowup_factor * guard0) {
          res.status = SolveStatus::aborted_blowup;
          res.blowup_time = t_now;
          return res;
        }
      }
      t_prev = t_stop;
    }
    if (record) res.samples.emplace_back(t_stop, y);
  }
  return res;
}

}  // namespace

State operator+(const State& a, const State& b) { return {a.u + b.u, a.rho + b.rho}; }
State operator-(const State& a, const State& b) { return {a.u - b.u, a.rho - b.rho}; }
State operator*(double c, const State& a) { return {c * a.u, c * a.rho}; }

void SolverConfig::validate() const {
  if (!(dt > 0.0) || !(t_end > 0.0) || dt > t_end) {
    throw std::invalid_argument("SolverConfig: require 0 < dt <= t_end");
  }
  if (!(blowup_factor > 1.0)) {
    throw std::invalid_argument("SolverConfig: blowup_factor must exceed 1");
  }
  guard_index.validate();
  double prev = -1.0;
  for (double st : sample_times) {
    if (st < 0.0 || st > t_end + kTimeTol || st <= prev) {
      throw std::invalid_argument(
          "SolverConfig: sample_times must be strictly increasing within [0, t_end]");
    }
    prev = st;
  }
}

State rhs(const State& state) {
  if (!(state.u.grid() == state.rho.grid())) {
    throw std::invalid_argument("rhs: state components on different grids");
  }
  const PeriodicFunction ux = derivative(state.u);
  const PeriodicFunction rho_x = derivative(state.rho);
  PeriodicFunction du = inverse_helmholtz_dx(state.rho - state.u) - multiply(state.u, ux);
  PeriodicFunction drho = -(multiply(state.u, rho_x) + multiply(state.rho, ux));
  return {std::move(du), std::move(drho)};
}

State rk4_step(const State& state, double dt) {
  return rk4_step(0.0, state, dt, [](double, const State& y) { return rhs(y); });
}

State rk4_step(double t, const State& state, double dt, const StateRhs& f) {
  if (!(dt > 0.0)) throw std::invalid_argument("rk4_step: dt must be positive");
  return rk4_generic(t, state, dt, f);
}

Trajectory solve(const State& state0, const SolverConfig& config) {
  if (!(state0.grid() == config.grid)) {
    throw std::invalid_argument("solve: state grid differs from config grid");
  }
  auto res = run_rk4(
      state0, config, [](double, const State& y) { return rhs(y); },
      [&config](const State& y) { return pair_norm(y.u, y.rho, config.guard_index); });
  return {std::move(res.samples), res.status, res.blowup_time};
}

double lifespan_estimate(const PeriodicFunction& u0, const PeriodicFunction& rho0,
                         const BesovIndex& idx, double C) {
  if (!(C > 0.0)) throw std::invalid_argument("lifespan_estimate: C must be positive");
  const double pn = pair_norm(u0, rho0, idx);
  if (pn == 0.0) return std::numeric_limits<double>::infinity();
  return C / (pn * pn);
}

TimeField zero_field(GridSpec grid) {
  return [grid](double) { return PeriodicFunction(grid); };
}

ScalarTrajectory solve_linear_transport(const TimeField& velocity, const TimeField& forcing,
                                        const PeriodicFunction& f0,
                                        const SolverConfig& config) {
  if (!velocity || !forcing) {
    throw std::invalid_argument("solve_linear_transport: velocity and forcing required");
  }
  if (!(f0.grid() == config.grid)) {
    throw std::invalid_argument("solve_linear_transport: grid mismatch");
  }
  auto transport_rhs = [&velocity, &forcing](double t, const PeriodicFunction& y) {
    return forcing(t) - multiply(velocity(t), derivative(y));
  };
  auto res = run_rk4(f0, config, transport_rhs, [&config](const PeriodicFunction& y) {
    return besov_norm(y, config.guard_index);
  });
  return {std::move(res.samples), res.status, res.blowup_time};
}

}  // namespace fwb
