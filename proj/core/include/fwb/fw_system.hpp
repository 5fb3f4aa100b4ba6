#pragma once

#include <functional>
#include <limits>
#include <utility>
#include <vector>

#include "fwb/multiplier.hpp"

namespace fwb {

/// Unknowns of the two-component FW system: horizontal velocity u and
/// surface height rho, on a shared grid.
struct State {
  PeriodicFunction u;
  PeriodicFunction rho;

  const GridSpec& grid() const { return u.grid(); }
  bool is_finite() const { return u.is_finite() && rho.is_finite(); }
};

State operator+(const State& a, const State& b);
State operator-(const State& a, const State& b);
State operator*(double c, const State& a);

struct SolverConfig {
  GridSpec grid;
  double dt = 1e-3;
  double t_end = 1.0;
  /// Strictly increasing, within [0, t_end]. The step size is shrunk per
  /// segment so every sample time is hit exactly (no interpolation).
  std::vector<double> sample_times;
  double blowup_factor = 4.0;
  BesovIndex guard_index{3.0, 2.0, 2.0};

  void validate() const;
};

enum class SolveStatus { completed, aborted_blowup };

struct Trajectory {
  std::vector<std::pair<double, State>> samples;
  SolveStatus status = SolveStatus::completed;
  double blowup_time = std::numeric_limits<double>::quiet_NaN();
};

struct ScalarTrajectory {
  std::vector<std::pair<double, PeriodicFunction>> samples;
  SolveStatus status = SolveStatus::completed;
  double blowup_time = std::numeric_limits<double>::quiet_NaN();
};

/// Right-hand side of the FW system,
///   du   = -u u_x + Lambda^{-1} d_x (rho - u)
///   drho = -u rho_x - rho u_x
/// with all products dealiased.
State rhs(const State& state);

/// Classical 4-stage Runge-Kutta step of the FW system.
State rk4_step(const State& state, double dt);

/// Generic RK4 step for a possibly non-autonomous right-hand side.
using StateRhs = std::function<State(double, const State&)>;
State rk4_step(double t, const State& state, double dt, const StateRhs& f);

/// Fixed-step RK4 to t_end, recording the state at each sample time.
/// Aborts (status, not exception) when the guard-index pair norm exceeds
/// blowup_factor times its initial value; throws std::overflow_error on
/// non-finite values and ResolutionError if the data is not band-limited
/// below N/3.
Trajectory solve(const State& state0, const SolverConfig& config);

/// Guaranteed-existence-time heuristic C / ||(u0, rho0)||^2; returns +inf
/// for zero data.
double lifespan_estimate(const PeriodicFunction& u0, const PeriodicFunction& rho0,
                         const BesovIndex& idx, double C);

using TimeField = std::function<PeriodicFunction(double)>;

/// The zero field on a grid, for unforced transport problems.
TimeField zero_field(GridSpec grid);

/// RK4 solution of the linear transport equation  f_t + v f_x = F  with
/// time-dependent coefficients supplied as callables.
ScalarTrajectory solve_linear_transport(const TimeField& velocity, const TimeField& forcing,
                                        const PeriodicFunction& f0,
                                        const SolverConfig& config);

}  // namespace fwb
