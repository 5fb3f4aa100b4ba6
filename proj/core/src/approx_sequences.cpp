#include "fwb/approx_sequences.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fwb {

void SequenceParams::validate() const {
  if (omega != 1 && omega != -1) {
    throw std::invalid_argument("SequenceParams: omega must be +1 or -1");
  }
  if (n < 2) throw std::invalid_argument("SequenceParams: n >= 2 required");
  if (!(s > 2.5)) throw std::invalid_argument("SequenceParams: s > 5/2 required");
}

void SequenceParams::validate_on(const GridSpec& grid) const {
  validate();
  if (2 * n >= grid.dealias_limit()) {
    throw ResolutionError("SequenceParams: need 2n < N/3, got n = " + std::to_string(n) +
                          " on N = " + std::to_string(grid.size()));
  }
}

State approximate_state(const SequenceParams& params, double t, GridSpec grid) {
  params.validate_on(grid);
  const double amp = std::pow(static_cast<double>(params.n), -params.s);
  const double phase = params.omega * t;
  PeriodicFunction u = from_terms(
      {TrigTerm::cos(-params.omega / static_cast<double>(params.n), 0),
       TrigTerm::sin(amp, params.n, phase)},
      grid);
  PeriodicFunction rho = from_terms(
      {TrigTerm::cos(1.0 / static_cast<double>(params.n), 0), TrigTerm::sin(amp, params.n, phase)},
      grid);
  return {std::move(u), std::move(rho)};
}

State initial_state(const SequenceParams& params, GridSpec grid) {
  return approximate_state(params, 0.0, grid);
}

State approximate_time_derivative(const SequenceParams& params, double t, GridSpec grid) {
  params.validate_on(grid);
  // d_t of n^{-s} sin(nx + omega t) is omega n^{-s} cos(nx + omega t),
  // identical for both components.
  const double amp = params.omega * std::pow(static_cast<double>(params.n), -params.s);
  const double phase = params.omega * t;
  PeriodicFunction du = from_terms({TrigTerm::cos(amp, params.n, phase)}, grid);
  PeriodicFunction drho = du;
  return {std::move(du), std::move(drho)};
}

std::pair<PeriodicFunction, PeriodicFunction> residuals_closed_form(
    const SequenceParams& params, double t, GridSpec grid) {
  params.validate_on(grid);
  const double n = params.n;
  const double phase = params.omega * t;
  PeriodicFunction r1 =
      from_terms({TrigTerm::sin(0.5 * std::pow(n, 1.0 - 2.0 * params.s), 2 * params.n, 2.0 * phase)},
                 grid);
  PeriodicFunction r2 = from_terms(
      {TrigTerm::cos(std::pow(n, -params.s), params.n, phase),
       TrigTerm::sin(std::pow(n, 1.0 - 2.0 * params.s), 2 * params.n, 2.0 * phase)},
      grid);
  return {std::move(r1), std::move(r2)};
}

std::pair<PeriodicFunction, PeriodicFunction> residual_defect(const SequenceParams& params,
                                                              double t, GridSpec grid) {
  const State state = approximate_state(params, t, grid);
  const State dt_state = approximate_time_derivative(params, t, grid);
  const PeriodicFunction ux = derivative(state.u);
  const PeriodicFunction rho_x = derivative(state.rho);
  PeriodicFunction d1 =
      dt_state.u + multiply(state.u, ux) - inverse_helmholtz_dx(state.rho - state.u);
  PeriodicFunction d2 = dt_state.rho + multiply(state.u, rho_x) + multiply(state.rho, ux);
  return {std::move(d1), std::move(d2)};
}

BoundConstants bound_constants(double gamma, double s, double r) {
  if (!(r >= 1.0)) throw std::invalid_argument("bound_constants: r >= 1 required");
  const double inv_r = std::isinf(r) ? 0.0 : 1.0 / r;
  BoundConstants out;
  out.upper = std::pow(std::log2(32.0 / 9.0), inv_r) * std::pow(4.0 / 3.0, gamma);
  out.lower = std::pow(std::log2(9.0 / 8.0), inv_r) * std::pow(3.0 / 8.0, s);
  return out;
}

double predicted_distance(int n, double s, const BesovIndex& idx, double t, GridSpec grid) {
  SequenceParams probe{1, n, s};
  probe.validate_on(grid);
  const PeriodicFunction cos_n = from_terms({TrigTerm::cos(1.0, n)}, grid);
  const double norms = besov_norm(cos_n, idx) + besov_norm(cos_n, idx.lowered());
  return 2.0 * std::pow(static_cast<double>(n), -s) * norms * std::abs(std::sin(t));
}

}  // namespace fwb
