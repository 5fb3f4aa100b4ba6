#pragma once

#include <utility>

#include "fwb/fw_system.hpp"

namespace fwb {

/// Selects one member of the two oscillating families
///   u = -omega/n + n^{-s} sin(nx + omega t),
///   rho = 1/n + n^{-s} sin(nx + omega t).
/// omega is +1 or -1, n >= 2, s > 5/2; the grid must resolve mode 2n below
/// the dealiasing cutoff (2n < N/3) so the residuals are representable.
struct SequenceParams {
  int omega = 1;
  int n = 2;
  double s = 3.0;

  void validate() const;
  void validate_on(const GridSpec& grid) const;
};

/// The family member at time t, built exactly from trig terms.
State approximate_state(const SequenceParams& params, double t, GridSpec grid);

/// The family member at t = 0.
State initial_state(const SequenceParams& params, GridSpec grid);

/// Exact analytic time derivative of the family member at time t.
State approximate_time_derivative(const SequenceParams& params, double t, GridSpec grid);

/// Closed forms of the defect the family leaves in the FW system:
///   R1 = sin(2(nx + omega t)) / (2 n^{2s-1}),
///   R2 = cos(nx + omega t) / n^s + sin(2(nx + omega t)) / n^{2s-1}.
std::pair<PeriodicFunction, PeriodicFunction> residuals_closed_form(
    const SequenceParams& params, double t, GridSpec grid);

/// The same defect computed through the spectral operators:
///   D1 = d_t u + u u_x - Lambda^{-1} d_x (rho - u),
///   D2 = d_t rho + u rho_x + rho u_x,
/// with d_t supplied analytically. Agreement with the closed forms is the
/// anti-drift oracle for the whole construction.
std::pair<PeriodicFunction, PeriodicFunction> residual_defect(const SequenceParams& params,
                                                              double t, GridSpec grid);

/// Bracket constants for || sin(nx) ||, || cos(nx) || in B^gamma_{p,r} with
/// the L^p factor divided out:
///   upper = (log2(32/9))^{1/r} (4/3)^gamma,
///   lower = (log2(9/8))^{1/r} (3/8)^s.
/// For r = inf both log factors become 1.
struct BoundConstants {
  double upper = 0.0;
  double lower = 0.0;
};
BoundConstants bound_constants(double gamma, double s, double r);

/// Separation the families predict between the omega = +1 and -1 branches,
///   2 n^{-s} ( ||cos nx||_{B^s_{p,r}} + ||cos nx||_{B^{s-1}_{p,r}} ) |sin t|,
/// evaluated with the norm engine on the given grid.
double predicted_distance(int n, double s, const BesovIndex& idx, double t, GridSpec grid);

}  // namespace fwb
