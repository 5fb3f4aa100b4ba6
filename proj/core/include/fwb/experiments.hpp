#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fwb/approx_sequences.hpp"

namespace fwb {

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Configuration shared by all experiments. JSON configs mirror these field
/// names exactly; p and r accept the string "inf" for the sup branches.
struct ExperimentConfig {
  double s = 3.0;
  double p = 2.0;
  double r = 2.0;
  double gamma = 1.75;
  double delta = 3.5;
  std::vector<int> n_list{16, 32, 64, 128, 256, 512};
  std::vector<double> times{0.0, 0.25, 0.5, 1.0};
  int N = 4096;
  double dt = 1e-3;
  std::uint64_t seed = 2026;
  std::string out = "reports";

  BesovIndex index() const { return {s, p, r}; }
  GridSpec grid() const { return GridSpec(N); }
  double theta() const { return (delta - s) / (delta - gamma); }

  /// Enforces the window constraints s - 3/2 < gamma < s - 1,
  /// delta in (s, s+1), and 2 max(n_list) < N/3. Throws ConfigError.
  void validate() const;

  static ExperimentConfig load(const std::string& json_path);
  std::string resolved_json() const;
};

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Least-squares fit of log(value) against log(n). Requires at least 4
/// points and positive values.
RateFit fit_loglog(std::span<const double> n, std::span<const double> value);

inline constexpr int kExitPass = 0;
inline constexpr int kExitAssertionFailure = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitBlowup = 3;

/// Solver experiments skip n above this; norm-only experiments use the full
/// n_list.
inline constexpr int kSolverNCap = 256;

struct NonuniformRow {
  int n = 0;
  double t = 0.0;
  double initial_dist = 0.0;
  double solver_dist = 0.0;
  double predicted_dist = 0.0;
  double ratio = 0.0;  ///< solver_dist / |sin t|, 0 at t = 0
};

struct NonuniformReport {
  std::vector<NonuniformRow> rows;
  std::optional<RateFit> initial_fit;
  std::vector<std::pair<int, int>> blowups;  ///< (n, omega)
  double max_size_excess = 0.0;              ///< max ||(u,rho)(t)|| - 2||initial||
  std::optional<bool> initial_slope_ok;
  std::optional<bool> prediction_agreement_ok;
  double worst_prediction_mismatch = 0.0;
  std::optional<bool> ratio_spread_ok;
  double worst_ratio_spread = 0.0;
  std::optional<bool> persistence_ok;
  double worst_persistence = 0.0;
  int exit_code = kExitPass;
};

/// Solves the FW system from both omega branches of the family for each n,
/// records initial / solver / predicted pair-norm distances, and checks that
/// the separation tracks |sin t| without vanishing in n.
NonuniformReport run_nonuniform(const ExperimentConfig& config);

struct ErrorDecayRow {
  int n = 0;
  double t = 0.0;
  double err_gamma = 0.0;
  double err_s = 0.0;
};

struct ErrorDecayReport {
  std::vector<ErrorDecayRow> rows;
  double t_star = 0.0;  ///< fit time (0.5 when present)
  std::optional<RateFit> gamma_fit;
  std::optional<RateFit> s_fit;
  double gamma_slope_bound = 0.0;
  double s_slope_bound = 0.0;
  std::optional<bool> gamma_ok;
  std::optional<bool> s_ok;
  std::vector<std::pair<int, int>> blowups;
  double max_size_excess = 0.0;
  int exit_code = kExitPass;
};

/// Measures how fast the solver solution converges to the matching family
/// member: pair norms of the difference at indices gamma and s, with
/// log-log slope fits against the expected decay rates.
ErrorDecayReport run_error_decay(const ExperimentConfig& config);

struct AppendixRow {
  int n = 0;
  double gamma = 0.0;
  std::string fn;  ///< "sin" or "cos"
  double normalized_value = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  int block_count = 0;
};

struct AppendixReport {
  std::vector<AppendixRow> rows;
  int bracket_violations = 0;
  bool blocks_ok = true;
  int exit_code = kExitPass;
};

/// Normalized Besov norms of sin(nx), cos(nx) at indices s and s-1, checked
/// strictly inside the closed-form bracket from bound_constants.
AppendixReport run_appendix_bounds(const ExperimentConfig& config);

struct PropertyOutcome {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct PropertiesReport {
  std::vector<PropertyOutcome> outcomes;
  int exit_code = kExitPass;
};

/// Runs the seeded invariant suite: partition of unity, reconstruction,
/// interpolation, embedding, algebra and operator-norm stability, Sobolev
/// equivalence, solver conservation laws, RK4 order, transport checks.
PropertiesReport run_properties(const ExperimentConfig& config);

}  // namespace fwb
