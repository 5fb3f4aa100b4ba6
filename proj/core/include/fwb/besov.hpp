#pragma once

#include <limits>
#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "fwb/periodic_function.hpp"

namespace fwb {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Besov index triple (s, p, r): smoothness, integrability, summability.
/// p and r live in [1, inf]; kInf selects the sup/max branches.
struct BesovIndex {
  double s = 0.0;
  double p = 2.0;
  double r = 2.0;

  /// Same (p, r) with smoothness shifted down, as in B^s x B^{s-1} pairs.
  BesovIndex lowered(double ds = 1.0) const { return {s - ds, p, r}; }

  void validate() const;
};

/// Dyadic partition of unity on the frequency line.
///
/// chi is a smooth bump with chi = 1 on [-3/4, 3/4] and support [-4/3, 4/3],
/// realized as chi(xi) = g(4/3 - |xi|) / (g(4/3 - |xi|) + g(|xi| - 3/4)) with
/// g(x) = exp(-1/x) for x > 0 and 0 otherwise. Then
///   phi_{-1} = chi,  phi_0(xi) = chi(xi/2) - chi(xi),  phi_q(xi) = phi_0(2^{-q} xi),
/// so supp phi_q = [3/4 * 2^q, 8/3 * 2^q] with phi_q = 1 on
/// [4/3 * 2^q, 3/2 * 2^q], and sum_{q >= -1} phi_q = 1 telescopically.
///
/// The 0/1 regions are exact in floating point: the power-of-two scalings use
/// ldexp and the bump returns literal 0 and 1 off the transition intervals.
class DyadicPartition {
 public:
  DyadicPartition() = default;
  DyadicPartition(const DyadicPartition&) = delete;
  DyadicPartition& operator=(const DyadicPartition&) = delete;

  double chi(double xi) const;

  /// phi_q evaluated at |xi| (even extension), q >= -1.
  double phi(int q, double xi) const;

  /// Largest q whose support [3/4 * 2^q, ...] reaches modes <= max_mode.
  int q_max(int max_mode) const;

  /// Cached table of phi_q(j) for integer modes 0..max_mode, q = -1..q_max.
  struct BlockTable {
    int max_mode = 0;
    int q_top = -1;
    std::vector<std::vector<double>> w;          // w[q+1][j]
    std::vector<std::pair<int, int>> support;    // inclusive nonzero range per row
  };
  const BlockTable& table(int max_mode) const;

 private:
  mutable std::mutex mutex_;
  mutable std::map<int, BlockTable> cache_;
};

/// Shared partition used by all norm computations.
const DyadicPartition& standard_partition();

/// phi_q of the standard partition at xi.
double phi_eval(int q, double xi);

/// Littlewood-Paley block: coeff(j) -> phi_q(|j|) * coeff(j).
PeriodicFunction dyadic_block(const PeriodicFunction& f, int q);

/// Number of q >= -1 with a nonzero block; 1 or 2 for a pure mode n >= 2.
int block_count(const PeriodicFunction& f);

/// Besov norm
///   ( sum_q (2^{sq} ||Delta_q f||_{L^p})^r )^{1/r},  sup over q for r = inf.
///
/// f must be band-limited below the dealiasing cutoff N/3: energy above it
/// would belong to truncated blocks and silently corrupt the norm, so it
/// raises ResolutionError instead (coefficients up to 1e-12 of the largest
/// one are treated as zero).
double besov_norm(const PeriodicFunction& f, const BesovIndex& idx);

/// Product-space norm ||u||_{B^s_{p,r}} + ||rho||_{B^{s-1}_{p,r}}.
double pair_norm(const PeriodicFunction& u, const PeriodicFunction& rho,
                 const BesovIndex& idx);

}  // namespace fwb
