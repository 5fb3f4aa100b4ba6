#pragma once

#include <complex>
#include <cstdint>
#include <functional>

#include "fwb/besov.hpp"

namespace fwb {

/// Fourier multiplier acting as coeff(j) -> symbol(j) * coeff(j).
/// Contract: symbol(-j) == conj(symbol(j)), so real functions map to real
/// functions.
class Multiplier {
 public:
  using Symbol = std::function<std::complex<double>(int)>;

  explicit Multiplier(Symbol symbol) : symbol_(std::move(symbol)) {}

  std::complex<double> symbol(int j) const { return symbol_(j); }

  static Multiplier identity();
  /// d/dx, symbol ij.
  static Multiplier d_dx();
  /// Lambda^{-1} d/dx with Lambda = 1 - d^2/dx^2, symbol ij/(1 + j^2).
  static Multiplier inverse_helmholtz_dx();

 private:
  Symbol symbol_;
};

PeriodicFunction apply_multiplier(const PeriodicFunction& f, const Multiplier& m);

/// Convenience for the FW nonlocal term; the mean mode maps to zero.
PeriodicFunction inverse_helmholtz_dx(const PeriodicFunction& f);

/// Empirical operator norm: max over `trials` seeded random band-limited
/// functions h (modes <= N/4, unit from-norm) of
///   besov_norm(m h, to_idx) / besov_norm(h, from_idx).
/// Continuity constants between Besov indices are estimated this way,
/// never asserted a priori.
double operator_ratio(const Multiplier& m, const BesovIndex& from_idx,
                      const BesovIndex& to_idx, int trials, GridSpec grid,
                      std::uint64_t seed);

}  // namespace fwb
