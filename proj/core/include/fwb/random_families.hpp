#pragma once

#include <cstdint>
#include <random>

#include "fwb/besov.hpp"

namespace fwb {

/// Derives an independent stream seed from a base seed and an index
/// (splitmix64 finalizer; stable across platforms).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

/// Deterministic standard normals: mt19937_64 (sequence fixed by the
/// standard) plus Box-Muller, so identical seeds give identical draws on
/// every platform.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : gen_(seed) {}
  double next();

 private:
  double uniform01();
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// Random real function with Gaussian coefficients on modes |j| <= max_mode,
/// attenuated by (1 + j^2)^{-decay/2}.
PeriodicFunction random_bandlimited(GridSpec grid, int max_mode, std::uint64_t seed,
                                    double decay = 0.0);

/// Same draw scaled to unit Besov norm at idx.
PeriodicFunction random_unit_besov(GridSpec grid, int max_mode, const BesovIndex& idx,
                                   std::uint64_t seed, double decay = 0.0);

}  // namespace fwb
