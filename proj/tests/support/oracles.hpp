#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <span>
#include <vector>

#include "fwb/periodic_function.hpp"

// Test-side oracles, kept independent of the library's transform path.
namespace oracles {

// Direct O(N^2) analysis sum, c_j = (1/N) sum_k u(x_k) e^{-ij x_k}.
inline std::complex<double> naive_coeff(std::span<const double> samples, int j) {
  const int n = static_cast<int>(samples.size());
  std::complex<double> acc(0.0, 0.0);
  for (int k = 0; k < n; ++k) {
    const double angle = -2.0 * std::numbers::pi * j * k / n;
    acc += samples[static_cast<size_t>(k)] *
           std::complex<double>(std::cos(angle), std::sin(angle));
  }
  return acc / static_cast<double>(n);
}

inline std::vector<double> sample(const fwb::GridSpec& grid,
                                  const std::function<double(double)>& fn) {
  std::vector<double> out(static_cast<size_t>(grid.size()));
  for (int k = 0; k < grid.size(); ++k) out[static_cast<size_t>(k)] = fn(grid.node(k));
  return out;
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

inline double max_coeff_diff(const fwb::PeriodicFunction& a, const fwb::PeriodicFunction& b) {
  double m = 0.0;
  for (size_t k = 0; k < a.raw().size(); ++k) m = std::max(m, std::abs(a.raw()[k] - b.raw()[k]));
  return m;
}

inline double sup_diff(const fwb::PeriodicFunction& a, const fwb::PeriodicFunction& b) {
  const std::vector<double> va = fwb::synthesize(a);
  const std::vector<double> vb = fwb::synthesize(b);
  return max_abs_diff(va, vb);
}

// Deterministic rough-and-ready sample noise for round-trip tests.
inline std::vector<double> random_samples(const fwb::GridSpec& grid, unsigned seed) {
  std::mt19937 gen(seed);
  std::vector<double> out(static_cast<size_t>(grid.size()));
  for (double& v : out) {
    v = static_cast<double>(gen()) / static_cast<double>(std::mt19937::max()) - 0.5;
  }
  return out;
}

}  // namespace oracles
