#pragma once

#include <numbers>
#include <stdexcept>

namespace fwb {

/// Uniform collocation grid on [0, 2*pi): x_k = 2*pi*k/N, k = 0..N-1.
/// N must be even and at least 8. Fourier modes live in [-N/2, N/2).
class GridSpec {
 public:
  explicit GridSpec(int n) : n_(n) {
    if (n < 8 || n % 2 != 0) {
      throw std::invalid_argument("GridSpec: N must be even and >= 8");
    }
  }

  int size() const { return n_; }

  double node(int k) const { return 2.0 * std::numbers::pi * k / n_; }

  /// Largest |j| kept by 2/3-rule dealiasing (modes with 3|j| > N are zeroed).
  int dealias_limit() const { return n_ / 3; }

  /// The unpaired mode index j = -N/2.
  int nyquist_mode() const { return -n_ / 2; }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;

 private:
  int n_;
};

}  // namespace fwb
