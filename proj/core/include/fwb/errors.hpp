#pragma once

#include <stdexcept>
#include <string>

namespace fwb {

/// Thrown when a request exceeds what the grid can represent without
/// aliasing or truncation: a wavenumber at or above N/2, spectral energy
/// above the dealiasing cutoff N/3 where a norm would be silently wrong,
/// or an oscillating family whose residual modes do not fit.
class ResolutionError : public std::runtime_error {
 public:
  explicit ResolutionError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fwb
