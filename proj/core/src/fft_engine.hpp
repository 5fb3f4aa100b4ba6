#pragma once

#include <complex>
#include <span>

namespace fwb::detail {

/// Unnormalized forward DFT, out_j = sum_k in_k e^{-2 pi i jk/N}.
/// in and out must be distinct buffers of the same length.
void dft_forward(std::span<const std::complex<double>> in,
                 std::span<std::complex<double>> out);

/// Unnormalized backward DFT, out_k = sum_j in_j e^{+2 pi i jk/N}.
void dft_backward(std::span<const std::complex<double>> in,
                  std::span<std::complex<double>> out);

}  // namespace fwb::detail
