#pragma once

#include <complex>
#include <span>
#include <vector>

#include "fwb/errors.hpp"
#include "fwb/grid.hpp"

namespace fwb {

/// One term of a finite trigonometric sum:
/// amplitude * sin(k x + phase) or amplitude * cos(k x + phase).
struct TrigTerm {
  enum class Kind { sine, cosine };

  double amplitude = 0.0;
  int wavenumber = 0;  ///< k >= 0; must satisfy k < N/2 on the target grid
  double phase = 0.0;  ///< radians
  Kind kind = Kind::cosine;

  static TrigTerm sin(double amplitude, int wavenumber, double phase = 0.0) {
    return {amplitude, wavenumber, phase, Kind::sine};
  }
  static TrigTerm cos(double amplitude, int wavenumber, double phase = 0.0) {
    return {amplitude, wavenumber, phase, Kind::cosine};
  }
};

/// A real 2*pi-periodic function stored as complex Fourier coefficients
/// c_j for j in [-N/2, N/2), with the normalization of
///   u(x) = sum_j c_j e^{ijx},   c_0 = mean value.
///
/// Invariants, enforced at construction:
///   - Hermitian symmetry c_{-j} = conj(c_j) (the function is real-valued);
///   - the unpaired Nyquist coefficient c_{-N/2} is real.
///
/// Values are immutable; every operation returns a new function.
class PeriodicFunction {
 public:
  /// The zero function.
  explicit PeriodicFunction(GridSpec grid);

  /// Builds from coefficients in FFT order (index k holds mode k for
  /// k < N/2 and mode k - N otherwise). Hermitian symmetry is enforced by
  /// pairwise averaging; for already-symmetric data this is exact.
  PeriodicFunction(GridSpec grid, std::vector<std::complex<double>> fft_order);

  const GridSpec& grid() const { return grid_; }
  int size() const { return grid_.size(); }

  /// Coefficient of mode j, for j in [-N/2, N/2).
  std::complex<double> coeff(int j) const;

  /// Coefficients in FFT order.
  std::span<const std::complex<double>> raw() const { return coeffs_; }

  double max_abs_coeff() const;
  bool is_finite() const;

 private:
  GridSpec grid_;
  std::vector<std::complex<double>> coeffs_;
};

/// Discrete analysis: samples at the grid nodes -> Fourier coefficients,
/// with c_j = (1/N) sum_k u(x_k) e^{-ij x_k}. Inverse of synthesize up to
/// round-off. Throws std::invalid_argument on a length mismatch.
PeriodicFunction analyze(std::span<const double> samples, GridSpec grid);

/// Pointwise values at the grid nodes, u(x_k) = sum_j c_j e^{ij x_k}.
std::vector<double> synthesize(const PeriodicFunction& f);

/// Synthesis without the realness projection; the imaginary parts are
/// round-off residue and useful as a diagnostic.
std::vector<std::complex<double>> synthesize_complex(const PeriodicFunction& f);

/// Exact Fourier coefficients of a finite trig sum (no transform round-off):
/// a*sin(kx+phi) contributes c_k = a e^{i phi}/(2i), a*cos(kx+phi)
/// contributes c_k = a e^{i phi}/2, each with the conjugate at -k.
/// Throws ResolutionError if a wavenumber is >= N/2.
PeriodicFunction from_terms(std::span<const TrigTerm> terms, GridSpec grid);
PeriodicFunction from_terms(std::initializer_list<TrigTerm> terms, GridSpec grid);

/// Spectral derivative: c_j -> ij c_j, Nyquist mode zeroed.
PeriodicFunction derivative(const PeriodicFunction& f);

/// Dealiased pointwise product (2/3 rule): both factors are truncated to
/// |j| <= N/3, multiplied on the grid, and the result truncated again.
/// Throws std::invalid_argument on a grid mismatch.
PeriodicFunction multiply(const PeriodicFunction& f, const PeriodicFunction& g);

/// L^p norm with the non-normalized measure on (0, 2*pi).
/// p = 2 is exact via Parseval, p = inf is the max over grid samples, other
/// finite p use trapezoidal quadrature on the grid (spectrally accurate for
/// band-limited integrands). Throws std::invalid_argument for p < 1.
double lp_norm(const PeriodicFunction& f, double p);

// Linear arithmetic (same grid required).
PeriodicFunction operator+(const PeriodicFunction& f, const PeriodicFunction& g);
PeriodicFunction operator-(const PeriodicFunction& f, const PeriodicFunction& g);
PeriodicFunction operator-(const PeriodicFunction& f);
PeriodicFunction operator*(double a, const PeriodicFunction& f);

}  // namespace fwb
