#include "fwb/periodic_function.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fft_engine.hpp"

namespace fwb {
namespace {

using cplx = std::complex<double>;

int fft_index(int j, int n) { return j >= 0 ? j : j + n; }

// Enforces c_{-j} = conj(c_j) by pairwise averaging; exact for data that is
// already Hermitian. The mean and Nyquist coefficients are projected to the
// real axis.
void symmetrize(std::vector<cplx>& c) {
  const int n = static_cast<int>(c.size());
  c[0] = cplx(c[0].real(), 0.0);
  c[static_cast<size_t>(n / 2)] = cplx(c[static_cast<size_t>(n / 2)].real(), 0.0);
  for (int j = 1; j < n / 2; ++j) {
    const cplx m = 0.5 * (c[static_cast<size_t>(j)] + std::conj(c[static_cast<size_t>(n - j)]));
    c[static_cast<size_t>(j)] = m;
    c[static_cast<size_t>(n - j)] = std::conj(m);
  }
}

void zero_above(std::vector<cplx>& c, int limit) {
  const int n = static_cast<int>(c.size());
  for (int j = limit + 1; j <= n / 2; ++j) {
    c[static_cast<size_t>(fft_index(-j, n))] = 0.0;
    if (j < n / 2) c[static_cast<size_t>(j)] = 0.0;
  }
}

}  // namespace

PeriodicFunction::PeriodicFunction(GridSpec grid)
    : grid_(grid), coeffs_(static_cast<size_t>(grid.size()), cplx(0.0, 0.0)) {}

PeriodicFunction::PeriodicFunction(GridSpec grid, std::vector<cplx> fft_order)
    : grid_(grid), coeffs_(std::move(fft_order)) {
  if (static_cast<int>(coeffs_.size()) != grid_.size()) {
    throw std::invalid_argument("PeriodicFunction: coefficient count must equal N");
  }
  symmetrize(coeffs_);
}

cplx PeriodicFunction::coeff(int j) const {
  const int n = grid_.size();
  if (j < -n / 2 || j >= n / 2) {
    throw std::invalid_argument("PeriodicFunction::coeff: mode outside [-N/2, N/2)");
  }
  return coeffs_[static_cast<size_t>(fft_index(j, n))];
}

double PeriodicFunction::max_abs_coeff() const {
  double m = 0.0;
  for (const cplx& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

bool PeriodicFunction::is_finite() const {
  for (const cplx& c : coeffs_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  }
  return true;
}

PeriodicFunction analyze(std::span<const double> samples, GridSpec grid) {
  const int n = grid.size();
  if (static_cast<int>(samples.size()) != n) {
    throw std::invalid_argument("analyze: sample count must equal grid size");
  }
  std::vector<cplx> in(samples.begin(), samples.end());
  std::vector<cplx> out(static_cast<size_t>(n));
  detail::dft_forward(in, out);
  const double scale = 1.0 / n;
  for (cplx& c : out) c *= scale;
  return PeriodicFunction(grid, std::move(out));
}

std::vector<cplx> synthesize_complex(const PeriodicFunction& f) {
  std::vector<cplx> out(static_cast<size_t>(f.size()));
  detail::dft_backward(f.raw(), out);
  return out;
}

std::vector<double> synthesize(const PeriodicFunction& f) {
  const std::vector<cplx> values = synthesize_complex(f);
  std::vector<double> real(values.size());
  std::transform(values.begin(), values.end(), real.begin(),
                 [](const cplx& v) { return v.real(); });
  return real;
}

PeriodicFunction from_terms(std::span<const TrigTerm> terms, GridSpec grid) {
  const int n = grid.size();
  std::vector<cplx> c(static_cast<size_t>(n), cplx(0.0, 0.0));
  for (const TrigTerm& t : terms) {
    if (t.wavenumber < 0) {
      throw std::invalid_argument("from_terms: wavenumber must be nonnegative");
    }
    if (t.wavenumber >= n / 2) {
      throw ResolutionError("from_terms: wavenumber " + std::to_string(t.wavenumber) +
                            " not representable on N = " + std::to_string(n));
    }
    const cplx rot = std::polar(1.0, t.phase);
    if (t.wavenumber == 0) {
      // +k and -k contributions coincide: a sin(phi) resp. a cos(phi).
      c[0] += t.kind == TrigTerm::Kind::sine ? t.amplitude * std::sin(t.phase)
                                             : t.amplitude * std::cos(t.phase);
    } else {
      const cplx ck = t.kind == TrigTerm::Kind::sine
                          ? t.amplitude * rot / cplx(0.0, 2.0)
                          : 0.5 * t.amplitude * rot;
      c[static_cast<size_t>(t.wavenumber)] += ck;
      c[static_cast<size_t>(n - t.wavenumber)] += std::conj(ck);
    }
  }
  return PeriodicFunction(grid, std::move(c));
}

PeriodicFunction from_terms(std::initializer_list<TrigTerm> terms, GridSpec grid) {
  return from_terms(std::span<const TrigTerm>(terms.begin(), terms.size()), grid);
}

PeriodicFunction derivative(const PeriodicFunction& f) {
  const int n = f.size();
  std::vector<cplx> c(f.raw().begin(), f.raw().end());
  for (int j = -n / 2; j < n / 2; ++j) {
    c[static_cast<size_t>(fft_index(j, n))] *= cplx(0.0, static_cast<double>(j));
  }
  // the Nyquist product is purely imaginary; the constructor projects it to 0
  return PeriodicFunction(f.grid(), std::move(c));
}

PeriodicFunction multiply(const PeriodicFunction& f, const PeriodicFunction& g) {
  if (!(f.grid() == g.grid())) {
    throw std::invalid_argument("multiply: grid mismatch");
  }
  const int n = f.size();
  const int limit = f.grid().dealias_limit();

  std::vector<cplx> fc(f.raw().begin(), f.raw().end());
  std::vector<cplx> gc(g.raw().begin(), g.raw().end());
  zero_above(fc, limit);
  zero_above(gc, limit);

  std::vector<cplx> fv(static_cast<size_t>(n)), gv(static_cast<size_t>(n));
  detail::dft_backward(fc, fv);
  detail::dft_backward(gc, gv);
  for (int k = 0; k < n; ++k) {
    fv[static_cast<size_t>(k)] =
        fv[static_cast<size_t>(k)].real() * gv[static_cast<size_t>(k)].real();
  }
  std::vector<cplx> out(static_cast<size_t>(n));
  detail::dft_forward(fv, out);
  const double scale = 1.0 / n;
  for (cplx& c : out) c *= scale;
  zero_above(out, limit);
  return PeriodicFunction(f.grid(), std::move(out));
}

double lp_norm(const PeriodicFunction& f, double p) {
  if (std::isnan(p) || p < 1.0) {
    throw std::invalid_argument("lp_norm: p must be in [1, inf]");
  }
  const double two_pi = 2.0 * std::numbers::pi;
  if (p == 2.0) {
    double sum = 0.0;
    for (const cplx& c : f.raw()) sum += std::norm(c);
    return std::sqrt(two_pi * sum);
  }
  const std::vector<double> values = synthesize(f);
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
  }
  double sum = 0.0;
  for (double v : values) sum += std::pow(std::abs(v), p);
  return std::pow(sum * two_pi / f.size(), 1.0 / p);
}

PeriodicFunction operator+(const PeriodicFunction& f, const PeriodicFunction& g) {
  if (!(f.grid() == g.grid())) throw std::invalid_argument("operator+: grid mismatch");
  std::vector<cplx> c(f.raw().begin(), f.raw().end());
  for (size_t k = 0; k < c.size(); ++k) c[k] += g.raw()[k];
  return PeriodicFunction(f.grid(), std::move(c));
}

PeriodicFunction operator-(const PeriodicFunction& f, const PeriodicFunction& g) {
  if (!(f.grid() == g.grid())) throw std::invalid_argument("operator-: grid mismatch");
  std::vector<cplx> c(f.raw().begin(), f.raw().end());
  for (size_t k = 0; k < c.size(); ++k) c[k] -= g.raw()[k];
  return PeriodicFunction(f.grid(), std::move(c));
}

PeriodicFunction operator-(const PeriodicFunction& f) { return -1.0 * f; }

PeriodicFunction operator*(double a, const PeriodicFunction& f) {
  std::vector<cplx> c(f.raw().begin(), f.raw().end());
  for (cplx& v : c) v *= a;
  return PeriodicFunction(f.grid(), std::move(c));
}

}  // namespace fwb
