#include "fwb/random_families.hpp"

#include <cmath>
#include <stdexcept>

namespace fwb {

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double GaussianStream::uniform01() {
  // 53-bit mantissa in (0, 1]; avoids log(0) below.
  return (static_cast<double>(gen_() >> 11) + 1.0) * 0x1.0p-53;
}

double GaussianStream::next() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  const double u = uniform01();
  const double v = uniform01();
  const double radius = std::sqrt(-2.0 * std::log(u));
  const double angle = 2.0 * std::numbers::pi * v;
  spare_ = radius * std::sin(angle);
  have_spare_ = true;
  return radius * std::cos(angle);
}

PeriodicFunction random_bandlimited(GridSpec grid, int max_mode, std::uint64_t seed,
                                    double decay) {
  if (max_mode < 1 || max_mode >= grid.size() / 2) {
    throw std::invalid_argument("random_bandlimited: need 1 <= max_mode < N/2");
  }
  GaussianStream normals(seed);
  const int n = grid.size();
  std::vector<std::complex<double>> c(static_cast<size_t>(n), 0.0);
  c[0] = normals.next();
  for (int j = 1; j <= max_mode; ++j) {
    const double att = std::pow(1.0 + static_cast<double>(j) * j, -0.5 * decay);
    const std::complex<double> v(normals.next(), normals.next());
    c[static_cast<size_t>(j)] = 0.5 * att * v;
    c[static_cast<size_t>(n - j)] = std::conj(c[static_cast<size_t>(j)]);
  }
  return PeriodicFunction(grid, std::move(c));
}

PeriodicFunction random_unit_besov(GridSpec grid, int max_mode, const BesovIndex& idx,
                                   std::uint64_t seed, double decay) {
  const PeriodicFunction f = random_bandlimited(grid, max_mode, seed, decay);
  const double norm = besov_norm(f, idx);
  if (norm <= 0.0) {
    throw std::runtime_error("random_unit_besov: drew the zero function");
  }
  return (1.0 / norm) * f;
}

}  // namespace fwb
