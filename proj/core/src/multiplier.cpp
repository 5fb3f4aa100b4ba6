#include "fwb/multiplier.hpp"

#include <algorithm>
#include <stdexcept>

#include "fwb/random_families.hpp"

namespace fwb {

using cplx = std::complex<double>;

Multiplier Multiplier::identity() {
  return Multiplier([](int) { return cplx(1.0, 0.0); });
}

Multiplier Multiplier::d_dx() {
  return Multiplier([](int j) { return cplx(0.0, static_cast<double>(j)); });
}

Multiplier Multiplier::inverse_helmholtz_dx() {
  return Multiplier([](int j) {
    const double jj = static_cast<double>(j);
    return cplx(0.0, jj / (1.0 + jj * jj));
  });
}

PeriodicFunction apply_multiplier(const PeriodicFunction& f, const Multiplier& m) {
  const int n = f.size();
  std::vector<cplx> c(static_cast<size_t>(n));
  for (int j = -n / 2; j < n / 2; ++j) {
    const size_t k = static_cast<size_t>(j >= 0 ? j : j + n);
    c[k] = m.symbol(j) * f.raw()[k];
  }
  return PeriodicFunction(f.grid(), std::move(c));
}

PeriodicFunction inverse_helmholtz_dx(const PeriodicFunction& f) {
  return apply_multiplier(f, Multiplier::inverse_helmholtz_dx());
}

double operator_ratio(const Multiplier& m, const BesovIndex& from_idx,
                      const BesovIndex& to_idx, int trials, GridSpec grid,
                      std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("operator_ratio: trials >= 1 required");
  const int max_mode = grid.size() / 4;
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const PeriodicFunction h =
        random_unit_besov(grid, max_mode, from_idx, derive_seed(seed, static_cast<std::uint64_t>(t)));
    const double num = besov_norm(apply_multiplier(h, m), to_idx);
    const double den = besov_norm(h, from_idx);
    worst = std::max(worst, num / den);
  }
  return worst;
}

}  // namespace fwb
