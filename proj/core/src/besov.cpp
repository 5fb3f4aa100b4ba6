#include "fwb/besov.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fwb {
namespace {

using cplx = std::complex<double>;

constexpr double kGuardRelTol = 1e-12;

double bump(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

// Rejects functions with energy above the dealiasing cutoff and returns the
// largest mode that actually has to be summed over.
int guard_top_octave(const PeriodicFunction& f) {
  const int n = f.size();
  const int limit = f.grid().dealias_limit();
  const double tol = kGuardRelTol * f.max_abs_coeff();
  for (int j = limit + 1; j <= n / 2; ++j) {
    const double mag = j == n / 2 ? std::abs(f.coeff(-j))
                                  : std::max(std::abs(f.coeff(j)), std::abs(f.coeff(-j)));
    if (mag > tol) {
      throw ResolutionError("besov_norm: energy above the dealiasing cutoff N/3 "
                            "(mode " + std::to_string(j) + "); the norm would be truncated");
    }
  }
  return limit;
}

}  // namespace

void BesovIndex::validate() const {
  if (std::isnan(s) || std::isnan(p) || std::isnan(r) || p < 1.0 || r < 1.0) {
    throw std::invalid_argument("BesovIndex: require p >= 1 and r >= 1");
  }
}

double DyadicPartition::chi(double xi) const {
  const double a = std::abs(xi);
  if (a <= 0.75) return 1.0;
  if (a >= 4.0 / 3.0) return 0.0;
  const double up = bump(4.0 / 3.0 - a);
  const double down = bump(a - 0.75);
  return up / (up + down);
}

double DyadicPartition::phi(int q, double xi) const {
  if (q < -1) throw std::invalid_argument("phi: q >= -1 required");
  const double a = std::abs(xi);
  if (q == -1) return chi(a);
  const double scaled = std::ldexp(a, -q);
  return chi(0.5 * scaled) - chi(scaled);
}

int DyadicPartition::q_max(int max_mode) const {
  int q = 0;
  while (std::ldexp(0.75, q + 1) <= max_mode) ++q;
  return q;
}

const DyadicPartition::BlockTable& DyadicPartition::table(int max_mode) const {
  std::scoped_lock lock(mutex_);
  auto it = cache_.find(max_mode);
  if (it != cache_.end()) return it->second;

  BlockTable tab;
  tab.max_mode = max_mode;
  tab.q_top = q_max(max_mode);
  tab.w.resize(static_cast<size_t>(tab.q_top + 2));
  tab.support.resize(static_cast<size_t>(tab.q_top + 2));
  for (int q = -1; q <= tab.q_top; ++q) {
    std::vector<double>& row = tab.w[static_cast<size_t>(q + 1)];
    row.resize(static_cast<size_t>(max_mode + 1));
    int lo = max_mode + 1, hi = -1;
    for (int j = 0; j <= max_mode; ++j) {
      const double v = phi(q, static_cast<double>(j));
      row[static_cast<size_t>(j)] = v;
      if (v != 0.0) {
        lo = std::min(lo, j);
        hi = std::max(hi, j);
      }
    }
    tab.support[static_cast<size_t>(q + 1)] = {lo, hi};
  }
  return cache_.emplace(max_mode, std::move(tab)).first->second;
}

const DyadicPartition& standard_partition() {
  static const DyadicPartition partition;
  return partition;
}

double phi_eval(int q, double xi) { return standard_partition().phi(q, xi); }

PeriodicFunction dyadic_block(const PeriodicFunction& f, int q) {
  const DyadicPartition& part = standard_partition();
  const int n = f.size();
  std::vector<cplx> c(static_cast<size_t>(n));
  for (int j = -n / 2; j < n / 2; ++j) {
    const size_t k = static_cast<size_t>(j >= 0 ? j : j + n);
    c[k] = part.phi(q, static_cast<double>(std::abs(j))) * f.raw()[k];
  }
  return PeriodicFunction(f.grid(), std::move(c));
}

int block_count(const PeriodicFunction& f) {
  const DyadicPartition& part = standard_partition();
  const int n = f.size();
  const int top = part.q_max(n / 2);
  int count = 0;
  for (int q = -1; q <= top; ++q) {
    for (int j = -n / 2; j < n / 2; ++j) {
      const size_t k = static_cast<size_t>(j >= 0 ? j : j + n);
      if (f.raw()[k] != cplx(0.0, 0.0) &&
          part.phi(q, static_cast<double>(std::abs(j))) != 0.0) {
        ++count;
        break;
      }
    }
  }
  return count;
}

double besov_norm(const PeriodicFunction& f, const BesovIndex& idx) {
  idx.validate();
  const int limit = guard_top_octave(f);
  const DyadicPartition& part = standard_partition();
  const DyadicPartition::BlockTable& tab = part.table(limit);
  const int n = f.size();
  const double two_pi = 2.0 * std::numbers::pi;

  const bool sup_norm = std::isinf(idx.r);
  double acc = 0.0;
  for (int q = -1; q <= tab.q_top; ++q) {
    const auto [lo, hi] = tab.support[static_cast<size_t>(q + 1)];
    if (lo > hi) continue;
    const std::vector<double>& row = tab.w[static_cast<size_t>(q + 1)];

    double block_lp;
    if (idx.p == 2.0) {
      // Parseval on the block, modes above the cutoff verified zero.
      double sum = 0.0;
      for (int j = lo; j <= hi; ++j) {
        const double w = row[static_cast<size_t>(j)];
        if (w == 0.0) continue;
        const double e = j == 0 ? std::norm(f.coeff(0))
                                : std::norm(f.coeff(j)) + std::norm(f.coeff(-j));
        sum += w * w * e;
      }
      block_lp = std::sqrt(two_pi * sum);
    } else {
      std::vector<cplx> c(static_cast<size_t>(n), cplx(0.0, 0.0));
      for (int j = lo; j <= hi; ++j) {
        const double w = row[static_cast<size_t>(j)];
        if (w == 0.0) continue;
        c[static_cast<size_t>(j)] = w * f.coeff(j);
        if (j > 0) c[static_cast<size_t>(n - j)] = w * f.coeff(-j);
      }
      block_lp = lp_norm(PeriodicFunction(f.grid(), std::move(c)), idx.p);
    }

    const double term = std::exp2(idx.s * q) * block_lp;
    if (sup_norm) {
      acc = std::max(acc, term);
    } else if (idx.r == 2.0) {
      acc += term * term;
    } else if (term > 0.0) {
      acc += std::pow(term, idx.r);
    }
  }
  if (sup_norm) return acc;
  return idx.r == 2.0 ? std::sqrt(acc) : std::pow(acc, 1.0 / idx.r);
}

double pair_norm(const PeriodicFunction& u, const PeriodicFunction& rho,
                 const BesovIndex& idx) {
  if (!(u.grid() == rho.grid())) {
    throw std::invalid_argument("pair_norm: grid mismatch");
  }
  return besov_norm(u, idx) + besov_norm(rho, idx.lowered());
}

}  // namespace fwb
