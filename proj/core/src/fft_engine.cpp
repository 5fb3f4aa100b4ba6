#include "fft_engine.hpp"

#include <fftw3.h>

#include <cassert>
#include <map>
#include <mutex>

namespace fwb::detail {
namespace {

// FFTW planning is not thread-safe, and plan creation is expensive relative
// to a single transform, so plans are cached per size. Plans are created
// with FFTW_UNALIGNED so they can execute on arbitrary caller buffers via
// the new-array interface.
struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

const PlanPair& plans_for(int n) {
  static std::map<int, PlanPair> cache;
  std::scoped_lock lock(plan_mutex());
  auto it = cache.find(n);
  if (it == cache.end()) {
    fftw_complex* a = fftw_alloc_complex(static_cast<size_t>(n));
    fftw_complex* b = fftw_alloc_complex(static_cast<size_t>(n));
    PlanPair p;
    p.forward = fftw_plan_dft_1d(n, a, b, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    p.backward = fftw_plan_dft_1d(n, a, b, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(a);
    fftw_free(b);
    it = cache.emplace(n, p).first;
  }
  return it->second;
}

fftw_complex* as_fftw(std::complex<double>* p) {
  return reinterpret_cast<fftw_complex*>(p);
}

}  // namespace

void dft_forward(std::span<const std::complex<double>> in,
                 std::span<std::complex<double>> out) {
  assert(in.size() == out.size() && in.data() != out.data());
  const PlanPair& p = plans_for(static_cast<int>(in.size()));
  fftw_execute_dft(p.forward, as_fftw(const_cast<std::complex<double>*>(in.data())),
                   as_fftw(out.data()));
}

void dft_backward(std::span<const std::complex<double>> in,
                  std::span<std::complex<double>> out) {
  assert(in.size() == out.size() && in.data() != out.data());
  const PlanPair& p = plans_for(static_cast<int>(in.size()));
  fftw_execute_dft(p.backward, as_fftw(const_cast<std::complex<double>*>(in.data())),
                   as_fftw(out.data()));
}

}  // namespace fwb::detail
