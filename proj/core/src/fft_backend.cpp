#include "fft_backend.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace ophc::detail {

namespace {

struct PlanDeleter {
  void operator()(fftw_plan_s* plan) const { fftw_destroy_plan(plan); }
};
using PlanPtr = std::unique_ptr<fftw_plan_s, PlanDeleter>;

struct BufferDeleter {
  void operator()(fftw_complex* buf) const { fftw_free(buf); }
};
using BufferPtr = std::unique_ptr<fftw_complex[], BufferDeleter>;

BufferPtr allocate(std::size_t n) {
  auto* raw = fftw_alloc_complex(n);
  if (raw == nullptr) throw std::bad_alloc();
  return BufferPtr(raw);
}

// fftw planning is not thread safe; execution with new-array variants is.
class PlanCache {
 public:
  fftw_plan get(std::size_t n) {
    std::lock_guard lock(mutex_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second.get();
    auto scratch = allocate(n);
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), scratch.get(), scratch.get(), FFTW_BACKWARD,
                                      FFTW_ESTIMATE);
    if (plan == nullptr) throw std::runtime_error("fftw: planning failed");
    plans_.emplace(n, PlanPtr(plan));
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::size_t, PlanPtr> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

}  // namespace

void backward_dft(std::span<cplx> data) {
  if (data.empty()) return;
  const std::size_t n = data.size();
  fftw_plan plan = plan_cache().get(n);
  // std::complex<double> is layout compatible with fftw_complex, but the
  // caller's storage may not carry fftw's alignment, so go through a buffer.
  auto buffer = allocate(n);
  auto* as_cplx = reinterpret_cast<cplx*>(buffer.get());
  std::copy(data.begin(), data.end(), as_cplx);
  fftw_execute_dft(plan, buffer.get(), buffer.get());
  std::copy(as_cplx, as_cplx + n, data.begin());
}

}  // namespace ophc::detail
