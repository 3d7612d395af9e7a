#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <utility>

namespace moyalkit::detail {
namespace {

struct FftwFree {
  void operator()(fftw_complex* p) const noexcept { fftw_free(p); }
};
using AlignedBuffer = std::unique_ptr<fftw_complex[], FftwFree>;

AlignedBuffer allocate(std::size_t n) {
  return AlignedBuffer(fftw_alloc_complex(n));
}

// The FFTW planner is not thread-safe; execution of an existing plan on new
// arrays is. Plans live for the process lifetime.
class PlanCache {
 public:
  fftw_plan get(std::size_t n, FftSign sign) {
    std::lock_guard lock(mutex_);
    const auto key = std::make_pair(n, sign == FftSign::Plus);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    AlignedBuffer in = allocate(n);
    AlignedBuffer out = allocate(n);
    fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), in.get(), out.get(),
                                      sign == FftSign::Plus ? FFTW_BACKWARD : FFTW_FORWARD,
                                      FFTW_ESTIMATE);
    plans_.emplace(key, plan);
    return plan;
  }

  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<std::size_t, bool>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
  static PlanCache cache;
  return cache;
}

}  // namespace

void dft_lines(std::vector<Complex>& data, const std::array<std::size_t, 3>& extents,
               std::size_t rank, std::size_t axis, FftSign sign) {
  const std::size_t n = extents[axis];
  std::size_t stride = 1;
  for (std::size_t b = axis + 1; b < rank; ++b) stride *= extents[b];
  std::size_t outer = 1;
  for (std::size_t b = 0; b < axis; ++b) outer *= extents[b];

  fftw_plan plan = plan_cache().get(n, sign);
  AlignedBuffer in = allocate(n);
  AlignedBuffer out = allocate(n);
  auto* in_c = reinterpret_cast<Complex*>(in.get());
  auto* out_c = reinterpret_cast<Complex*>(out.get());

  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t s = 0; s < stride; ++s) {
      const std::size_t base = o * n * stride + s;
      for (std::size_t j = 0; j < n; ++j) in_c[j] = data[base + j * stride];
      fftw_execute_dft(plan, in.get(), out.get());
      for (std::size_t j = 0; j < n; ++j) data[base + j * stride] = out_c[j];
    }
  }
}

}  // namespace moyalkit::detail
