#include "fft_internal.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

namespace sburgers::detail {
namespace {

struct PlanKey {
  int dim;
  int n;
  int sign;
  auto operator<=>(const PlanKey&) const = default;
};

// FFTW planner is not thread-safe; executed plans are. Plans are created
// out-of-place with FFTW_UNALIGNED so they can run on any pair of distinct
// buffers via the new-array interface.
class PlanCache {
public:
  fftw_plan get(const TorusGrid& grid, int sign) {
    PlanKey key{grid.dim(), grid.n(), sign};
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;

    const std::size_t total = grid.total_points();
    fftw_complex* a = fftw_alloc_complex(total);
    fftw_complex* b = fftw_alloc_complex(total);
    int dims[3] = {grid.n(), grid.n(), grid.n()};
    fftw_plan plan =
        fftw_plan_dft(grid.dim(), dims, a, b, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(a);
    fftw_free(b);
    plans_.emplace(key, plan);
    return plan;
  }

  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

private:
  std::mutex mutex_;
  std::map<PlanKey, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

fftw_complex* as_fftw(const std::complex<double>* p) {
  return const_cast<fftw_complex*>(reinterpret_cast<const fftw_complex*>(p));
}

}  // namespace

void fft_forward(const TorusGrid& grid, const std::complex<double>* in,
                 std::complex<double>* out) {
  fftw_plan plan = cache().get(grid, FFTW_FORWARD);
  fftw_execute_dft(plan, as_fftw(in), as_fftw(out));
  const double scale = 1.0 / static_cast<double>(grid.total_points());
  for (std::size_t i = 0; i < grid.total_points(); ++i) out[i] *= scale;
}

void fft_backward(const TorusGrid& grid, const std::complex<double>* in,
                  std::complex<double>* out) {
  fftw_plan plan = cache().get(grid, FFTW_BACKWARD);
  fftw_execute_dft(plan, as_fftw(in), as_fftw(out));
}

}  // namespace sburgers::detail
