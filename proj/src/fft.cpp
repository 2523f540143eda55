#include "fbbm/fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace fbbm::fft {
namespace {

struct PlanPair {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
};

// Plans are created once per length and reused with fftw_execute_dft on
// caller buffers (FFTW_UNALIGNED), which is thread-safe.
class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [n, p] : plans_) {
      fftw_destroy_plan(p.fwd);
      fftw_destroy_plan(p.bwd);
    }
  }

  const PlanPair& get(int n) {
    std::lock_guard lock(mutex_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second;
    std::vector<cd> a(n), b(n);
    auto* pa = reinterpret_cast<fftw_complex*>(a.data());
    auto* pb = reinterpret_cast<fftw_complex*>(b.data());
    PlanPair p;
    p.fwd = fftw_plan_dft_1d(n, pa, pb, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    p.bwd = fftw_plan_dft_1d(n, pa, pb, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    return plans_.emplace(n, p).first->second;
  }

 private:
  std::mutex mutex_;
  std::map<int, PlanPair> plans_;
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

void run(std::span<const cd> in, std::span<cd> out, bool forward_dir) {
  if (in.size() != out.size()) throw std::invalid_argument("fft: size mismatch");
  const int n = static_cast<int>(in.size());
  const PlanPair& p = cache().get(n);
  // out-of-place plan: copy when the caller aliases
  std::vector<cd> tmp;
  const cd* src = in.data();
  if (src == out.data()) {
    tmp.assign(in.begin(), in.end());
    src = tmp.data();
  }
  auto* i = reinterpret_cast<fftw_complex*>(const_cast<cd*>(src));
  auto* o = reinterpret_cast<fftw_complex*>(out.data());
  fftw_execute_dft(forward_dir ? p.fwd : p.bwd, i, o);
}

}  // namespace

void forward(std::span<const cd> in, std::span<cd> out) { run(in, out, true); }
void backward(std::span<const cd> in, std::span<cd> out) { run(in, out, false); }

}  // namespace fbbm::fft
