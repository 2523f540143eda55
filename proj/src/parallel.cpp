#include "fbbm/parallel.hpp"

#include <omp.h>

#include <atomic>

namespace fbbm {
namespace {
std::atomic<Exec> g_exec{Exec::parallel};
}

Exec default_exec() { return g_exec.load(); }
void set_default_exec(Exec e) { g_exec.store(e); }

void set_thread_count(int n) {
  if (n >= 1) omp_set_num_threads(n);
}

}  // namespace fbbm
