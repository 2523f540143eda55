// Row-partitioned loops: OpenMP kernels next to the serial reference.
//
// Every kernel in the library writes one output slot per row and reduces
// the per-row results afterwards in index order, so Exec::parallel and
// Exec::serial produce bit-identical results.
#pragma once

#include <span>

namespace fbbm {

enum class Exec { serial, parallel };

/// Default policy for library entry points.
Exec default_exec();
void set_default_exec(Exec e);
/// Sets the OpenMP team size (values < 1 leave it unchanged).
void set_thread_count(int n);

template <class Fn>
void for_each_row(int lo, int hi, Exec exec, Fn&& fn) {
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (int r = lo; r <= hi; ++r) fn(r);
  } else {
    for (int r = lo; r <= hi; ++r) fn(r);
  }
}

/// Fixed-order sum of per-row partials.
template <class T>
T ordered_sum(std::span<const T> parts) {
  T acc{};
  for (const T& p : parts) acc += p;
  return acc;
}

}  // namespace fbbm
