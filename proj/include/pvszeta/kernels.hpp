#pragma once

// Data-parallel building blocks. Every kernel has a serial reference path;
// the OpenMP path evaluates the same items and reduces them in the same fixed
// order, so both paths return bit-identical results.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "pvszeta/common.hpp"

namespace pvs {

enum class Exec { Serial, Parallel };

/// Process-wide worker cap (0 = OpenMP default). Reads PVSZETA_THREADS once.
void set_thread_limit(int threads);
int thread_limit();

/// Pairwise (cascade) summation; the association order depends only on size.
Complex pairwise_sum(std::span<const Complex> values);
double pairwise_sum(std::span<const double> values);

/// out[i] = fn(i) for i in [0, out.size()).
void map_indices_serial(std::span<Complex> out, const std::function<Complex(std::size_t)>& fn);
void map_indices_parallel(std::span<Complex> out, const std::function<Complex(std::size_t)>& fn);

inline void map_indices(Exec exec, std::span<Complex> out, const std::function<Complex(std::size_t)>& fn) {
  if (exec == Exec::Parallel) {
    map_indices_parallel(out, fn);
  } else {
    map_indices_serial(out, fn);
  }
}

/// True when called from inside an active parallel region.
bool in_parallel_region();

}  // namespace pvs
