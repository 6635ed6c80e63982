#include "pvszeta/kernels.hpp"

#include <omp.h>

#include <atomic>
#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>

namespace pvs {

namespace {

std::atomic<int> g_thread_limit{-1};

template <typename T>
T pairwise_impl(std::span<const T> v) {
  if (v.size() <= 8) {
    T acc{};
    for (const T& x : v) acc += x;
    return acc;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_impl(v.first(half)) + pairwise_impl(v.subspan(half));
}

}  // namespace

void set_thread_limit(int threads) { g_thread_limit = threads < 0 ? 0 : threads; }

int thread_limit() {
  int v = g_thread_limit.load();
  if (v < 0) {
    v = 0;
    if (const char* env = std::getenv("PVSZETA_THREADS")) v = std::max(0, std::atoi(env));
    g_thread_limit = v;
  }
  return v;
}

Complex pairwise_sum(std::span<const Complex> values) { return pairwise_impl(values); }
double pairwise_sum(std::span<const double> values) { return pairwise_impl(values); }

bool in_parallel_region() { return omp_in_parallel() != 0; }

void map_indices_serial(std::span<Complex> out, const std::function<Complex(std::size_t)>& fn) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = fn(i);
}

void map_indices_parallel(std::span<Complex> out, const std::function<Complex(std::size_t)>& fn) {
  // Nested regions and tiny batches fall back to the serial path.
  if (out.size() < 16 || in_parallel_region()) {
    map_indices_serial(out, fn);
    return;
  }
  const int limit = thread_limit();
  const int threads = limit > 0 ? limit : omp_get_max_threads();
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto n = static_cast<long long>(out.size());
#pragma omp parallel for schedule(dynamic, 4) num_threads(threads)
  for (long long i = 0; i < n; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace pvs
