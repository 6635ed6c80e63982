// Serial reference path vs. OpenMP path for the two heavy kernels.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "pvszeta/kernels.hpp"
#include "pvszeta/quadrature.hpp"

using namespace pvs;

namespace {

template <typename F>
double seconds(F&& f, int reps) {
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / reps;
}

void report(const char* name, double serial, double parallel, Complex a, Complex b) {
  std::printf("%-28s serial %9.4f s  parallel %9.4f s  speedup %5.2fx  |diff| %.1e\n", name, serial, parallel,
              serial / parallel, std::abs(a - b));
}

}  // namespace

int main(int argc, char** argv) {
  const int reps = argc > 1 ? std::atoi(argv[1]) : 3;
  std::printf("threads: %d (PVSZETA_THREADS caps this)\n", thread_limit());

  // |det X|^t e^{-pi |X|^2} on M(2,R).
  const PointIntegrand absdet = [](std::span<const double> x) -> Complex {
    const double det = x[0] * x[3] - x[1] * x[2];
    const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3];
    return std::exp(0.5 * std::log(std::abs(det)) - kPi * r2);
  };
  MonteCarloSpec mc;
  mc.samples = 2000000;
  MonteCarloResult ms, mp;
  mc.exec = Exec::Serial;
  const double t_ms = seconds([&] { ms = integrate_mc_fullspace(absdet, 4, mc); }, reps);
  mc.exec = Exec::Parallel;
  const double t_mp = seconds([&] { mp = integrate_mc_fullspace(absdet, 4, mc); }, reps);
  report("monte-carlo M(2,R), 2e6", t_ms, t_mp, ms.value, mp.value);

  // Ordered cone in three variables with a Vandermonde-type weight.
  const PointIntegrand cone = [](std::span<const double> x) -> Complex {
    double w = 1.0, r2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      r2 += x[i] * x[i];
      for (std::size_t j = i + 1; j < x.size(); ++j) w *= x[i] * x[i] - x[j] * x[j];
    }
    return w * std::exp(-kPi * r2);
  };
  QuadratureSpec q;
  q.target_rel_tol = 1e-10;
  QuadResult cs, cp;
  q.exec = Exec::Serial;
  const double t_cs = seconds([&] { cs = integrate_cone(cone, 3, ConeMode::Ordered, q); }, reps);
  q.exec = Exec::Parallel;
  const double t_cp = seconds([&] { cp = integrate_cone(cone, 3, ConeMode::Ordered, q); }, reps);
  report("ordered cone n=3", t_cs, t_cp, cs.value, cp.value);
  return 0;
}
