// Serial reference vs OpenMP kernel timings: bench_kernels [repeats]

#include <omp.h>

#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <random>

#include "umbilic/sampling.hpp"
#include "umbilic/slice_polar.hpp"
#include "umbilic/spectral.hpp"
#include "umbilic/stationarity.hpp"

using namespace umbilic;
using Clock = std::chrono::steady_clock;

namespace {

template <class F>
double best_ms(int repeats, F&& run) {
  double best = 1e300;
  for (int i = 0; i < repeats; ++i) {
    const auto t0 = Clock::now();
    run();
    best = std::min(best, std::chrono::duration<double, std::milli>(Clock::now() - t0).count());
  }
  return best;
}

void report(const char* name, double serial, double parallel, bool same) {
  std::cout << std::left << std::setw(22) << name << std::right << std::setw(12) << serial
            << std::setw(12) << parallel << std::setw(10) << serial / parallel << "   "
            << (same ? "identical" : "DIFFERENT") << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  const int repeats = argc > 1 ? std::atoi(argv[1]) : 5;
  Rng rng(kDefaultSeed);
  const PreparedDefiningFunction f = random_model(rng, {0.4, 0.3});

  std::cout << "threads " << omp_get_max_threads() << ", best of " << repeats << " (ms)\n"
            << std::left << std::setw(22) << "kernel" << std::right << std::setw(12) << "serial"
            << std::setw(12) << "openmp" << std::setw(10) << "speedup" << '\n';

  {
    std::uniform_real_distribution<double> u(0.0, 2.0 * M_PI);
    std::vector<double> samples(1024);
    for (double& v : samples) v = std::sin(u(rng));
    const spectral::TrigInterpolant I{std::span<const double>(samples)};
    std::vector<double> xs(4096);
    for (double& x : xs) x = u(rng);
    std::vector<cplx> a;
    std::vector<cplx> b;
    const double s = best_ms(repeats, [&] { a = I.values_serial(xs); });
    const double p = best_ms(repeats, [&] { b = I.values(xs); });
    report("interpolant values", s, p, a == b);
  }
  {
    SliceCurve a;
    SliceCurve b;
    const double s = best_ms(repeats, [&] { a = curve_samples_serial(f, 0.2, 1024); });
    const double p = best_ms(repeats, [&] { b = curve_samples(f, 0.2, 1024); });
    report("curve samples", s, p, a.r == b.r);
  }
  {
    const SliceCurve curve = curve_samples(f, 0.2, 1024);
    const std::vector<double> c(1024, 1.0);
    Moments a;
    Moments b;
    const double s = best_ms(repeats, [&] { a = moment_integrals_serial(f, curve, c, 16); });
    const double p = best_ms(repeats, [&] { b = moment_integrals(f, curve, c, 16); });
    report("moment integrals", s, p, a.mu_W == b.mu_W && a.mu_Z == b.mu_Z);
  }
  return 0;
}
