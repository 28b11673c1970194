#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "umbilic/sampling.hpp"
#include "umbilic/series.hpp"

namespace test {

using umbilic::cplx;

// UMBILIC_TEST_SEED overrides the default seed of the property suites.
inline std::uint64_t seed() {
  if (const char* s = std::getenv("UMBILIC_TEST_SEED")) return std::strtoull(s, nullptr, 10);
  return umbilic::kDefaultSeed;
}

inline double coeff_diff(const umbilic::FourierTaylorSeries& x,
                         const umbilic::FourierTaylorSeries& y) {
  const int K = std::max(x.k_max(), y.k_max());
  const int M = std::max(x.m_max(), y.m_max());
  double d = 0.0;
  for (int k = -K; k <= K; ++k)
    for (int m = 0; m <= M; ++m) d = std::max(d, std::abs(x.coeff(k, m) - y.coeff(k, m)));
  return d;
}

// Random series with c_{k,m} uniform in the unit box for |k| <= k_fill.
inline umbilic::FourierTaylorSeries random_series(umbilic::Rng& rng, int k_fill, int m_fill,
                                                  bool real, int k_max = 16, int m_max = 8) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  umbilic::FourierTaylorSeries x(k_max, m_max, real);
  for (int m = 0; m <= m_fill; ++m)
    for (int k = real ? 0 : -k_fill; k <= k_fill; ++k) {
      cplx c(u(rng), u(rng));
      if (real && k == 0) c = c.real();
      x.set(k, m, c);
      if (real) x.set(-k, m, std::conj(c));
    }
  return x;
}

inline std::string data_path(const std::string& name) {
  return std::string(UMBILIC_TEST_DATA_DIR) + "/" + name;
}

}  // namespace test
