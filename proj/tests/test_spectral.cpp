#include <doctest.h>

#include "support.hpp"
#include "umbilic/spectral.hpp"

using namespace umbilic;
namespace sp = umbilic::spectral;

namespace {
double max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}
}  // namespace

TEST_CASE("frequency convention") {
  CHECK(sp::frequency(0, 8) == 0);
  CHECK(sp::frequency(3, 8) == 3);
  CHECK(sp::frequency(4, 8) == -4);
  CHECK(sp::frequency(7, 8) == -1);
  CHECK(sp::frequency(2, 5) == 2);
  CHECK(sp::frequency(3, 5) == -2);
}

TEST_CASE("FFT agrees with the direct DFT") {
  Rng rng(test::seed());
  std::normal_distribution<double> nd;
  for (int n : {8, 12, 64, 256}) {
    std::vector<cplx> x(static_cast<std::size_t>(n));
    for (cplx& v : x) v = {nd(rng), nd(rng)};
    CHECK(max_diff(sp::fourier_coefficients(x), sp::reference::dft(x)) < 1e-14);
    CHECK(max_diff(sp::synthesize(sp::fourier_coefficients(x)), x) < 1e-13);
  }
}

TEST_CASE("spectral derivative and conjugate of trigonometric polynomials") {
  const int n = 64;
  const auto th = sp::uniform_grid(n);
  std::vector<double> f(n);
  std::vector<double> df(n);
  std::vector<double> hf(n);
  for (int j = 0; j < n; ++j) {
    f[j] = 1.0 + std::cos(3 * th[j]) + 0.5 * std::sin(5 * th[j]);
    df[j] = -3 * std::sin(3 * th[j]) + 2.5 * std::cos(5 * th[j]);
    // H cos = sin, H sin = -cos.
    hf[j] = std::sin(3 * th[j]) - 0.5 * std::cos(5 * th[j]);
  }
  const auto d = sp::derivative(std::span<const double>(f));
  const auto h = sp::conjugate(f);
  for (int j = 0; j < n; ++j) {
    CHECK(std::abs(d[j] - df[j]) < 1e-12);
    CHECK(std::abs(h[j] - hf[j]) < 1e-14);
  }
  CHECK(std::abs(sp::mean(f) - 1.0) < 1e-15);
}

TEST_CASE("f + iHf extends holomorphically") {
  const int n = 128;
  const auto th = sp::uniform_grid(n);
  std::vector<double> f(n);
  for (int j = 0; j < n; ++j) f[j] = std::log(1.0 + 0.1 * std::cos(2 * th[j]));
  const auto h = sp::conjugate(f);
  std::vector<cplx> g(n);
  for (int j = 0; j < n; ++j) g[j] = {f[j], h[j]};
  const auto c = sp::fourier_coefficients(g);
  for (int i = 0; i < n; ++i)
    if (sp::frequency(i, n) < 0) CHECK(std::abs(c[i]) < 1e-15);
}

TEST_CASE("periodic integral is exact for trigonometric polynomials") {
  const int n = 32;
  const auto th = sp::uniform_grid(n);
  std::vector<cplx> f(n);
  for (int j = 0; j < n; ++j) f[j] = 2.0 + std::polar(1.0, 7 * th[j]);
  CHECK(std::abs(sp::periodic_integral(f) - 4.0 * M_PI) < 1e-13);
}

TEST_CASE("trigonometric interpolant") {
  const int n = 16;
  const auto th = sp::uniform_grid(n);
  std::vector<double> f(n);
  for (int j = 0; j < n; ++j) f[j] = std::cos(2 * th[j]) + 0.3 * std::sin(5 * th[j]) + std::cos(8 * th[j]);
  const sp::TrigInterpolant I{std::span<const double>(f)};
  for (int j = 0; j < n; ++j) CHECK(std::abs(I.value(th[j]) - f[j]) < 1e-14);
  // Real data interpolates to real values, also through the Nyquist mode.
  for (double x : {0.1, 1.3, 2.9, 5.5}) {
    const cplx v = I.value(x);
    CHECK(std::abs(v.imag()) < 1e-14);
    CHECK(std::abs(v.real() - (std::cos(2 * x) + 0.3 * std::sin(5 * x) + std::cos(8 * x))) < 1e-13);
    CHECK(std::abs(I.slope(x).real() - (-2 * std::sin(2 * x) + 1.5 * std::cos(5 * x))) < 1e-13);
  }
}

TEST_CASE("interpolant kernel matches its serial reference bit for bit") {
  Rng rng(test::seed());
  std::uniform_real_distribution<double> u(0.0, 2.0 * M_PI);
  std::vector<double> f(256);
  for (double& v : f) v = u(rng);
  const sp::TrigInterpolant I{std::span<const double>(f)};
  std::vector<double> xs(1000);
  for (double& x : xs) x = u(rng);
  const auto a = I.values(xs);
  const auto b = I.values_serial(xs);
  CHECK(a == b);
}

TEST_CASE("uniform_grid rejects empty grids") {
  CHECK_THROWS(sp::uniform_grid(0));
}
