#include <doctest.h>

#include <sstream>

#include "support.hpp"
#include "umbilic/errors.hpp"
#include "umbilic/spectral.hpp"
#include "umbilic/stationarity.hpp"

using namespace umbilic;

namespace {
constexpr cplx I{0.0, 1.0};

SliceCurve unit_circle(int n) { return curve_from_radius(1.0, std::vector<double>(n, 1.0)); }

std::vector<cplx> on_curve(const SliceCurve& c, cplx (*fn)(cplx)) {
  std::vector<cplx> v(c.size());
  for (int j = 0; j < c.size(); ++j) v[j] = fn(c.point(j));
  return v;
}

const std::vector<cplx> kProbes{{2.0, 0.0}, {0.0, 2.5}, {-3.0, 0.5}, {1.5, -1.5}};
}  // namespace

TEST_CASE("Pang weight of the sphere is constant") {
  const auto H = PreparedDefiningFunction::heisenberg();
  for (double t : {0.05, 0.1, 0.2}) {
    const SliceCurve curve = curve_samples(H, t, 128);
    const ConformalData cd = theodorsen_solve(curve);
    const PangWeight pw = pang_weight(H, cd, curve);
    CHECK(pw.sign == -1);
    CHECK(pw.imag_leak <= 1e-13);
    for (const cplx& v : pw.inv_a_hat) CHECK(std::abs(v + t * t) <= 1e-15);
    for (double c : pw.c) CHECK(std::abs(c - 1.0) <= 1e-12);
  }
}

TEST_CASE("Pang weight tends to 1 as t -> 0") {
  const auto f = umbilic_model(cplx(0.8, 0.3));
  double prev = 1.0;
  for (double t : {0.2, 0.1, 0.05}) {
    const SliceCurve curve = curve_samples(f, t, 128);
    const PangWeight pw = pang_weight(f, theodorsen_solve(curve), curve);
    double dev = 0.0;
    for (double c : pw.c) dev = std::max(dev, std::abs(c - 1.0));
    CHECK(dev < prev);
    prev = dev;
  }
  CHECK(prev < 1e-4);
}

TEST_CASE("fourier_gamma examples") {
  const int n = 64;
  const auto th = spectral::uniform_grid(n);
  std::vector<double> c(n);
  for (int j = 0; j < n; ++j) c[j] = 1.0 + 0.4 * std::cos(2 * th[j]) + 0.2 * std::sin(3 * th[j]);
  const GammaSpectrum g = fourier_gamma(c);
  CHECK(std::abs(g(0) - 1.0) < 1e-15);
  CHECK(std::abs(g(2) - 0.2) < 1e-15);
  CHECK(std::abs(g(-2) - 0.2) < 1e-15);
  CHECK(std::abs(g(3) - cplx(0.0, -0.1)) < 1e-15);
  CHECK(std::abs(g(1)) < 1e-15);
  CHECK(g(1000) == cplx{});
  CHECK(g.reality_defect < 1e-15);
  CHECK(fourier_gamma(std::vector<double>(n, 1.0))(0) == cplx(1.0));
}

TEST_CASE("sphere moments vanish") {
  const auto H = PreparedDefiningFunction::heisenberg();
  for (double t : {0.05, 0.1, 0.2}) {
    const WeightAndMoments wm = analyze_slice(H, t);
    CHECK(wm.max_moment() <= 1e-12);
    CHECK(wm.mu_W.size() == 8);
  }
}

TEST_CASE("moment kernels: OpenMP equals serial") {
  Rng rng(test::seed());
  const auto f = random_model(rng, {0.4, -0.6});
  const SliceCurve curve = curve_samples(f, 0.15, 128);
  const auto c = w_balanced_weight(f, curve);
  const Moments a = moment_integrals(f, curve, c);
  const Moments b = moment_integrals_serial(f, curve, c);
  CHECK(a.mu_W == b.mu_W);
  CHECK(a.mu_Z == b.mu_Z);
  const std::vector<double> ts{0.05, 0.1};
  const auto scan = moment_scan(f, ts);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const WeightAndMoments one = analyze_slice(f, ts[i]);
    CHECK(scan[i].mu_Z == one.mu_Z);
  }
}

TEST_CASE("moment asymptotics match the symbolic constants") {
  const cplx A(1.0, 0.0);
  const auto f = umbilic_model(A);
  const cplx kz = channel_constant(MomentChannel::z2);
  const cplx kw = channel_constant(MomentChannel::w1);
  CHECK(std::abs(kz - cplx(0.0, -2.0 * M_PI)) < 1e-10);
  CHECK(std::abs(kw - cplx(0.0, M_PI)) < 1e-10);

  PipelineOptions balanced;
  balanced.weight = WeightKind::w_balanced;
  const double t = 0.05;
  const WeightAndMoments wb = analyze_slice(f, t, balanced);
  for (const cplx& v : wb.mu_W) CHECK(std::abs(v) <= 1e-13);
  CHECK(std::abs(wb.mu_Z[1] / std::pow(t, 4) - kz) <= 0.05 * std::abs(kz));

  const WeightAndMoments wp = analyze_slice(f, t);
  CHECK(std::abs(wp.mu_W[0] / std::pow(t, 4) - kw) <= 0.05 * std::abs(kw));
  // Under the Pang weight the Z-moments carry no t^4 signal.
  for (const cplx& v : wp.mu_Z) CHECK(std::abs(v) <= 1e-12);
}

TEST_CASE("w_balanced_weight is real with unit mean") {
  const auto f = umbilic_model(cplx(0.3, 0.4));
  const SliceCurve curve = curve_samples(f, 0.1, 128);
  const auto c = w_balanced_weight(f, curve);
  CHECK(std::abs(spectral::mean(c) - 1.0) < 1e-14);
  CHECK(fourier_gamma(c).reality_defect < 1e-14);
  for (double v : c) CHECK(v > 0.0);
}

TEST_CASE("Cauchy transform and extension witnesses") {
  const SliceCurve circle = unit_circle(64);
  const auto zbar = on_curve(circle, [](cplx z) { return std::conj(z); });
  const auto cube = on_curve(circle, [](cplx z) { return z * z * z; });

  CHECK(std::abs(cauchy_transform(circle, zbar, 2.0) + 0.5) < 1e-14);
  CHECK(std::abs(cauchy_transform(circle, cube, 2.0)) < 1e-14);
  CHECK(std::abs(cauchy_transform(circle, cube, 0.5) - 0.125) < 1e-14);
  CHECK_THROWS_AS(cauchy_transform(circle, cube, 1.01), AccuracyError);

  const ExtensionVerdict nz = extension_test(circle, zbar, 8, kProbes);
  CHECK_FALSE(nz.extendable);
  CHECK(std::abs(nz.moments[0] - 2.0 * M_PI * I) < 1e-13);
  const ExtensionVerdict c3 = extension_test(circle, cube, 8, kProbes);
  CHECK(c3.extendable);
  CHECK(c3.max_moment < 1e-14);
}

TEST_CASE("moment and Cauchy verdicts agree on random boundary data") {
  Rng rng(test::seed());
  std::bernoulli_distribution coin(0.5);
  const auto f = umbilic_model(cplx(0.5, 0.5));
  const SliceCurve curve = curve_samples(f, 0.2, 128);
  int agree = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const bool ext = coin(rng);
    const auto data = random_boundary_data(rng, curve, 6, ext);
    const ExtensionVerdict v = extension_test(curve, data, 12, kProbes);
    if (v.extendable == ext) ++agree;
  }
  CHECK(agree == 100);
}

TEST_CASE("obstruction solver dichotomy") {
  SUBCASE("A = 0 is solvable through t^4") {
    Rng rng(test::seed());
    for (int trial = 0; trial < 10; ++trial) {
      const ObstructionReport rep = obstruction_solver(random_model(rng, 0.0));
      CHECK(std::abs(rep.obstruction) <= 1e-10);
      CHECK(rep.solvable_at(4));
      CHECK(rep.low_order_max <= 1e-10);
    }
  }
  SUBCASE("A != 0 is obstructed") {
    Rng rng(test::seed() + 1);
    for (int trial = 0; trial < 10; ++trial) {
      const cplx A = random_A(rng, 0.1, 1.0);
      const ObstructionReport rep = obstruction_solver(random_model(rng, A));
      CHECK(std::abs(rep.obstruction) > 1e-3 * std::abs(A));
      CHECK_FALSE(rep.solvable_at(4));
      for (int m = 0; m < 4; ++m) CHECK(rep.solvable_at(m));
      CHECK(std::abs(rep.obstruction + 2.0 * M_PI * I * A) < 1e-10);
      CHECK(std::abs(rep.obstruction_w - M_PI * I * A) < 1e-10);
    }
  }
}

TEST_CASE("obstruction is complex-linear in A") {
  const cplx k1 = obstruction_solver(umbilic_model(1.0)).obstruction;
  for (cplx A : {cplx(2.0), cplx(0.0, 1.0), cplx(0.3, 0.4)})
    CHECK(std::abs(obstruction_solver(umbilic_model(A)).obstruction - A * k1) < 1e-10);
  const ObstructionReport heis = obstruction_solver(PreparedDefiningFunction::heisenberg());
  CHECK(heis.obstruction == cplx{});
  CHECK(heis.solvable_orders == std::vector<int>{0, 1, 2, 3, 4});
  std::ostringstream out;
  write_report(out, heis);
  CHECK(out.str().find("solvable_orders = 0,1,2,3,4") != std::string::npos);
  CHECK_THROWS_AS(obstruction_solver(umbilic_model(1.0), 99), DomainError);
}

TEST_CASE("estimate_A recovers the planted coefficient") {
  const auto ts = geometric_grid(0.03, 0.12, 6);
  for (cplx A : {cplx(0.3, 0.4), cplx(-0.7, 0.0)}) {
    const AEstimate e = estimate_A(umbilic_model(A), ts);
    CHECK(std::abs(e.A_hat - A) <= 0.02 * std::abs(A));
  }
  const AEstimate g7 = estimate_A(umbilic_model_with_g7(cplx(0.3, 0.4), 0.5), ts);
  CHECK(std::abs(g7.A_hat - cplx(0.3, 0.4)) <= 0.05 * 0.5);
  const AEstimate zero = estimate_A(PreparedDefiningFunction::heisenberg(), ts);
  CHECK(std::abs(zero.A_hat) <= 1e-6);
  CHECK_THROWS_AS(estimate_A(umbilic_model(1.0), geometric_grid(0.05, 0.1, 3)), DomainError);
}

TEST_CASE("geometric_grid") {
  const auto g = geometric_grid(0.02, 0.2, 3);
  CHECK(g[0] == 0.02);
  CHECK(g[1] == doctest::Approx(std::sqrt(0.004)).epsilon(1e-14));
  CHECK(g[2] == doctest::Approx(0.2).epsilon(1e-14));
  CHECK_THROWS_AS(geometric_grid(0.0, 0.2, 3), DomainError);
}
