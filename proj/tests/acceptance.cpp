// One PASS/FAIL line per acceptance criterion. Tolerances are fixed here.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "umbilic/conformal.hpp"
#include "umbilic/errors.hpp"
#include "umbilic/sampling.hpp"
#include "umbilic/slice_polar.hpp"
#include "umbilic/spectral.hpp"
#include "umbilic/stationarity.hpp"

using namespace umbilic;
using Clock = std::chrono::steady_clock;

namespace {

constexpr cplx kI{0.0, 1.0};

struct Outcome {
  bool pass;
  std::string detail;
};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

// 1: t^1..t^3 vanish, t^4 is Re(A e^{-2i theta}), fast.
Outcome polar_symbolic() {
  const cplx A(1.0, 0.5);
  const auto f = umbilic_model(A);
  const auto t0 = Clock::now();
  const FourierTaylorSeries r = solve_r_symbolic(f);
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  const FourierTaylorSeries k = umbilic_profile(A);
  double low = 0.0;
  double t4 = 0.0;
  for (int kk = -r.k_max(); kk <= r.k_max(); ++kk) {
    for (int m = 1; m <= 3; ++m) low = std::max(low, std::abs(r.coeff(kk, m)));
    t4 = std::max(t4, std::abs(r.coeff(kk, 4) - k.coeff(kk, 4)));
  }
  return {low == 0.0 && t4 <= 1e-12 && secs < 1.0,
          "low-order max " + num(low) + ", t^4 error " + num(t4) + ", " + num(secs) + " s"};
}

// 2: numeric vs symbolic decay orders.
Outcome polar_numeric() {
  const auto ts = geometric_grid(0.02, 0.2, 12);
  constexpr int kM = 6;
  const auto g7 = umbilic_model_with_g7(cplx(1.0, 0.5), 0.5);
  const LemmaPolarReport with_g = lemma_polar_report(g7, ts, 256, kM);
  const LemmaPolarReport pure = lemma_polar_report(umbilic_model(cplx(1.0, 0.5)), ts, 256, 8);
  const bool ok = with_g.deviation_order >= kM + 0.9 && pure.deviation_order >= 8 + 0.9 &&
                  with_g.fitted_order >= 4.9;
  return {ok, "deviation order " + num(with_g.deviation_order) + " (M = 6, g7), " +
                  num(pure.deviation_order) + " (M = 8, h = g = 0); remainder order " +
                  num(with_g.fitted_order)};
}

// 3: the sphere.
Outcome sphere() {
  const auto H = PreparedDefiningFunction::heisenberg();
  double cdev = 0.0;
  double mom = 0.0;
  for (double t : {0.05, 0.1, 0.2}) {
    const WeightAndMoments wm = analyze_slice(H, t);
    for (double c : wm.c_samples) cdev = std::max(cdev, std::abs(c - 1.0));
    mom = std::max(mom, wm.max_moment());
  }
  return {cdev <= 1e-12 && mom <= 1e-12, "max|c-1| " + num(cdev) + ", max|mu| " + num(mom)};
}

// 4: obstruction vanishes iff A = 0, linear in A.
Outcome dichotomy() {
  Rng rng(kDefaultSeed);
  double zero_max = 0.0;
  bool zero_solvable = true;
  for (int i = 0; i < 10; ++i) {
    const ObstructionReport rep = obstruction_solver(random_model(rng, 0.0));
    zero_max = std::max(zero_max, std::abs(rep.obstruction));
    zero_solvable = zero_solvable && rep.solvable_at(4);
  }
  double ratio_min = 1e300;
  for (int i = 0; i < 10; ++i) {
    const cplx A = random_A(rng, 0.1, 1.0);
    const ObstructionReport rep = obstruction_solver(random_model(rng, A));
    ratio_min = std::min(ratio_min, std::abs(rep.obstruction) / std::abs(A));
  }
  const cplx k1 = obstruction_solver(umbilic_model(1.0)).obstruction;
  double lin = 0.0;
  for (cplx A : {cplx(2.0), kI, cplx(0.3, 0.4)})
    lin = std::max(lin, std::abs(obstruction_solver(umbilic_model(A)).obstruction - A * k1));
  const bool ok = zero_max <= 1e-10 && zero_solvable && ratio_min > 1e-3 && lin <= 1e-10;
  return {ok, "A = 0 max " + num(zero_max) + ", min |obs|/|A| " + num(ratio_min) +
                  ", linearity defect " + num(lin)};
}

// 5: floating-point moment limit vs symbolic constant (Z, j = 2, W-balanced weight).
Outcome cross_validation() {
  const auto ts = geometric_grid(0.03, 0.12, 6);
  const AEstimate e = estimate_A(umbilic_model(1.0), ts);
  const cplx sym = obstruction_solver(umbilic_model(1.0)).obstruction;
  const double rel = std::abs(e.C - sym) / std::abs(sym);
  return {rel <= 0.05, "lim mu_Z2/t^4 = " + num(e.C.real()) + " + " + num(e.C.imag()) +
                           "i, symbolic " + num(sym.real()) + " + " + num(sym.imag()) +
                           "i, rel " + num(rel)};
}

// 6: planted A recovered.
Outcome recover_A() {
  const auto ts = geometric_grid(0.03, 0.12, 6);
  double worst = 0.0;
  for (cplx A : {cplx(0.3, 0.4), cplx(-0.7, 0.0)})
    worst = std::max(worst, std::abs(estimate_A(umbilic_model(A), ts).A_hat - A) / std::abs(A));
  const cplx A(0.3, 0.4);
  const double g7 =
      std::abs(estimate_A(umbilic_model_with_g7(A, 0.5), ts).A_hat - A) / std::abs(A);
  return {worst <= 0.02 && g7 <= 0.05,
          "h = g = 0 worst rel " + num(worst) + ", degree-7 g rel " + num(g7)};
}

// 7: moment and Cauchy oracles agree.
Outcome oracles() {
  const std::vector<cplx> probes{{2.0, 0.0}, {0.0, 2.5}, {-3.0, 0.5}, {1.5, -1.5}};
  const SliceCurve circle = curve_from_radius(1.0, std::vector<double>(128, 1.0));
  std::vector<cplx> zbar(128);
  std::vector<cplx> cube(128);
  for (int j = 0; j < 128; ++j) {
    zbar[j] = std::conj(circle.point(j));
    cube[j] = std::pow(circle.point(j), 3);
  }
  const ExtensionVerdict a = extension_test(circle, zbar, 12, probes);
  const ExtensionVerdict b = extension_test(circle, cube, 12, probes);
  const cplx c2 = cauchy_transform(circle, zbar, 2.0);
  const bool witnesses = !a.extendable && b.extendable &&
                         std::abs(a.moments[0] - 2.0 * M_PI * kI) <= 1e-12 &&
                         std::abs(c2 + 0.5) <= 1e-12;

  Rng rng(kDefaultSeed);
  const SliceCurve slice = curve_samples(umbilic_model(cplx(0.5, 0.5)), 0.2, 128);
  int agree = 0;
  for (int i = 0; i < 100; ++i) {
    const bool want = rng() % 2 == 0;
    const auto data = random_boundary_data(rng, i % 2 ? slice : circle, 6, want);
    try {
      agree += extension_test(i % 2 ? slice : circle, data, 12, probes).extendable == want;
    } catch (const OracleMismatch&) {
    }
  }
  return {witnesses && agree == 100,
          std::to_string(agree) + "/100 agree, witnesses " + (witnesses ? "ok" : "bad")};
}

// 8: conformal map checks.
Outcome conformal() {
  const int n = 128;
  const auto th = spectral::uniform_grid(n);
  const ConformalData disc = theodorsen_solve(curve_from_radius(1.0, std::vector<double>(n, 1.0)));
  double dev = 0.0;
  for (int j = 0; j < n; ++j) dev = std::max(dev, std::abs(disc.theta_of_sigma[j] - disc.sigma[j]));
  std::vector<double> r(n);
  for (int j = 0; j < n; ++j) r[j] = 1.0 + 0.05 * std::cos(2.0 * th[j]);
  const SliceCurve curve = curve_from_radius(1.0, r);
  const ConformalData cd = theodorsen_solve(curve);
  const double res = boundary_residual(cd, curve);
  const double leak = negative_frequency_leakage(cd);
  const bool ok = dev <= 1e-14 && res <= 1e-8 && cd.iterations <= 30 && leak <= 1e-10;
  return {ok, "disc deviation " + num(dev) + ", residual " + num(res) + " in " +
                  std::to_string(cd.iterations) + " iterations, leakage " + num(leak)};
}

// 9: Heisenberg automorphisms and Segre varieties.
Outcome heisenberg() {
  Rng rng(kDefaultSeed);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  std::uniform_real_distribution<double> mag(0.5, 2.0);
  const auto H = PreparedDefiningFunction::heisenberg();
  double inv = 0.0;
  double law = 0.0;
  for (int i = 0; i < 100; ++i) {
    const HeisenbergAut m(std::polar(mag(rng), 6.0 * u(rng)), cplx(u(rng), u(rng)), u(rng));
    const cplx z(u(rng), u(rng));
    const Point q = aut_apply(m, {z, std::norm(z) + kI * u(rng)});
    inv = std::max(inv, std::abs(q.w.real() - std::norm(q.z)) /
                            (1.0 + std::norm(q.z) + std::norm(q.w)));

    const Point p{{0.4 * u(rng), 0.4 * u(rng)}, {0.4 * u(rng), 0.4 * u(rng)}};
    const Point mp = aut_apply(m, p);
    const SegreGraph g = segre_graph(H, p, 4);
    const cplx x(0.4 * u(rng), 0.4 * u(rng));
    const Point img = aut_apply(m, {x, g(x)});
    law = std::max(law, std::abs(rho_complexified(H, img.z, img.w, std::conj(mp.z),
                                                  std::conj(mp.w))));
  }
  bool exact = true;
  for (double s : {0.0, 0.25, -0.7}) {
    const SegreGraph g = segre_graph(H, {0.0, s}, 8);
    exact = exact && g.taylor[0] == cplx(-s);
    for (int k = 1; k <= 8; ++k) exact = exact && g.taylor[k] == cplx{};
  }
  return {inv <= 1e-12 && law <= 1e-10 && exact, "invariance " + num(inv) + ", Segre law " +
                                                      num(law) + ", S_(0,s) = {w = -s} " +
                                                      (exact ? "exact" : "inexact")};
}

// 10: finite-difference fourth derivative.
Outcome fourth_derivative() {
  const cplx A(1.0, 0.5);
  const auto f = umbilic_model(A);
  double worst = 0.0;
  for (int j = 0; j < 8; ++j) {
    const double th = j * M_PI / 4.0;
    const double want = 24.0 * (A * std::polar(1.0, -2.0 * th)).real();
    worst = std::max(worst, std::abs(fourth_t_derivative_at_zero(f, th) - want) / std::abs(want));
  }
  return {worst <= 1e-3, "worst relative error " + num(worst) + " at 8 angles"};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"polar expansion t^4 coefficient", polar_symbolic},
      {"numeric-symbolic radius agreement", polar_numeric},
      {"sphere stationarity", sphere},
      {"obstruction dichotomy", dichotomy},
      {"pipeline cross-validation", cross_validation},
      {"estimate_A recovery", recover_A},
      {"moment-Cauchy oracle equivalence", oracles},
      {"conformal map", conformal},
      {"Heisenberg invariances", heisenberg},
      {"fourth t-derivative", fourth_derivative},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << ' ' << index << ' ' << name << ": " << o.detail
              << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
