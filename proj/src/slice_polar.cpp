#include "umbilic/slice_polar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "umbilic/errors.hpp"
#include "umbilic/spectral.hpp"

namespace umbilic {

double solve_r_numeric(const PreparedDefiningFunction& f, double theta, double t,
                       const PolarSolverOptions& options) {
  if (std::abs(t) > options.t_max)
    throw DomainError("solve_r_numeric: |t| exceeds t_max");
  if (t == 0.0) return 1.0;

  const HermitianSeries P0 = f.potential().s_slice(0);
  const HermitianSeries& Pz = f.slice_gradient_z();
  const cplx e = std::polar(1.0, theta);
  const double t2 = t * t;

  double r = 1.0;
  double residual = 0.0;
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    const cplx z = t * r * e;
    residual = 1.0 + P0.evaluate(z, 0.0).real() / t2;
    const double slope = 2.0 * (Pz.evaluate(z, 0.0) * e).real() / t;
    if (slope == 0.0) break;
    const double step = residual / slope;
    r -= step;
    if (!(r > 0.5 && r < 1.5)) break;
    if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon()) {
      residual = 1.0 + P0.evaluate(t * r * e, 0.0).real() / t2;
      if (std::abs(residual) <= options.tolerance) return r;
    }
  }
  std::ostringstream msg;
  msg.precision(17);
  msg << "solve_r_numeric: no convergence at theta=" << theta << " t=" << t << " (r=" << r
      << ", residual=" << residual << ")";
  throw SolverError(msg.str());
}

SliceCurve curve_from_radius(double t, std::vector<double> r) {
  SliceCurve c;
  c.t = t;
  c.theta = spectral::uniform_grid(static_cast<int>(r.size()));
  c.dr_dtheta = spectral::derivative(std::span<const double>(r));
  c.r = std::move(r);
  return c;
}

SliceCurve curve_samples(const PreparedDefiningFunction& f, double t, int n,
                         const PolarSolverOptions& options) {
  const std::vector<double> theta = spectral::uniform_grid(n);
  std::vector<double> r(static_cast<std::size_t>(n));
  // Exceptions must not escape an OpenMP region; the first failure is rethrown.
  std::exception_ptr failure;
#pragma omp parallel for schedule(static)
  for (int j = 0; j < n; ++j) {
    try {
      r[j] = solve_r_numeric(f, theta[j], t, options);
    } catch (...) {
#pragma omp critical(curve_samples_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return curve_from_radius(t, std::move(r));
}

SliceCurve curve_samples_serial(const PreparedDefiningFunction& f, double t, int n,
                                const PolarSolverOptions& options) {
  const std::vector<double> theta = spectral::uniform_grid(n);
  std::vector<double> r(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) r[j] = solve_r_numeric(f, theta[j], t, options);
  return curve_from_radius(t, std::move(r));
}

FourierTaylorSeries umbilic_profile(cplx A, int k_max, int m_max) {
  FourierTaylorSeries k(k_max, m_max, true);
  k.set(-2, 4, 0.5 * A);
  k.set(2, 4, 0.5 * std::conj(A));
  return k;
}

FourierTaylorSeries solve_r_symbolic(const PreparedDefiningFunction& f, int k_max, int m_max) {
  const HermitianSeries P0 = f.potential().s_slice(0);
  FourierTaylorSeries r = FourierTaylorSeries::constant(1.0, k_max, m_max);
  r.mark_real(true);
  // r <- r + Phi(r)/2 with Phi(r) = 1 + P0(t r e^{i theta}, .)/t^2 = 1 - r^2 + ...
  // Phi'(1) = -2 at t = 0 and the correction starts at t^4, so every sweep
  // fixes at least one more order.
  for (int sweep = 0; sweep <= m_max + 1; ++sweep) {
    FourierTaylorSeries phi = polar_substitute(P0, r, -2, k_max, m_max);
    phi.add(0, 0, 1.0);
    FourierTaylorSeries next = r + 0.5 * phi;
    next.mark_real(true);
    const bool settled = (next - r).is_zero();
    r = std::move(next);
    if (settled) break;
  }
  return r;
}

double fitted_decay_order(std::span<const double> t, std::span<const double> v,
                          double noise_floor) {
  double sx = 0.0;
  double sy = 0.0;
  double sxx = 0.0;
  double sxy = 0.0;
  int n = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!(v[i] > noise_floor) || t[i] <= 0.0) continue;
    const double x = std::log(t[i]);
    const double y = std::log(v[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 3) return std::numeric_limits<double>::quiet_NaN();
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

LemmaPolarReport lemma_polar_report(const PreparedDefiningFunction& f,
                                    std::span<const double> t_grid, int n, int symbolic_order,
                                    const PolarSolverOptions& options) {
  const int m_max = std::max(symbolic_order, 4);
  const FourierTaylorSeries sym =
      solve_r_symbolic(f, FourierTaylorSeries::kDefaultModes, m_max).rebounded(
          FourierTaylorSeries::kDefaultModes, symbolic_order);
  const FourierTaylorSeries profile = umbilic_profile(f.A());

  LemmaPolarReport report;
  report.symbolic_order = symbolic_order;
  report.rows.resize(t_grid.size());

  const auto count = static_cast<std::ptrdiff_t>(t_grid.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      const double t = t_grid[i];
      const SliceCurve curve = curve_samples_serial(f, t, n, options);
      double dev = 0.0;
      double rem = 0.0;
      for (int j = 0; j < n; ++j) {
        const double th = curve.theta[j];
        dev = std::max(dev, std::abs(curve.r[j] - sym.evaluate(th, t).real()));
        const double kval = profile.evaluate_order(4, th).real();
        rem = std::max(rem, std::abs(curve.r[j] - 1.0 - kval * std::pow(t, 4)));
      }
      report.rows[i] = {t, dev, rem};
    } catch (...) {
#pragma omp critical(lemma_polar_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<double> ts;
  std::vector<double> devs;
  std::vector<double> rems;
  for (const auto& row : report.rows) {
    ts.push_back(row.t);
    devs.push_back(row.max_dev);
    rems.push_back(row.remainder);
  }
  report.fitted_order = fitted_decay_order(ts, rems);
  report.deviation_order = fitted_decay_order(ts, devs);

  const FourierTaylorSeries full = solve_r_symbolic(f);
  for (int k = -full.k_max(); k <= full.k_max(); ++k) {
    report.t4_coefficient_error =
        std::max(report.t4_coefficient_error, std::abs(full.coeff(k, 4) - profile.coeff(k, 4)));
    for (int m = 1; m <= 3; ++m)
      report.low_order_max = std::max(report.low_order_max, std::abs(full.coeff(k, m)));
  }
  return report;
}

double fourth_t_derivative_at_zero(const PreparedDefiningFunction& f, double theta, double h,
                                   const PolarSolverOptions& options) {
  static constexpr double w[9] = {7.0 / 240,  -2.0 / 5,    169.0 / 60, -122.0 / 15, 91.0 / 8,
                                  -122.0 / 15, 169.0 / 60, -2.0 / 5,    7.0 / 240};
  auto stencil = [&](double step) {
    double sum = 0.0;
    for (int i = -4; i <= 4; ++i) {
      // r(theta, 0) = 1 exactly; subtracting it first keeps the cancellation small.
      sum += w[i + 4] * (solve_r_numeric(f, theta, i * step, options) - 1.0);
    }
    return sum / std::pow(step, 4);
  };
  const double coarse = stencil(h);
  const double fine = stencil(0.5 * h);
  return fine + (fine - coarse) / 15.0;
}

void write_csv(std::ostream& out, const SliceCurve& curve) {
  const auto old = out.precision(17);
  out << "theta,r,dr_dtheta\n";
  for (int j = 0; j < curve.size(); ++j)
    out << curve.theta[j] << ',' << curve.r[j] << ',' << curve.dr_dtheta[j] << '\n';
  out.precision(old);
}

void write_csv(std::ostream& out, const LemmaPolarReport& report) {
  const auto old = out.precision(17);
  out << "t,max_dev,remainder\n";
  for (const auto& row : report.rows)
    out << row.t << ',' << row.max_dev << ',' << row.remainder << '\n';
  out << "fitted_order=" << report.fitted_order << '\n';
  out.precision(old);
}

}  // namespace umbilic
