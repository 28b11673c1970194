#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "umbilic/hypersurface.hpp"
#include "umbilic/series.hpp"

namespace umbilic {

// Boundary of the rescaled slice domain: the curve S_t = {w = t^2} cap M,
// scaled by z -> z/t and written in polar form theta -> r(theta, t) e^{i theta}.
struct SliceCurve {
  double t = 0.0;
  std::vector<double> theta;      // uniform grid on [0, 2 pi)
  std::vector<double> r;          // > 0
  std::vector<double> dr_dtheta;  // spectral derivative

  int size() const noexcept { return static_cast<int>(theta.size()); }
  // Point of the rescaled curve and its theta-derivative.
  cplx point(int j) const { return std::polar(r[j], theta[j]); }
  cplx tangent(int j) const { return cplx(dr_dtheta[j], r[j]) * std::polar(1.0, theta[j]); }
};

struct PolarSolverOptions {
  double t_max = 0.3;
  int max_iterations = 50;
  double tolerance = 1e-14;  // on rho / t^2
};

// Root r near 1 of rho(t r e^{i theta}, t^2) = 0. r(theta, 0) = 1.
double solve_r_numeric(const PreparedDefiningFunction& f, double theta, double t,
                       const PolarSolverOptions& options = {});

// N-point samples with spectral dr/dtheta; OpenMP over the angles.
SliceCurve curve_samples(const PreparedDefiningFunction& f, double t, int n,
                         const PolarSolverOptions& options = {});
// Serial reference of curve_samples.
SliceCurve curve_samples_serial(const PreparedDefiningFunction& f, double t, int n,
                                const PolarSolverOptions& options = {});
// Curve from given radius samples on the uniform grid.
SliceCurve curve_from_radius(double t, std::vector<double> r);

// k(theta) t^4 with k(theta) = Re(A e^{-2 i theta}), as a series.
FourierTaylorSeries umbilic_profile(cplx A, int k_max = FourierTaylorSeries::kDefaultModes,
                                    int m_max = FourierTaylorSeries::kDefaultOrder);

// Formal solution r(theta, t) = 1 + sum_m r_m(theta) t^m of
// 1 + rho(t r e^{i theta}, t^2)/t^2 - 1 = 0, order by order.
FourierTaylorSeries solve_r_symbolic(const PreparedDefiningFunction& f,
                                     int k_max = FourierTaylorSeries::kDefaultModes,
                                     int m_max = FourierTaylorSeries::kDefaultOrder);

struct PolarSolution {
  FourierTaylorSeries symbolic;
  std::vector<SliceCurve> numeric;
};

struct LemmaPolarRow {
  double t;
  double max_dev;    // max_theta |r_num - r_sym|
  double remainder;  // max_theta |r_num - 1 - k(theta) t^4|
};

struct LemmaPolarReport {
  int symbolic_order = 0;
  std::vector<LemmaPolarRow> rows;
  double fitted_order = 0.0;            // decay order of `remainder`
  double deviation_order = 0.0;         // decay order of `max_dev`
  double t4_coefficient_error = 0.0;    // symbolic t^4 coefficient vs k(theta)
  double low_order_max = 0.0;           // max |coefficient| at t^1..t^3
};

// Least-squares slope of log v against log t, using only the points with
// v above `noise_floor`. NaN when fewer than three points survive.
double fitted_decay_order(std::span<const double> t, std::span<const double> v,
                          double noise_floor = 1e-13);

LemmaPolarReport lemma_polar_report(const PreparedDefiningFunction& f,
                                    std::span<const double> t_grid, int n,
                                    int symbolic_order = FourierTaylorSeries::kDefaultOrder,
                                    const PolarSolverOptions& options = {});

// d^4 r / dt^4 at t = 0: symmetric 9-point stencil on +-4h combined with
// the same stencil at h/2 by one Richardson step. Odd t-powers cancel.
double fourth_t_derivative_at_zero(const PreparedDefiningFunction& f, double theta,
                                   double h = 0.05, const PolarSolverOptions& options = {});

// CSV "theta,r,dr_dtheta".
void write_csv(std::ostream& out, const SliceCurve& curve);
// CSV "t,max_dev,remainder" followed by "fitted_order=<x>".
void write_csv(std::ostream& out, const LemmaPolarReport& report);

}  // namespace umbilic
