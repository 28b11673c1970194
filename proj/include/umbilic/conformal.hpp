#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "umbilic/slice_polar.hpp"

namespace umbilic {

// Boundary data of the Riemann map R_t of the unit disc onto the slice
// domain bounded by t r(theta) e^{i theta}, with R_t(0) = 0 and R_t'(0) > 0.
struct ConformalData {
  double t = 0.0;
  std::vector<double> sigma;           // uniform grid
  std::vector<double> theta_of_sigma;  // boundary correspondence
  std::vector<double> dtheta_dsigma;
  std::vector<cplx> boundary_R;        // R_t(e^{i sigma}), unscaled coordinates
  std::vector<cplx> boundary_dR;       // R_t'(e^{i sigma})
  double capacity = 0.0;               // R_t'(0) = t exp(mean over sigma of log r(theta(sigma)))
  int iterations = 0;
  double relaxation = 1.0;
  double last_update = 0.0;

  int size() const noexcept { return static_cast<int>(sigma.size()); }
};

struct TheodorsenOptions {
  double tolerance = 1e-13;
  int max_iterations = 200;
  double relaxation = 1.0;
  double fallback_relaxation = 0.5;
};

// Fixed point of theta(sigma) = sigma + H[log r(theta(sigma))], H the
// periodic conjugation operator. Requires t > 0, r > 0 and
// max |d log r / d theta| < 1.
ConformalData theodorsen_solve(const SliceCurve& curve, const TheodorsenOptions& options = {});

// R_t'(e^{i sigma}) = (d/d sigma R_t(e^{i sigma})) / (i e^{i sigma}).
std::vector<cplx> boundary_derivative(const ConformalData& cd);

// sigma with theta(sigma) = theta, to 1e-12.
double invert_correspondence(const ConformalData& cd, double theta);
std::vector<double> invert_correspondence(const ConformalData& cd, std::span<const double> thetas);

// max over sigma of | |R| - t r(arg R) |: distance of the mapped circle from
// the target curve, measured radially.
double boundary_residual(const ConformalData& cd, const SliceCurve& curve);

// Largest negative-frequency Fourier coefficient of R_t(e^{i sigma}),
// relative to the largest coefficient overall.
double negative_frequency_leakage(const ConformalData& cd);
// |zero-mode coefficient| of R_t(e^{i sigma}), i.e. |R_t(0)|.
double center_defect(const ConformalData& cd);

// CSV "sigma,theta,Re_R,Im_R,Re_dR,Im_dR".
void write_csv(std::ostream& out, const ConformalData& cd);

}  // namespace umbilic
