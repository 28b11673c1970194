#include "umbilic/conformal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "umbilic/errors.hpp"
#include "umbilic/spectral.hpp"

namespace umbilic {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

struct IterationResult {
  std::vector<double> theta;
  int iterations = 0;
  double update = 0.0;
  bool converged = false;
};

IterationResult iterate(const spectral::TrigInterpolant& log_r, const std::vector<double>& sigma,
                        const TheodorsenOptions& options, double omega) {
  const int n = static_cast<int>(sigma.size());
  IterationResult res;
  res.theta = sigma;
  double previous = std::numeric_limits<double>::infinity();
  int growth = 0;
  for (int it = 1; it <= options.max_iterations; ++it) {
    const std::vector<cplx> lr = log_r.values(res.theta);
    std::vector<double> lr_real(n);
    for (int j = 0; j < n; ++j) lr_real[j] = lr[j].real();
    const std::vector<double> h = spectral::conjugate(lr_real);
    double update = 0.0;
    for (int j = 0; j < n; ++j) {
      const double next = (1.0 - omega) * res.theta[j] + omega * (sigma[j] + h[j]);
      update = std::max(update, std::abs(next - res.theta[j]));
      res.theta[j] = next;
    }
    res.iterations = it;
    res.update = update;
    if (!std::isfinite(update)) return res;
    if (update < options.tolerance) {
      res.converged = true;
      return res;
    }
    growth = update > previous ? growth + 1 : 0;
    if (growth >= 3) return res;
    previous = update;
  }
  return res;
}

}  // namespace

ConformalData theodorsen_solve(const SliceCurve& curve, const TheodorsenOptions& options) {
  const int n = curve.size();
  if (n < 4) throw DomainError("theodorsen_solve: too few samples");
  if (!(curve.t > 0.0)) throw DomainError("theodorsen_solve: t must be positive");
  std::vector<double> log_r(n);
  for (int j = 0; j < n; ++j) {
    if (!(curve.r[j] > 0.0)) throw MappingError("theodorsen_solve: curve is not star-shaped");
    log_r[j] = std::log(curve.r[j]);
  }
  double steep = 0.0;
  for (int j = 0; j < n; ++j) steep = std::max(steep, std::abs(curve.dr_dtheta[j] / curve.r[j]));
  if (steep >= 1.0)
    throw MappingError("theodorsen_solve: |d log r/d theta| >= 1, contraction not guaranteed");

  const spectral::TrigInterpolant interp{std::span<const double>(log_r)};
  const std::vector<double> sigma = spectral::uniform_grid(n);

  double omega = options.relaxation;
  IterationResult res = iterate(interp, sigma, options, omega);
  if (!res.converged && options.fallback_relaxation != omega) {
    omega = options.fallback_relaxation;
    res = iterate(interp, sigma, options, omega);
  }
  if (!res.converged)
    throw MappingError("theodorsen_solve: no convergence after " +
                       std::to_string(res.iterations) + " iterations");

  ConformalData cd;
  cd.t = curve.t;
  cd.sigma = sigma;
  cd.theta_of_sigma = std::move(res.theta);
  cd.iterations = res.iterations;
  cd.relaxation = omega;
  cd.last_update = res.update;

  std::vector<double> dev(n);
  for (int j = 0; j < n; ++j) dev[j] = cd.theta_of_sigma[j] - sigma[j];
  const std::vector<double> ddev = spectral::derivative(std::span<const double>(dev));
  cd.dtheta_dsigma.resize(n);
  for (int j = 0; j < n; ++j) {
    cd.dtheta_dsigma[j] = 1.0 + ddev[j];
    if (!(cd.dtheta_dsigma[j] > 0.0))
      throw MappingError("theodorsen_solve: boundary correspondence is not monotone");
  }

  const std::vector<cplx> lr = interp.values(cd.theta_of_sigma);
  cd.boundary_R.resize(n);
  for (int j = 0; j < n; ++j)
    cd.boundary_R[j] = curve.t * std::exp(lr[j].real()) * std::polar(1.0, cd.theta_of_sigma[j]);
  cd.boundary_dR = boundary_derivative(cd);
  // log(R(zeta)/zeta) is holomorphic, so log R'(0) is its mean over sigma.
  double mean_lr = 0.0;
  for (const cplx& v : lr) mean_lr += v.real();
  cd.capacity = curve.t * std::exp(mean_lr / n);
  return cd;
}

std::vector<cplx> boundary_derivative(const ConformalData& cd) {
  std::vector<cplx> d = spectral::derivative(std::span<const cplx>(cd.boundary_R));
  for (int j = 0; j < cd.size(); ++j) d[j] /= cplx(0.0, 1.0) * std::polar(1.0, cd.sigma[j]);
  return d;
}

namespace {

class Inverter {
 public:
  explicit Inverter(const ConformalData& cd) : cd_(cd), dev_(deviation(cd)) {}

  double operator()(double theta) const {
    const int n = cd_.size();
    // Reduce to [theta_0, theta_0 + 2 pi); theta(sigma + 2 pi) = theta(sigma) + 2 pi.
    const double base = cd_.theta_of_sigma[0];
    const double turns = std::floor((theta - base) / kTwoPi);
    const double target = theta - turns * kTwoPi;

    // Bracket on the grid, then safeguarded Newton on the interpolant.
    int j = 0;
    while (j + 1 < n && cd_.theta_of_sigma[j + 1] <= target) ++j;
    double lo = cd_.sigma[j];
    double hi = j + 1 < n ? cd_.sigma[j + 1] : kTwoPi;
    double s = lo + (hi - lo) * 0.5;
    for (int it = 0; it < 100; ++it) {
      const double f = s + dev_.value(s).real() - target;
      if (std::abs(f) <= 1e-14) break;
      if (f > 0.0) hi = s; else lo = s;
      const double slope = 1.0 + dev_.slope(s).real();
      double next = s - f / slope;
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      if (std::abs(next - s) <= 1e-16 * (1.0 + std::abs(s))) {
        s = next;
        break;
      }
      s = next;
    }
    return s + turns * kTwoPi;
  }

 private:
  static spectral::TrigInterpolant deviation(const ConformalData& cd) {
    for (int j = 0; j < cd.size(); ++j)
      if (!(cd.dtheta_dsigma[j] > 0.0))
        throw MappingError("invert_correspondence: correspondence is not monotone");
    std::vector<double> dev(cd.size());
    for (int j = 0; j < cd.size(); ++j) dev[j] = cd.theta_of_sigma[j] - cd.sigma[j];
    return spectral::TrigInterpolant(std::span<const double>(dev));
  }

  const ConformalData& cd_;
  spectral::TrigInterpolant dev_;
};

}  // namespace

double invert_correspondence(const ConformalData& cd, double theta) {
  return Inverter(cd)(theta);
}

std::vector<double> invert_correspondence(const ConformalData& cd,
                                          std::span<const double> thetas) {
  const Inverter inv(cd);
  std::vector<double> out(thetas.size());
  const auto count = static_cast<std::ptrdiff_t>(thetas.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < count; ++i) out[i] = inv(thetas[i]);
  return out;
}

double boundary_residual(const ConformalData& cd, const SliceCurve& curve) {
  const spectral::TrigInterpolant r{std::span<const double>(curve.r)};
  double worst = 0.0;
  for (const cplx& R : cd.boundary_R) {
    const double target = cd.t * r.value(std::arg(R)).real();
    worst = std::max(worst, std::abs(std::abs(R) - target));
  }
  return worst;
}

double negative_frequency_leakage(const ConformalData& cd) {
  const std::vector<cplx> c = spectral::fourier_coefficients(std::span<const cplx>(cd.boundary_R));
  const int n = static_cast<int>(c.size());
  double neg = 0.0;
  double all = 0.0;
  for (int i = 0; i < n; ++i) {
    all = std::max(all, std::abs(c[i]));
    if (spectral::frequency(i, n) < 0) neg = std::max(neg, std::abs(c[i]));
  }
  return all > 0.0 ? neg / all : 0.0;
}

double center_defect(const ConformalData& cd) {
  return std::abs(
      spectral::fourier_coefficients(std::span<const cplx>(cd.boundary_R)).front());
}

void write_csv(std::ostream& out, const ConformalData& cd) {
  const auto old = out.precision(17);
  out << "sigma,theta,Re_R,Im_R,Re_dR,Im_dR\n";
  for (int j = 0; j < cd.size(); ++j)
    out << cd.sigma[j] << ',' << cd.theta_of_sigma[j] << ',' << cd.boundary_R[j].real() << ','
        << cd.boundary_R[j].imag() << ',' << cd.boundary_dR[j].real() << ','
        << cd.boundary_dR[j].imag() << '\n';
  out.precision(old);
}

}  // namespace umbilic
