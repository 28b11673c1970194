#include "umbilic/stationarity.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <ostream>

#include "umbilic/errors.hpp"
#include "umbilic/spectral.hpp"

namespace umbilic {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;
constexpr cplx kI{0.0, 1.0};

cplx ipow(cplx z, int n) {
  cplx out = 1.0;
  while (n > 0) {
    if (n & 1) out *= z;
    z *= z;
    n >>= 1;
  }
  return out;
}

// Per-sample factors shared by the moment integrands.
struct MomentSamples {
  std::vector<cplx> w_factor;  // c rho_w (r_theta + i r) e^{i theta} dtheta
  std::vector<cplx> z_factor;  // c rho_z / (-t) (r_theta + i r) e^{i theta} dtheta
  std::vector<cplx> zeta;      // r e^{i theta}
};

MomentSamples moment_samples(const PreparedDefiningFunction& f, const SliceCurve& curve,
                             std::span<const double> c) {
  const int n = curve.size();
  if (static_cast<int>(c.size()) != n) throw DomainError("moment_integrals: grid size mismatch");
  if (!(curve.t > 0.0)) throw DomainError("moment_integrals: t must be positive");
  const double t = curve.t;
  const double dtheta = kTwoPi / n;
  MomentSamples s;
  s.w_factor.resize(n);
  s.z_factor.resize(n);
  s.zeta.resize(n);
  for (int j = 0; j < n; ++j) {
    const cplx zeta = curve.point(j);
    const ComplexGradient g = rho_grad(f, t * zeta, t * t);
    const cplx base = c[j] * curve.tangent(j) * dtheta;
    s.w_factor[j] = base * g.dw;
    s.z_factor[j] = base * g.dz / (-t);
    s.zeta[j] = zeta;
  }
  return s;
}

void moment_j(const MomentSamples& s, int j, cplx& w, cplx& z) {
  w = 0.0;
  z = 0.0;
  for (std::size_t i = 0; i < s.zeta.size(); ++i) {
    const cplx p = ipow(s.zeta[i], j);
    w += p * s.w_factor[i];
    z += p * s.z_factor[i];
  }
}

}  // namespace

PangWeight pang_weight(const PreparedDefiningFunction& f, const ConformalData& cd,
                       const SliceCurve& curve, double leak_threshold) {
  const int n = cd.size();
  if (curve.size() != n) throw DomainError("pang_weight: grid size mismatch");
  if (!(cd.t > 0.0)) throw DomainError("pang_weight: t must be positive");
  PangWeight pw;
  pw.inv_a_hat.resize(n);
  double largest = 0.0;
  double imag = 0.0;
  for (int j = 0; j < n; ++j) {
    const cplx dz = rho_grad(f, cd.boundary_R[j], cd.t * cd.t).dz;
    pw.inv_a_hat[j] = std::polar(1.0, cd.sigma[j]) * dz * cd.boundary_dR[j];
    largest = std::max(largest, std::abs(pw.inv_a_hat[j]));
    imag = std::max(imag, std::abs(pw.inv_a_hat[j].imag()));
  }
  if (!(largest > 0.0)) throw DegenerateWeightError("pang_weight: 1/a_hat vanishes identically");
  pw.imag_leak = imag / largest;

  std::vector<double> re(n);
  for (int j = 0; j < n; ++j) re[j] = pw.inv_a_hat[j].real();
  pw.sign = re[0] < 0.0 ? -1 : 1;
  for (int j = 0; j < n; ++j) {
    if (std::abs(re[j]) <= 1e-12 * largest)
      throw DegenerateWeightError("pang_weight: 1/a_hat vanishes at a boundary sample");
    if ((re[j] < 0.0 ? -1 : 1) != pw.sign)
      throw DegenerateWeightError("pang_weight: 1/a_hat changes sign along the boundary");
  }
  if (pw.imag_leak > leak_threshold)
    throw InconsistencyError("pang_weight: 1/a_hat is not real on the boundary (leak " +
                             std::to_string(pw.imag_leak) + ")");

  const spectral::TrigInterpolant interp{std::span<const double>(re)};
  const std::vector<double> sigma_of_theta = invert_correspondence(cd, curve.theta);
  const std::vector<cplx> v = interp.values(sigma_of_theta);
  pw.c.resize(n);
  for (int j = 0; j < n; ++j) pw.c[j] = 1.0 / std::abs(v[j].real());
  const double m = spectral::mean(pw.c);
  for (double& x : pw.c) x /= m;
  return pw;
}

std::vector<double> w_balanced_weight(const PreparedDefiningFunction& f, const SliceCurve& curve,
                                      int j_max, int modes) {
  if (j_max < 1) throw DomainError("w_balanced_weight: j_max must be positive");
  if (modes < 0) modes = j_max + 3;
  const int n = curve.size();
  if (2 * modes >= n) throw DomainError("w_balanced_weight: too many modes for the grid");
  const std::vector<double> ones(static_cast<std::size_t>(n), 1.0);
  const MomentSamples s = moment_samples(f, curve, ones);

  // Column 2k-2 (2k-1): real (imaginary) part of g_k, contributing
  // 2 cos k theta (-2 sin k theta) to c.
  Eigen::MatrixXd M(2 * j_max, 2 * modes);
  Eigen::VectorXd rhs(2 * j_max);
  for (int j = 1; j <= j_max; ++j) {
    std::vector<cplx> kernel(n);
    cplx base{};
    for (int i = 0; i < n; ++i) {
      kernel[i] = ipow(s.zeta[i], j) * s.w_factor[i];
      base += kernel[i];
    }
    for (int k = 1; k <= modes; ++k) {
      cplx re_col{};
      cplx im_col{};
      for (int i = 0; i < n; ++i) {
        const double th = curve.theta[i];
        re_col += kernel[i] * (2.0 * std::cos(k * th));
        im_col += kernel[i] * (-2.0 * std::sin(k * th));
      }
      M(j - 1, 2 * k - 2) = re_col.real();
      M(j_max + j - 1, 2 * k - 2) = re_col.imag();
      M(j - 1, 2 * k - 1) = im_col.real();
      M(j_max + j - 1, 2 * k - 1) = im_col.imag();
    }
    rhs(j - 1) = -base.real();
    rhs(j_max + j - 1) = -base.imag();
  }
  const Eigen::VectorXd x = M.completeOrthogonalDecomposition().solve(rhs);

  std::vector<double> c(ones);
  for (int i = 0; i < n; ++i) {
    const double th = curve.theta[i];
    for (int k = 1; k <= modes; ++k)
      c[i] += 2.0 * x(2 * k - 2) * std::cos(k * th) - 2.0 * x(2 * k - 1) * std::sin(k * th);
    if (!(c[i] > 0.0)) throw DegenerateWeightError("w_balanced_weight: weight is not positive");
  }
  return c;
}

Moments moment_integrals(const PreparedDefiningFunction& f, const SliceCurve& curve,
                         std::span<const double> c, int j_max) {
  const MomentSamples s = moment_samples(f, curve, c);
  Moments m;
  m.mu_W.resize(j_max);
  m.mu_Z.resize(j_max);
#pragma omp parallel for schedule(static)
  for (int j = 1; j <= j_max; ++j) moment_j(s, j, m.mu_W[j - 1], m.mu_Z[j - 1]);
  return m;
}

Moments moment_integrals_serial(const PreparedDefiningFunction& f, const SliceCurve& curve,
                                std::span<const double> c, int j_max) {
  const MomentSamples s = moment_samples(f, curve, c);
  Moments m;
  m.mu_W.resize(j_max);
  m.mu_Z.resize(j_max);
  for (int j = 1; j <= j_max; ++j) moment_j(s, j, m.mu_W[j - 1], m.mu_Z[j - 1]);
  return m;
}

GammaSpectrum fourier_gamma(std::span<const double> c, double tolerance) {
  const int n = static_cast<int>(c.size());
  const std::vector<cplx> coeff = spectral::fourier_coefficients(c);
  GammaSpectrum g;
  g.k_max = n / 2 - 1;
  g.values.resize(static_cast<std::size_t>(2 * g.k_max + 1));
  for (int k = -g.k_max; k <= g.k_max; ++k) g.values[k + g.k_max] = coeff[(k + n) % n];
  double scale = 0.0;
  for (const cplx& v : g.values) scale = std::max(scale, std::abs(v));
  for (int k = 1; k <= g.k_max; ++k)
    g.reality_defect = std::max(g.reality_defect, std::abs(g(-k) - std::conj(g(k))));
  if (g.reality_defect > tolerance * std::max(1.0, scale))
    throw InconsistencyError("fourier_gamma: gamma_{-k} != conj(gamma_k)");
  return g;
}

double WeightAndMoments::max_moment() const {
  double m = 0.0;
  for (const cplx& v : mu_W) m = std::max(m, std::abs(v));
  for (const cplx& v : mu_Z) m = std::max(m, std::abs(v));
  return m;
}

WeightAndMoments analyze_slice(const PreparedDefiningFunction& f, double t,
                               const PipelineOptions& options) {
  const SliceCurve curve = curve_samples_serial(f, t, options.n, options.polar);
  WeightAndMoments out;
  out.t = t;
  out.weight = options.weight;
  if (options.weight == WeightKind::pang) {
    const ConformalData cd = theodorsen_solve(curve, options.conformal);
    PangWeight pw = pang_weight(f, cd, curve, options.leak_threshold);
    out.c_samples = std::move(pw.c);
    out.imag_leak = pw.imag_leak;
    out.theodorsen_iterations = cd.iterations;
  } else {
    out.c_samples = w_balanced_weight(f, curve, options.j_max);
  }
  out.gamma = fourier_gamma(out.c_samples);
  Moments m = moment_integrals_serial(f, curve, out.c_samples, options.j_max);
  out.mu_W = std::move(m.mu_W);
  out.mu_Z = std::move(m.mu_Z);
  return out;
}

std::vector<WeightAndMoments> moment_scan(const PreparedDefiningFunction& f,
                                          std::span<const double> t_grid,
                                          const PipelineOptions& options) {
  std::vector<WeightAndMoments> out(t_grid.size());
  std::exception_ptr failure;
  const auto count = static_cast<std::ptrdiff_t>(t_grid.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      out[i] = analyze_slice(f, t_grid[i], options);
    } catch (...) {
#pragma omp critical(moment_scan_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

cplx cauchy_transform(const SliceCurve& curve, std::span<const cplx> f, cplx z) {
  const int n = curve.size();
  if (static_cast<int>(f.size()) != n) throw DomainError("cauchy_transform: grid size mismatch");
  double scale = 0.0;
  double dist = std::numeric_limits<double>::infinity();
  for (int j = 0; j < n; ++j) {
    scale = std::max(scale, curve.r[j]);
    dist = std::min(dist, std::abs(curve.point(j) - z));
  }
  if (dist < 0.1 * scale) throw AccuracyError("cauchy_transform: probe too close to the curve");
  cplx sum{};
  for (int j = 0; j < n; ++j) sum += f[j] / (curve.point(j) - z) * curve.tangent(j);
  return sum * (kTwoPi / n) / (kTwoPi * kI);
}

ExtensionVerdict extension_test(const SliceCurve& curve, std::span<const cplx> f, int m_max,
                                std::span<const cplx> probes, double threshold) {
  const int n = curve.size();
  if (static_cast<int>(f.size()) != n) throw DomainError("extension_test: grid size mismatch");
  double scale = 0.0;
  for (const cplx& v : f) scale = std::max(scale, std::abs(v));
  ExtensionVerdict v;
  if (scale == 0.0) {
    v.extendable = true;
    v.moments.assign(static_cast<std::size_t>(m_max + 1), cplx{});
    return v;
  }
  v.moments.resize(static_cast<std::size_t>(m_max + 1));
  for (int m = 0; m <= m_max; ++m) {
    cplx sum{};
    for (int j = 0; j < n; ++j) sum += ipow(curve.point(j), m) * f[j] * curve.tangent(j);
    v.moments[m] = sum * (kTwoPi / n);
    v.max_moment = std::max(v.max_moment, std::abs(v.moments[m]) / scale);
  }
  for (const cplx& z : probes)
    v.max_cauchy = std::max(v.max_cauchy, std::abs(cauchy_transform(curve, f, z)) / scale);
  const bool by_moments = v.max_moment <= threshold;
  const bool by_cauchy = v.max_cauchy <= threshold;
  if (by_moments != by_cauchy)
    throw OracleMismatch("extension_test: moment verdict (max " + std::to_string(v.max_moment) +
                         ") disagrees with Cauchy verdict (max " +
                         std::to_string(v.max_cauchy) + ")");
  v.extendable = by_moments;
  return v;
}

std::vector<double> geometric_grid(double tmin, double tmax, int points) {
  if (points < 1 || !(tmin > 0.0) || !(tmax >= tmin))
    throw DomainError("geometric_grid: need 0 < tmin <= tmax and at least one point");
  std::vector<double> t(static_cast<std::size_t>(points));
  if (points == 1) {
    t[0] = tmin;
    return t;
  }
  const double ratio = std::log(tmax / tmin) / (points - 1);
  for (int i = 0; i < points; ++i) t[i] = tmin * std::exp(ratio * i);
  t.back() = tmax;
  return t;
}

void write_csv(std::ostream& out, const std::vector<WeightAndMoments>& scan) {
  const auto old = out.precision(17);
  out << "t,j,Re_muW,Im_muW,Re_muZ,Im_muZ\n";
  for (const auto& s : scan)
    for (std::size_t j = 0; j < s.mu_W.size(); ++j)
      out << s.t << ',' << j + 1 << ',' << s.mu_W[j].real() << ',' << s.mu_W[j].imag() << ','
          << s.mu_Z[j].real() << ',' << s.mu_Z[j].imag() << '\n';
  out.precision(old);
}

}  // namespace umbilic
