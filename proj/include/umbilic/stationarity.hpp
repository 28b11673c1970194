#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "umbilic/conformal.hpp"
#include "umbilic/hypersurface.hpp"
#include "umbilic/series.hpp"
#include "umbilic/slice_polar.hpp"

namespace umbilic {

// Pang weight: 1/a_hat(e^{i sigma}) = e^{i sigma} rho_z(R_t) R_t' on the sigma
// grid, carried to the theta grid through the boundary correspondence.
struct PangWeight {
  std::vector<double> c;         // on the theta grid, positive, mean 1
  std::vector<cplx> inv_a_hat;   // on the sigma grid, before normalization
  double imag_leak = 0.0;        // max |Im(1/a_hat)| / max |1/a_hat|
  int sign = 1;                  // common sign of Re(1/a_hat)
};

// Throws DegenerateWeightError if a sample of 1/a_hat vanishes or the samples
// change sign, InconsistencyError if imag_leak exceeds `leak_threshold`.
PangWeight pang_weight(const PreparedDefiningFunction& f, const ConformalData& cd,
                       const SliceCurve& curve, double leak_threshold = 1e-8);

// Real weight c = 1 + sum_{k=1..modes} (g_k e^{ik theta} + c.c.) of least norm
// that annihilates the W-moments j = 1..j_max. `modes` defaults to j_max + 3.
std::vector<double> w_balanced_weight(const PreparedDefiningFunction& f, const SliceCurve& curve,
                                      int j_max = 8, int modes = -1);

struct Moments {
  std::vector<cplx> mu_W;  // index j - 1
  std::vector<cplx> mu_Z;
};

// Trapezoid-rule moments, j = 1..j_max:
//   mu_W[j] = int r^j e^{ij theta} c rho_w (r_theta + i r) e^{i theta} d theta
//   mu_Z[j] = the same with rho_z in place of rho_w, divided by -t
// with rho's derivatives taken at (t r e^{i theta}, t^2). OpenMP over j.
Moments moment_integrals(const PreparedDefiningFunction& f, const SliceCurve& curve,
                         std::span<const double> c, int j_max = 8);
Moments moment_integrals_serial(const PreparedDefiningFunction& f, const SliceCurve& curve,
                                std::span<const double> c, int j_max = 8);

// gamma_k = (1/2 pi) int c e^{-ik theta} d theta for |k| < n/2.
struct GammaSpectrum {
  int k_max = 0;
  std::vector<cplx> values;  // index k + k_max
  double reality_defect = 0.0;

  cplx operator()(int k) const {
    return k < -k_max || k > k_max ? cplx{} : values[static_cast<std::size_t>(k + k_max)];
  }
};

// Throws InconsistencyError if gamma_{-k} != conj(gamma_k) beyond `tolerance`.
GammaSpectrum fourier_gamma(std::span<const double> c, double tolerance = 1e-13);

enum class WeightKind { pang, w_balanced };

struct PipelineOptions {
  int n = 256;
  int j_max = 8;
  WeightKind weight = WeightKind::pang;
  PolarSolverOptions polar;
  TheodorsenOptions conformal;
  double leak_threshold = 1e-8;
};

struct WeightAndMoments {
  double t = 0.0;
  WeightKind weight = WeightKind::pang;
  std::vector<double> c_samples;
  GammaSpectrum gamma;
  std::vector<cplx> mu_W;
  std::vector<cplx> mu_Z;
  double imag_leak = 0.0;  // zero for the W-balanced weight
  int theodorsen_iterations = 0;

  double max_moment() const;
};

// Slice curve, Riemann map, weight and moments at one t.
WeightAndMoments analyze_slice(const PreparedDefiningFunction& f, double t,
                               const PipelineOptions& options = {});
// The same over a t-grid, one slice per OpenMP task.
std::vector<WeightAndMoments> moment_scan(const PreparedDefiningFunction& f,
                                          std::span<const double> t_grid,
                                          const PipelineOptions& options = {});

// Cf(z) = (1/2 pi i) int f(zeta)/(zeta - z) d zeta over the rescaled curve
// zeta = r(theta) e^{i theta}. Throws AccuracyError when z is closer than
// 0.1 max r to a curve sample.
cplx cauchy_transform(const SliceCurve& curve, std::span<const cplx> f, cplx z);

struct ExtensionVerdict {
  bool extendable = false;
  double max_moment = 0.0;  // relative to max |f|
  double max_cauchy = 0.0;  // relative to max |f|
  std::vector<cplx> moments;  // int zeta^m f d zeta, m = 0..m_max
};

// Holomorphic extendability of boundary data f, decided twice: by the moments
// m = 0..m_max and by the Cauchy transform at exterior probes. Throws
// OracleMismatch if the verdicts differ.
ExtensionVerdict extension_test(const SliceCurve& curve, std::span<const cplx> f, int m_max,
                                std::span<const cplx> probes, double threshold = 1e-10);

struct ObstructionOptions {
  int j_max = 8;
  double tolerance = 1e-10;
};

struct ObstructionReport {
  int order = 0;
  int j_max = 0;
  std::vector<int> solvable_orders;
  std::vector<double> order_residuals;  // max residual of the full system per order
  // Inconsistency of the j = 2 Z-moment at t^4 once every other equation holds.
  cplx obstruction{};
  // Inconsistency of the j = 1 W-moment at t^4 once every other equation holds.
  cplx obstruction_w{};
  FourierTaylorSeries gamma_series;  // solved weight, gamma_0 = 1
  double low_order_max = 0.0;        // max |gamma_{k,m}|, k != 0, m < 4
  double gamma2_t4 = 0.0;            // |gamma_{2,4}|

  bool solvable_at(int m) const;
};

// Treats c as an unknown real Fourier-Taylor series with gamma_0 = 1 and
// imposes the W- and Z-moment equations j = 1..j_max order by order in t,
// using the symbolic expansion of r. Each order is a real least-squares
// system in the gamma_{k,m}, k = 1..j_max+1. The j = 2 Z-equation is held out
// and its residual at t^4 is the obstruction. Throws StructuralError on rank
// deficiency, on an inconsistency through t^4 outside the held-out equation,
// or on a violated vanishing pattern.
ObstructionReport obstruction_solver(const PreparedDefiningFunction& f, int order = 4,
                                     const ObstructionOptions& options = {});

// Structured-text block with obstruction_re, obstruction_im, solvable_orders.
void write_report(std::ostream& out, const ObstructionReport& report);

enum class MomentChannel {
  z2,  // mu_Z at j = 2 under the W-balanced weight
  w1,  // mu_W at j = 1 under the Pang weight
};

// Leading t^4 coefficient of the channel's moment for A = 1, from the
// symbolic solver.
cplx channel_constant(MomentChannel channel, int j_max = 8);

struct EstimateOptions {
  MomentChannel channel = MomentChannel::z2;
  PipelineOptions pipeline;
  double max_relative_residual = 0.1;
  double noise_floor = 1e-12;
};

struct AEstimate {
  cplx A_hat{};
  cplx C{};  // t^4 coefficient
  cplx D{};  // t^5 coefficient
  cplx kappa{};
  double relative_residual = 0.0;
  std::vector<double> t;
  std::vector<cplx> mu;
};

// Fits mu(t) = C t^4 + D t^5 by least squares and returns A_hat = C / kappa.
// Throws EstimationError if the relative residual exceeds the bound (unless
// every |mu| is below the noise floor).
AEstimate estimate_A(const PreparedDefiningFunction& f, std::span<const double> t_grid,
                     const EstimateOptions& options = {});

// `points` values from tmin to tmax with constant ratio.
std::vector<double> geometric_grid(double tmin, double tmax, int points);

// CSV "t,j,Re_muW,Im_muW,Re_muZ,Im_muZ".
void write_csv(std::ostream& out, const std::vector<WeightAndMoments>& scan);

}  // namespace umbilic
