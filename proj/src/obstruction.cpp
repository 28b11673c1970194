#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "umbilic/errors.hpp"
#include "umbilic/stationarity.hpp"

namespace umbilic {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;
constexpr cplx kI{0.0, 1.0};

// Moment kernels as series in (theta, t): the moment is
// int c(theta, t) K(theta, t) d theta, so with c = sum gamma_k e^{ik theta}
// its t^m coefficient is 2 pi sum_k sum_m' gamma_{k,m'} K_{-k, m-m'}.
struct Kernels {
  std::vector<FourierTaylorSeries> eq;  // W_1..W_J, then Z_1..Z_J
};

Kernels build_kernels(const PreparedDefiningFunction& f, int j_max, int k_work, int order) {
  const FourierTaylorSeries r = solve_r_symbolic(f, k_work, order);
  const FourierTaylorSeries e1 = FourierTaylorSeries::monomial(1, 0, 1.0, k_work, order);
  const FourierTaylorSeries tangent = (diff_theta(r) + kI * r) * e1;
  FourierTaylorSeries rho_w = FourierTaylorSeries::constant(0.5, k_work, order);
  rho_w -= 0.5 * kI * polar_substitute(f.potential_ds().s_slice(0), r, 0, k_work, order);
  const FourierTaylorSeries rho_z_scaled =
      -polar_substitute(f.slice_gradient_z(), r, -1, k_work, order);
  const FourierTaylorSeries w_base = rho_w * tangent;
  const FourierTaylorSeries z_base = rho_z_scaled * tangent;

  Kernels k;
  k.eq.resize(static_cast<std::size_t>(2 * j_max));
  FourierTaylorSeries zeta_j = FourierTaylorSeries::constant(1.0, k_work, order);
  const FourierTaylorSeries zeta = r * e1;
  for (int j = 1; j <= j_max; ++j) {
    zeta_j = zeta_j * zeta;
    k.eq[j - 1] = zeta_j * w_base;
    k.eq[j_max + j - 1] = zeta_j * z_base;
  }
  for (const auto& s : k.eq)
    if (s.truncation_loss())
      throw StructuralError("obstruction_solver: Fourier truncation too small for the model");
  return k;
}

class OrderSystem {
 public:
  OrderSystem(const Kernels& kernels, int unknowns)
      : kernels_(kernels), kc_(unknowns), eqs_(static_cast<int>(kernels.eq.size())) {
    matrix_.resize(2 * eqs_, 2 * kc_);
    for (int e = 0; e < eqs_; ++e) {
      const FourierTaylorSeries& K = kernels_.eq[e];
      for (int k = 1; k <= kc_; ++k) {
        const cplx re_col = kTwoPi * (K.coeff(-k, 0) + K.coeff(k, 0));
        const cplx im_col = kTwoPi * kI * (K.coeff(-k, 0) - K.coeff(k, 0));
        matrix_(2 * e, 2 * k - 2) = re_col.real();
        matrix_(2 * e + 1, 2 * k - 2) = re_col.imag();
        matrix_(2 * e, 2 * k - 1) = im_col.real();
        matrix_(2 * e + 1, 2 * k - 1) = im_col.imag();
      }
    }
  }

  int equations() const noexcept { return eqs_; }

  // Contribution of gamma_0 = 1 and of the already solved orders to the
  // t^m coefficient of every moment.
  std::vector<cplx> known(int m, const std::vector<std::vector<cplx>>& gamma) const {
    std::vector<cplx> out(static_cast<std::size_t>(eqs_));
    for (int e = 0; e < eqs_; ++e) {
      const FourierTaylorSeries& K = kernels_.eq[e];
      cplx sum = K.coeff(0, m);
      for (int mp = 0; mp < m; ++mp)
        for (int k = 1; k <= kc_; ++k) {
          const cplx g = gamma[mp][k - 1];
          sum += g * K.coeff(-k, m - mp) + std::conj(g) * K.coeff(k, m - mp);
        }
      out[e] = kTwoPi * sum;
    }
    return out;
  }

  // Least-squares solve on the equations not listed in `held_out`; returns the
  // unknowns and fills the residual of every equation.
  std::vector<cplx> solve(const std::vector<cplx>& known, const std::vector<int>& held_out,
                          std::vector<cplx>& residual) const {
    std::vector<int> rows;
    for (int e = 0; e < eqs_; ++e)
      if (std::find(held_out.begin(), held_out.end(), e) == held_out.end()) {
        rows.push_back(2 * e);
        rows.push_back(2 * e + 1);
      }
    Eigen::MatrixXd A(static_cast<Eigen::Index>(rows.size()), 2 * kc_);
    Eigen::VectorXd b(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      A.row(static_cast<Eigen::Index>(i)) = matrix_.row(rows[i]);
      const cplx kv = known[rows[i] / 2];
      b(static_cast<Eigen::Index>(i)) = -(rows[i] % 2 == 0 ? kv.real() : kv.imag());
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(1e-9);
    if (svd.rank() < 2 * kc_)
      throw StructuralError("obstruction_solver: rank-deficient moment system (rank " +
                            std::to_string(svd.rank()) + " of " + std::to_string(2 * kc_) + ")");
    const Eigen::VectorXd x = svd.solve(b);

    std::vector<cplx> gamma(static_cast<std::size_t>(kc_));
    for (int k = 1; k <= kc_; ++k) gamma[k - 1] = {x(2 * k - 2), x(2 * k - 1)};
    const Eigen::VectorXd ax = matrix_ * x;
    residual.assign(static_cast<std::size_t>(eqs_), cplx{});
    for (int e = 0; e < eqs_; ++e) residual[e] = known[e] + cplx(ax(2 * e), ax(2 * e + 1));
    return gamma;
  }

 private:
  const Kernels& kernels_;
  int kc_;
  int eqs_;
  Eigen::MatrixXd matrix_;
};

double max_over(const std::vector<cplx>& v, const std::vector<int>& skip) {
  double m = 0.0;
  for (int e = 0; e < static_cast<int>(v.size()); ++e)
    if (std::find(skip.begin(), skip.end(), e) == skip.end()) m = std::max(m, std::abs(v[e]));
  return m;
}

}  // namespace

bool ObstructionReport::solvable_at(int m) const {
  return std::find(solvable_orders.begin(), solvable_orders.end(), m) != solvable_orders.end();
}

ObstructionReport obstruction_solver(const PreparedDefiningFunction& f, int order,
                                     const ObstructionOptions& options) {
  if (order < 0 || order > FourierTaylorSeries::kDefaultOrder)
    throw DomainError("obstruction_solver: order must lie in [0, " +
                      std::to_string(FourierTaylorSeries::kDefaultOrder) + "]");
  const int J = options.j_max;
  if (J < 2) throw DomainError("obstruction_solver: j_max must be at least 2");
  const int kc = J + 1;
  const int degree = std::max(f.potential().max_degree(), 6);
  const int k_work = std::max(32, 2 * (J + 1) + 2 * degree);

  const Kernels kernels = build_kernels(f, J, k_work, order);
  const OrderSystem system(kernels, kc);
  const int w1 = 0;
  const int z2 = J + 1;

  ObstructionReport report;
  report.order = order;
  report.j_max = J;
  report.gamma_series = FourierTaylorSeries(kc, order, true);
  report.gamma_series.set(0, 0, 1.0);

  std::vector<std::vector<cplx>> gamma;
  for (int m = 0; m <= order; ++m) {
    const std::vector<cplx> known = system.known(m, gamma);
    double scale = 1.0;
    for (const cplx& v : known) scale = std::max(scale, std::abs(v));
    const double tol = options.tolerance * scale;

    std::vector<cplx> residual;
    gamma.push_back(system.solve(known, {z2}, residual));
    const double full = max_over(residual, {});
    report.order_residuals.push_back(full);
    if (full <= tol) report.solvable_orders.push_back(m);
    if (m <= 4 && max_over(residual, {z2}) > tol)
      throw StructuralError("obstruction_solver: inconsistency at t^" + std::to_string(m) +
                            " outside the j = 2 Z-equation");
    if (m == 4) {
      report.obstruction = residual[z2];
      std::vector<cplx> alt;
      system.solve(known, {w1}, alt);
      if (max_over(alt, {w1}) > tol)
        throw StructuralError("obstruction_solver: inconsistency at t^4 outside the j = 1 W-equation");
      report.obstruction_w = alt[w1];
    }
    for (int k = 1; k <= kc; ++k) {
      report.gamma_series.set(k, m, gamma[m][k - 1]);
      report.gamma_series.set(-k, m, std::conj(gamma[m][k - 1]));
      if (m < 4) report.low_order_max = std::max(report.low_order_max, std::abs(gamma[m][k - 1]));
    }
    if (m == 4) report.gamma2_t4 = std::abs(gamma[4][1]);
  }
  if (report.low_order_max > options.tolerance)
    throw StructuralError("obstruction_solver: weight coefficients below t^4 do not vanish");
  if (report.gamma2_t4 > options.tolerance)
    throw StructuralError("obstruction_solver: t^4 coefficient of gamma_2 does not vanish");
  return report;
}

void write_report(std::ostream& out, const ObstructionReport& report) {
  const auto old = out.precision(17);
  out << "[obstruction]\n";
  out << "order = " << report.order << '\n';
  out << "j_max = " << report.j_max << '\n';
  out << "obstruction_re = " << report.obstruction.real() << '\n';
  out << "obstruction_im = " << report.obstruction.imag() << '\n';
  out << "obstruction_w_re = " << report.obstruction_w.real() << '\n';
  out << "obstruction_w_im = " << report.obstruction_w.imag() << '\n';
  out << "solvable_orders = ";
  for (std::size_t i = 0; i < report.solvable_orders.size(); ++i)
    out << (i ? "," : "") << report.solvable_orders[i];
  out << '\n';
  out << "low_order_max = " << report.low_order_max << '\n';
  out << "gamma2_t4 = " << report.gamma2_t4 << '\n';
  out.precision(old);
}

cplx channel_constant(MomentChannel channel, int j_max) {
  const PreparedDefiningFunction unit(1.0, HermitianSeries(),
                                      HermitianSeries(PreparedDefiningFunction::kMinDegreeG));
  ObstructionOptions options;
  options.j_max = j_max;
  const ObstructionReport report = obstruction_solver(unit, 4, options);
  return channel == MomentChannel::z2 ? report.obstruction : report.obstruction_w;
}

AEstimate estimate_A(const PreparedDefiningFunction& f, std::span<const double> t_grid,
                     const EstimateOptions& options) {
  if (t_grid.size() < 6) throw DomainError("estimate_A: need at least 6 t values");
  PipelineOptions pipeline = options.pipeline;
  pipeline.j_max = std::max(pipeline.j_max, 2);
  pipeline.weight =
      options.channel == MomentChannel::z2 ? WeightKind::w_balanced : WeightKind::pang;

  AEstimate est;
  est.kappa = channel_constant(options.channel, pipeline.j_max);
  const std::vector<WeightAndMoments> scan = moment_scan(f, t_grid, pipeline);
  const auto n = static_cast<Eigen::Index>(t_grid.size());
  Eigen::MatrixXcd design(n, 2);
  Eigen::VectorXcd y(n);
  double largest = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double t = t_grid[i];
    const cplx mu = options.channel == MomentChannel::z2 ? scan[i].mu_Z[1] : scan[i].mu_W[0];
    est.t.push_back(t);
    est.mu.push_back(mu);
    largest = std::max(largest, std::abs(mu));
    // mu / t^4 = C + D t keeps the columns of comparable size.
    design(i, 0) = 1.0;
    design(i, 1) = t;
    y(i) = mu / std::pow(t, 4);
  }
  const Eigen::VectorXcd x = design.colPivHouseholderQr().solve(y);
  est.C = x(0);
  est.D = x(1);
  const double norm = y.norm();
  est.relative_residual = norm > 0.0 ? (design * x - y).norm() / norm : 0.0;
  est.A_hat = est.C / est.kappa;
  if (largest > options.noise_floor && est.relative_residual > options.max_relative_residual)
    throw EstimationError("estimate_A: relative fit residual " +
                          std::to_string(est.relative_residual) + " exceeds the bound");
  return est;
}

}  // namespace umbilic
