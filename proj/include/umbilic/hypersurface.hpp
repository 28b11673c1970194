#pragma once

#include <complex>
#include <functional>
#include <iosfwd>
#include <string>

#include "umbilic/series.hpp"

namespace umbilic {

// Hypersurface germ at 0 in C^2 in the prepared form
//
//   rho = Re w - |z|^2 + A z^2 zbar^4 + conj(A) z^4 zbar^2
//         + Im w * h(z, zbar, Im w) + g(z, zbar)
//
// with g = O(|z|^7) and h(z, zbar, 0) = O(|z|^6). Construction enforces the
// order and reality constraints.
class PreparedDefiningFunction {
 public:
  static constexpr int kMinDegreeG = 7;
  static constexpr int kMinDegreeH = 6;

  // The Heisenberg model Re w = |z|^2.
  PreparedDefiningFunction();
  PreparedDefiningFunction(cplx A, HermitianSeries h, HermitianSeries g);

  static PreparedDefiningFunction heisenberg() { return {}; }

  cplx A() const noexcept { return A_; }
  const HermitianSeries& h() const noexcept { return h_; }
  const HermitianSeries& g() const noexcept { return g_; }

  // rho - Re w as a series in (z, zbar, s) with s = Im w.
  const HermitianSeries& potential() const noexcept { return potential_; }
  // d(potential)/dz restricted to s = 0, i.e. d rho/dz on the slice Im w = 0.
  const HermitianSeries& slice_gradient_z() const noexcept { return grad_z_slice_; }
  const HermitianSeries& potential_dz() const noexcept { return potential_dz_; }
  const HermitianSeries& potential_ds() const noexcept { return potential_ds_; }

  bool is_heisenberg() const noexcept { return A_ == cplx{} && h_.empty() && g_.empty(); }

 private:
  cplx A_{};
  HermitianSeries h_;
  HermitianSeries g_;
  HermitianSeries potential_;
  HermitianSeries potential_dz_;
  HermitianSeries potential_ds_;
  HermitianSeries grad_z_slice_;
};

struct Point {
  cplx z;
  cplx w;
};

double rho_eval(const PreparedDefiningFunction& f, cplx z, cplx w);
// Value of rho with the antiholomorphic arguments replaced by independent
// values: zbar -> zeta_bar, wbar -> omega_bar, Im w -> (w - omega_bar)/(2i).
cplx rho_complexified(const PreparedDefiningFunction& f, cplx z, cplx w, cplx zeta_bar,
                      cplx omega_bar);

struct ComplexGradient {
  cplx dz;  // d rho / dz (Wirtinger)
  cplx dw;  // d rho / dw
};

ComplexGradient rho_grad(const PreparedDefiningFunction& f, cplx z, cplx w);

// Determinant of the gradient-bordered complex Hessian
//   | 0        rho_z        rho_w      |
//   | rho_zb   rho_z zb     rho_w zb   |
//   | rho_wb   rho_z wb     rho_w wb   |
// reported raw (real up to roundoff). Nonzero certifies strict
// pseudoconvexity at (z, w).
double pseudoconvexity_certificate(const PreparedDefiningFunction& f, cplx z, cplx w);

// Origin-preserving automorphism of Re w = |z|^2:
//   (z, w) -> (lambda (z + a w) / D, |lambda|^2 w / D),
//   D = 1 + 2 conj(a) z + (|a|^2 + i s) w.
class HeisenbergAut {
 public:
  HeisenbergAut(cplx lambda, cplx a, double s);
  static HeisenbergAut identity() { return {1.0, 0.0, 0.0}; }

  cplx lambda() const noexcept { return lambda_; }
  cplx a() const noexcept { return a_; }
  double s() const noexcept { return s_; }

 private:
  cplx lambda_;
  cplx a_;
  double s_;
};

Point aut_apply(const HeisenbergAut& m, Point p);

// Recovers (lambda, a, s) of an origin-preserving holomorphic map of the
// Heisenberg family from its 2-jet at 0, computed by contour quadrature on a
// small circle: lambda = f_z(0), a = f_w(0)/lambda, s = -Im g_ww(0)/(2|lambda|^2).
HeisenbergAut aut_from_two_jet(const std::function<Point(Point)>& map, double radius = 0.02);

// Segre variety S_q = { rho(Z, conj q) = 0 } written as a graph w = S(z).
struct SegreGraph {
  Point q;
  TaylorSeries taylor;  // coefficients of S(z)

  cplx operator()(cplx z) const { return taylor.evaluate(z); }
};

// Newton iteration on truncated power series in z, up to degree `degree`.
SegreGraph segre_graph(const PreparedDefiningFunction& f, Point q, int degree);
// max |coefficient| of rho(z, S(z), conj q) through the graph's degree.
double segre_residual(const PreparedDefiningFunction& f, const SegreGraph& graph);

// Structured-text model format:
//
//   A_re = <real>
//   A_im = <real>
//   [h]
//   a,b,m,re,im      (one row per coefficient of z^a zbar^b s^m)
//   [g]
//   a,b,m,re,im      (m must be 0)
//
// '#' starts a comment. Both members of each conjugate pair must be listed.
// Violations throw ModelFormatError with the offending line number.
PreparedDefiningFunction load_model(std::istream& in);
PreparedDefiningFunction load_model_file(const std::string& path);
void write_model(std::ostream& out, const PreparedDefiningFunction& f);

}  // namespace umbilic
