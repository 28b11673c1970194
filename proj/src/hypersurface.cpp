#include "umbilic/hypersurface.hpp"

#include <cmath>
#include <vector>

#include "umbilic/errors.hpp"

namespace umbilic {

namespace {

constexpr cplx kI{0.0, 1.0};

void check_reality(const HermitianSeries& s, const char* name) {
  double scale = 0.0;
  for (const auto& [key, c] : s.terms()) scale = std::max(scale, std::abs(c));
  if (s.hermitian_defect() > 1e-12 * (1.0 + scale))
    throw DomainError(std::string(name) + " is not real-valued (c_{a,b,m} != conj c_{b,a,m})");
}

}  // namespace

PreparedDefiningFunction::PreparedDefiningFunction()
    : PreparedDefiningFunction(0.0, HermitianSeries(kMinDegreeH), HermitianSeries(kMinDegreeG)) {}

PreparedDefiningFunction::PreparedDefiningFunction(cplx A, HermitianSeries h, HermitianSeries g)
    : A_(A), h_(std::move(h)), g_(std::move(g)) {
  if (g_.max_s_order() > 0) throw DomainError("g must not depend on Im w");
  if (g_.lowest_degree() < kMinDegreeG) throw DomainError("g must vanish to order 7 in z");
  if (h_.lowest_degree(0) < kMinDegreeH) throw DomainError("h(z, zbar, 0) must vanish to order 6");
  check_reality(h_, "h");
  check_reality(g_, "g");
  h_.set_min_total_degree(std::max(h_.min_total_degree(), 0));
  g_.set_min_total_degree(std::max(g_.min_total_degree(), kMinDegreeG));

  potential_.add_term(1, 1, 0, -1.0);
  potential_.add_term(2, 4, 0, A_);
  potential_.add_term(4, 2, 0, std::conj(A_));
  potential_ += h_.times_s();
  potential_ += g_;
  potential_dz_ = potential_.partial(Variable::z);
  potential_ds_ = potential_.partial(Variable::s);
  grad_z_slice_ = potential_dz_.s_slice(0);
}

double rho_eval(const PreparedDefiningFunction& f, cplx z, cplx w) {
  return w.real() + f.potential().evaluate(z, w.imag()).real();
}

cplx rho_complexified(const PreparedDefiningFunction& f, cplx z, cplx w, cplx zeta_bar,
                      cplx omega_bar) {
  const cplx s = (w - omega_bar) / (2.0 * kI);
  return 0.5 * (w + omega_bar) + f.potential().evaluate(z, zeta_bar, s);
}

ComplexGradient rho_grad(const PreparedDefiningFunction& f, cplx z, cplx w) {
  const double s = w.imag();
  return {f.potential_dz().evaluate(z, s), 0.5 - 0.5 * kI * f.potential_ds().evaluate(z, s)};
}

double pseudoconvexity_certificate(const PreparedDefiningFunction& f, cplx z, cplx w) {
  const HermitianSeries& P = f.potential();
  const double s = w.imag();
  auto at = [&](const HermitianSeries& q) { return q.evaluate(z, s); };

  const HermitianSeries Pz = P.partial(Variable::z);
  const HermitianSeries Pzb = P.partial(Variable::zbar);
  const HermitianSeries Ps = P.partial(Variable::s);

  const cplx r_z = at(Pz);
  const cplx r_w = 0.5 - 0.5 * kI * at(Ps);
  const cplx r_zb = at(Pzb);
  const cplx r_wb = 0.5 + 0.5 * kI * at(Ps);
  const cplx r_zzb = at(Pz.partial(Variable::zbar));
  const cplx r_wzb = -0.5 * kI * at(Ps.partial(Variable::zbar));
  const cplx r_zwb = 0.5 * kI * at(Pz.partial(Variable::s));
  const cplx r_wwb = 0.25 * at(Ps.partial(Variable::s));

  const cplx det = -r_z * (r_zb * r_wwb - r_wzb * r_wb) + r_w * (r_zb * r_zwb - r_zzb * r_wb);
  return det.real();
}

HeisenbergAut::HeisenbergAut(cplx lambda, cplx a, double s) : lambda_(lambda), a_(a), s_(s) {
  if (lambda == cplx{}) throw DomainError("HeisenbergAut: lambda must be nonzero");
}

Point aut_apply(const HeisenbergAut& m, Point p) {
  const cplx a = m.a();
  const cplx denom = 1.0 + 2.0 * std::conj(a) * p.z + (std::norm(a) + kI * m.s()) * p.w;
  if (std::abs(denom) < 1e-300) throw DomainError("aut_apply: vanishing denominator");
  return {m.lambda() * (p.z + a * p.w) / denom, std::norm(m.lambda()) * p.w / denom};
}

HeisenbergAut aut_from_two_jet(const std::function<Point(Point)>& map, double radius) {
  constexpr int n = 32;
  cplx fz{};
  cplx fw{};
  cplx g2{};
  for (int j = 0; j < n; ++j) {
    const cplx u = std::polar(1.0, 2.0 * M_PI * j / n);
    fz += map({radius * u, 0.0}).z * std::conj(u);
    const Point pw = map({0.0, radius * u});
    fw += pw.z * std::conj(u);
    g2 += pw.w * std::conj(u * u);
  }
  fz /= n * radius;
  fw /= n * radius;
  g2 /= n * radius * radius;  // coefficient of w^2, g_ww(0) = 2 g2
  const cplx lambda = fz;
  return HeisenbergAut(lambda, fw / lambda, -(2.0 * g2).imag() / (2.0 * std::norm(lambda)));
}

namespace {

// P(z, zeta_bar, s(z)) as a power series in z.
TaylorSeries compose(const HermitianSeries& P, cplx zeta_bar, const TaylorSeries& s) {
  const int D = s.degree();
  TaylorSeries out(D);
  std::vector<TaylorSeries> spow{TaylorSeries(D, 1.0)};
  for (const auto& [key, c] : P.terms()) {
    const auto [a, b, m] = key;
    if (a > D) continue;
    while (static_cast<int>(spow.size()) <= m) spow.push_back(spow.back() * s);
    const cplx coef = c * std::pow(zeta_bar, b);
    const TaylorSeries& sp = spow[m];
    for (int n = 0; n + a <= D; ++n) out[n + a] += coef * sp[n];
  }
  return out;
}

TaylorSeries segre_equation(const PreparedDefiningFunction& f, Point q, const TaylorSeries& w) {
  const cplx qz_bar = std::conj(q.z);
  const cplx qw_bar = std::conj(q.w);
  TaylorSeries s = w;
  s[0] -= qw_bar;
  s *= 1.0 / (2.0 * kI);
  TaylorSeries F = w;
  F[0] += qw_bar;
  F *= 0.5;
  return F + compose(f.potential(), qz_bar, s);
}

}  // namespace

SegreGraph segre_graph(const PreparedDefiningFunction& f, Point q, int degree) {
  if (degree < 0) throw DomainError("segre_graph: negative degree");
  const cplx qz_bar = std::conj(q.z);
  const cplx qw_bar = std::conj(q.w);
  TaylorSeries w(degree, -qw_bar);
  bool polishing = false;
  for (int iter = 0; iter < 64; ++iter) {
    const TaylorSeries F = segre_equation(f, q, w);
    TaylorSeries s = w;
    s[0] -= qw_bar;
    s *= 1.0 / (2.0 * kI);
    TaylorSeries Fw = (1.0 / (2.0 * kI)) * compose(f.potential_ds(), qz_bar, s);
    Fw[0] += 0.5;
    if (std::abs(Fw[0]) < 1e-12)
      throw SingularSegreError("segre_graph: d rho/dw vanishes at the base of the graph");
    const TaylorSeries step = F * reciprocal(Fw);
    w -= step;
    // Quadratic convergence: one more step after reaching roundoff level.
    if (polishing) return {q, w};
    polishing = step.max_abs() <= 1e-13 * (1.0 + w.max_abs());
  }
  throw SolverError("segre_graph: series Newton iteration did not converge");
}

double segre_residual(const PreparedDefiningFunction& f, const SegreGraph& graph) {
  return segre_equation(f, graph.q, graph.taylor).max_abs();
}

}  // namespace umbilic
