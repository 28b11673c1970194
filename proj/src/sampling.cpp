#include "umbilic/sampling.hpp"

#include <cmath>

namespace umbilic {

HermitianSeries random_hermitian(Rng& rng, int min_degree, int max_degree, int max_s,
                                 double scale) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  HermitianSeries s(min_degree);
  for (int m = 0; m <= max_s; ++m)
    for (int d = min_degree; d <= max_degree; ++d)
      for (int a = 0; a <= d; ++a) {
        const int b = d - a;
        if (a > b) continue;
        if (a == b) {
          s.add_term(a, a, m, scale * u(rng));
        } else {
          const cplx c(scale * u(rng), scale * u(rng));
          s.add_term(a, b, m, c);
          s.add_term(b, a, m, std::conj(c));
        }
      }
  return s;
}

PreparedDefiningFunction random_model(Rng& rng, cplx A, double scale) {
  // h(z, zbar, 0) = O(|z|^6); higher s-orders may start lower.
  HermitianSeries h = random_hermitian(rng, PreparedDefiningFunction::kMinDegreeH, 7, 0, scale);
  HermitianSeries h1 = random_hermitian(rng, 2, 4, 0, scale);
  for (const auto& [key, c] : h1.terms()) h.add_term(key[0], key[1], 1, c);
  HermitianSeries g = random_hermitian(rng, PreparedDefiningFunction::kMinDegreeG, 8, 0, scale);
  return {A, std::move(h), std::move(g)};
}

cplx random_A(Rng& rng, double lo, double hi) {
  std::uniform_real_distribution<double> mag(lo, hi);
  std::uniform_real_distribution<double> arg(0.0, 2.0 * M_PI);
  return std::polar(mag(rng), arg(rng));
}

std::vector<cplx> random_boundary_data(Rng& rng, const SliceCurve& curve, int degree,
                                       bool extendable) {
  std::normal_distribution<double> nd;
  std::vector<cplx> a(static_cast<std::size_t>(2 * degree + 1));
  for (int k = -degree; k <= degree; ++k)
    if (extendable ? k >= 0 : true) a[k + degree] = {nd(rng), nd(rng)};
  if (!extendable) {
    std::uniform_int_distribution<int> pick(1, degree);
    a[degree - pick(rng)] += cplx(1.0, 0.0);
  }
  std::vector<cplx> f(static_cast<std::size_t>(curve.size()));
  for (int j = 0; j < curve.size(); ++j) {
    const cplx zeta = curve.point(j);
    cplx sum{};
    for (int k = -degree; k <= degree; ++k) sum += a[k + degree] * std::pow(zeta, k);
    f[j] = sum;
  }
  return f;
}

PreparedDefiningFunction umbilic_model(cplx A) {
  return {A, HermitianSeries(), HermitianSeries(PreparedDefiningFunction::kMinDegreeG)};
}

PreparedDefiningFunction umbilic_model_with_g7(cplx A, double scale) {
  HermitianSeries g(PreparedDefiningFunction::kMinDegreeG);
  g.add_term(4, 3, 0, scale);
  g.add_term(3, 4, 0, scale);
  return {A, HermitianSeries(), std::move(g)};
}

}  // namespace umbilic
