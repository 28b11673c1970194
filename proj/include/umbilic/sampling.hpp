#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "umbilic/hypersurface.hpp"
#include "umbilic/slice_polar.hpp"

namespace umbilic {

using Rng = std::mt19937_64;

constexpr std::uint64_t kDefaultSeed = 42;

// Real-valued series sum c_{a,b,m} z^a zbar^b s^m with a + b in
// [min_degree, max_degree], m <= max_s, coefficients of size <= scale.
HermitianSeries random_hermitian(Rng& rng, int min_degree, int max_degree, int max_s,
                                 double scale);

// Prepared model with the given A and random admissible h, g.
PreparedDefiningFunction random_model(Rng& rng, cplx A, double scale = 0.1);

// A with |A| uniform in [lo, hi] and uniform argument.
cplx random_A(Rng& rng, double lo, double hi);

// Samples on the curve of sum_{k=-degree..degree} a_k zeta^k, zeta = r e^{i theta}.
// With `extendable` the negative modes are dropped; otherwise at least one
// negative mode is present.
std::vector<cplx> random_boundary_data(Rng& rng, const SliceCurve& curve, int degree,
                                       bool extendable);

// Model with only the umbilic coefficient, h = g = 0.
PreparedDefiningFunction umbilic_model(cplx A);
// Umbilic model plus g = scale (z^4 zbar^3 + z^3 zbar^4).
PreparedDefiningFunction umbilic_model_with_g7(cplx A, double scale);

}  // namespace umbilic
