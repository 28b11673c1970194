#pragma once

#include <complex>
#include <span>
#include <vector>

namespace umbilic {

using cplx = std::complex<double>;

namespace spectral {

// theta_j = 2 pi j / n, j = 0..n-1.
std::vector<double> uniform_grid(int n);

// Signed frequency of FFT index i for length n; the Nyquist index maps to -n/2.
int frequency(int index, int n) noexcept;

// Fourier coefficients X_k = (1/n) sum_j x_j e^{-i k theta_j}, in FFT order.
std::vector<cplx> fourier_coefficients(std::span<const cplx> samples);
std::vector<cplx> fourier_coefficients(std::span<const double> samples);
// Inverse of fourier_coefficients: x_j = sum_k X_k e^{i k theta_j}.
std::vector<cplx> synthesize(std::span<const cplx> coefficients);

// d/dtheta of the trigonometric interpolant, sampled on the grid. The
// Nyquist mode is dropped.
std::vector<double> derivative(std::span<const double> samples);
std::vector<cplx> derivative(std::span<const cplx> samples);

// Periodic conjugation (Hilbert) operator: e^{ik theta} -> -i sign(k) e^{ik theta},
// so that f + i H f extends holomorphically into the disc. Zero mean output.
std::vector<double> conjugate(std::span<const double> samples);

// (2 pi / n) sum_j f_j: trapezoid rule over one period.
cplx periodic_integral(std::span<const cplx> samples);
double mean(std::span<const double> samples);

// Trigonometric interpolant through uniform samples; evaluates anywhere.
// The Nyquist coefficient is split evenly between +-n/2 so real data
// interpolates to real values.
class TrigInterpolant {
 public:
  explicit TrigInterpolant(std::span<const double> samples);
  explicit TrigInterpolant(std::span<const cplx> samples);

  int size() const noexcept { return n_; }
  cplx value(double x) const;
  cplx slope(double x) const;  // d/dx, Nyquist dropped

  // OpenMP kernel over the points.
  std::vector<cplx> values(std::span<const double> xs) const;
  // Serial reference for the kernel above; bit-identical output.
  std::vector<cplx> values_serial(std::span<const double> xs) const;

 private:
  void init(std::vector<cplx> coeffs);

  int n_ = 0;
  std::vector<int> freq_;     // frequencies in [-n/2, n/2]
  std::vector<cplx> coeff_;   // matching coefficients
};

namespace reference {
// Direct O(n^2) evaluation of fourier_coefficients, kept as the FFT oracle.
std::vector<cplx> dft(std::span<const cplx> samples);
}  // namespace reference

}  // namespace spectral
}  // namespace umbilic
