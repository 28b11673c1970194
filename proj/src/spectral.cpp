#include "umbilic/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <utility>

#include "umbilic/errors.hpp"

namespace umbilic::spectral {

namespace {

// FFTW planning is not thread-safe; execution on fresh arrays is. Plans are
// created once per (size, direction) under a lock and reused with
// fftw_execute_dft.
class PlanCache {
 public:
  static PlanCache& instance() {
    static PlanCache cache;
    return cache;
  }

  fftw_plan get(int n, int sign) {
    std::lock_guard lock(mutex_);
    auto& slot = plans_[{n, sign}];
    if (!slot) {
      fftw_complex* buf = fftw_alloc_complex(static_cast<std::size_t>(n));
      slot = fftw_plan_dft_1d(n, buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
      fftw_free(buf);
    }
    return slot;
  }

  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

 private:
  std::mutex mutex_;
  std::map<std::pair<int, int>, fftw_plan> plans_;
};

std::vector<cplx> run_fft(std::vector<cplx> data, int sign) {
  const int n = static_cast<int>(data.size());
  if (n == 0) return data;
  fftw_plan plan = PlanCache::instance().get(n, sign);
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, p, p);
  return data;
}

}  // namespace

std::vector<double> uniform_grid(int n) {
  if (n <= 0) throw DomainError("uniform_grid: n must be positive");
  std::vector<double> x(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) x[j] = 2.0 * M_PI * j / n;
  return x;
}

int frequency(int index, int n) noexcept { return index < (n + 1) / 2 ? index : index - n; }

std::vector<cplx> fourier_coefficients(std::span<const cplx> samples) {
  std::vector<cplx> out = run_fft({samples.begin(), samples.end()}, FFTW_FORWARD);
  const double scale = 1.0 / static_cast<double>(out.size());
  for (cplx& c : out) c *= scale;
  return out;
}

std::vector<cplx> fourier_coefficients(std::span<const double> samples) {
  std::vector<cplx> z(samples.begin(), samples.end());
  return fourier_coefficients(std::span<const cplx>(z));
}

std::vector<cplx> synthesize(std::span<const cplx> coefficients) {
  return run_fft({coefficients.begin(), coefficients.end()}, FFTW_BACKWARD);
}

std::vector<cplx> derivative(std::span<const cplx> samples) {
  const int n = static_cast<int>(samples.size());
  std::vector<cplx> c = fourier_coefficients(samples);
  for (int i = 0; i < n; ++i) {
    const int k = frequency(i, n);
    c[i] *= (n % 2 == 0 && i == n / 2) ? cplx{} : cplx(0.0, k);
  }
  return synthesize(c);
}

std::vector<double> derivative(std::span<const double> samples) {
  std::vector<cplx> z(samples.begin(), samples.end());
  const std::vector<cplx> d = derivative(std::span<const cplx>(z));
  std::vector<double> out(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) out[i] = d[i].real();
  return out;
}

std::vector<double> conjugate(std::span<const double> samples) {
  const int n = static_cast<int>(samples.size());
  std::vector<cplx> c = fourier_coefficients(samples);
  for (int i = 0; i < n; ++i) {
    const int k = frequency(i, n);
    if (k == 0 || (n % 2 == 0 && i == n / 2)) {
      c[i] = 0.0;
    } else {
      c[i] *= cplx(0.0, k > 0 ? -1.0 : 1.0);
    }
  }
  const std::vector<cplx> h = synthesize(c);
  std::vector<double> out(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) out[i] = h[i].real();
  return out;
}

cplx periodic_integral(std::span<const cplx> samples) {
  cplx sum{};
  for (const cplx& v : samples) sum += v;
  return sum * (2.0 * M_PI / static_cast<double>(samples.size()));
}

double mean(std::span<const double> samples) {
  double sum = 0.0;
  for (double v : samples) sum += v;
  return sum / static_cast<double>(samples.size());
}

TrigInterpolant::TrigInterpolant(std::span<const double> samples) {
  init(fourier_coefficients(samples));
}

TrigInterpolant::TrigInterpolant(std::span<const cplx> samples) {
  init(fourier_coefficients(samples));
}

void TrigInterpolant::init(std::vector<cplx> coeffs) {
  n_ = static_cast<int>(coeffs.size());
  for (int i = 0; i < n_; ++i) {
    const int k = frequency(i, n_);
    if (n_ % 2 == 0 && i == n_ / 2) {
      freq_.push_back(-k);
      coeff_.push_back(0.5 * coeffs[i]);
      freq_.push_back(k);
      coeff_.push_back(0.5 * coeffs[i]);
    } else {
      freq_.push_back(k);
      coeff_.push_back(coeffs[i]);
    }
  }
}

cplx TrigInterpolant::value(double x) const {
  cplx sum{};
  for (std::size_t i = 0; i < coeff_.size(); ++i) sum += coeff_[i] * std::polar(1.0, freq_[i] * x);
  return sum;
}

cplx TrigInterpolant::slope(double x) const {
  cplx sum{};
  for (std::size_t i = 0; i < coeff_.size(); ++i) {
    if (2 * std::abs(freq_[i]) == n_) continue;
    sum += cplx(0.0, freq_[i]) * coeff_[i] * std::polar(1.0, freq_[i] * x);
  }
  return sum;
}

std::vector<cplx> TrigInterpolant::values(std::span<const double> xs) const {
  std::vector<cplx> out(xs.size());
  const auto count = static_cast<std::ptrdiff_t>(xs.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t j = 0; j < count; ++j) out[j] = value(xs[j]);
  return out;
}

std::vector<cplx> TrigInterpolant::values_serial(std::span<const double> xs) const {
  std::vector<cplx> out(xs.size());
  for (std::size_t j = 0; j < xs.size(); ++j) out[j] = value(xs[j]);
  return out;
}

namespace reference {

std::vector<cplx> dft(std::span<const cplx> samples) {
  const int n = static_cast<int>(samples.size());
  std::vector<cplx> out(samples.size());
  for (int k = 0; k < n; ++k) {
    cplx sum{};
    for (int j = 0; j < n; ++j)
      sum += samples[j] * std::polar(1.0, -2.0 * M_PI * static_cast<double>((k * j) % n) / n);
    out[k] = sum / static_cast<double>(n);
  }
  return out;
}

}  // namespace reference

}  // namespace umbilic::spectral
