#pragma once

#include <array>
#include <complex>
#include <iosfwd>
#include <map>
#include <vector>

namespace umbilic {

using cplx = std::complex<double>;

// Truncated double series  sum_{|k|<=K, 0<=m<=M} c_{k,m} e^{ik theta} t^m.
//
// Orders above M are dropped silently: t-truncation never corrupts the
// retained orders of a product. Fourier modes above K are dropped too, but
// that does corrupt later products, so a nonzero dropped mode raises the
// truncation_loss() flag, which propagates through every operation.
class FourierTaylorSeries {
 public:
  static constexpr int kDefaultModes = 16;
  static constexpr int kDefaultOrder = 8;

  explicit FourierTaylorSeries(int k_max = kDefaultModes, int m_max = kDefaultOrder,
                               bool is_real = false);

  static FourierTaylorSeries constant(cplx value, int k_max = kDefaultModes,
                                      int m_max = kDefaultOrder);
  static FourierTaylorSeries monomial(int k, int m, cplx coeff, int k_max = kDefaultModes,
                                      int m_max = kDefaultOrder);

  int k_max() const noexcept { return k_max_; }
  int m_max() const noexcept { return m_max_; }
  bool is_real() const noexcept { return real_; }
  void mark_real(bool real) noexcept { real_ = real; }
  bool truncation_loss() const noexcept { return loss_; }
  void mark_truncation_loss() noexcept { loss_ = true; }

  // Zero outside the truncation bounds.
  cplx coeff(int k, int m) const noexcept;
  void set(int k, int m, cplx value);
  void add(int k, int m, cplx value);

  // max |c_{-k,m} - conj(c_{k,m})|; zero for a real-valued series.
  double reality_defect() const noexcept;
  double max_abs() const noexcept;
  bool is_zero(double tol = 0.0) const noexcept { return max_abs() <= tol; }

  cplx evaluate(double theta, double t) const;
  // Coefficient of t^m as a trigonometric polynomial evaluated at theta.
  cplx evaluate_order(int m, double theta) const;

  // Same coefficients under new bounds (drops what no longer fits).
  FourierTaylorSeries rebounded(int k_max, int m_max) const;
  // Pointwise complex conjugate of the function (c'_{k,m} = conj c_{-k,m}).
  FourierTaylorSeries conj() const;

  FourierTaylorSeries& operator+=(const FourierTaylorSeries& other);
  FourierTaylorSeries& operator-=(const FourierTaylorSeries& other);
  FourierTaylorSeries& operator*=(cplx scalar);

 private:
  std::size_t index(int k, int m) const noexcept {
    return static_cast<std::size_t>(k + k_max_) * static_cast<std::size_t>(m_max_ + 1) +
           static_cast<std::size_t>(m);
  }
  bool in_bounds(int k, int m) const noexcept {
    return k >= -k_max_ && k <= k_max_ && m >= 0 && m <= m_max_;
  }

  int k_max_;
  int m_max_;
  bool real_;
  bool loss_ = false;
  std::vector<cplx> c_;
};

FourierTaylorSeries operator+(const FourierTaylorSeries& x, const FourierTaylorSeries& y);
FourierTaylorSeries operator-(const FourierTaylorSeries& x, const FourierTaylorSeries& y);
FourierTaylorSeries operator-(const FourierTaylorSeries& x);
FourierTaylorSeries operator*(const FourierTaylorSeries& x, const FourierTaylorSeries& y);
FourierTaylorSeries operator*(cplx scalar, const FourierTaylorSeries& x);
FourierTaylorSeries operator*(const FourierTaylorSeries& x, cplx scalar);

// c_{k,m} -> ik c_{k,m}.
FourierTaylorSeries diff_theta(const FourierTaylorSeries& x);
// t-derivative. The result is exact only through order M-1, so its m_max
// shrinks by one.
FourierTaylorSeries diff_t(const FourierTaylorSeries& x);
// Multiplicative inverse, solved order by order in t. Throws DomainError if
// c_{0,0} == 0. If the t^0 coefficient is a nonconstant trigonometric
// polynomial, its inverse is found by a truncated Toeplitz solve in k and the
// result carries truncation_loss().
FourierTaylorSeries reciprocal(const FourierTaylorSeries& x);
FourierTaylorSeries pow(const FourierTaylorSeries& x, int n);
// Coefficients of t^m in  int_0^{2pi} x(theta,t) d theta, m = 0..M.
std::vector<cplx> integrate_theta(const FourierTaylorSeries& x);

// Plain-text table, header "k,m,re,im", one row per nonzero coefficient.
void write_table(std::ostream& out, const FourierTaylorSeries& x);
FourierTaylorSeries read_table(std::istream& in, int k_max = FourierTaylorSeries::kDefaultModes,
                               int m_max = FourierTaylorSeries::kDefaultOrder);

enum class Variable { z, zbar, s };

// Sparse series  sum c_{a,b,m} z^a zbar^b s^m  in (z, zbar, s). A real-valued
// series satisfies c_{a,b,m} = conj(c_{b,a,m}); the loader and the
// PreparedDefiningFunction constructor enforce that, the arithmetic here
// does not (partials of a real series are not real).
class HermitianSeries {
 public:
  using Key = std::array<int, 3>;  // {a, b, m}

  HermitianSeries() = default;
  explicit HermitianSeries(int min_total_degree) : min_total_degree_(min_total_degree) {}

  void add_term(int a, int b, int m, cplx c);
  cplx coeff(int a, int b, int m) const;
  const std::map<Key, cplx>& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }

  int min_total_degree() const noexcept { return min_total_degree_; }
  void set_min_total_degree(int d) noexcept { min_total_degree_ = d; }
  // Lowest a+b over nonzero terms (restricted to s-order m when m >= 0);
  // returns a large value when there are none.
  int lowest_degree(int m = -1) const noexcept;
  int max_degree() const noexcept;
  int max_s_order() const noexcept;

  // max |c_{a,b,m} - conj c_{b,a,m}|.
  double hermitian_defect() const noexcept;

  // zbar = conj(z).
  cplx evaluate(cplx z, double s) const;
  // Complexified: zbar and s independent complex variables.
  cplx evaluate(cplx z, cplx zbar, cplx s) const;

  HermitianSeries partial(Variable which) const;
  // Terms of s-order m with s set to 1 (the coefficient series of s^m).
  HermitianSeries s_slice(int m) const;

  HermitianSeries& operator+=(const HermitianSeries& other);
  HermitianSeries& operator*=(cplx scalar);
  // Multiply by s (shifts every s-order up by one).
  HermitianSeries times_s() const;

 private:
  std::map<Key, cplx> terms_;
  int min_total_degree_ = 0;
};

// Substitute z = t r e^{i theta}, zbar = t r e^{-i theta}, s = 0 into p and
// multiply by t^t_shift. Terms with a+b+t_shift < 0 throw DomainError.
FourierTaylorSeries polar_substitute(const HermitianSeries& p, const FourierTaylorSeries& r,
                                     int t_shift, int k_max, int m_max);

// Univariate truncated power series in one complex variable.
class TaylorSeries {
 public:
  explicit TaylorSeries(int degree, cplx constant = 0.0);
  static TaylorSeries variable(int degree);

  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  cplx operator[](int n) const { return n >= 0 && n <= degree() ? c_[n] : cplx{}; }
  cplx& operator[](int n) { return c_.at(static_cast<std::size_t>(n)); }
  const std::vector<cplx>& coefficients() const noexcept { return c_; }

  cplx evaluate(cplx z) const;
  double max_abs() const noexcept;

  TaylorSeries& operator+=(const TaylorSeries& o);
  TaylorSeries& operator-=(const TaylorSeries& o);
  TaylorSeries& operator*=(cplx s);

 private:
  std::vector<cplx> c_;
};

TaylorSeries operator+(TaylorSeries x, const TaylorSeries& y);
TaylorSeries operator-(TaylorSeries x, const TaylorSeries& y);
TaylorSeries operator*(const TaylorSeries& x, const TaylorSeries& y);
TaylorSeries operator*(cplx s, TaylorSeries x);
TaylorSeries reciprocal(const TaylorSeries& x);

}  // namespace umbilic
