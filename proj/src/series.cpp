#include "umbilic/series.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "umbilic/errors.hpp"

namespace umbilic {

FourierTaylorSeries::FourierTaylorSeries(int k_max, int m_max, bool is_real)
    : k_max_(k_max), m_max_(m_max), real_(is_real) {
  if (k_max < 0 || m_max < 0) throw DomainError("FourierTaylorSeries: negative truncation bound");
  c_.assign(static_cast<std::size_t>(2 * k_max + 1) * static_cast<std::size_t>(m_max + 1), cplx{});
}

FourierTaylorSeries FourierTaylorSeries::constant(cplx value, int k_max, int m_max) {
  FourierTaylorSeries x(k_max, m_max, value.imag() == 0.0);
  x.set(0, 0, value);
  return x;
}

FourierTaylorSeries FourierTaylorSeries::monomial(int k, int m, cplx coeff, int k_max, int m_max) {
  FourierTaylorSeries x(k_max, m_max, false);
  x.set(k, m, coeff);
  return x;
}

cplx FourierTaylorSeries::coeff(int k, int m) const noexcept {
  return in_bounds(k, m) ? c_[index(k, m)] : cplx{};
}

void FourierTaylorSeries::set(int k, int m, cplx value) {
  if (in_bounds(k, m)) {
    c_[index(k, m)] = value;
  } else if (m >= 0 && m <= m_max_ && value != cplx{}) {
    loss_ = true;
  }
}

void FourierTaylorSeries::add(int k, int m, cplx value) {
  if (in_bounds(k, m)) {
    c_[index(k, m)] += value;
  } else if (m >= 0 && m <= m_max_ && value != cplx{}) {
    loss_ = true;
  }
}

double FourierTaylorSeries::reality_defect() const noexcept {
  double defect = 0.0;
  for (int k = 0; k <= k_max_; ++k)
    for (int m = 0; m <= m_max_; ++m)
      defect = std::max(defect, std::abs(coeff(-k, m) - std::conj(coeff(k, m))));
  return defect;
}

double FourierTaylorSeries::max_abs() const noexcept {
  double v = 0.0;
  for (const cplx& c : c_) v = std::max(v, std::abs(c));
  return v;
}

cplx FourierTaylorSeries::evaluate_order(int m, double theta) const {
  cplx sum{};
  if (m < 0 || m > m_max_) return sum;
  for (int k = -k_max_; k <= k_max_; ++k) {
    const cplx c = c_[index(k, m)];
    if (c != cplx{}) sum += c * std::polar(1.0, k * theta);
  }
  return sum;
}

cplx FourierTaylorSeries::evaluate(double theta, double t) const {
  cplx sum{};
  for (int m = m_max_; m >= 0; --m) sum = sum * t + evaluate_order(m, theta);
  return sum;
}

FourierTaylorSeries FourierTaylorSeries::rebounded(int k_max, int m_max) const {
  FourierTaylorSeries y(k_max, m_max, real_);
  y.loss_ = loss_;
  for (int k = -k_max_; k <= k_max_; ++k)
    for (int m = 0; m <= m_max_; ++m) y.set(k, m, c_[index(k, m)]);
  return y;
}

FourierTaylorSeries FourierTaylorSeries::conj() const {
  FourierTaylorSeries y(k_max_, m_max_, real_);
  y.loss_ = loss_;
  for (int k = -k_max_; k <= k_max_; ++k)
    for (int m = 0; m <= m_max_; ++m) y.c_[y.index(k, m)] = std::conj(c_[index(-k, m)]);
  return y;
}

FourierTaylorSeries& FourierTaylorSeries::operator+=(const FourierTaylorSeries& other) {
  if (other.k_max_ > k_max_ || other.m_max_ > m_max_)
    *this = rebounded(std::max(k_max_, other.k_max_), std::max(m_max_, other.m_max_));
  for (int k = -other.k_max_; k <= other.k_max_; ++k)
    for (int m = 0; m <= other.m_max_; ++m) add(k, m, other.coeff(k, m));
  real_ = real_ && other.real_;
  loss_ = loss_ || other.loss_;
  return *this;
}

FourierTaylorSeries& FourierTaylorSeries::operator-=(const FourierTaylorSeries& other) {
  return *this += (-other);
}

FourierTaylorSeries& FourierTaylorSeries::operator*=(cplx scalar) {
  for (cplx& c : c_) c *= scalar;
  real_ = real_ && scalar.imag() == 0.0;
  return *this;
}

FourierTaylorSeries operator+(const FourierTaylorSeries& x, const FourierTaylorSeries& y) {
  FourierTaylorSeries r = x;
  r += y;
  return r;
}

FourierTaylorSeries operator-(const FourierTaylorSeries& x) {
  FourierTaylorSeries r = x;
  r *= -1.0;
  return r;
}

FourierTaylorSeries operator-(const FourierTaylorSeries& x, const FourierTaylorSeries& y) {
  FourierTaylorSeries r = x;
  r += -y;
  return r;
}

namespace {

struct Term {
  int k;
  int m;
  cplx c;
};

std::vector<Term> nonzero_terms(const FourierTaylorSeries& x) {
  std::vector<Term> out;
  for (int k = -x.k_max(); k <= x.k_max(); ++k)
    for (int m = 0; m <= x.m_max(); ++m)
      if (const cplx c = x.coeff(k, m); c != cplx{}) out.push_back({k, m, c});
  return out;
}

}  // namespace

FourierTaylorSeries operator*(const FourierTaylorSeries& x, const FourierTaylorSeries& y) {
  const int k_max = std::max(x.k_max(), y.k_max());
  const int m_max = std::max(x.m_max(), y.m_max());
  FourierTaylorSeries r(k_max, m_max, x.is_real() && y.is_real());
  if (x.truncation_loss() || y.truncation_loss()) r.mark_truncation_loss();
  const auto tx = nonzero_terms(x);
  const auto ty = nonzero_terms(y);
  for (const Term& a : tx)
    for (const Term& b : ty)
      if (a.m + b.m <= m_max) r.add(a.k + b.k, a.m + b.m, a.c * b.c);
  return r;
}

FourierTaylorSeries operator*(cplx scalar, const FourierTaylorSeries& x) {
  FourierTaylorSeries r = x;
  r *= scalar;
  return r;
}

FourierTaylorSeries operator*(const FourierTaylorSeries& x, cplx scalar) { return scalar * x; }

FourierTaylorSeries diff_theta(const FourierTaylorSeries& x) {
  FourierTaylorSeries r(x.k_max(), x.m_max(), x.is_real());
  if (x.truncation_loss()) r.mark_truncation_loss();
  for (int k = -x.k_max(); k <= x.k_max(); ++k)
    for (int m = 0; m <= x.m_max(); ++m) r.set(k, m, cplx(0.0, k) * x.coeff(k, m));
  return r;
}

FourierTaylorSeries diff_t(const FourierTaylorSeries& x) {
  FourierTaylorSeries r(x.k_max(), std::max(0, x.m_max() - 1), x.is_real());
  if (x.truncation_loss()) r.mark_truncation_loss();
  for (int k = -x.k_max(); k <= x.k_max(); ++k)
    for (int m = 1; m <= x.m_max(); ++m) r.set(k, m - 1, static_cast<double>(m) * x.coeff(k, m));
  return r;
}

namespace {

// Mode vector of one t-order, indices -K..K stored at k+K.
using Modes = std::vector<cplx>;

Modes order_modes(const FourierTaylorSeries& x, int m) {
  Modes v(static_cast<std::size_t>(2 * x.k_max() + 1));
  for (int k = -x.k_max(); k <= x.k_max(); ++k) v[k + x.k_max()] = x.coeff(k, m);
  return v;
}

Modes convolve(const Modes& a, const Modes& b, int K, bool& loss) {
  Modes out(a.size());
  for (int i = -K; i <= K; ++i) {
    if (a[i + K] == cplx{}) continue;
    for (int j = -K; j <= K; ++j) {
      if (b[j + K] == cplx{}) continue;
      const int k = i + j;
      const cplx p = a[i + K] * b[j + K];
      if (k < -K || k > K) {
        loss = loss || p != cplx{};
      } else {
        out[k + K] += p;
      }
    }
  }
  return out;
}

}  // namespace

FourierTaylorSeries reciprocal(const FourierTaylorSeries& x) {
  if (x.coeff(0, 0) == cplx{}) throw DomainError("reciprocal: zero constant term");
  const int K = x.k_max();
  const int M = x.m_max();
  bool loss = x.truncation_loss();

  const Modes x0 = order_modes(x, 0);
  bool constant_head = true;
  for (int k = -K; k <= K; ++k)
    if (k != 0 && x0[k + K] != cplx{}) constant_head = false;

  Modes y0(x0.size());
  if (constant_head) {
    y0[K] = 1.0 / x0[K];
  } else {
    // Truncated Toeplitz system  sum_{k'} x0[k-k'] y0[k'] = delta_{k,0}.
    const int n = 2 * K + 1;
    Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(n, n);
    for (int k = -K; k <= K; ++k)
      for (int kp = -K; kp <= K; ++kp)
        if (const int d = k - kp; d >= -K && d <= K) T(k + K, kp + K) = x0[d + K];
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(n);
    rhs(K) = 1.0;
    const Eigen::VectorXcd sol = T.partialPivLu().solve(rhs);
    for (int i = 0; i < n; ++i) y0[i] = sol(i);
    loss = true;
  }

  std::vector<Modes> y{y0};
  std::vector<Modes> xs;
  for (int m = 0; m <= M; ++m) xs.push_back(order_modes(x, m));
  for (int m = 1; m <= M; ++m) {
    Modes acc(x0.size());
    for (int j = 1; j <= m; ++j) {
      const Modes p = convolve(xs[j], y[m - j], K, loss);
      for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += p[i];
    }
    Modes ym = convolve(y0, acc, K, loss);
    for (cplx& c : ym) c = -c;
    y.push_back(std::move(ym));
  }

  FourierTaylorSeries r(K, M, x.is_real());
  for (int m = 0; m <= M; ++m)
    for (int k = -K; k <= K; ++k) r.set(k, m, y[m][k + K]);
  if (loss) r.mark_truncation_loss();
  return r;
}

FourierTaylorSeries pow(const FourierTaylorSeries& x, int n) {
  if (n < 0) return pow(reciprocal(x), -n);
  FourierTaylorSeries result = FourierTaylorSeries::constant(1.0, x.k_max(), x.m_max());
  if (x.truncation_loss()) result.mark_truncation_loss();
  result.mark_real(x.is_real());
  FourierTaylorSeries base = x;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

std::vector<cplx> integrate_theta(const FourierTaylorSeries& x) {
  std::vector<cplx> out(static_cast<std::size_t>(x.m_max() + 1));
  for (int m = 0; m <= x.m_max(); ++m) out[m] = 2.0 * M_PI * x.coeff(0, m);
  return out;
}

void write_table(std::ostream& out, const FourierTaylorSeries& x) {
  out << "k,m,re,im\n";
  const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
  for (int m = 0; m <= x.m_max(); ++m)
    for (int k = -x.k_max(); k <= x.k_max(); ++k)
      if (const cplx c = x.coeff(k, m); c != cplx{})
        out << k << ',' << m << ',' << c.real() << ',' << c.imag() << '\n';
  out.precision(old_precision);
}

FourierTaylorSeries read_table(std::istream& in, int k_max, int m_max) {
  FourierTaylorSeries x(k_max, m_max);
  std::string line;
  int line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line.rfind("k,m,re,im", 0) != 0)
        throw ModelFormatError(line_no, "expected header 'k,m,re,im'");
      header_seen = true;
      continue;
    }
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    int k = 0;
    int m = 0;
    double re = 0.0;
    double im = 0.0;
    if (!(row >> k >> m >> re >> im)) throw ModelFormatError(line_no, "malformed coefficient row");
    x.set(k, m, {re, im});
  }
  x.mark_real(x.reality_defect() == 0.0);
  return x;
}

// ---------------------------------------------------------------------------

void HermitianSeries::add_term(int a, int b, int m, cplx c) {
  if (a < 0 || b < 0 || m < 0) throw DomainError("HermitianSeries: negative exponent");
  if (c == cplx{}) return;
  auto [it, inserted] = terms_.try_emplace(Key{a, b, m}, c);
  if (!inserted) {
    it->second += c;
    if (it->second == cplx{}) terms_.erase(it);
  }
}

cplx HermitianSeries::coeff(int a, int b, int m) const {
  const auto it = terms_.find(Key{a, b, m});
  return it == terms_.end() ? cplx{} : it->second;
}

int HermitianSeries::lowest_degree(int m) const noexcept {
  int lo = std::numeric_limits<int>::max();
  for (const auto& [key, c] : terms_)
    if (m < 0 || key[2] == m) lo = std::min(lo, key[0] + key[1]);
  return lo;
}

int HermitianSeries::max_degree() const noexcept {
  int hi = 0;
  for (const auto& [key, c] : terms_) hi = std::max(hi, key[0] + key[1]);
  return hi;
}

int HermitianSeries::max_s_order() const noexcept {
  int hi = 0;
  for (const auto& [key, c] : terms_) hi = std::max(hi, key[2]);
  return hi;
}

double HermitianSeries::hermitian_defect() const noexcept {
  double d = 0.0;
  for (const auto& [key, c] : terms_)
    d = std::max(d, std::abs(c - std::conj(coeff(key[1], key[0], key[2]))));
  return d;
}

cplx HermitianSeries::evaluate(cplx z, double s) const {
  return evaluate(z, std::conj(z), cplx(s, 0.0));
}

cplx HermitianSeries::evaluate(cplx z, cplx zbar, cplx s) const {
  if (terms_.empty()) return {};
  const int deg = max_degree();
  const int sdeg = max_s_order();
  std::vector<cplx> zp(static_cast<std::size_t>(deg + 1));
  std::vector<cplx> wp(static_cast<std::size_t>(deg + 1));
  std::vector<cplx> sp(static_cast<std::size_t>(sdeg + 1));
  zp[0] = wp[0] = sp[0] = 1.0;
  for (int i = 1; i <= deg; ++i) {
    zp[i] = zp[i - 1] * z;
    wp[i] = wp[i - 1] * zbar;
  }
  for (int i = 1; i <= sdeg; ++i) sp[i] = sp[i - 1] * s;
  cplx sum{};
  for (const auto& [key, c] : terms_) sum += c * zp[key[0]] * wp[key[1]] * sp[key[2]];
  return sum;
}

HermitianSeries HermitianSeries::partial(Variable which) const {
  HermitianSeries d;
  for (const auto& [key, c] : terms_) {
    const auto [a, b, m] = key;
    switch (which) {
      case Variable::z:
        if (a > 0) d.add_term(a - 1, b, m, c * static_cast<double>(a));
        break;
      case Variable::zbar:
        if (b > 0) d.add_term(a, b - 1, m, c * static_cast<double>(b));
        break;
      case Variable::s:
        if (m > 0) d.add_term(a, b, m - 1, c * static_cast<double>(m));
        break;
    }
  }
  return d;
}

HermitianSeries HermitianSeries::s_slice(int m) const {
  HermitianSeries out;
  for (const auto& [key, c] : terms_)
    if (key[2] == m) out.add_term(key[0], key[1], 0, c);
  return out;
}

HermitianSeries& HermitianSeries::operator+=(const HermitianSeries& other) {
  for (const auto& [key, c] : other.terms_) add_term(key[0], key[1], key[2], c);
  return *this;
}

HermitianSeries& HermitianSeries::operator*=(cplx scalar) {
  if (scalar == cplx{}) {
    terms_.clear();
    return *this;
  }
  for (auto& [key, c] : terms_) c *= scalar;
  return *this;
}

HermitianSeries HermitianSeries::times_s() const {
  HermitianSeries out(min_total_degree_);
  for (const auto& [key, c] : terms_) out.add_term(key[0], key[1], key[2] + 1, c);
  return out;
}

FourierTaylorSeries polar_substitute(const HermitianSeries& p, const FourierTaylorSeries& r,
                                     int t_shift, int k_max, int m_max) {
  FourierTaylorSeries out(k_max, m_max, true);
  std::vector<FourierTaylorSeries> rpow;
  rpow.push_back(FourierTaylorSeries::constant(1.0, k_max, m_max));
  rpow.back().mark_real(r.is_real());
  for (const auto& [key, c] : p.terms()) {
    const auto [a, b, m] = key;
    if (m != 0) continue;
    const int order = a + b + t_shift;
    if (order < 0) throw DomainError("polar_substitute: negative t-order");
    if (order > m_max) continue;
    while (static_cast<int>(rpow.size()) <= a + b) rpow.push_back(rpow.back() * r);
    const FourierTaylorSeries& rp = rpow[a + b];
    FourierTaylorSeries term(k_max, m_max, false);
    if (rp.truncation_loss()) term.mark_truncation_loss();
    for (int k = -rp.k_max(); k <= rp.k_max(); ++k)
      for (int mm = 0; mm + order <= m_max && mm <= rp.m_max(); ++mm)
        term.add(k + a - b, mm + order, c * rp.coeff(k, mm));
    out += term;
  }
  out.mark_real(r.is_real() && p.hermitian_defect() == 0.0);
  return out;
}

// ---------------------------------------------------------------------------

TaylorSeries::TaylorSeries(int degree, cplx constant) {
  if (degree < 0) throw DomainError("TaylorSeries: negative degree");
  c_.assign(static_cast<std::size_t>(degree + 1), cplx{});
  c_[0] = constant;
}

TaylorSeries TaylorSeries::variable(int degree) {
  TaylorSeries x(degree);
  if (degree >= 1) x.c_[1] = 1.0;
  return x;
}

cplx TaylorSeries::evaluate(cplx z) const {
  cplx sum{};
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) sum = sum * z + *it;
  return sum;
}

double TaylorSeries::max_abs() const noexcept {
  double v = 0.0;
  for (const cplx& c : c_) v = std::max(v, std::abs(c));
  return v;
}

TaylorSeries& TaylorSeries::operator+=(const TaylorSeries& o) {
  for (int n = 0; n <= std::min(degree(), o.degree()); ++n) c_[n] += o.c_[n];
  return *this;
}

TaylorSeries& TaylorSeries::operator-=(const TaylorSeries& o) {
  for (int n = 0; n <= std::min(degree(), o.degree()); ++n) c_[n] -= o.c_[n];
  return *this;
}

TaylorSeries& TaylorSeries::operator*=(cplx s) {
  for (cplx& c : c_) c *= s;
  return *this;
}

TaylorSeries operator+(TaylorSeries x, const TaylorSeries& y) { return x += y; }
TaylorSeries operator-(TaylorSeries x, const TaylorSeries& y) { return x -= y; }
TaylorSeries operator*(cplx s, TaylorSeries x) { return x *= s; }

TaylorSeries operator*(const TaylorSeries& x, const TaylorSeries& y) {
  const int d = std::min(x.degree(), y.degree());
  TaylorSeries r(d);
  for (int i = 0; i <= d; ++i) {
    if (x[i] == cplx{}) continue;
    for (int j = 0; i + j <= d; ++j) r[i + j] += x[i] * y[j];
  }
  return r;
}

TaylorSeries reciprocal(const TaylorSeries& x) {
  if (x[0] == cplx{}) throw DomainError("reciprocal: zero constant term");
  TaylorSeries y(x.degree());
  y[0] = 1.0 / x[0];
  for (int n = 1; n <= x.degree(); ++n) {
    cplx acc{};
    for (int j = 1; j <= n; ++j) acc += x[j] * y[n - j];
    y[n] = -acc * y[0];
  }
  return y;
}

}  // namespace umbilic
