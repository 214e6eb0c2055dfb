#include "nash/poly.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "nash/error.hpp"

namespace nash {

// ---------------------------------------------------------------------------
// UnivarPoly

UnivarPoly::UnivarPoly(std::vector<cd> ascending) : c_(std::move(ascending)) {
  if (c_.empty()) c_.assign(1, cd{0.0});
}

UnivarPoly UnivarPoly::constant(cd c, int formal_degree) {
  std::vector<cd> v(static_cast<std::size_t>(std::max(formal_degree, 0)) + 1, cd{0.0});
  v[0] = c;
  return UnivarPoly(std::move(v));
}

UnivarPoly UnivarPoly::from_roots(std::span<const cd> roots) {
  std::vector<cd> c{cd{1.0}};
  for (cd r : roots) {
    std::vector<cd> next(c.size() + 1, cd{0.0});
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= r * c[i];
    }
    c = std::move(next);
  }
  return UnivarPoly(std::move(c));
}

double UnivarPoly::max_abs() const {
  double m = 0.0;
  for (cd x : c_) m = std::max(m, std::abs(x));
  return m;
}

int UnivarPoly::degree(double trim_eps) const {
  const double m = max_abs();
  if (m == 0.0) return -1;
  const double cut = trim_eps * m;
  for (int i = formal_degree(); i >= 0; --i) {
    const double a = std::abs(c_[i]);
    if (a > cut && a > 0.0) return i;
  }
  return -1;
}

cd UnivarPoly::leading(double trim_eps) const {
  const int d = degree(trim_eps);
  return d < 0 ? cd{0.0} : c_[d];
}

cd UnivarPoly::operator()(cd x) const {
  cd acc{0.0};
  for (int i = formal_degree(); i >= 0; --i) acc = acc * x + c_[i];
  return acc;
}

std::pair<cd, cd> UnivarPoly::eval_with_derivative(cd x) const {
  cd p{0.0};
  cd dp{0.0};
  for (int i = formal_degree(); i >= 0; --i) {
    dp = dp * x + p;
    p = p * x + c_[i];
  }
  return {p, dp};
}

double UnivarPoly::abs_eval(double absx) const {
  double acc = 0.0;
  for (int i = formal_degree(); i >= 0; --i) acc = acc * absx + std::abs(c_[i]);
  return acc;
}

UnivarPoly UnivarPoly::derivative() const {
  if (formal_degree() == 0) return UnivarPoly{};
  std::vector<cd> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<double>(i);
  return UnivarPoly(std::move(d));
}

UnivarPoly UnivarPoly::trimmed(double trim_eps) const {
  const int d = degree(trim_eps);
  if (d < 0) return UnivarPoly{};
  return UnivarPoly(std::vector<cd>(c_.begin(), c_.begin() + d + 1));
}

UnivarPoly UnivarPoly::monic(double trim_eps) const {
  UnivarPoly t = trimmed(trim_eps);
  const cd lc = t.c_.back();
  if (lc == cd{0.0}) throw Error(Errc::ZeroPolynomial, "monic() of the zero polynomial");
  for (cd& x : t.c_) x /= lc;
  t.c_.back() = cd{1.0};
  return t;
}

UnivarPoly UnivarPoly::with_formal_degree(int n) const {
  std::vector<cd> v(static_cast<std::size_t>(std::max(n, 0)) + 1, cd{0.0});
  for (int i = 0; i <= std::min(n, formal_degree()); ++i) v[i] = c_[i];
  return UnivarPoly(std::move(v));
}

double UnivarPoly::norm() const {
  double s = 0.0;
  for (cd x : c_) s += std::norm(x);
  return std::sqrt(s);
}

UnivarPoly operator+(const UnivarPoly& a, const UnivarPoly& b) {
  std::vector<cd> v(std::max(a.c_.size(), b.c_.size()), cd{0.0});
  for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
  return UnivarPoly(std::move(v));
}

UnivarPoly operator-(const UnivarPoly& a, const UnivarPoly& b) {
  return a + cd{-1.0} * b;
}

UnivarPoly operator*(const UnivarPoly& a, const UnivarPoly& b) {
  std::vector<cd> v(a.c_.size() + b.c_.size() - 1, cd{0.0});
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  return UnivarPoly(std::move(v));
}

UnivarPoly operator*(cd s, const UnivarPoly& a) {
  UnivarPoly r = a;
  for (cd& x : r.c_) x *= s;
  return r;
}

// ---------------------------------------------------------------------------
// BivarPoly

BivarPoly::BivarPoly(int nz, int nw, std::vector<cd> data, double trim_eps)
    : nz_(nz), nw_(nw), data_(std::move(data)) {
  normalize_storage(trim_eps);
}

BivarPoly::BivarPoly(std::initializer_list<Term> terms, double trim_eps) {
  int nz = 0;
  int nw = 0;
  for (const Term& t : terms) {
    if (t.i < 0 || t.j < 0) throw Error(Errc::InvalidArgument, "negative exponent");
    nz = std::max(nz, t.i + 1);
    nw = std::max(nw, t.j + 1);
  }
  std::vector<cd> data(static_cast<std::size_t>(nz) * nw, cd{0.0});
  for (const Term& t : terms) data[static_cast<std::size_t>(t.i) * nw + t.j] += t.c;
  *this = BivarPoly(nz, nw, std::move(data), trim_eps);
}

BivarPoly BivarPoly::from_rows(const std::vector<std::vector<cd>>& rows, double trim_eps) {
  const int nz = static_cast<int>(rows.size());
  int nw = 0;
  for (const auto& r : rows) nw = std::max(nw, static_cast<int>(r.size()));
  std::vector<cd> data(static_cast<std::size_t>(nz) * nw, cd{0.0});
  for (int i = 0; i < nz; ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) data[static_cast<std::size_t>(i) * nw + j] = rows[i][j];
  return BivarPoly(nz, nw, std::move(data), trim_eps);
}

BivarPoly BivarPoly::from_w_coeffs(std::span<const UnivarPoly> coeffs, double trim_eps) {
  const int nw = static_cast<int>(coeffs.size());
  int nz = 0;
  for (const auto& c : coeffs) nz = std::max(nz, c.formal_degree() + 1);
  std::vector<cd> data(static_cast<std::size_t>(nz) * nw, cd{0.0});
  for (int j = 0; j < nw; ++j)
    for (int i = 0; i <= coeffs[j].formal_degree(); ++i) data[static_cast<std::size_t>(i) * nw + j] = coeffs[j][i];
  return BivarPoly(nz, nw, std::move(data), trim_eps);
}

void BivarPoly::normalize_storage(double trim_eps) {
  double m = 0.0;
  for (cd x : data_) {
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
      throw Error(Errc::InvalidArgument, "non-finite polynomial coefficient");
    m = std::max(m, std::abs(x));
  }
  const double cut = trim_eps * m;
  int max_i = -1;
  int max_j = -1;
  deg_total_ = -1;
  for (int i = 0; i < nz_; ++i) {
    for (int j = 0; j < nw_; ++j) {
      cd& x = data_[static_cast<std::size_t>(i) * nw_ + j];
      if (std::abs(x) <= cut) x = cd{0.0};
      if (x != cd{0.0}) {
        max_i = std::max(max_i, i);
        max_j = std::max(max_j, j);
        deg_total_ = std::max(deg_total_, i + j);
      }
    }
  }
  if (max_i < 0) {
    nz_ = nw_ = 0;
    data_.clear();
    return;
  }
  if (max_i + 1 == nz_ && max_j + 1 == nw_) return;
  std::vector<cd> packed(static_cast<std::size_t>(max_i + 1) * (max_j + 1));
  for (int i = 0; i <= max_i; ++i)
    for (int j = 0; j <= max_j; ++j)
      packed[static_cast<std::size_t>(i) * (max_j + 1) + j] = data_[static_cast<std::size_t>(i) * nw_ + j];
  nz_ = max_i + 1;
  nw_ = max_j + 1;
  data_ = std::move(packed);
}

cd BivarPoly::coeff(int i, int j) const {
  if (i < 0 || j < 0 || i >= nz_ || j >= nw_) return cd{0.0};
  return data_[static_cast<std::size_t>(i) * nw_ + j];
}

UnivarPoly BivarPoly::w_coeff(int j) const {
  std::vector<cd> v(static_cast<std::size_t>(std::max(nz_, 1)), cd{0.0});
  for (int i = 0; i < nz_; ++i) v[i] = coeff(i, j);
  return UnivarPoly(std::move(v));
}

UnivarPoly BivarPoly::z_coeff(int i) const {
  std::vector<cd> v(static_cast<std::size_t>(std::max(nw_, 1)), cd{0.0});
  for (int j = 0; j < nw_; ++j) v[j] = coeff(i, j);
  return UnivarPoly(std::move(v));
}

cd BivarPoly::operator()(cd z, cd w) const {
  cd acc{0.0};
  for (int j = nw_ - 1; j >= 0; --j) {
    cd cz{0.0};
    for (int i = nz_ - 1; i >= 0; --i) cz = cz * z + data_[static_cast<std::size_t>(i) * nw_ + j];
    acc = acc * w + cz;
  }
  return acc;
}

double BivarPoly::term_scale(cd z, cd w) const {
  const double az = std::abs(z);
  const double aw = std::abs(w);
  double best = 0.0;
  double zi = 1.0;
  for (int i = 0; i < nz_; ++i, zi *= az) {
    double wj = 1.0;
    for (int j = 0; j < nw_; ++j, wj *= aw)
      best = std::max(best, std::abs(data_[static_cast<std::size_t>(i) * nw_ + j]) * zi * wj);
  }
  return best;
}

BivarPoly BivarPoly::d_z() const {
  if (nz_ <= 1) return BivarPoly{};
  std::vector<cd> d(static_cast<std::size_t>(nz_ - 1) * nw_);
  for (int i = 1; i < nz_; ++i)
    for (int j = 0; j < nw_; ++j)
      d[static_cast<std::size_t>(i - 1) * nw_ + j] = static_cast<double>(i) * coeff(i, j);
  return BivarPoly(nz_ - 1, nw_, std::move(d), 0.0);
}

BivarPoly BivarPoly::d_w() const {
  if (nw_ <= 1) return BivarPoly{};
  std::vector<cd> d(static_cast<std::size_t>(nz_) * (nw_ - 1));
  for (int i = 0; i < nz_; ++i)
    for (int j = 1; j < nw_; ++j)
      d[static_cast<std::size_t>(i) * (nw_ - 1) + j - 1] = static_cast<double>(j) * coeff(i, j);
  return BivarPoly(nz_, nw_ - 1, std::move(d), 0.0);
}

double BivarPoly::norm() const {
  double s = 0.0;
  for (cd x : data_) s += std::norm(x);
  return std::sqrt(s);
}

std::vector<cd> BivarPoly::flat() const { return data_; }

BivarPoly operator+(const BivarPoly& a, const BivarPoly& b) {
  const int nz = std::max(a.nz_, b.nz_);
  const int nw = std::max(a.nw_, b.nw_);
  std::vector<cd> d(static_cast<std::size_t>(nz) * nw, cd{0.0});
  for (int i = 0; i < nz; ++i)
    for (int j = 0; j < nw; ++j) d[static_cast<std::size_t>(i) * nw + j] = a.coeff(i, j) + b.coeff(i, j);
  return BivarPoly(nz, nw, std::move(d), 0.0);
}

BivarPoly operator-(const BivarPoly& a, const BivarPoly& b) { return a + cd{-1.0} * b; }

BivarPoly operator*(const BivarPoly& a, const BivarPoly& b) {
  if (a.is_zero() || b.is_zero()) return BivarPoly{};
  const int nz = a.nz_ + b.nz_ - 1;
  const int nw = a.nw_ + b.nw_ - 1;
  std::vector<cd> d(static_cast<std::size_t>(nz) * nw, cd{0.0});
  for (int i = 0; i < a.nz_; ++i)
    for (int j = 0; j < a.nw_; ++j) {
      const cd x = a.coeff(i, j);
      if (x == cd{0.0}) continue;
      for (int k = 0; k < b.nz_; ++k)
        for (int l = 0; l < b.nw_; ++l) d[static_cast<std::size_t>(i + k) * nw + j + l] += x * b.coeff(k, l);
    }
  return BivarPoly(nz, nw, std::move(d), 0.0);
}

BivarPoly operator*(cd s, const BivarPoly& a) {
  std::vector<cd> d = a.data_;
  for (cd& x : d) x *= s;
  return BivarPoly(a.nz_, a.nw_, std::move(d), 0.0);
}

// ---------------------------------------------------------------------------
// RootSet

int RootSet::finite_count() const {
  int n = 0;
  for (const auto& r : finite_roots) n += r.multiplicity;
  return n;
}

std::vector<cd> RootSet::values() const {
  std::vector<cd> v;
  v.reserve(finite_roots.size());
  for (const auto& r : finite_roots) v.push_back(r.value);
  return v;
}

// ---------------------------------------------------------------------------
// Specialization and normalization

UnivarPoly specialize_z(const BivarPoly& s, cd z0) {
  if (s.is_zero()) return UnivarPoly{};
  std::vector<cd> v(static_cast<std::size_t>(s.deg_w()) + 1);
  for (int j = 0; j <= s.deg_w(); ++j) {
    cd acc{0.0};
    for (int i = s.deg_z(); i >= 0; --i) acc = acc * z0 + s.coeff(i, j);
    v[j] = acc;
  }
  return UnivarPoly(std::move(v));
}

UnivarPoly specialize_w(const BivarPoly& s, cd w0) {
  if (s.is_zero()) return UnivarPoly{};
  std::vector<cd> v(static_cast<std::size_t>(s.deg_z()) + 1);
  for (int i = 0; i <= s.deg_z(); ++i) {
    cd acc{0.0};
    for (int j = s.deg_w(); j >= 0; --j) acc = acc * w0 + s.coeff(i, j);
    v[i] = acc;
  }
  return UnivarPoly(std::move(v));
}

BivarPoly sphere_normalize(const BivarPoly& s) {
  if (s.is_zero()) throw Error(Errc::ZeroPolynomial, "cannot normalize the zero polynomial");
  return cd{1.0 / s.norm()} * s;
}

// ---------------------------------------------------------------------------
// Resultant

cd sylvester_det(const UnivarPoly& f, const UnivarPoly& g) {
  const int m = f.formal_degree();
  const int n = g.formal_degree();
  const int size = m + n;
  if (size == 0) return cd{1.0};
  Eigen::MatrixXcd mat = Eigen::MatrixXcd::Zero(size, size);
  for (int r = 0; r < n; ++r)
    for (int k = 0; k <= m; ++k) mat(r, r + k) = f[m - k];
  for (int r = 0; r < m; ++r)
    for (int k = 0; k <= n; ++k) mat(n + r, r + k) = g[n - k];
  return mat.partialPivLu().determinant();
}

UnivarPoly resultant_w(const BivarPoly& a, const BivarPoly& b, const Tolerances& tol) {
  if (a.is_zero() || b.is_zero()) return UnivarPoly{};
  const int m = a.deg_w();
  const int n = b.deg_w();
  if (m < 1 && n < 1) throw Error(Errc::BothConstantInW, "resultant needs a factor of positive degree in w");

  // Bezout bound and the Sylvester row-degree bound; either suffices.
  const int bound = std::min(a.deg_total() * b.deg_total(), n * a.deg_z() + m * b.deg_z());
  const int count = bound + 1;
  std::vector<cd> values(count);
  std::vector<cd> nodes(count);
  for (int t = 0; t < count; ++t) {
    nodes[t] = std::polar(1.0, 2.0 * std::numbers::pi * t / count);
    values[t] = sylvester_det(specialize_z(a, nodes[t]), specialize_z(b, nodes[t]));
  }
  std::vector<cd> coeffs(count, cd{0.0});
  for (int j = 0; j < count; ++j) {
    cd acc{0.0};
    for (int t = 0; t < count; ++t) acc += values[t] * std::conj(std::pow(nodes[t], j));
    coeffs[j] = acc / static_cast<double>(count);
  }
  double mx = 0.0;
  for (cd c : coeffs) mx = std::max(mx, std::abs(c));
  for (cd& c : coeffs)
    if (std::abs(c) <= tol.trim_eps * mx) c = cd{0.0};
  return UnivarPoly(std::move(coeffs));
}

// ---------------------------------------------------------------------------
// Content and squarefree part

Content content_z(const BivarPoly& s, const Tolerances& tol) {
  if (s.is_zero()) throw Error(Errc::ZeroPolynomial, "content of the zero polynomial");
  UnivarPoly g;
  bool have = false;
  for (int j = 0; j <= s.deg_w(); ++j) {
    const UnivarPoly c = s.w_coeff(j);
    if (c.is_zero()) continue;
    if (!have) {
      g = c.trimmed(tol.trim_eps);
      have = true;
    } else {
      g = approx_gcd(g, c, tol);
    }
    if (g.degree(tol.trim_eps) == 0) break;
  }
  if (g.degree(tol.trim_eps) <= 0) return {UnivarPoly{cd{1.0}}, s};

  UnivarPoly q = g.monic(tol.trim_eps);
  std::vector<UnivarPoly> quotients;
  quotients.reserve(static_cast<std::size_t>(s.deg_w()) + 1);
  for (int j = 0; j <= s.deg_w(); ++j) {
    const UnivarPoly c = s.w_coeff(j);
    if (c.is_zero()) {
      quotients.emplace_back();
      continue;
    }
    quotients.push_back(divide(c, q, tol.trim_eps).first);
  }
  BivarPoly sbar = BivarPoly::from_w_coeffs(quotients, tol.trim_eps);
  BivarPoly qs = BivarPoly::from_w_coeffs(std::vector<UnivarPoly>{q}, 0.0);
  const double residual = (s - qs * sbar).norm();
  if (residual > tol.gcd_eps * s.norm())
    throw Error(Errc::GcdIllConditioned, "content division residual " + std::to_string(residual));
  return {q, sbar};
}

namespace {

// Generic probe points for degree decisions; irrational-looking on purpose.
constexpr cd kProbe0{0.5773502691896258, 0.3141592653589793};
constexpr cd kProbe1{-0.7071067811865476, 0.4142135623730950};

int univariate_gcd_degree(const BivarPoly& s, cd z, const Tolerances& tol) {
  const UnivarPoly f = specialize_z(s, z);
  if (f.degree(tol.trim_eps) < s.deg_w()) return -1;  // degree drop: not a generic point
  return approx_gcd(f, f.derivative(), tol).degree(tol.trim_eps);
}

}  // namespace

BivarPoly squarefree_w(const BivarPoly& sbar, const Tolerances& tol) {
  if (sbar.is_zero()) throw Error(Errc::ZeroPolynomial, "squarefree part of the zero polynomial");
  if (sbar.deg_w() < 1) throw Error(Errc::InvalidArgument, "squarefree_w needs deg_w >= 1");
  const int n = sbar.deg_w();
  if (n == 1) return sbar;

  int d = -1;
  for (cd z : {kProbe0, kProbe1}) {
    const int dz = univariate_gcd_degree(sbar, z, tol);
    if (dz >= 0) d = d < 0 ? dz : std::min(d, dz);
  }
  if (d < 0) throw Error(Errc::GcdIllConditioned, "no generic probe point for the squarefree test");
  if (d == 0) return sbar;

  // Interpolate R(z, w) = sbar(z, w) / monic_w(G)(z, w) on a circle; R equals
  // the squarefree part times lc_w(G)(z), which the content step removes.
  const int count = sbar.deg_z() + 3;
  for (int attempt = 0; attempt < 4; ++attempt) {
    const double phase = 0.37 + 0.91 * attempt;
    std::vector<std::vector<cd>> samples;  // samples[t][j]
    std::vector<cd> nodes(count);
    bool ok = true;
    for (int t = 0; t < count && ok; ++t) {
      nodes[t] = std::polar(1.0, phase + 2.0 * std::numbers::pi * t / count);
      const UnivarPoly f = specialize_z(sbar, nodes[t]);
      if (f.degree(tol.trim_eps) < n) {
        ok = false;
        break;
      }
      const UnivarPoly g = approx_gcd(f, f.derivative(), tol);
      if (g.degree(tol.trim_eps) != d) {
        ok = false;
        break;
      }
      auto [quot, res] = divide(f, g.monic(tol.trim_eps), tol.trim_eps);
      if (res > tol.gcd_eps) throw Error(Errc::GcdIllConditioned, "squarefree division residual");
      std::vector<cd> row(static_cast<std::size_t>(n - d) + 1, cd{0.0});
      for (int j = 0; j <= n - d; ++j) row[j] = quot[j];
      samples.push_back(std::move(row));
    }
    if (!ok) continue;

    std::vector<UnivarPoly> wcoeffs;
    for (int j = 0; j <= n - d; ++j) {
      std::vector<cd> c(count, cd{0.0});
      for (int i = 0; i < count; ++i) {
        cd acc{0.0};
        for (int t = 0; t < count; ++t) acc += samples[t][j] * std::conj(std::pow(nodes[t], i));
        c[i] = acc / static_cast<double>(count);
      }
      wcoeffs.emplace_back(std::move(c));
    }
    BivarPoly r = BivarPoly::from_w_coeffs(wcoeffs, tol.trim_eps);
    BivarPoly tilde = content_z(r, tol).sbar;
    tilde = cd{sbar.norm() / tilde.norm()} * tilde;

    for (cd z : {kProbe0, kProbe1}) {
      const UnivarPoly num = specialize_z(sbar, z);
      const UnivarPoly den = specialize_z(tilde, z).trimmed(tol.trim_eps);
      if (den.degree(tol.trim_eps) < 1) continue;
      if (divide(num, den, tol.trim_eps).second > tol.gcd_eps)
        throw Error(Errc::GcdIllConditioned, "squarefree part does not divide the input");
    }
    return tilde;
  }
  throw Error(Errc::GcdIllConditioned, "could not find generic interpolation nodes");
}

}  // namespace nash
