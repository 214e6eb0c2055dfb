#pragma once

#include <complex>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include "nash/tolerances.hpp"

namespace nash {

using cd = std::complex<double>;

/// Dense univariate polynomial, coefficients in ascending degree.
///
/// The formal degree is the array length minus one and may exceed the true
/// degree when leading entries vanish; both are kept because root counting at
/// infinity depends on the difference.
class UnivarPoly {
 public:
  UnivarPoly() : c_(1, cd{0.0}) {}
  explicit UnivarPoly(std::vector<cd> ascending);
  UnivarPoly(std::initializer_list<cd> ascending) : UnivarPoly(std::vector<cd>(ascending)) {}

  static UnivarPoly constant(cd c, int formal_degree = 0);
  /// Monic polynomial with the given roots.
  static UnivarPoly from_roots(std::span<const cd> roots);

  int formal_degree() const { return static_cast<int>(c_.size()) - 1; }
  /// Highest index whose coefficient exceeds trim_eps * max|c|; -1 for zero.
  int degree(double trim_eps = 1e-12) const;
  bool is_zero(double trim_eps = 0.0) const { return degree(trim_eps) < 0; }

  std::span<const cd> coeffs() const { return c_; }
  cd operator[](int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : cd{0.0}; }
  cd leading(double trim_eps = 1e-12) const;

  cd operator()(cd x) const;
  /// p(x) and p'(x) in one Horner pass.
  std::pair<cd, cd> eval_with_derivative(cd x) const;
  /// sum |c_i| |x|^i, the natural scale for the backward error at x.
  double abs_eval(double absx) const;

  UnivarPoly derivative() const;
  /// Drops leading coefficients below trim_eps * max|c| (formal degree shrinks).
  UnivarPoly trimmed(double trim_eps = 1e-12) const;
  UnivarPoly monic(double trim_eps = 1e-12) const;
  UnivarPoly with_formal_degree(int n) const;

  double norm() const;      // Euclidean norm of the coefficient vector
  double max_abs() const;

  friend UnivarPoly operator+(const UnivarPoly& a, const UnivarPoly& b);
  friend UnivarPoly operator-(const UnivarPoly& a, const UnivarPoly& b);
  friend UnivarPoly operator*(const UnivarPoly& a, const UnivarPoly& b);
  friend UnivarPoly operator*(cd s, const UnivarPoly& a);

 private:
  std::vector<cd> c_;
};

/// Dense complex polynomial in (z, w); entry (i, j) multiplies z^i w^j.
///
/// Storage is trimmed on construction: coefficients below trim_eps times the
/// largest magnitude become exact zeros and the array shrinks to the smallest
/// rectangle holding the support. The zero polynomial has no support.
class BivarPoly {
 public:
  struct Term {
    int i;
    int j;
    cd c;
  };

  BivarPoly() = default;
  BivarPoly(std::initializer_list<Term> terms, double trim_eps = 1e-12);
  /// rows[i][j] multiplies z^i w^j; rows may have different lengths here
  /// (the JSON reader enforces rectangularity separately).
  static BivarPoly from_rows(const std::vector<std::vector<cd>>& rows, double trim_eps = 1e-12);
  /// Builds sum_j coeffs[j](z) w^j.
  static BivarPoly from_w_coeffs(std::span<const UnivarPoly> coeffs, double trim_eps = 1e-12);

  bool is_zero() const { return nz_ == 0; }
  int deg_total() const { return deg_total_; }
  int deg_z() const { return nz_ - 1; }
  int deg_w() const { return nw_ - 1; }
  bool is_constant() const { return deg_total_ <= 0; }

  cd coeff(int i, int j) const;
  /// Coefficient of w^j as a polynomial in z (formal degree deg_z()).
  UnivarPoly w_coeff(int j) const;
  /// Coefficient of z^i as a polynomial in w (formal degree deg_w()).
  UnivarPoly z_coeff(int i) const;

  cd operator()(cd z, cd w) const;
  /// max over terms of |c_ij| |z|^i |w|^j; the residual scale for (z, w).
  double term_scale(cd z, cd w) const;

  BivarPoly d_z() const;
  BivarPoly d_w() const;

  double norm() const;
  /// Coefficient vector ordered by (i, j) over the support rectangle.
  std::vector<cd> flat() const;

  friend BivarPoly operator+(const BivarPoly& a, const BivarPoly& b);
  friend BivarPoly operator-(const BivarPoly& a, const BivarPoly& b);
  friend BivarPoly operator*(const BivarPoly& a, const BivarPoly& b);
  friend BivarPoly operator*(cd s, const BivarPoly& a);

 private:
  BivarPoly(int nz, int nw, std::vector<cd> data, double trim_eps);
  void normalize_storage(double trim_eps);

  int nz_ = 0;
  int nw_ = 0;
  int deg_total_ = -1;
  std::vector<cd> data_;  // row-major, nz_ x nw_
};

struct RootSet {
  struct Root {
    cd value;
    int multiplicity;
  };
  std::vector<Root> finite_roots;
  int count_at_infinity = 0;

  int finite_count() const;
  std::vector<cd> values() const;
};

/// S(z0, w) as a polynomial in w with formal degree deg_w(S).
UnivarPoly specialize_z(const BivarPoly& s, cd z0);
/// S(z, w0) as a polynomial in z with formal degree deg_z(S).
UnivarPoly specialize_w(const BivarPoly& s, cd w0);

struct Content {
  UnivarPoly q;    // monic
  BivarPoly sbar;  // s = q * sbar
};

/// Splits off the z-only factor q shared by all w-coefficients of s.
Content content_z(const BivarPoly& s, const Tolerances& tol = {});

/// Squarefree part in w of a primitive polynomial: sbar / gcd_w(sbar, d_w sbar).
BivarPoly squarefree_w(const BivarPoly& sbar, const Tolerances& tol = {});

/// Res_w(a, b) as a polynomial in z, by evaluation and interpolation on a circle.
/// Sign convention: lc(a)^deg_w(b) * prod b(alpha_i), so Res_w(w - z, w + z) = 2z.
UnivarPoly resultant_w(const BivarPoly& a, const BivarPoly& b, const Tolerances& tol = {});

/// Sylvester matrix determinant of two univariate polynomials using their
/// formal degrees.
cd sylvester_det(const UnivarPoly& f, const UnivarPoly& g);

/// All roots of p; leading zeros beyond the true degree count as roots at
/// infinity. Multiplicities come from clustering at radius eps.
RootSet roots(const UnivarPoly& p, double eps = 1e-7, const Tolerances& tol = {});

/// Approximate univariate GCD (monic). Throws GcdIllConditioned when the
/// rank decision cannot be certified by the cofactor residuals.
UnivarPoly approx_gcd(const UnivarPoly& f, const UnivarPoly& g, const Tolerances& tol = {});

/// Least-squares quotient of num / den and the relative residual of the fit.
std::pair<UnivarPoly, double> divide(const UnivarPoly& num, const UnivarPoly& den,
                                     double trim_eps = 1e-12);

BivarPoly sphere_normalize(const BivarPoly& s);

}  // namespace nash
