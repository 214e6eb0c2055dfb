// Approximate univariate GCD via SVD rank decisions on Sylvester subresultant
// matrices, with cofactor refinement by linear least squares.

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "nash/error.hpp"
#include "nash/poly.hpp"

namespace nash {
namespace {

// Matrix of v -> p * v for deg v = k.
Eigen::MatrixXcd convolution_matrix(const UnivarPoly& p, int k) {
  const int m = p.formal_degree();
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(m + k + 1, k + 1);
  for (int col = 0; col <= k; ++col)
    for (int i = 0; i <= m; ++i) c(col + i, col) = p[i];
  return c;
}

Eigen::VectorXcd as_vector(const UnivarPoly& p) {
  Eigen::VectorXcd v(p.formal_degree() + 1);
  for (int i = 0; i <= p.formal_degree(); ++i) v(i) = p[i];
  return v;
}

UnivarPoly from_vector(const Eigen::VectorXcd& v) {
  return UnivarPoly(std::vector<cd>(v.data(), v.data() + v.size()));
}

Eigen::VectorXcd least_squares(const Eigen::MatrixXcd& a, const Eigen::VectorXcd& b) {
  return a.colPivHouseholderQr().solve(b);
}

double relative_residual(const UnivarPoly& target, const UnivarPoly& a, const UnivarPoly& b) {
  const double n = target.norm();
  if (n == 0.0) return 0.0;
  return (target - a * b).norm() / n;
}

}  // namespace

std::pair<UnivarPoly, double> divide(const UnivarPoly& num, const UnivarPoly& den, double trim_eps) {
  const UnivarPoly d = den.trimmed(trim_eps);
  if (d.is_zero()) throw Error(Errc::ZeroPolynomial, "division by the zero polynomial");
  const UnivarPoly n = num.trimmed(trim_eps);
  if (n.is_zero()) return {UnivarPoly{}, 0.0};
  const int k = n.formal_degree() - d.formal_degree();
  if (k < 0) return {UnivarPoly{}, 1.0};
  const Eigen::MatrixXcd c = convolution_matrix(d, k);
  const UnivarPoly quot = from_vector(least_squares(c, as_vector(n)));
  return {quot, relative_residual(n, d, quot)};
}

UnivarPoly approx_gcd(const UnivarPoly& f_in, const UnivarPoly& g_in, const Tolerances& tol) {
  const UnivarPoly ft = f_in.trimmed(tol.trim_eps);
  const UnivarPoly gt = g_in.trimmed(tol.trim_eps);
  if (ft.is_zero() && gt.is_zero()) throw Error(Errc::ZeroPolynomial, "gcd(0, 0) is undefined");
  if (ft.is_zero()) return gt.monic(tol.trim_eps);
  if (gt.is_zero()) return ft.monic(tol.trim_eps);
  const int m = ft.formal_degree();
  const int n = gt.formal_degree();
  if (m == 0 || n == 0) return UnivarPoly{cd{1.0}};

  const UnivarPoly f = cd{1.0 / ft.norm()} * ft;
  const UnivarPoly g = cd{1.0 / gt.norm()} * gt;

  for (int d = std::min(m, n); d >= 1; --d) {
    // [C_{n-d}(f) | -C_{m-d}(g)] [v; u] = 0  <=>  f v = g u.
    Eigen::MatrixXcd sd(m + n - d + 1, (n - d + 1) + (m - d + 1));
    sd << convolution_matrix(f, n - d), -convolution_matrix(g, m - d);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(sd, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double smax = sv(0);
    const double smin = sv(sv.size() - 1);
    if (smin > tol.gcd_eps * smax) continue;

    const Eigen::VectorXcd null = svd.matrixV().col(sd.cols() - 1);
    UnivarPoly v = from_vector(null.head(n - d + 1));
    UnivarPoly u = from_vector(null.tail(m - d + 1));
    UnivarPoly h;
    for (int round = 0; round < 3; ++round) {
      Eigen::MatrixXcd stacked(m + n + 2, d + 1);
      stacked << convolution_matrix(u, d), convolution_matrix(v, d);
      Eigen::VectorXcd rhs(m + n + 2);
      rhs << as_vector(f), as_vector(g);
      h = from_vector(least_squares(stacked, rhs));
      u = from_vector(least_squares(convolution_matrix(h, m - d), as_vector(f)));
      v = from_vector(least_squares(convolution_matrix(h, n - d), as_vector(g)));
    }
    const double res = std::max(relative_residual(f, u, h), relative_residual(g, v, h));
    if (res > tol.gcd_eps)
      throw Error(Errc::GcdIllConditioned,
                  "rank-deficient subresultant of order " + std::to_string(d) + " but cofactor residual " +
                      std::to_string(res));
    return h.monic(tol.trim_eps);
  }
  return UnivarPoly{cd{1.0}};
}

}  // namespace nash
