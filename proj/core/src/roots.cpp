#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "nash/error.hpp"
#include "nash/poly.hpp"

namespace nash {
namespace {

constexpr double kMachEps = std::numeric_limits<double>::epsilon();

// Starting points on circles whose radii come from the upper convex hull of
// (i, log|c_i|), i.e. the Newton polygon. Handles wide root-magnitude ranges.
std::vector<cd> initial_guesses(const UnivarPoly& p) {
  const int n = p.formal_degree();
  std::vector<int> idx;
  std::vector<double> lg;
  for (int i = 0; i <= n; ++i) {
    if (p[i] != cd{0.0}) {
      idx.push_back(i);
      lg.push_back(std::log(std::abs(p[i])));
    }
  }
  std::vector<std::size_t> hull;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    while (hull.size() >= 2) {
      const std::size_t a = hull[hull.size() - 2];
      const std::size_t b = hull.back();
      const double cross = (idx[b] - idx[a]) * (lg[k] - lg[a]) - (lg[b] - lg[a]) * (idx[k] - idx[a]);
      if (cross >= 0.0) hull.pop_back();
      else break;
    }
    hull.push_back(k);
  }
  std::vector<cd> z;
  z.reserve(n);
  constexpr double kSigma = 0.7;
  for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
    const int ia = idx[hull[h]];
    const int ib = idx[hull[h + 1]];
    const int span = ib - ia;
    const double radius = std::exp((lg[hull[h]] - lg[hull[h + 1]]) / span);
    for (int t = 0; t < span; ++t) {
      const double angle = 2.0 * std::numbers::pi * t / span + 2.0 * std::numbers::pi * ia / n + kSigma;
      z.push_back(std::polar(radius, angle));
    }
  }
  return z;
}

bool backward_stable(const UnivarPoly& p, cd z, double factor) {
  return std::abs(p(z)) <= factor * kMachEps * p.abs_eval(std::abs(z));
}

bool aberth(const UnivarPoly& p, std::vector<cd>& z, int max_iter) {
  const int n = static_cast<int>(z.size());
  std::vector<char> done(n, 0);
  for (int iter = 0; iter < max_iter; ++iter) {
    int active = 0;
    for (int i = 0; i < n; ++i) {
      if (done[i]) continue;
      auto [val, der] = p.eval_with_derivative(z[i]);
      if (std::abs(val) <= 4.0 * kMachEps * p.abs_eval(std::abs(z[i]))) {
        done[i] = 1;
        continue;
      }
      ++active;
      cd sum{0.0};
      for (int j = 0; j < n; ++j)
        if (j != i) sum += cd{1.0} / (z[i] - z[j]);
      cd corr;
      if (der == cd{0.0}) {
        corr = cd{1e-3 * (1.0 + std::abs(z[i])), 1e-3};
      } else {
        const cd ratio = val / der;
        corr = ratio / (cd{1.0} - ratio * sum);
      }
      z[i] -= corr;
      if (std::abs(corr) <= 2.0 * kMachEps * std::abs(z[i])) done[i] = 1;
    }
    if (active == 0) return true;
  }
  return std::all_of(done.begin(), done.end(), [](char c) { return c != 0; });
}

std::vector<cd> companion_roots(const UnivarPoly& p) {
  const int n = p.formal_degree();
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
  const cd lc = p[n];
  for (int i = 0; i < n; ++i) comp(0, i) = -p[n - 1 - i] / lc;
  for (int i = 1; i < n; ++i) comp(i, i - 1) = cd{1.0};
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  std::vector<cd> r(n);
  for (int i = 0; i < n; ++i) r[i] = es.eigenvalues()(i);
  return r;
}

void newton_polish(const UnivarPoly& p, cd& z) {
  for (int k = 0; k < 3; ++k) {
    auto [val, der] = p.eval_with_derivative(z);
    if (der == cd{0.0}) return;
    const cd next = z - val / der;
    if (!std::isfinite(next.real()) || !std::isfinite(next.imag())) return;
    if (std::abs(p(next)) >= std::abs(val)) return;
    z = next;
  }
}

}  // namespace

RootSet roots(const UnivarPoly& p_in, double eps, const Tolerances& tol) {
  const int deg = p_in.degree(tol.trim_eps);
  if (deg < 0) throw Error(Errc::ZeroPolynomial, "roots of the zero polynomial");
  RootSet out;
  out.count_at_infinity = p_in.formal_degree() - deg;

  UnivarPoly p = p_in.trimmed(tol.trim_eps);
  int zeros = 0;
  while (zeros < deg && p[zeros] == cd{0.0}) ++zeros;
  std::vector<cd> found(static_cast<std::size_t>(zeros), cd{0.0});
  if (zeros > 0) {
    auto c = p.coeffs();
    p = UnivarPoly(std::vector<cd>(c.begin() + zeros, c.end()));
  }
  const int n = p.formal_degree();
  if (n == 1) {
    found.push_back(-p[0] / p[1]);
  } else if (n >= 2) {
    std::vector<cd> z = initial_guesses(p);
    if (!aberth(p, z, tol.max_iter)) {
      z = companion_roots(p);
      for (cd& r : z) newton_polish(p, r);
    }
    for (cd r : z) {
      if (!std::isfinite(r.real()) || !std::isfinite(r.imag()))
        throw Error(Errc::NoConvergence, "non-finite root estimate");
      if (std::abs(p(r)) > tol.root_res * p.abs_eval(std::abs(r)) && !backward_stable(p, r, 64.0))
        throw Error(Errc::NoConvergence, "root residual above tolerance");
      found.push_back(r);
    }
  }

  // Single-linkage clustering at radius eps (relative for large roots).
  const std::size_t m = found.size();
  std::vector<std::size_t> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a + 1; b < m; ++b) {
      const double scale = std::max({1.0, std::abs(found[a]), std::abs(found[b])});
      if (std::abs(found[a] - found[b]) <= eps * scale) parent[find(a)] = find(b);
    }
  std::vector<std::size_t> order;
  for (std::size_t a = 0; a < m; ++a)
    if (find(a) == a) order.push_back(a);
  for (std::size_t rep : order) {
    cd sum{0.0};
    int count = 0;
    for (std::size_t a = 0; a < m; ++a)
      if (find(a) == rep) {
        sum += found[a];
        ++count;
      }
    out.finite_roots.push_back({sum / static_cast<double>(count), count});
  }
  std::sort(out.finite_roots.begin(), out.finite_roots.end(), [](const auto& x, const auto& y) {
    if (std::abs(x.value) != std::abs(y.value)) return std::abs(x.value) < std::abs(y.value);
    return std::arg(x.value) < std::arg(y.value);
  });
  return out;
}

}  // namespace nash
