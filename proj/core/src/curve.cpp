#include "nash/curve.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "nash/error.hpp"

namespace nash {

std::string to_string(Category c) {
  switch (c) {
    case Category::VerticalLine: return "VerticalLine";
    case Category::RamificationOrIntersection: return "Ramification/Intersection";
    case Category::Pole: return "Pole";
  }
  return "Unknown";
}

std::vector<std::string> category_names(unsigned mask) {
  std::vector<std::string> out;
  for (Category c : {Category::VerticalLine, Category::RamificationOrIntersection, Category::Pole})
    if (mask & static_cast<unsigned>(c)) out.push_back(to_string(c));
  return out;
}

long long excluded_bound(int k) {
  if (k < 1) throw Error(Errc::InvalidArgument, "excluded_bound needs k >= 1");
  const long long kk = k;
  return 2 * kk + kk * kk + kk * kk * (kk * (kk - 1) / 2);
}

namespace {

double relative_defect(const UnivarPoly& p, cd z) {
  const double scale = p.abs_eval(std::abs(z));
  return scale > 0.0 ? std::abs(p(z)) / scale : 0.0;
}

bool close(cd a, cd b, double eps) {
  return std::abs(a - b) <= eps * std::max({1.0, std::abs(a), std::abs(b)});
}

void add_point(std::vector<ExcludedPoint>& pts, cd z, Category c, double residual, double eps) {
  for (auto& p : pts) {
    if (close(p.location, z, eps)) {
      p.categories |= static_cast<unsigned>(c);
      p.witness_residual = std::max(p.witness_residual, residual);
      return;
    }
  }
  pts.push_back({z, static_cast<unsigned>(c), residual});
}

// True when the specialization at z0 has a repeated finite root.
bool has_finite_repeated_root(const BivarPoly& tilde, cd z0, const Tolerances& tol) {
  const UnivarPoly f = specialize_z(tilde, z0).trimmed(tol.trim_eps);
  if (f.degree(tol.trim_eps) < 2) return false;
  const RootSet rs = roots(f, tol.cluster_eps, tol);
  return std::any_of(rs.finite_roots.begin(), rs.finite_roots.end(),
                     [](const RootSet::Root& r) { return r.multiplicity > 1; });
}

}  // namespace

Curve::Curve(BivarPoly s, const Tolerances& tol) : s_(std::move(s)), tol_(tol) {
  if (s_.is_zero()) throw Error(Errc::ZeroPolynomial, "curve of the zero polynomial");
  Content c = content_z(s_, tol_);
  q_ = std::move(c.q);
  sbar_ = std::move(c.sbar);

  if (q_.degree(tol_.trim_eps) >= 1) {
    for (const auto& r : roots(q_, tol_.cluster_eps, tol_).finite_roots)
      add_point(points_, r.value, Category::VerticalLine, relative_defect(q_, r.value), tol_.dedup_eps);
  }
  if (sbar_.deg_w() < 1) {
    tilde_ = sbar_;
    lead_ = sbar_.is_zero() ? UnivarPoly{} : sbar_.w_coeff(0);
    return;
  }

  tilde_ = squarefree_w(sbar_, tol_);
  tilde_dz_ = tilde_.d_z();
  tilde_dw_ = tilde_.d_w();
  lead_ = tilde_.w_coeff(tilde_.deg_w());

  std::vector<cd> poles;
  if (lead_.degree(tol_.trim_eps) >= 1) {
    for (const auto& r : roots(lead_, tol_.cluster_eps, tol_).finite_roots) {
      poles.push_back(r.value);
      add_point(points_, r.value, Category::Pole, relative_defect(lead_, r.value), tol_.dedup_eps);
    }
  }

  const UnivarPoly res = resultant_w(tilde_, tilde_dw_, tol_);
  if (res.is_zero())
    throw Error(Errc::GcdIllConditioned, "discriminant vanishes identically; squarefree part is not squarefree");
  if (res.degree(tol_.trim_eps) >= 1) {
    for (const auto& r : roots(res, tol_.cluster_eps, tol_).finite_roots) {
      const bool at_pole =
          std::any_of(poles.begin(), poles.end(), [&](cd p) { return close(p, r.value, tol_.dedup_eps); });
      // At a pole the resultant vanishes through a_l alone; only a genuine
      // finite double root makes it a ramification/intersection point too.
      if (at_pole && !has_finite_repeated_root(tilde_, r.value, tol_)) continue;
      add_point(points_, r.value, Category::RamificationOrIntersection, relative_defect(res, r.value),
                tol_.dedup_eps);
    }
  }
  std::sort(points_.begin(), points_.end(), [](const ExcludedPoint& a, const ExcludedPoint& b) {
    if (std::abs(a.location) != std::abs(b.location)) return std::abs(a.location) < std::abs(b.location);
    return std::arg(a.location) < std::arg(b.location);
  });
}

ExcludedSet Curve::excluded_in(double rho) const {
  ExcludedSet out;
  out.k = std::max(s_.deg_total(), 0);
  out.bound = out.k >= 1 ? excluded_bound(out.k) : 0;
  for (const auto& p : points_)
    if (std::abs(p.location) < rho) out.points.push_back(p);
  return out;
}

bool Curve::is_class_B(double rho) const {
  if (!(rho > 0.0)) throw Error(Errc::InvalidArgument, "rho must be positive");
  return std::none_of(points_.begin(), points_.end(), [&](const ExcludedPoint& p) {
    return std::abs(p.location) < rho && p.affects_primitive();
  });
}

ExcludedSet excluded_points(const BivarPoly& s, double rho, const Tolerances& tol) {
  if (s.is_zero()) throw Error(Errc::ZeroPolynomial, "excluded points of the zero polynomial");
  if (s.is_constant()) return ExcludedSet{};
  return Curve(s, tol).excluded_in(rho);
}

bool is_class_B(const BivarPoly& s, double rho, const Tolerances& tol) {
  return Curve(s, tol).is_class_B(rho);
}

bool SafeRegion::contains(cd z) const {
  if (std::abs(z) > outer_radius()) return false;
  return std::none_of(holes.begin(), holes.end(),
                      [&](const Hole& h) { return std::abs(z - h.center) < h.radius; });
}

SafeRegion safe_region(const BivarPoly& s, double rho, double r, const Tolerances& tol) {
  if (!(r > 0.0) || !(r < rho)) throw Error(Errc::EmptyRegion, "need 0 < r < rho");
  SafeRegion region{rho, r, {}};
  for (const auto& p : excluded_points(s, rho, tol).points) region.holes.push_back({p.location, r});

  const double outer = region.outer_radius();
  const double area_bound = std::numbers::pi * outer * outer -
                            static_cast<double>(region.holes.size()) * std::numbers::pi * r * r;
  if (area_bound > 0.0) return region;

  std::mt19937_64 rng(0x5AFE5EEDull);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  if (region.contains(cd{0.0})) return region;
  for (int i = 0; i < 10000; ++i) {
    const double rad = outer * std::sqrt(unit(rng));
    const double ang = 2.0 * std::numbers::pi * unit(rng);
    if (region.contains(std::polar(rad, ang))) return region;
  }
  throw Error(Errc::EmptyRegion, "no point of the safe region found by rejection sampling");
}

}  // namespace nash
