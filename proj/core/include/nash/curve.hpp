#pragma once

#include <string>
#include <vector>

#include "nash/poly.hpp"
#include "nash/tolerances.hpp"

namespace nash {

/// Why a point is excluded. Ramification and intersection of distinct
/// factors cannot be told apart without an irreducible factorization, so
/// they share one flag.
enum class Category : unsigned {
  VerticalLine = 1u,
  RamificationOrIntersection = 2u,
  Pole = 4u,
};

std::string to_string(Category c);
/// Names of the flags set in mask, in enum order.
std::vector<std::string> category_names(unsigned mask);

struct ExcludedPoint {
  cd location;
  unsigned categories = 0;
  double witness_residual = 0.0;

  bool has(Category c) const { return (categories & static_cast<unsigned>(c)) != 0; }
  /// Excluded for the primitive part too (anything but a pure vertical line).
  bool affects_primitive() const { return has(Category::Pole) || has(Category::RamificationOrIntersection); }
};

struct ExcludedSet {
  std::vector<ExcludedPoint> points;
  int k = 0;
  long long bound = 0;
};

/// 2k + k^2 + k^2 * k(k-1)/2: vertical lines and poles contribute k each,
/// ramification within a factor k^2, pairwise intersections k^2 * C(k, 2).
long long excluded_bound(int k);

/// A polynomial together with its decomposition S = q * sbar, the squarefree
/// part of sbar in w and the full excluded set over the whole plane.
/// Immutable after construction.
class Curve {
 public:
  explicit Curve(BivarPoly s, const Tolerances& tol = {});

  const BivarPoly& poly() const { return s_; }
  const UnivarPoly& content() const { return q_; }
  const BivarPoly& primitive() const { return sbar_; }
  const BivarPoly& squarefree() const { return tilde_; }
  const BivarPoly& squarefree_dz() const { return tilde_dz_; }
  const BivarPoly& squarefree_dw() const { return tilde_dw_; }
  /// a_l(z), the leading w-coefficient of the squarefree part.
  const UnivarPoly& leading() const { return lead_; }
  const Tolerances& tolerances() const { return tol_; }

  bool has_branches() const { return tilde_.deg_w() >= 1; }
  const std::vector<ExcludedPoint>& all_excluded() const { return points_; }
  /// Excluded points in the open disk |z| < rho.
  ExcludedSet excluded_in(double rho) const;
  bool is_class_B(double rho) const;

 private:
  BivarPoly s_;
  UnivarPoly q_;
  BivarPoly sbar_;
  BivarPoly tilde_;
  BivarPoly tilde_dz_;
  BivarPoly tilde_dw_;
  UnivarPoly lead_;
  std::vector<ExcludedPoint> points_;
  Tolerances tol_;
};

ExcludedSet excluded_points(const BivarPoly& s, double rho, const Tolerances& tol = {});
bool is_class_B(const BivarPoly& s, double rho, const Tolerances& tol = {});

/// E_r: the closed disk of radius rho - r minus open r-disks around every
/// excluded point.
struct SafeRegion {
  struct Hole {
    cd center;
    double radius;
  };
  double rho = 0.0;
  double r = 0.0;
  std::vector<Hole> holes;

  double outer_radius() const { return rho - r; }
  bool contains(cd z) const;
};

SafeRegion safe_region(const BivarPoly& s, double rho, double r, const Tolerances& tol = {});

}  // namespace nash
