#pragma once

#include <memory>
#include <span>
#include <vector>

#include "nash/curve.hpp"
#include "nash/poly.hpp"

namespace nash {

struct ContinuationOptions {
  double max_step = 0.1;    // largest step in z
  double min_step = 1e-12;  // below this the path is too close to a ramification point
  double r_margin = 1e-3;   // required clearance from excluded points of the primitive part
  int max_newton = 4;       // corrector iterations before the step is halved
  bool record_samples = true;
};

struct PathSample {
  cd z;
  cd w;
  double residual;  // |S~(z, w)| / term_scale(z, w)
};

/// A branch of the squarefree part continued along a polyline.
struct BranchPath {
  BivarPoly poly;
  std::vector<PathSample> samples;  // always holds at least the start and the end
  double max_residual = 0.0;
  double min_step = 0.0;
  double max_step = 0.0;

  cd end_z() const { return samples.back().z; }
  cd end_w() const { return samples.back().w; }
};

struct Monodromy {
  cd base;
  std::vector<cd> loop;
  std::vector<cd> start_values;
  std::vector<int> permutation;  // branch i ends on start value permutation[i]
  double max_residual = 0.0;

  bool is_identity() const;
};

/// The simple roots of S~(z, .) at a point away from the excluded set.
std::vector<cd> branch_values(const Curve& curve, cd z);
std::vector<cd> branch_values(const BivarPoly& s, cd z, const Tolerances& tol = {});

/// Predictor-corrector continuation of the branch through (start_z, start_w)
/// along start_z -> path[0] -> path[1] -> ...
BranchPath continue_branch(const Curve& curve, cd start_z, cd start_w, std::span<const cd> path,
                           const ContinuationOptions& opts = {});

/// Permutation of branch values after continuing each of them around a loop
/// based at `base`. The loop is closed automatically.
Monodromy monodromy(const Curve& curve, cd base, std::span<const cd> loop, const ContinuationOptions& opts = {});

/// Closed polygon approximating the circle |z - center| = radius, starting and
/// ending at center + radius.
std::vector<cd> circle_loop(cd center, double radius, int segments = 64);

/// The branch g with g(0) = 0 of a class-B polynomial, evaluated by
/// continuation from the origin along rays (bent around content zeros).
/// Copies share the underlying curve; evaluation does not mutate state.
class DistinguishedBranch {
 public:
  DistinguishedBranch(std::shared_ptr<const Curve> curve, double rho, cd origin_value,
                      const ContinuationOptions& opts);

  cd operator()(cd z) const;
  /// Values along a chain of points: radial to the first, then chords between
  /// neighbours, falling back to a ray whenever a chord is not clear.
  std::vector<cd> evaluate_chain(std::span<const cd> zs) const;
  /// The full continuation path from the origin to z.
  BranchPath path_to(cd z) const;
  /// Polyline from 0 to z used by path_to().
  std::vector<cd> radial_path(cd z) const;

  const Curve& curve() const { return *curve_; }
  std::shared_ptr<const Curve> curve_ptr() const { return curve_; }
  double rho() const { return rho_; }
  const ContinuationOptions& options() const { return opts_; }

 private:
  bool chord_clear(cd a, cd b) const;

  std::shared_ptr<const Curve> curve_;
  double rho_;
  cd origin_value_;
  ContinuationOptions opts_;
};

/// Options default r_margin to 1e-3 * rho when left at zero.
DistinguishedBranch select_g_S(const BivarPoly& s, double rho, const Tolerances& tol = {},
                               ContinuationOptions opts = {.r_margin = 0.0});
DistinguishedBranch select_g_S(std::shared_ptr<const Curve> curve, double rho,
                               ContinuationOptions opts = {.r_margin = 0.0});

}  // namespace nash
