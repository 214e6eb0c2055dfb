#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "nash/branch.hpp"
#include "nash/poly.hpp"
#include "nash/tolerances.hpp"

namespace nash {

/// A scalar analytic function with an optional batch path. Batch evaluation
/// lets branch evaluators continue along a chain of nearby points instead of
/// restarting from the origin every time.
class Evaluator {
 public:
  using Scalar = std::function<cd(cd)>;
  using Batch = std::function<std::vector<cd>(std::span<const cd>)>;

  explicit Evaluator(Scalar f, Batch batch = {});

  static Evaluator from_branch(const DistinguishedBranch& g);
  static Evaluator from_poly(const UnivarPoly& p);

  cd operator()(cd z) const { return f_(z); }
  std::vector<cd> operator()(std::span<const cd> zs) const;

 private:
  Scalar f_;
  Batch batch_;
};

/// z -> f(factor * z).
Evaluator rescaled(const Evaluator& f, cd factor);
/// z -> f(z) - w0.
Evaluator shifted(const Evaluator& f, cd w0);

struct CompactSpec {
  enum class Kind { FinitePoints, ClosedDisk, Segment };

  Kind kind = Kind::FinitePoints;
  std::vector<cd> points;  // FinitePoints
  cd center{0.0};          // ClosedDisk
  double radius = 0.0;     // ClosedDisk
  cd a{0.0}, b{0.0};       // Segment
  int samples = 512;       // boundary / segment samples

  static CompactSpec finite(std::vector<cd> pts);
  static CompactSpec disk(cd center, double radius, int samples = 512);
  static CompactSpec segment(cd a, cd b, int samples = 512);

  /// Number of points, or max size_t for the continuum kinds.
  std::size_t cardinality() const;
  /// Largest |z - c| over K.
  double extent_from(cd c) const;
  void validate() const;
};

struct DomainSpec {
  cd center{0.0};
  double radius = 1.0;
  int boundary_samples = 512;

  void validate() const;
};

struct ModulusResult {
  double value = 0.0;
  cd argmax{0.0};
  int samples = 0;
};

/// Maximum of |f| on the circle bounding the domain: equispaced samples, then
/// golden-section refinement in the angle around the best sample.
ModulusResult max_modulus(const Evaluator& f, const DomainSpec& domain, const Tolerances& tol = {});
/// Maximum of |f| over K (boundary circle for disks).
ModulusResult max_modulus(const Evaluator& f, const CompactSpec& k, const Tolerances& tol = {});

struct BernsteinReport {
  double B = 0.0;
  double max_on_domain = 0.0;
  double max_on_K = 0.0;
  cd argmax_domain{0.0};
  cd argmax_K{0.0};
  int samples_domain = 0;
  int samples_K = 0;
  double bern_floor = 0.0;
  double golden_tol = 0.0;
};

BernsteinReport bernstein_constant(const Evaluator& f, const CompactSpec& k, const DomainSpec& omega,
                                   const Tolerances& tol = {});

struct Bernstein1912Report {
  double B = 0.0;
  double bound = 0.0;
  bool ok = false;
  double max_ellipse = 0.0;
  double max_interval = 0.0;
  int degree = 0;
};

/// max over the ellipse with foci +-1 and semi-axis sum R, divided by the max
/// over [-1, 1], against the classical bound R^deg.
Bernstein1912Report check_bernstein_1912(const UnivarPoly& p, double R, int samples = 4096);

/// Winding number of f around the circle |z - center| = R. Retries at radii
/// perturbed outward when a zero sits on the circle.
int zero_count(const Evaluator& f, cd center, double R, const Tolerances& tol = {});

struct TijdemanReport {
  int N = 0;
  double B = 0.0;
  double rhs = 0.0;
  bool ok = false;
};

TijdemanReport tijdeman_check(const Evaluator& f, double R, double s, double t, const Tolerances& tol = {});

struct ValencyReport {
  int max_preimages = 0;
  int bound = 0;
  bool ok = false;
  std::vector<cd> probe_values;
  std::vector<int> counts;
};

/// Number of solutions of f(z) = w0 inside the domain disk.
int preimage_count(const Evaluator& f, const DomainSpec& domain, cd w0, const Tolerances& tol = {});

/// Probes values w0 = g(z) at random z in 0.9 * domain and counts their
/// preimages; bound is the degree k of the defining polynomial.
ValencyReport valency_check(int k, const Evaluator& g, const DomainSpec& domain, int probes, std::uint64_t seed,
                            const Tolerances& tol = {});

struct TaylorReport {
  cd a0{0.0};
  std::vector<cd> coeffs;  // a_1 .. a_J
  double radius_used = 0.0;
  int samples = 0;
  double empirical_K = std::numeric_limits<double>::quiet_NaN();
  double geometric_rate = 0.0;  // exp of the fitted slope of log|a_j|
};

/// Taylor coefficients at the origin from the trapezoid rule on |z| = r.
/// samples = 0 picks max(64, next power of two >= 4(J+1)).
TaylorReport taylor_coeffs(const Evaluator& g, double r, int J, int samples = 0);

struct CauchyReport {
  double empirical_K = 0.0;
  std::vector<double> profile;
  bool ok = false;
};

/// Normalized coefficient profile |a_j|/M (rho > 1) or |a_j| (rho/m)^j / M
/// (rho <= 1); ok when the last quartile does not outgrow the rest.
CauchyReport cauchy_bound_check(TaylorReport& rep, double M, double rho, double m_param, const Tolerances& tol = {});

}  // namespace nash
