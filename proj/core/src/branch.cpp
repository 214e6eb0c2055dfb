#include "nash/branch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "nash/error.hpp"

namespace nash {
namespace {

double segment_distance(cd p, cd a, cd b) {
  const cd ab = b - a;
  const double len2 = std::norm(ab);
  if (len2 == 0.0) return std::abs(p - a);
  const double t = std::clamp(((p - a) * std::conj(ab)).real() / len2, 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

bool finite(cd x) { return std::isfinite(x.real()) && std::isfinite(x.imag()); }

double relative_residual(const BivarPoly& f, cd z, cd w) {
  const double scale = f.term_scale(z, w);
  return scale > 0.0 ? std::abs(f(z, w)) / scale : std::abs(f(z, w));
}

enum class StepOutcome { Accepted, NewtonFailed, Jumped };

struct StepResult {
  StepOutcome outcome;
  cd w;
  int iterations;
  double residual;
};

class Tracker {
 public:
  Tracker(const Curve& curve, const ContinuationOptions& opts)
      : f_(curve.squarefree()), fz_(curve.squarefree_dz()), fw_(curve.squarefree_dw()),
        tol_(curve.tolerances()), opts_(opts) {}

  StepResult step(cd z, cd w, cd z1) const {
    const cd slope_den = fw_(z, w);
    if (slope_den == cd{0.0} || !finite(slope_den)) return {StepOutcome::NewtonFailed, w, 0, 0.0};
    const cd w_pred = w - fz_(z, w) / slope_den * (z1 - z);
    cd wc = w_pred;
    int iters = 0;
    bool converged = false;
    for (int it = 1; it <= opts_.max_newton; ++it) {
      const cd der = fw_(z1, wc);
      if (der == cd{0.0} || !finite(der)) break;
      const cd d = f_(z1, wc) / der;
      wc -= d;
      iters = it;
      if (!finite(wc)) break;
      if (std::abs(d) <= 1e-13 * std::max(1.0, std::abs(wc))) {
        converged = true;
        break;
      }
    }
    if (!converged) return {StepOutcome::NewtonFailed, w, iters, 0.0};
    const double res = relative_residual(f_, z1, wc);
    if (!(res <= tol_.branch_res)) return {StepOutcome::NewtonFailed, w, iters, res};

    if (f_.deg_w() >= 2) {
      // Reject the step if the corrector moved further than half the gap to
      // the nearest competing root: the tracked branch may have jumped.
      RootSet rs;
      try {
        rs = roots(specialize_z(f_, z1), tol_.cluster_eps, tol_);
      } catch (const Error&) {
        return {StepOutcome::Jumped, w, iters, res};
      }
      std::size_t best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < rs.finite_roots.size(); ++i) {
        const double d = std::abs(rs.finite_roots[i].value - wc);
        if (d < best_d) {
          best_d = d;
          best = i;
        }
      }
      if (rs.finite_roots.empty() || rs.finite_roots[best].multiplicity > 1 ||
          best_d > 1e-6 * std::max(1.0, std::abs(wc)))
        return {StepOutcome::Jumped, w, iters, res};
      double sep = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < rs.finite_roots.size(); ++i)
        if (i != best) sep = std::min(sep, std::abs(rs.finite_roots[i].value - rs.finite_roots[best].value));
      if (!(std::abs(wc - w_pred) < 0.5 * sep)) return {StepOutcome::Jumped, w, iters, res};
    }
    return {StepOutcome::Accepted, wc, iters, res};
  }

  cd polish(cd z, cd w) const {
    for (int it = 0; it < 8 && relative_residual(f_, z, w) > 1e-3 * tol_.branch_res; ++it) {
      const cd der = fw_(z, w);
      if (der == cd{0.0}) break;
      const cd next = w - f_(z, w) / der;
      if (!finite(next)) break;
      w = next;
    }
    return w;
  }

  double residual(cd z, cd w) const { return relative_residual(f_, z, w); }

 private:
  const BivarPoly& f_;
  const BivarPoly& fz_;
  const BivarPoly& fw_;
  const Tolerances& tol_;
  const ContinuationOptions& opts_;
};

}  // namespace

bool Monodromy::is_identity() const {
  for (std::size_t i = 0; i < permutation.size(); ++i)
    if (permutation[i] != static_cast<int>(i)) return false;
  return true;
}

std::vector<cd> branch_values(const Curve& curve, cd z) {
  const Tolerances& tol = curve.tolerances();
  for (const auto& p : curve.all_excluded()) {
    if (!p.affects_primitive()) continue;
    if (std::abs(p.location - z) <= tol.dedup_eps * std::max(1.0, std::abs(z)))
      throw Error(Errc::NearExcludedPoint, "branch values requested at an excluded point");
  }
  if (!curve.has_branches()) return {};
  const UnivarPoly f = specialize_z(curve.squarefree(), z);
  if (f.degree(tol.trim_eps) < 1) return {};
  const RootSet rs = roots(f, tol.cluster_eps, tol);
  std::vector<cd> out;
  for (const auto& r : rs.finite_roots) {
    if (r.multiplicity > 1) throw Error(Errc::NearExcludedPoint, "branch values are not separated at this point");
    out.push_back(r.value);
  }
  return out;
}

std::vector<cd> branch_values(const BivarPoly& s, cd z, const Tolerances& tol) {
  return branch_values(Curve(s, tol), z);
}

BranchPath continue_branch(const Curve& curve, cd start_z, cd start_w, std::span<const cd> path,
                           const ContinuationOptions& opts) {
  if (!curve.has_branches()) throw Error(Errc::InvalidArgument, "curve has no branches over the z-plane");
  std::vector<cd> vertices{start_z};
  for (cd p : path)
    if (p != vertices.back()) vertices.push_back(p);

  for (std::size_t s = 0; s + 1 < vertices.size(); ++s)
    for (const auto& p : curve.all_excluded())
      if (p.affects_primitive() && segment_distance(p.location, vertices[s], vertices[s + 1]) < opts.r_margin)
        throw Error(Errc::NearExcludedPoint, "path passes within r_margin of an excluded point");

  Tracker tracker(curve, opts);
  const double branch_res = curve.tolerances().branch_res;
  BranchPath out;
  out.poly = curve.squarefree();
  out.min_step = std::numeric_limits<double>::infinity();

  cd w = start_w;
  // Rounded start values are polished; a start far from the curve is an error.
  if (!(tracker.residual(start_z, w) <= branch_res)) w = tracker.polish(start_z, w);
  const double start_res = tracker.residual(start_z, w);
  if (!(start_res <= branch_res) || std::abs(w - start_w) > 1e-6 * std::max(1.0, std::abs(start_w)))
    throw Error(Errc::NewtonDivergence, "start point is not on the curve");
  out.samples.push_back({start_z, w, start_res});
  out.max_residual = start_res;

  cd z = start_z;
  double h = opts.max_step;
  double last_res = start_res;
  for (std::size_t s = 0; s + 1 < vertices.size(); ++s) {
    const cd a = vertices[s];
    const cd b = vertices[s + 1];
    const double len = std::abs(b - a);
    double done = 0.0;
    while (done < len) {
      const double step = std::min(h, len - done);
      // Snap to the vertex when rounding would otherwise leave a sliver.
      const bool last = done + step >= len * (1.0 - 1e-12);
      const cd z1 = last ? b : a + (b - a) * ((done + step) / len);
      const StepResult r = tracker.step(z, w, z1);
      if (r.outcome != StepOutcome::Accepted) {
        h = step / 2.0;
        if (h < opts.min_step) {
          if (r.outcome == StepOutcome::NewtonFailed)
            throw Error(Errc::NewtonDivergence, "corrector failed down to the minimum step");
          throw Error(Errc::StepUnderflow, "step below minimum; path too close to a ramification point");
        }
        continue;
      }
      z = z1;
      w = r.w;
      done = last ? len : done + step;
      out.min_step = std::min(out.min_step, step);
      out.max_step = std::max(out.max_step, step);
      out.max_residual = std::max(out.max_residual, r.residual);
      if (opts.record_samples || (last && s + 2 == vertices.size())) out.samples.push_back({z, w, r.residual});
      last_res = r.residual;
      if (r.iterations <= 2) h = std::min(h * 1.5, opts.max_step);
    }
  }
  if (out.samples.back().z != z || out.samples.size() == 1) out.samples.push_back({z, w, last_res});
  if (!std::isfinite(out.min_step)) out.min_step = 0.0;
  return out;
}

std::vector<cd> circle_loop(cd center, double radius, int segments) {
  std::vector<cd> pts;
  pts.reserve(static_cast<std::size_t>(segments) + 1);
  for (int t = 0; t <= segments; ++t)
    pts.push_back(t == segments ? center + radius : center + std::polar(radius, 2.0 * std::numbers::pi * t / segments));
  return pts;
}

Monodromy monodromy(const Curve& curve, cd base, std::span<const cd> loop, const ContinuationOptions& opts) {
  Monodromy m;
  m.base = base;
  m.loop.assign(loop.begin(), loop.end());
  if (m.loop.empty() || m.loop.back() != base) m.loop.push_back(base);
  m.start_values = branch_values(curve, base);
  const std::size_t n = m.start_values.size();

  double min_sep = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) min_sep = std::min(min_sep, std::abs(m.start_values[i] - m.start_values[j]));

  ContinuationOptions quiet = opts;
  quiet.record_samples = false;
  std::vector<char> used(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const BranchPath p = continue_branch(curve, base, m.start_values[i], m.loop, quiet);
    m.max_residual = std::max(m.max_residual, p.max_residual);
    const cd end = p.end_w();
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
      const double d = std::abs(end - m.start_values[j]);
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    const double limit = n > 1 ? 0.5 * min_sep : 1e-6 * std::max(1.0, std::abs(end));
    if (best_d > limit || used[best]) throw Error(Errc::AmbiguousMatching, "loop end values do not match start values");
    used[best] = 1;
    m.permutation.push_back(static_cast<int>(best));
  }
  return m;
}

// ---------------------------------------------------------------------------
// DistinguishedBranch

DistinguishedBranch::DistinguishedBranch(std::shared_ptr<const Curve> curve, double rho, cd origin_value,
                                         const ContinuationOptions& opts)
    : curve_(std::move(curve)), rho_(rho), origin_value_(origin_value), opts_(opts) {
  opts_.record_samples = false;
}

std::vector<cd> DistinguishedBranch::radial_path(cd z) const {
  const double len = std::abs(z);
  if (len == 0.0) return {};
  const cd u = z / len;
  const double rm = opts_.r_margin;
  const double bend = 3.0 * rm;

  struct Detour {
    double t;
    double side;
  };
  std::vector<Detour> detours;
  for (const auto& p : curve_->all_excluded()) {
    const cd local = std::conj(u) * p.location;
    if (std::abs(local.imag()) < 1.5 * rm && local.real() > bend && local.real() < len - bend)
      detours.push_back({local.real(), local.imag() >= 0.0 ? -1.0 : 1.0});
  }
  std::sort(detours.begin(), detours.end(), [](const Detour& a, const Detour& b) { return a.t < b.t; });

  std::vector<cd> path;
  constexpr int kArc = 8;
  for (const Detour& d : detours) {
    const cd center = d.t * u;
    for (int k = 0; k <= kArc; ++k) {
      const double phi = std::numbers::pi * (1.0 - static_cast<double>(k) / kArc);
      path.push_back(center + bend * u * cd{std::cos(phi), d.side * std::sin(phi)});
    }
  }
  path.push_back(z);
  return path;
}

BranchPath DistinguishedBranch::path_to(cd z) const {
  ContinuationOptions o = opts_;
  o.record_samples = true;
  const std::vector<cd> path = radial_path(z);
  return continue_branch(*curve_, cd{0.0}, origin_value_, path, o);
}

cd DistinguishedBranch::operator()(cd z) const {
  if (z == cd{0.0}) return origin_value_;
  const std::vector<cd> path = radial_path(z);
  return continue_branch(*curve_, cd{0.0}, origin_value_, path, opts_).end_w();
}

bool DistinguishedBranch::chord_clear(cd a, cd b) const {
  for (const auto& p : curve_->all_excluded())
    if (segment_distance(p.location, a, b) < 2.0 * opts_.r_margin) return false;
  return true;
}

std::vector<cd> DistinguishedBranch::evaluate_chain(std::span<const cd> zs) const {
  std::vector<cd> out;
  out.reserve(zs.size());
  for (std::size_t i = 0; i < zs.size(); ++i) {
    if (i > 0 && chord_clear(zs[i - 1], zs[i])) {
      try {
        const cd target[1] = {zs[i]};
        out.push_back(continue_branch(*curve_, zs[i - 1], out.back(), target, opts_).end_w());
        continue;
      } catch (const Error&) {
        // fall through to a fresh ray from the origin
      }
    }
    out.push_back((*this)(zs[i]));
  }
  return out;
}

DistinguishedBranch select_g_S(std::shared_ptr<const Curve> curve, double rho, ContinuationOptions opts) {
  if (!(rho > 0.0)) throw Error(Errc::InvalidArgument, "rho must be positive");
  if (opts.r_margin <= 0.0) opts.r_margin = curve->tolerances().r_margin * rho;
  if (!curve->is_class_B(rho)) throw Error(Errc::NotClassB, "excluded points of the primitive part inside D_rho");
  if (!curve->has_branches()) throw Error(Errc::NoZeroBranch, "polynomial does not depend on w");

  const std::vector<cd> vals = branch_values(*curve, cd{0.0});
  double scale = 1.0;
  for (cd v : vals) scale = std::max(scale, std::abs(v));
  const double zero_tol = 10.0 * curve->tolerances().branch_res * scale;
  std::vector<cd> zeros;
  for (cd v : vals)
    if (std::abs(v) <= zero_tol) zeros.push_back(v);
  if (zeros.empty()) throw Error(Errc::NoZeroBranch, "no branch passes through the origin");
  if (zeros.size() > 1) throw Error(Errc::MultipleZeroBranches, "several branches vanish at the origin");
  return DistinguishedBranch(std::move(curve), rho, zeros.front(), opts);
}

DistinguishedBranch select_g_S(const BivarPoly& s, double rho, const Tolerances& tol, ContinuationOptions opts) {
  return select_g_S(std::make_shared<const Curve>(s, tol), rho, opts);
}

}  // namespace nash
