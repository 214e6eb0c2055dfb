#include "nash/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include "nash/error.hpp"
#include "nash/fft.hpp"
#include "nash/random.hpp"

namespace nash {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require(bool cond, const char* msg) {
  if (!cond) throw Error(Errc::InvalidArgument, msg);
}

// Golden-section search for the maximum of |f(gamma(t))| on [lo, hi].
ModulusResult golden_max(const Evaluator& f, const std::function<cd(double)>& gamma, double lo, double hi,
                         double gtol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = std::abs(f(gamma(x1)));
  double f2 = std::abs(f(gamma(x2)));
  int evals = 2;
  while (hi - lo > gtol && evals < 200) {
    if (f1 >= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = std::abs(f(gamma(x1)));
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = std::abs(f(gamma(x2)));
    }
    ++evals;
  }
  const double t = f1 >= f2 ? x1 : x2;
  return {std::max(f1, f2), gamma(t), evals};
}

// Max of |f| along gamma on [t0, t1]: n samples (periodic when closed), then
// golden-section refinement around the best one.
ModulusResult curve_max(const Evaluator& f, const std::function<cd(double)>& gamma, double t0, double t1, int n,
                        bool closed, double gtol) {
  const double h = closed ? (t1 - t0) / n : (t1 - t0) / (n - 1);
  std::vector<cd> pts(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pts[i] = gamma(t0 + h * i);
  const std::vector<cd> vals = f(pts);
  int best = 0;
  double best_v = -1.0;
  for (int i = 0; i < n; ++i) {
    const double v = std::abs(vals[i]);
    if (v > best_v) {
      best_v = v;
      best = i;
    }
  }
  ModulusResult out{best_v, pts[best], n};
  double lo = t0 + h * (best - 1);
  double hi = t0 + h * (best + 1);
  if (!closed) {
    lo = std::max(lo, t0);
    hi = std::min(hi, t1);
  }
  if (hi > lo) {
    const ModulusResult r = golden_max(f, gamma, lo, hi, gtol);
    out.samples += r.samples;
    if (r.value > out.value) {
      out.value = r.value;
      out.argmax = r.argmax;
    }
  }
  return out;
}

ModulusResult circle_max(const Evaluator& f, cd center, double radius, int n, double gtol) {
  return curve_max(
      f, [=](double t) { return center + std::polar(radius, t); }, 0.0, kTwoPi, n, true, gtol);
}

// Phase accumulated by f around the circle, refined until every interval
// turns by at most pi/8. Empty when a sample falls under the zero guard or the
// winding does not settle on an integer.
std::optional<int> winding(const Evaluator& f, cd center, double R, const Tolerances& tol) {
  constexpr int kInitial = 128;
  constexpr int kMaxDepth = 40;
  constexpr std::size_t kMaxIntervals = 1u << 16;
  auto at = [&](double t) { return center + std::polar(R, t); };

  std::vector<cd> pts(kInitial);
  for (int i = 0; i < kInitial; ++i) pts[i] = at(kTwoPi * i / kInitial);
  const std::vector<cd> vals = f(pts);
  double scale = 0.0;
  for (cd v : vals) scale = std::max(scale, std::abs(v));
  if (!(scale > 0.0) || !std::isfinite(scale)) return std::nullopt;
  const double guard = tol.wind_eps * scale;
  for (cd v : vals)
    if (!(std::abs(v) > guard)) return std::nullopt;

  struct Interval {
    double ta, tb;
    cd va, vb;
  };
  std::vector<Interval> open;
  for (int i = 0; i < kInitial; ++i) {
    const int j = (i + 1) % kInitial;
    open.push_back({kTwoPi * i / kInitial, kTwoPi * (i + 1) / kInitial, vals[i], vals[j]});
  }
  double total = 0.0;
  for (int depth = 0; !open.empty(); ++depth) {
    std::vector<Interval> split;
    for (const Interval& iv : open) {
      const double d = std::arg(iv.vb / iv.va);
      if (std::abs(d) <= std::numbers::pi / 8.0) total += d;
      else split.push_back(iv);
    }
    if (split.empty()) break;
    if (depth >= kMaxDepth || split.size() * 2 > kMaxIntervals) return std::nullopt;
    std::vector<cd> mids(split.size());
    for (std::size_t i = 0; i < split.size(); ++i) mids[i] = at(0.5 * (split[i].ta + split[i].tb));
    const std::vector<cd> mv = f(mids);
    open.clear();
    for (std::size_t i = 0; i < split.size(); ++i) {
      if (!(std::abs(mv[i]) > guard)) return std::nullopt;
      const double tm = 0.5 * (split[i].ta + split[i].tb);
      open.push_back({split[i].ta, tm, split[i].va, mv[i]});
      open.push_back({tm, split[i].tb, mv[i], split[i].vb});
    }
  }
  const double w = total / kTwoPi;
  const double r = std::round(w);
  if (std::abs(w - r) > 0.1) return std::nullopt;
  return static_cast<int>(r);
}

}  // namespace

// ---------------------------------------------------------------------------
// Evaluator

Evaluator::Evaluator(Scalar f, Batch batch) : f_(std::move(f)), batch_(std::move(batch)) {}

Evaluator Evaluator::from_branch(const DistinguishedBranch& g) {
  return Evaluator([g](cd z) { return g(z); }, [g](std::span<const cd> zs) { return g.evaluate_chain(zs); });
}

Evaluator Evaluator::from_poly(const UnivarPoly& p) {
  return Evaluator([p](cd z) { return p(z); });
}

std::vector<cd> Evaluator::operator()(std::span<const cd> zs) const {
  if (batch_) return batch_(zs);
  std::vector<cd> out;
  out.reserve(zs.size());
  for (cd z : zs) out.push_back(f_(z));
  return out;
}

Evaluator rescaled(const Evaluator& f, cd factor) {
  return Evaluator([f, factor](cd z) { return f(factor * z); },
                   [f, factor](std::span<const cd> zs) {
                     std::vector<cd> scaled(zs.begin(), zs.end());
                     for (cd& z : scaled) z *= factor;
                     return f(std::span<const cd>(scaled));
                   });
}

Evaluator shifted(const Evaluator& f, cd w0) {
  return Evaluator([f, w0](cd z) { return f(z) - w0; },
                   [f, w0](std::span<const cd> zs) {
                     std::vector<cd> v = f(zs);
                     for (cd& x : v) x -= w0;
                     return v;
                   });
}

// ---------------------------------------------------------------------------
// Specs

CompactSpec CompactSpec::finite(std::vector<cd> pts) {
  CompactSpec k;
  k.kind = Kind::FinitePoints;
  k.points = std::move(pts);
  return k;
}

CompactSpec CompactSpec::disk(cd center, double radius, int samples) {
  CompactSpec k;
  k.kind = Kind::ClosedDisk;
  k.center = center;
  k.radius = radius;
  k.samples = samples;
  return k;
}

CompactSpec CompactSpec::segment(cd a, cd b, int samples) {
  CompactSpec k;
  k.kind = Kind::Segment;
  k.a = a;
  k.b = b;
  k.samples = samples;
  return k;
}

std::size_t CompactSpec::cardinality() const {
  if (kind == Kind::FinitePoints) return points.size();
  if (kind == Kind::Segment && a == b) return 1;
  if (kind == Kind::ClosedDisk && radius == 0.0) return 1;
  return std::numeric_limits<std::size_t>::max();
}

double CompactSpec::extent_from(cd c) const {
  switch (kind) {
    case Kind::FinitePoints: {
      double m = 0.0;
      for (cd p : points) m = std::max(m, std::abs(p - c));
      return m;
    }
    case Kind::ClosedDisk: return std::abs(center - c) + radius;
    case Kind::Segment: return std::max(std::abs(a - c), std::abs(b - c));
  }
  return 0.0;
}

void CompactSpec::validate() const {
  switch (kind) {
    case Kind::FinitePoints: require(!points.empty(), "finite K must be nonempty"); break;
    case Kind::ClosedDisk:
      require(radius >= 0.0 && std::isfinite(radius), "K disk radius must be finite and >= 0");
      require(samples >= 8, "K disk needs at least 8 boundary samples");
      break;
    case Kind::Segment: require(samples >= 2, "K segment needs at least 2 samples"); break;
  }
}

void DomainSpec::validate() const {
  require(radius > 0.0 && std::isfinite(radius), "domain radius must be positive");
  require(boundary_samples >= 64, "domain needs at least 64 boundary samples");
}

// ---------------------------------------------------------------------------
// Maxima and Bernstein constants

ModulusResult max_modulus(const Evaluator& f, const DomainSpec& domain, const Tolerances& tol) {
  domain.validate();
  return circle_max(f, domain.center, domain.radius, domain.boundary_samples, tol.golden_tol);
}

ModulusResult max_modulus(const Evaluator& f, const CompactSpec& k, const Tolerances& tol) {
  k.validate();
  switch (k.kind) {
    case CompactSpec::Kind::FinitePoints: {
      const std::vector<cd> vals = f(k.points);
      ModulusResult out{-1.0, cd{0.0}, static_cast<int>(vals.size())};
      for (std::size_t i = 0; i < vals.size(); ++i)
        if (std::abs(vals[i]) > out.value) {
          out.value = std::abs(vals[i]);
          out.argmax = k.points[i];
        }
      return out;
    }
    case CompactSpec::Kind::ClosedDisk:
      if (k.radius == 0.0) return {std::abs(f(k.center)), k.center, 1};
      return circle_max(f, k.center, k.radius, k.samples, tol.golden_tol);
    case CompactSpec::Kind::Segment: {
      const cd a = k.a, b = k.b;
      return curve_max(
          f, [=](double t) { return a + t * (b - a); }, 0.0, 1.0, k.samples, false, tol.golden_tol);
    }
  }
  return {};
}

BernsteinReport bernstein_constant(const Evaluator& f, const CompactSpec& k, const DomainSpec& omega,
                                   const Tolerances& tol) {
  const ModulusResult dom = max_modulus(f, omega, tol);
  const ModulusResult onk = max_modulus(f, k, tol);
  BernsteinReport rep;
  rep.max_on_domain = dom.value;
  rep.max_on_K = onk.value;
  rep.argmax_domain = dom.argmax;
  rep.argmax_K = onk.argmax;
  rep.samples_domain = dom.samples;
  rep.samples_K = onk.samples;
  rep.bern_floor = tol.bern_floor * dom.value;
  rep.golden_tol = tol.golden_tol;
  if (!(onk.value > rep.bern_floor) || onk.value == 0.0)
    throw Error(Errc::NullOnK, "function is numerically zero on K");
  rep.B = dom.value / onk.value;
  return rep;
}

Bernstein1912Report check_bernstein_1912(const UnivarPoly& p, double R, int samples) {
  require(R > 1.0 && std::isfinite(R), "R must exceed 1");
  require(samples >= 64, "need at least 64 samples");
  const double cmax = p.max_abs();
  for (cd c : p.coeffs()) require(std::abs(c.imag()) <= 1e-14 * cmax, "polynomial must have real coefficients");
  const int deg = p.degree();
  if (deg < 0) throw Error(Errc::ZeroPolynomial, "zero polynomial has no Bernstein constant");

  const Evaluator f = Evaluator::from_poly(p);
  Bernstein1912Report rep;
  rep.degree = deg;

  // On [-1, 1] the maximum sits at an endpoint or a real critical point.
  double mi = std::max(std::abs(p(cd{-1.0})), std::abs(p(cd{1.0})));
  if (deg >= 2) {
    for (const auto& r : roots(p.derivative()).finite_roots)
      if (std::abs(r.value.imag()) <= 1e-8 && std::abs(r.value.real()) <= 1.0)
        mi = std::max(mi, std::abs(p(cd{r.value.real()})));
  }
  const ModulusResult grid = curve_max(
      f, [](double t) { return cd{t}; }, -1.0, 1.0, samples, false, 1e-12);
  rep.max_interval = std::max(mi, grid.value);

  const double a = 0.5 * (R + 1.0 / R);
  const double b = 0.5 * (R - 1.0 / R);
  rep.max_ellipse = curve_max(
                        f, [=](double t) { return cd{a * std::cos(t), b * std::sin(t)}; }, 0.0, kTwoPi, samples,
                        true, 1e-12)
                        .value;
  rep.B = rep.max_ellipse / rep.max_interval;
  rep.bound = std::pow(R, deg);
  rep.ok = rep.B <= rep.bound * (1.0 + 1e-6);
  return rep;
}

// ---------------------------------------------------------------------------
// Zero counting

int zero_count(const Evaluator& f, cd center, double R, const Tolerances& tol) {
  require(R > 0.0 && std::isfinite(R), "zero_count radius must be positive");
  // Outward perturbations keep every zero of the closed disk inside.
  constexpr double kPerturb[] = {0.0, 1e-6, 1e-4, 1e-2};
  for (double eps : kPerturb) {
    if (auto n = winding(f, center, R * (1.0 + eps), tol)) return *n;
  }
  throw Error(Errc::BoundaryZero, "zero on the counting circle after 3 radius perturbations");
}

TijdemanReport tijdeman_check(const Evaluator& f, double R, double s, double t, const Tolerances& tol) {
  require(s > 1.0, "Tijdeman needs s > 1");
  require(t > 0.0, "Tijdeman needs t > 0");
  require(R > 0.0, "Tijdeman needs R > 0");
  TijdemanReport rep;
  rep.N = zero_count(f, cd{0.0}, R, tol);
  const BernsteinReport b =
      bernstein_constant(f, CompactSpec::disk(cd{0.0}, t * R), DomainSpec{cd{0.0}, (s * t + s + t) * R, 512}, tol);
  rep.B = b.B;
  rep.rhs = std::log(b.B) / std::log(s);
  rep.ok = rep.N <= rep.rhs + 1e-9;
  return rep;
}

int preimage_count(const Evaluator& f, const DomainSpec& domain, cd w0, const Tolerances& tol) {
  domain.validate();
  return zero_count(shifted(f, w0), domain.center, domain.radius, tol);
}

ValencyReport valency_check(int k, const Evaluator& g, const DomainSpec& domain, int probes, std::uint64_t seed,
                            const Tolerances& tol) {
  domain.validate();
  require(probes >= 1, "valency needs at least one probe");

  std::vector<cd> ring(64);
  for (int i = 0; i < 64; ++i) ring[i] = domain.center + std::polar(domain.radius, kTwoPi * i / 64);
  const std::vector<cd> ring_vals = g(ring);
  const cd mid = g(domain.center);
  double spread = 0.0, scale = std::abs(mid);
  for (cd v : ring_vals) {
    spread = std::max(spread, std::abs(v - mid));
    scale = std::max(scale, std::abs(v));
  }
  if (spread <= 1e-12 * std::max(1.0, scale)) throw Error(Errc::ConstantBranch, "valency of a constant function");

  std::mt19937_64 rng(seed);
  ValencyReport rep;
  rep.bound = k;
  for (int p = 0; p < probes; ++p) {
    const cd z = uniform_in_disk(rng, domain.center, 0.9 * domain.radius);
    const cd w0 = g(z);
    const int n = preimage_count(g, domain, w0, tol);
    rep.probe_values.push_back(w0);
    rep.counts.push_back(n);
    rep.max_preimages = std::max(rep.max_preimages, n);
  }
  rep.ok = rep.max_preimages <= k;
  return rep;
}

// ---------------------------------------------------------------------------
// Taylor coefficients

TaylorReport taylor_coeffs(const Evaluator& g, double r, int J, int samples) {
  require(r > 0.0 && std::isfinite(r), "Taylor radius must be positive");
  require(J >= 1, "J must be at least 1");
  const std::size_t n = samples == 0 ? std::max<std::size_t>(64, next_pow2(4 * static_cast<std::size_t>(J + 1)))
                                     : static_cast<std::size_t>(samples);
  require(samples >= 0 && (n & (n - 1)) == 0, "Taylor sample count must be a power of two");
  require(static_cast<std::size_t>(J) <= n / 4, "J must not exceed samples / 4");

  std::vector<cd> pts(n);
  for (std::size_t i = 0; i < n; ++i) pts[i] = std::polar(r, kTwoPi * static_cast<double>(i) / n);
  std::vector<cd> vals = g(pts);
  fft(vals);

  TaylorReport rep;
  rep.radius_used = r;
  rep.samples = static_cast<int>(n);
  rep.a0 = vals[0] / static_cast<double>(n);
  double rpow = 1.0;
  for (int j = 1; j <= J; ++j) {
    rpow *= r;
    rep.coeffs.push_back(vals[j] / (static_cast<double>(n) * rpow));
  }

  double amax = 0.0;
  for (cd a : rep.coeffs) amax = std::max(amax, std::abs(a));
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (int j = 1; j <= J; ++j) {
    const double m = std::abs(rep.coeffs[j - 1]);
    if (m > 1e-13 * amax && m > 0.0) {
      const double y = std::log(m);
      sx += j;
      sy += y;
      sxx += static_cast<double>(j) * j;
      sxy += j * y;
      ++cnt;
    }
  }
  if (cnt >= 2) {
    const double slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
    rep.geometric_rate = std::exp(slope);
  }
  return rep;
}

CauchyReport cauchy_bound_check(TaylorReport& rep, double M, double rho, double m_param, const Tolerances& tol) {
  require(M > 0.0 && std::isfinite(M), "M must be positive");
  require(rho > 0.0, "rho must be positive");
  if (rho <= 1.0) require(m_param > 1.0, "m must exceed 1 when rho <= 1");
  CauchyReport out;
  const double ratio = rho <= 1.0 ? rho / m_param : 1.0;
  double pw = 1.0;
  for (cd a : rep.coeffs) {
    pw *= ratio;
    out.profile.push_back(std::abs(a) * pw / M);
  }
  for (double v : out.profile) out.empirical_K = std::max(out.empirical_K, v);
  const std::size_t n = out.profile.size();
  const std::size_t tail = std::max<std::size_t>(1, n / 4);
  if (n < 2) {
    out.ok = true;
  } else {
    const double head_max = *std::max_element(out.profile.begin(), out.profile.end() - tail);
    const double tail_max = *std::max_element(out.profile.end() - tail, out.profile.end());
    out.ok = tail_max <= head_max * tol.growth_slack;
  }
  rep.empirical_K = out.empirical_K;
  return out;
}

}  // namespace nash
