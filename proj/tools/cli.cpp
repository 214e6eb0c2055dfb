#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "nash/analysis.hpp"
#include "nash/branch.hpp"
#include "nash/campaign.hpp"
#include "nash/curve.hpp"
#include "nash/error.hpp"
#include "nash/io.hpp"

namespace nash::cli {
namespace {

using json = nlohmann::json;

struct Globals {
  std::uint64_t seed = 1;
  int samples = 0;
  std::string out;
  bool quiet = false;
  Tolerances tol;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* samples_opt = nullptr;
};

[[noreturn]] void invalid(const std::string& msg) { throw Error(Errc::InvalidArgument, msg); }

json pair(cd z) { return json::array({z.real(), z.imag()}); }

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void emit(const Globals& g, std::ostream& out, const std::string& text) {
  if (g.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(g.out, std::ios::binary | std::ios::trunc);
  if (!f) invalid("cannot write " + g.out);
  f << text;
}

void emit_json(const Globals& g, std::ostream& out, const json& j) { emit(g, out, j.dump(2) + "\n"); }

std::vector<cd> parse_complex_list(const std::string& text) {
  std::vector<cd> c;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = text.find(',', start);
    c.push_back(parse_complex(text.substr(start, pos == std::string::npos ? std::string::npos : pos - start)));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return c;
}

void check_rho(double rho) {
  if (!(rho > 0.0) || !std::isfinite(rho)) invalid("--rho must be positive");
}

void check_inside(cd center, double radius, double rho, const Tolerances& tol, const char* what) {
  if (std::abs(center) + radius > rho * (1.0 - tol.domain_margin))
    invalid(std::string(what) + " must lie inside D_rho with relative margin " + num(tol.domain_margin));
}

// Either the distinguished branch of --poly on D_rho or the polynomial --coeffs.
struct FunctionSource {
  std::string poly;
  std::string coeffs;
  double rho = 0.0;

  void add(CLI::App* sub) {
    sub->add_option("--poly", poly, "Polynomial JSON file; the function is its branch g with g(0) = 0");
    sub->add_option("--coeffs", coeffs, "Univariate polynomial instead of --poly: c0,c1,... ascending, complex literals");
    sub->add_option("--rho", rho, "Radius of the class-B disk D_rho for --poly (length units of z)");
  }

  bool from_poly() const { return !poly.empty(); }

  Evaluator make(const Tolerances& tol) const {
    if (poly.empty() == coeffs.empty()) invalid("give exactly one of --poly and --coeffs");
    if (!coeffs.empty()) return Evaluator::from_poly(UnivarPoly(parse_complex_list(coeffs)));
    check_rho(rho);
    return Evaluator::from_branch(select_g_S(read_poly_file(poly), rho, tol));
  }
};

// ---------------------------------------------------------------------------

int cmd_excluded(const Globals& g, std::ostream& out, const std::string& poly, double rho) {
  check_rho(rho);
  const BivarPoly s = read_poly_file(poly);
  const ExcludedSet e = excluded_points(s, rho, g.tol);
  json pts = json::array();
  for (const auto& p : e.points)
    pts.push_back({{"z", pair(p.location)}, {"categories", category_names(p.categories)}, {"residual", p.witness_residual}});
  json j{{"points", pts}, {"bound", e.bound}, {"k", e.k}};
  if (!s.is_constant()) j["class_B"] = is_class_B(s, rho, g.tol);
  emit_json(g, out, j);
  return 0;
}

int cmd_trace(const Globals& g, std::ostream& out, const std::string& poly, const std::string& from,
              const std::string& w0, const std::string& path_file, ContinuationOptions opts) {
  if (!(opts.max_step > 0.0) || !(opts.min_step > 0.0) || opts.min_step > opts.max_step)
    invalid("need 0 < --min-step <= --max-step");
  if (!(opts.r_margin >= 0.0)) invalid("--clearance must be >= 0");
  const Curve curve(read_poly_file(poly), g.tol);
  const std::vector<cd> path = parse_path_json(read_text_file(path_file));
  const BranchPath bp = continue_branch(curve, parse_complex(from), parse_complex(w0), path, opts);
  std::ostringstream os;
  os << "z_re,z_im,w_re,w_im,residual\n";
  for (const PathSample& s : bp.samples)
    os << num(s.z.real()) << ',' << num(s.z.imag()) << ',' << num(s.w.real()) << ',' << num(s.w.imag()) << ','
       << num(s.residual) << '\n';
  emit(g, out, os.str());
  return 0;
}

int cmd_bernstein(const Globals& g, std::ostream& out, const std::string& poly, double rho, const std::string& kspec,
                  const std::string& ospec) {
  check_rho(rho);
  CompactSpec K = parse_compact(kspec);
  DomainSpec omega = parse_domain(ospec);
  if (g.samples_opt->count() > 0) {
    omega.boundary_samples = g.samples;
    if (K.kind != CompactSpec::Kind::FinitePoints) K.samples = g.samples;
  }
  K.validate();
  omega.validate();
  check_inside(omega.center, omega.radius, rho, g.tol, "closure of Omega");
  if (!(K.extent_from(omega.center) < omega.radius)) invalid("K must lie inside Omega");
  const Evaluator f = Evaluator::from_branch(select_g_S(read_poly_file(poly), rho, g.tol));
  const BernsteinReport r = bernstein_constant(f, K, omega, g.tol);
  emit_json(g, out,
            {{"B", r.B},
             {"max_on_domain", r.max_on_domain},
             {"max_on_K", r.max_on_K},
             {"argmax_domain", pair(r.argmax_domain)},
             {"argmax_K", pair(r.argmax_K)},
             {"samples_domain", r.samples_domain},
             {"samples_K", r.samples_K},
             {"tolerances", {{"bern_floor", r.bern_floor}, {"golden_tol", r.golden_tol}}}});
  return 0;
}

int cmd_taylor(const Globals& g, std::ostream& out, const std::string& poly, double r, int J, double rho) {
  if (!(r > 0.0)) invalid("--r must be positive");
  if (J < 1) invalid("--J must be >= 1");
  if (rho == 0.0) rho = 1.01 * r;
  check_rho(rho);
  if (!(r < rho)) invalid("--r must be smaller than --rho");
  const Evaluator f = Evaluator::from_branch(select_g_S(read_poly_file(poly), rho, g.tol));
  const int n = g.samples_opt->count() > 0 ? g.samples : 0;
  const TaylorReport rep = taylor_coeffs(f, r, J, n);
  std::ostringstream os;
  os << "j,re,im,abs\n";
  os << 0 << ',' << num(rep.a0.real()) << ',' << num(rep.a0.imag()) << ',' << num(std::abs(rep.a0)) << '\n';
  for (int j = 1; j <= J; ++j) {
    const cd a = rep.coeffs[j - 1];
    os << j << ',' << num(a.real()) << ',' << num(a.imag()) << ',' << num(std::abs(a)) << '\n';
  }
  emit(g, out, os.str());
  return 0;
}

int cmd_zeros(const Globals& g, std::ostream& out, const FunctionSource& src, const std::string& center_s, double R) {
  if (!(R > 0.0)) invalid("--R must be positive");
  const cd center = parse_complex(center_s);
  if (src.from_poly()) {
    check_rho(src.rho);
    check_inside(center, R, src.rho, g.tol, "the counting disk");
  }
  const int n = zero_count(src.make(g.tol), center, R, g.tol);
  emit_json(g, out, {{"N", n}, {"center", pair(center)}, {"R", R}});
  return 0;
}

int cmd_tijdeman(const Globals& g, std::ostream& out, const FunctionSource& src, double R, double s, double t) {
  if (!(R > 0.0)) invalid("--R must be positive");
  if (!(s > 1.0)) invalid("--s must exceed 1");
  if (!(t > 0.0)) invalid("--t must be positive");
  if (src.from_poly()) {
    check_rho(src.rho);
    check_inside(cd{0.0}, (s * t + s + t) * R, src.rho, g.tol, "the disk of radius (st+s+t)R");
  }
  const TijdemanReport r = tijdeman_check(src.make(g.tol), R, s, t, g.tol);
  emit_json(g, out, {{"N", r.N}, {"B", r.B}, {"rhs", r.rhs}, {"ok", r.ok}});
  return 0;
}

int cmd_valency(const Globals& g, std::ostream& out, const std::string& poly, double rho, const std::string& ospec,
                int probes) {
  check_rho(rho);
  if (probes < 1) invalid("--probes must be >= 1");
  DomainSpec omega = parse_domain(ospec);
  if (g.samples_opt->count() > 0) omega.boundary_samples = g.samples;
  omega.validate();
  check_inside(omega.center, omega.radius, rho, g.tol, "closure of Omega");
  const BivarPoly s = read_poly_file(poly);
  const Evaluator f = Evaluator::from_branch(select_g_S(s, rho, g.tol));
  const ValencyReport r = valency_check(s.deg_total(), f, omega, probes, g.seed, g.tol);
  json vals = json::array();
  for (cd v : r.probe_values) vals.push_back(pair(v));
  emit_json(g, out,
            {{"max_preimages", r.max_preimages}, {"bound", r.bound}, {"ok", r.ok}, {"counts", r.counts},
             {"probe_values", vals}});
  return 0;
}

struct CampaignFlags {
  std::string config;
  int k = 0;
  double rho = 0.0;
  std::string K;
  std::string omega;
  int threads = 0;
};

CampaignConfig build_config(const Globals& g, const CampaignFlags& f) {
  CampaignConfig cfg;
  if (!f.config.empty()) cfg = parse_config_json(read_text_file(f.config));
  else cfg.tol = g.tol;
  if (f.k != 0) cfg.k = f.k;
  if (f.rho != 0.0) cfg.rho = f.rho;
  if (!f.K.empty()) cfg.K = parse_compact(f.K);
  if (!f.omega.empty()) cfg.omega = parse_domain(f.omega);
  if (f.threads != 0) cfg.threads = f.threads;
  if (g.seed_opt->count() > 0) cfg.seed = g.seed;
  if (g.samples_opt->count() > 0) cfg.n_samples = g.samples;
  return cfg;
}

int cmd_campaign(const Globals& g, std::ostream& out, std::ostream& err, const CampaignFlags& f) {
  const CampaignConfig cfg = build_config(g, f);
  const CampaignResult res = run_campaign(cfg);
  if (g.out.empty()) {
    out << run_json(res);
  } else {
    write_campaign(res, g.out);
  }
  if (!g.quiet) {
    err << "accepted " << res.accepted << " of " << res.n_samples;
    if (res.empirical_C) err << ", empirical C " << num(*res.empirical_C);
    else err << ", empirical C undefined";
    err << '\n';
  }
  return 0;
}

int cmd_sequence(const Globals& g, std::ostream& out, const CampaignFlags& f, const std::string& limit,
                 const std::string& direction, const std::string& deltas_s) {
  const BivarPoly s_limit = read_poly_file(limit);
  const BivarPoly dir = direction.empty() ? BivarPoly{} : read_poly_file(direction);
  CampaignConfig cfg = build_config(g, f);
  if (f.config.empty() && f.k == 0) cfg.k = std::max({s_limit.deg_total(), dir.deg_total(), 1});
  std::vector<double> deltas = default_deltas();
  if (!deltas_s.empty()) {
    deltas.clear();
    for (cd d : parse_complex_list(deltas_s)) {
      if (d.imag() != 0.0) invalid("--deltas must be real");
      deltas.push_back(d.real());
    }
  }
  const SequenceExperiment ex = sequence_experiment(s_limit, dir, deltas, cfg);
  json bs = json::array();
  for (double b : ex.B_sequence) bs.push_back(std::isfinite(b) ? json(b) : json(nullptr));
  emit_json(g, out,
            {{"deltas", ex.deltas},
             {"B_sequence", bs},
             {"skipped", ex.skipped},
             {"B_limit", ex.B_limit},
             {"converged", ex.converged}});
  return 0;
}

int cmd_bound1912(const Globals& g, std::ostream& out, const std::string& coeffs, double R) {
  std::vector<cd> c = parse_complex_list(coeffs);
  const int n = g.samples_opt->count() > 0 ? g.samples : 4096;
  const Bernstein1912Report r = check_bernstein_1912(UnivarPoly(std::move(c)), R, n);
  emit_json(g, out, {{"B", r.B}, {"bound", r.bound}, {"ok", r.ok}});
  return 0;
}

void add_tolerances(CLI::App& app, Tolerances& t) {
  auto grp = "Tolerances";
  app.add_option("--trim-eps", t.trim_eps, "Relative coefficient trimming threshold")->capture_default_str()->group(grp);
  app.add_option("--gcd-eps", t.gcd_eps, "Approximate-GCD rank and residual threshold")->capture_default_str()->group(grp);
  app.add_option("--cluster-eps", t.cluster_eps, "Root multiplicity clustering radius")->capture_default_str()->group(grp);
  app.add_option("--root-res", t.root_res, "Backward-error bound for reported roots")->capture_default_str()->group(grp);
  app.add_option("--dedup-eps", t.dedup_eps, "Merge radius for excluded points")->capture_default_str()->group(grp);
  app.add_option("--branch-res", t.branch_res, "Continuation residual relative to the term scale")
      ->capture_default_str()
      ->group(grp);
  app.add_option("--wind-eps", t.wind_eps, "Boundary-zero guard for winding numbers, relative to max |f|")
      ->capture_default_str()
      ->group(grp);
  app.add_option("--bern-floor", t.bern_floor, "Null-on-K floor relative to the domain maximum")
      ->capture_default_str()
      ->group(grp);
  app.add_option("--golden-tol", t.golden_tol, "Golden-section tolerance in the boundary parameter (radians)")
      ->capture_default_str()
      ->group(grp);
  app.add_option("--growth-slack", t.growth_slack, "Allowed tail growth factor in the Cauchy trend test")
      ->capture_default_str()
      ->group(grp);
  app.add_option("--seq-tol", t.seq_tol, "Convergence threshold for sequence experiments")->capture_default_str()->group(grp);
  app.add_option("--domain-margin", t.domain_margin, "Relative clearance of domains inside D_rho")
      ->capture_default_str()
      ->group(grp);
  app.add_option("--r-margin", t.r_margin, "Excluded-point clearance for g(0)=0 branches, relative to rho")
      ->capture_default_str()
      ->group(grp);
  app.add_option("--max-iter", t.max_iter, "Root-finder iteration cap")->capture_default_str()->group(grp);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Nash functions of bivariate polynomials: excluded points, branches, Bernstein constants", "nash"};
  app.require_subcommand(1);
  app.get_formatter()->column_width(36);
  app.fallthrough();
  app.set_version_flag("--version", "nash 0.1.0");

  Globals g;
  g.seed_opt = app.add_option("--seed", g.seed, "Random seed (64-bit)")->capture_default_str();
  g.samples_opt = app.add_option("--samples", g.samples,
                                 "Sample count override: boundary samples, FFT length or campaign draws");
  app.add_option("--out", g.out, "Write output to this file (campaign: directory) instead of stdout");
  app.add_flag("--quiet", g.quiet, "Suppress progress messages on stderr");
  add_tolerances(app, g.tol);

  // excluded
  std::string poly;
  double rho = 0.0;
  auto* excluded = app.add_subcommand("excluded", "Excluded points of S in the open disk D_rho, as JSON");
  excluded->add_option("--poly", poly, "Polynomial JSON file")->required();
  excluded->add_option("--rho", rho, "Disk radius (length units of z)")->required();

  // trace
  std::string from, w0, path_file;
  ContinuationOptions topts;
  auto* trace = app.add_subcommand("trace", "Continue one branch along a polyline, CSV samples");
  trace->add_option("--poly", poly, "Polynomial JSON file")->required();
  trace->add_option("--from", from, "Start point z, complex literal like 1+0i")->required();
  trace->add_option("--w0", w0, "Branch value at the start point, complex literal")->required();
  trace->add_option("--path", path_file, "Path JSON file {\"points\": [[re, im], ...]}")->required();
  trace->add_option("--max-step", topts.max_step, "Largest step in z")->capture_default_str();
  trace->add_option("--min-step", topts.min_step, "Smallest step in z before StepUnderflow")->capture_default_str();
  trace->add_option("--clearance", topts.r_margin, "Required distance from excluded points (length units of z)")
      ->capture_default_str();

  // bernstein
  std::string kspec = "disk:0:0.5", ospec;
  auto* bern = app.add_subcommand("bernstein", "Bernstein constant max_Omega|g| / max_K|g| of the branch g(0)=0");
  bern->add_option("--poly", poly, "Polynomial JSON file")->required();
  bern->add_option("--rho", rho, "Radius of the class-B disk D_rho")->required();
  bern->add_option("--K", kspec, "Compact K: disk:C:R[:n], segment:A:B[:n] or points:A,B,...")->capture_default_str();
  bern->add_option("--omega", ospec, "Domain Omega: disk:C:R[:n], n >= 64 boundary samples (default n 512)")
      ->required();

  // taylor
  double r = 0.0, trho = 0.0;
  int J = 32;
  auto* taylor = app.add_subcommand("taylor", "Taylor coefficients of the branch g(0)=0, CSV j,re,im,abs");
  taylor->add_option("--poly", poly, "Polynomial JSON file")->required();
  taylor->add_option("--r", r, "Radius of the sampling circle")->required();
  taylor->add_option("--J", J, "Number of coefficients a_1..a_J")->capture_default_str();
  taylor->add_option("--rho", trho, "Radius of the class-B disk (default 1.01 r)");

  // zeros
  FunctionSource zsrc;
  std::string center = "0";
  double R = 0.0;
  auto* zeros = app.add_subcommand("zeros", "Number of zeros in the closed disk |z - center| <= R");
  zsrc.add(zeros);
  zeros->add_option("--center", center, "Disk center, complex literal")->capture_default_str();
  zeros->add_option("--R", R, "Disk radius")->required();

  // tijdeman
  FunctionSource tsrc;
  double s = 2.0, t = 1.0;
  auto* tij = app.add_subcommand("tijdeman", "Check N(0,R,f) <= log B(f, D_tR, D_(st+s+t)R) / log s");
  tsrc.add(tij);
  tij->add_option("--R", R, "Counting radius")->required();
  tij->add_option("--s", s, "Parameter s > 1")->capture_default_str();
  tij->add_option("--t", t, "Parameter t > 0")->capture_default_str();

  // valency
  int probes = 4;
  auto* val = app.add_subcommand("valency", "Largest number of preimages of probed values of g in Omega");
  val->add_option("--poly", poly, "Polynomial JSON file")->required();
  val->add_option("--rho", rho, "Radius of the class-B disk D_rho")->required();
  val->add_option("--omega", ospec, "Domain Omega: disk:C:R[:n]")->required();
  val->add_option("--probes", probes, "Number of probed values")->capture_default_str();

  // campaign
  CampaignFlags cf;
  auto* camp = app.add_subcommand("campaign", "Sample P(k) on the unit sphere and estimate uniform constants");
  auto add_campaign_flags = [&](CLI::App* sub) {
    sub->add_option("--config", cf.config, "Campaign config JSON (run.json's \"config\" block is accepted)");
    sub->add_option("--k", cf.k, "Degree bound k (default 2)");
    sub->add_option("--rho", cf.rho, "Radius of the class-B disk (default 2)");
    sub->add_option("--K", cf.K, "Compact K spec (default disk:0:0.5)");
    sub->add_option("--omega", cf.omega, "Domain Omega spec (default disk:0:1:512)");
  };
  add_campaign_flags(camp);
  camp->add_option("--threads", cf.threads, "Worker threads (default 1; results do not depend on it)");

  // sequence
  std::string limit, direction, deltas;
  auto* seq = app.add_subcommand("sequence", "B along sphere_normalize(S + delta * D) for decreasing delta");
  add_campaign_flags(seq);
  seq->add_option("--limit", limit, "Limit polynomial S, JSON file")->required();
  seq->add_option("--direction", direction, "Direction polynomial D, JSON file (default zero)");
  seq->add_option("--deltas", deltas, "Comma separated decreasing deltas (default 1e-1,...,1e-6)");

  // bound1912
  std::string coeffs;
  double bR = 0.0;
  auto* b1912 = app.add_subcommand("bound1912", "Bernstein ellipse bound for a real polynomial, as JSON");
  b1912->add_option("--coeffs", coeffs, "Real coefficients c0,c1,... in ascending degree")->required();
  b1912->add_option("--R", bR, "Sum of the ellipse semi-axes, R > 1")->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return 0;
    }
    err << "InvalidArgument: " << e.what() << '\n';
    const auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return 2;
  }

  try {
    if (*excluded) return cmd_excluded(g, out, poly, rho);
    if (*trace) return cmd_trace(g, out, poly, from, w0, path_file, topts);
    if (*bern) return cmd_bernstein(g, out, poly, rho, kspec, ospec);
    if (*taylor) return cmd_taylor(g, out, poly, r, J, trho);
    if (*zeros) return cmd_zeros(g, out, zsrc, center, R);
    if (*tij) return cmd_tijdeman(g, out, tsrc, R, s, t);
    if (*val) return cmd_valency(g, out, poly, rho, ospec, probes);
    if (*camp) return cmd_campaign(g, out, err, cf);
    if (*seq) return cmd_sequence(g, out, cf, limit, direction, deltas);
    if (*b1912) return cmd_bound1912(g, out, coeffs, bR);
  } catch (const Error& e) {
    err << e.what() << '\n';
    return is_validation_error(e.code()) ? 2 : 3;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "InvalidArgument: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace nash::cli
