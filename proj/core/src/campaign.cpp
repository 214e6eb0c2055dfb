#include "nash/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <thread>

#include "nash/curve.hpp"
#include "nash/error.hpp"
#include "nash/io.hpp"
#include "nash/random.hpp"

namespace nash {
namespace {

using json = nlohmann::json;

void require(bool cond, const std::string& msg) {
  if (!cond) throw Error(Errc::InvalidArgument, msg);
}

struct Classified {
  DistinguishedBranch g;
  Evaluator f;
};

Classified classify(const BivarPoly& s, const CampaignConfig& cfg) {
  auto curve = std::make_shared<const Curve>(s, cfg.tol);
  DistinguishedBranch g = select_g_S(curve, cfg.rho);
  return {g, Evaluator::from_branch(g)};
}

// Largest |a_j(g_m) - a_j(g) (rho/m)^j| where g_m(z) = g((rho/m) z) is
// expanded on a circle of different radius than g itself.
double rescale_consistency(const Evaluator& f, const TaylorReport& base, const CampaignConfig& cfg) {
  const double factor = cfg.rho / cfg.cauchy_m;
  const double r_m = 0.5 * cfg.rho / factor;
  const TaylorReport scaled = taylor_coeffs(rescaled(f, cd{factor}), r_m, cfg.J);
  double err = 0.0, pw = 1.0;
  for (int j = 0; j < cfg.J; ++j) {
    pw *= factor;
    err = std::max(err, std::abs(scaled.coeffs[j] - base.coeffs[j] * pw));
  }
  return err;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

void write_atomically(const std::filesystem::path& target, const std::string& body) {
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::InvalidArgument, "cannot open " + tmp.string() + " for writing");
    out << body;
    out.flush();
    if (!out) throw Error(Errc::InvalidArgument, "write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

}  // namespace

void CampaignConfig::validate() const {
  require(k >= 1 && k <= 12, "k must be in 1..12");
  require(rho > 0.0 && std::isfinite(rho), "rho must be positive");
  require(n_samples >= 0, "n_samples must be >= 0");
  require(J >= 1, "J must be >= 1");
  require(cauchy_m > 1.0, "cauchy_m must exceed 1");
  require(valency_probes >= 1, "valency_probes must be >= 1");
  require(tijdeman_s > 1.0 && tijdeman_t > 0.0, "Tijdeman needs s > 1 and t > 0");
  require(threads >= 1, "threads must be >= 1");
  K.validate();
  omega.validate();
  if (K.kind == CompactSpec::Kind::FinitePoints)
    require(K.cardinality() > static_cast<std::size_t>(k), "finite K needs more than k points");
  const double inner = rho * (1.0 - tol.domain_margin);
  require(std::abs(omega.center) + omega.radius <= inner, "closure of Omega must lie inside D_rho with margin");
  require(K.extent_from(omega.center) < omega.radius, "K must lie inside Omega");
  require(effective_taylor_radius() < inner, "Taylor radius must lie inside D_rho with margin");
  const double s = tijdeman_s, t = tijdeman_t;
  require((s * t + s + t) * effective_tijdeman_R() <= inner, "Tijdeman outer disk must lie inside D_rho");
}

BivarPoly draw_polynomial(int k, std::uint64_t seed, std::uint64_t index) {
  std::mt19937_64 rng(substream_seed(seed, index));
  std::vector<std::vector<cd>> rows(static_cast<std::size_t>(k) + 1, std::vector<cd>(static_cast<std::size_t>(k) + 1));
  double norm2 = 0.0;
  for (int i = 0; i <= k; ++i)
    for (int j = 0; i + j <= k; ++j) {
      const cd c = complex_gaussian(rng);
      if (i == 0 && j == 0) continue;
      rows[i][j] = c;
      norm2 += std::norm(c);
    }
  const double scale = 1.0 / std::sqrt(norm2);
  for (auto& row : rows)
    for (cd& c : row) c *= scale;
  return BivarPoly::from_rows(rows);
}

SampleRecord evaluate_sample(const BivarPoly& s, const CampaignConfig& cfg, std::uint64_t index) {
  SampleRecord rec;
  rec.index = index;
  rec.poly = s;
  std::optional<Classified> cls;
  try {
    cls.emplace(classify(s, cfg));
  } catch (const Error& e) {
    rec.reason = std::string(e.name());
    rec.stage = "classify";
    return rec;
  }
  try {
    const Evaluator& f = cls->f;
    const BernsteinReport b = bernstein_constant(f, cfg.K, cfg.omega, cfg.tol);
    rec.B = b.B;
    rec.max_domain = b.max_on_domain;
    rec.max_K = b.max_on_K;
    if (cfg.checks) {
      TaylorReport tr = taylor_coeffs(f, cfg.effective_taylor_radius(), cfg.J);
      const CauchyReport cr = cauchy_bound_check(tr, b.max_on_K, cfg.rho, cfg.cauchy_m, cfg.tol);
      rec.empirical_K = cr.empirical_K;
      rec.cauchy_ok = cr.ok;
      rec.rescale_error = rescale_consistency(f, tr, cfg);

      const ValencyReport v =
          valency_check(cfg.k, f, cfg.omega, cfg.valency_probes, substream_seed(cfg.seed ^ 0x7A1E5CEull, index), cfg.tol);
      rec.valency = v.max_preimages;
      rec.valency_ok = v.ok;

      const TijdemanReport t =
          tijdeman_check(f, cfg.effective_tijdeman_R(), cfg.tijdeman_s, cfg.tijdeman_t, cfg.tol);
      rec.tijdeman_N = t.N;
      rec.tijdeman_rhs = t.rhs;
      rec.tijdeman_ok = t.ok;
    }
    // Residual audit of the branch along the ray to the domain's argmax.
    rec.max_residual = cls->g.path_to(b.argmax_domain).max_residual;
  } catch (const Error& e) {
    rec.reason = std::string(e.name());
    rec.stage = "analysis";
    return rec;
  }
  rec.accepted = true;
  return rec;
}

CampaignResult run_campaign(const CampaignConfig& cfg) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();
  CampaignResult res;
  res.config = cfg;
  res.n_samples = cfg.n_samples;
  res.records.resize(static_cast<std::size_t>(cfg.n_samples));

  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < cfg.n_samples; i = next++) {
      const auto idx = static_cast<std::uint64_t>(i);
      res.records[i] = evaluate_sample(draw_polynomial(cfg.k, cfg.seed, idx), cfg, idx);
    }
  };
  const int nthreads = std::min(cfg.threads, std::max(1, cfg.n_samples));
  if (nthreads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  for (const SampleRecord& r : res.records) {
    if (!r.accepted) {
      ++res.rejected_reasons[r.reason];
      continue;
    }
    ++res.accepted;
    res.B_values.push_back(r.B);
    if (std::isfinite(r.empirical_K))
      res.empirical_Cauchy_K = std::max(res.empirical_Cauchy_K.value_or(0.0), r.empirical_K);
  }
  if (!res.B_values.empty()) res.empirical_C = *std::max_element(res.B_values.begin(), res.B_values.end());
  if (res.B_values.size() >= 2) {
    const auto half = res.B_values.begin() + static_cast<std::ptrdiff_t>(res.B_values.size() / 2);
    const double first = *std::max_element(res.B_values.begin(), half);
    const double second = *std::max_element(half, res.B_values.end());
    res.stability_ratio = second / first;
  }
  res.runtime = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

std::string samples_csv(const CampaignResult& result) {
  std::ostringstream os;
  os << "index,accepted,reason,B,empirical_K,max_domain,max_K,valency,tijdeman_ok\n";
  for (const SampleRecord& r : result.records) {
    os << r.index << ',' << (r.accepted ? 1 : 0) << ',' << r.reason << ',' << fmt(r.B) << ',' << fmt(r.empirical_K)
       << ',' << fmt(r.max_domain) << ',' << fmt(r.max_K) << ',' << r.valency << ',' << (r.tijdeman_ok ? 1 : 0)
       << '\n';
  }
  return os.str();
}

std::string run_json(const CampaignResult& result) {
  json j;
  j["config"] = json::parse(config_to_json(result.config));
  j["n_samples"] = result.n_samples;
  j["accepted"] = result.accepted;
  j["rejected_reasons"] = result.rejected_reasons;
  j["B_values"] = result.B_values;
  j["empirical_C"] = optional_number(result.empirical_C);
  j["empirical_C_defined"] = result.empirical_C.has_value();
  j["empirical_Cauchy_K"] = optional_number(result.empirical_Cauchy_K);
  j["stability_ratio"] = optional_number(result.stability_ratio);
  int valency_fail = 0, tijdeman_fail = 0, cauchy_fail = 0;
  double rescale = 0.0, residual = 0.0;
  for (const SampleRecord& r : result.records) {
    if (!r.accepted) continue;
    if (result.config.checks) {
      valency_fail += r.valency_ok ? 0 : 1;
      tijdeman_fail += r.tijdeman_ok ? 0 : 1;
      cauchy_fail += r.cauchy_ok ? 0 : 1;
      rescale = std::max(rescale, r.rescale_error);
    }
    residual = std::max(residual, r.max_residual);
  }
  j["checks"] = {{"valency_failures", valency_fail},
                 {"tijdeman_failures", tijdeman_fail},
                 {"cauchy_trend_failures", cauchy_fail},
                 {"max_rescale_error", rescale},
                 {"max_branch_residual", residual}};
  j["runtime_seconds"] = result.runtime;
  return j.dump(2) + "\n";
}

void write_campaign(const CampaignResult& result, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  write_atomically(dir / "samples.csv", samples_csv(result));
  write_atomically(dir / "run.json", run_json(result));
}

std::vector<double> default_deltas() { return {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6}; }

SequenceExperiment sequence_experiment(const BivarPoly& S_limit, const BivarPoly& direction,
                                       const std::vector<double>& deltas, const CampaignConfig& cfg) {
  cfg.validate();
  require(!deltas.empty(), "deltas must be nonempty");
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    require(deltas[i] > 0.0 && std::isfinite(deltas[i]), "deltas must be positive");
    if (i > 0) require(deltas[i] < deltas[i - 1], "deltas must be strictly decreasing");
  }
  SequenceExperiment ex;
  ex.S_limit = S_limit;
  ex.direction = direction;
  ex.deltas = deltas;

  const Classified limit = classify(sphere_normalize(S_limit), cfg);
  ex.B_limit = bernstein_constant(limit.f, cfg.K, cfg.omega, cfg.tol).B;

  for (double d : deltas) {
    try {
      const BivarPoly sn = sphere_normalize(S_limit + cd{d} * direction);
      const Classified c = classify(sn, cfg);
      ex.B_sequence.push_back(bernstein_constant(c.f, cfg.K, cfg.omega, cfg.tol).B);
      ex.skipped.emplace_back();
    } catch (const Error& e) {
      ex.B_sequence.push_back(std::numeric_limits<double>::quiet_NaN());
      ex.skipped.push_back(std::string(to_string(Errc::SkippedDelta)) + ": " + std::string(e.name()));
    }
  }

  const std::size_t n = ex.B_sequence.size();
  const std::size_t tail = std::min<std::size_t>(3, n);
  bool ok = true;
  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t i = n - tail; i < n; ++i) {
    if (!ex.skipped[i].empty()) {
      ok = false;
      break;
    }
    const double err = std::abs(ex.B_sequence[i] - ex.B_limit);
    if (err > prev + 1e-12) ok = false;
    prev = err;
  }
  ex.converged = ok && prev <= cfg.tol.seq_tol;
  return ex;
}

}  // namespace nash
