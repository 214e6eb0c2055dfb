#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nash/analysis.hpp"
#include "nash/branch.hpp"
#include "nash/poly.hpp"
#include "nash/tolerances.hpp"

namespace nash {

struct CampaignConfig {
  int k = 2;
  double rho = 2.0;
  CompactSpec K = CompactSpec::disk(cd{0.0}, 0.5);
  DomainSpec omega{cd{0.0}, 1.0, 512};
  int n_samples = 100;
  std::uint64_t seed = 1;
  Tolerances tol;

  double taylor_radius = 0.0;  // 0 means 0.75 * rho
  int J = 32;
  double cauchy_m = 2.0;       // m > 1 of the rescaling g((rho/m) z)
  int valency_probes = 4;
  double tijdeman_s = 2.0;
  double tijdeman_t = 1.0;
  double tijdeman_R = 0.0;     // 0 means 0.15 * rho
  int threads = 1;
  bool checks = true;          // Taylor, valency and Tijdeman per accepted sample

  int m() const { return (k + 1) * (k + 2) / 2; }
  double effective_taylor_radius() const { return taylor_radius > 0.0 ? taylor_radius : 0.75 * rho; }
  double effective_tijdeman_R() const { return tijdeman_R > 0.0 ? tijdeman_R : 0.15 * rho; }
  /// Throws InvalidArgument when K, Omega and rho are inconsistent.
  void validate() const;
};

/// Coefficients drawn uniformly on the unit sphere of C^m with the constant
/// term fixed at zero (every member of class A vanishes at the origin).
BivarPoly draw_polynomial(int k, std::uint64_t seed, std::uint64_t index);

struct SampleRecord {
  std::uint64_t index = 0;
  bool accepted = false;
  std::string reason;        // error name for rejected samples, empty otherwise
  std::string stage;         // "classify" or "analysis" for rejected samples
  BivarPoly poly;
  double B = std::numeric_limits<double>::quiet_NaN();
  double empirical_K = std::numeric_limits<double>::quiet_NaN();
  double max_domain = std::numeric_limits<double>::quiet_NaN();
  double max_K = std::numeric_limits<double>::quiet_NaN();
  int valency = -1;
  bool valency_ok = false;
  bool tijdeman_ok = false;
  int tijdeman_N = -1;
  double tijdeman_rhs = std::numeric_limits<double>::quiet_NaN();
  bool cauchy_ok = false;
  double rescale_error = std::numeric_limits<double>::quiet_NaN();
  double max_residual = 0.0;
};

/// Runs the per-sample pipeline for one polynomial: classification, g_S,
/// Bernstein constant and (when cfg.checks) Taylor/Cauchy, valency and
/// Tijdeman. Never throws for numerical failures; they become the reason.
SampleRecord evaluate_sample(const BivarPoly& s, const CampaignConfig& cfg, std::uint64_t index = 0);

struct CampaignResult {
  CampaignConfig config;
  int n_samples = 0;
  int accepted = 0;
  std::map<std::string, int> rejected_reasons;
  std::vector<double> B_values;  // accepted samples in index order
  std::optional<double> empirical_C;
  std::optional<double> empirical_Cauchy_K;
  std::optional<double> stability_ratio;  // second-half max / first-half max of B
  double runtime = 0.0;
  std::vector<SampleRecord> records;
};

CampaignResult run_campaign(const CampaignConfig& cfg);

/// Writes run.json and samples.csv into dir via write-then-rename.
void write_campaign(const CampaignResult& result, const std::filesystem::path& dir);
/// The samples.csv body; byte-identical for identical configurations.
std::string samples_csv(const CampaignResult& result);
std::string run_json(const CampaignResult& result);

struct SequenceExperiment {
  BivarPoly S_limit;
  BivarPoly direction;
  std::vector<double> deltas;
  std::vector<double> B_sequence;  // NaN where skipped
  std::vector<std::string> skipped;  // empty or the reason the member left class A
  double B_limit = 0.0;
  bool converged = false;
};

/// B of the branches of sphere_normalize(S_limit + delta * direction) along
/// decreasing deltas. Converged when the distance to B_limit is
/// non-increasing over the last three deltas and ends below seq_tol.
SequenceExperiment sequence_experiment(const BivarPoly& S_limit, const BivarPoly& direction,
                                       const std::vector<double>& deltas, const CampaignConfig& cfg);

std::vector<double> default_deltas();

}  // namespace nash
