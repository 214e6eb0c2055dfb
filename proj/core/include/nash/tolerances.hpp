#pragma once

namespace nash {

/// Numerical thresholds shared by every module. Defaults are the documented
/// operating point; all of them can be overridden from the CLI.
struct Tolerances {
  double trim_eps = 1e-12;     // relative coefficient trimming
  double gcd_eps = 1e-9;       // approximate-GCD rank / residual threshold
  double cluster_eps = 1e-7;   // root multiplicity clustering radius
  double root_res = 1e-9;      // backward-error bound for reported roots
  double dedup_eps = 1e-7;     // merge radius for excluded points
  double branch_res = 1e-9;    // continuation residual, relative to term scale
  double wind_eps = 1e-8;      // boundary-zero guard for winding numbers
  double bern_floor = 1e-12;   // "numerically null on K", relative to max on domain
  double golden_tol = 1e-10;   // golden-section tolerance in the boundary parameter
  double growth_slack = 1.05;  // Cauchy-profile trend slack
  double seq_tol = 1e-5;       // sequence-experiment convergence threshold
  double domain_margin = 1e-3; // relative clearance of closure(Omega) inside D_rho
  double r_margin = 1e-3;      // excluded-point clearance, relative to rho
  int max_iter = 500;          // root-finder iteration cap
};

}  // namespace nash
