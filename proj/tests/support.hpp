#pragma once

#include <memory>
#include <vector>

#include "nash/branch.hpp"
#include "nash/campaign.hpp"
#include "nash/curve.hpp"
#include "nash/error.hpp"

namespace nash::testing {

struct ClassA {
  BivarPoly poly;
  std::shared_ptr<const Curve> curve;
  DistinguishedBranch g;
};

/// The first `count` draws (degree cycling through ks) that are in class A
/// on D_rho, scanning indices from 0 with the given seed.
inline std::vector<ClassA> class_a_samples(std::vector<int> ks, double rho, int count, std::uint64_t seed) {
  std::vector<ClassA> out;
  for (std::uint64_t idx = 0; static_cast<int>(out.size()) < count && idx < 200000; ++idx) {
    const int k = ks[out.size() % ks.size()];
    const BivarPoly s = draw_polynomial(k, seed, idx);
    try {
      auto curve = std::make_shared<const Curve>(s);
      DistinguishedBranch g = select_g_S(curve, rho);
      out.push_back({s, curve, g});
    } catch (const Error&) {
    }
  }
  return out;
}

}  // namespace nash::testing
