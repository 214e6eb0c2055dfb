#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "nash/analysis.hpp"
#include "nash/error.hpp"
#include "nash/random.hpp"
#include "nash/poly.hpp"
#include "support.hpp"

using namespace nash;

namespace {

Evaluator fn(std::function<cd(cd)> f) { return Evaluator(std::move(f)); }

const DomainSpec kUnit{cd{0.0}, 1.0, 512};
const CompactSpec kHalf = CompactSpec::disk(cd{0.0}, 0.5);

// Random class-A draws are plentiful on small disks.
constexpr double kRho = 0.5;
const DomainSpec kOmegaSmall{cd{0.0}, 0.25, 512};
const CompactSpec kKSmall = CompactSpec::disk(cd{0.0}, 0.125);

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return Errc::InvalidArgument;
}

// Dense sampling oracle for the ellipse/interval ratio.
double dense_1912_ratio(const UnivarPoly& p, double R) {
  const double a = 0.5 * (R + 1.0 / R), b = 0.5 * (R - 1.0 / R);
  double me = 0.0, mi = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double t = 2.0 * std::numbers::pi * i / n;
    me = std::max(me, std::abs(p(cd{a * std::cos(t), b * std::sin(t)})));
    mi = std::max(mi, std::abs(p(cd{-1.0 + 2.0 * i / (n - 1)})));
  }
  return me / mi;
}

}  // namespace

TEST(Analysis, MaxModulusExamples) {
  const ModulusResult a = max_modulus(fn([](cd z) { return z; }), DomainSpec{cd{0.0}, 1.0, 256});
  EXPECT_NEAR(a.value, 1.0, 1e-14);
  EXPECT_NEAR(std::abs(a.argmax), 1.0, 1e-14);

  EXPECT_NEAR(max_modulus(fn([](cd z) { return z * z; }), DomainSpec{cd{0.0}, 0.5, 512}).value, 0.25, 1e-14);

  const ModulusResult c = max_modulus(fn([](cd z) { return z / (1.0 - z / 2.0); }), kUnit);
  EXPECT_NEAR(c.value, 2.0, 1e-12);
  EXPECT_LT(std::abs(c.argmax - 1.0), 1e-6);
}

TEST(Analysis, MaxModulusRefinesBetweenSamples) {
  // Peak at angle 0.3, deliberately off the sample grid.
  const cd peak = std::polar(1.0, 0.3);
  const auto f = fn([=](cd z) { return 1.0 / (1.05 * peak - z); });
  const double exact = 1.0 / 0.05;
  EXPECT_NEAR(max_modulus(f, DomainSpec{cd{0.0}, 1.0, 64}).value, exact, 1e-8 * exact);
}

TEST(Analysis, MaxModulusOnCompactKinds) {
  const auto id = fn([](cd z) { return z; });
  EXPECT_NEAR(max_modulus(id, CompactSpec::finite({0.1, cd{0.0, -0.3}, 0.2})).value, 0.3, 1e-15);
  EXPECT_NEAR(max_modulus(id, CompactSpec::segment(cd{-0.2}, cd{0.4, 0.3})).value, 0.5, 1e-12);
  EXPECT_NEAR(max_modulus(id, CompactSpec::disk(cd{0.1}, 0.2)).value, 0.3, 1e-12);
}

TEST(Analysis, BernsteinExamples) {
  EXPECT_DOUBLE_EQ(bernstein_constant(fn([](cd) { return cd{5.0}; }), kHalf, kUnit).B, 1.0);
  EXPECT_NEAR(bernstein_constant(fn([](cd z) { return z; }), kHalf, kUnit).B, 2.0, 1e-12);
  EXPECT_NEAR(bernstein_constant(fn([](cd z) { return z * z; }), kHalf, kUnit).B, 4.0, 1e-12);
  const BernsteinReport r = bernstein_constant(fn([](cd z) { return z; }), kHalf, kUnit);
  EXPECT_EQ(r.B, r.max_on_domain / r.max_on_K);
  EXPECT_GT(r.max_on_K, 0.0);
}

TEST(Analysis, BernsteinNullOnK) {
  EXPECT_EQ(code_of([] { bernstein_constant(fn([](cd) { return cd{0.0}; }), kHalf, kUnit); }), Errc::NullOnK);
  // z^3 on K = {0} is zero.
  EXPECT_EQ(code_of([] { bernstein_constant(fn([](cd z) { return z * z * z; }), CompactSpec::finite({0.0}), kUnit); }),
            Errc::NullOnK);
}

TEST(Analysis, Bernstein1912Examples) {
  const Bernstein1912Report x = check_bernstein_1912(UnivarPoly({0.0, 1.0}), 2.0);
  EXPECT_NEAR(x.B, 1.25, 1e-6);
  EXPECT_EQ(x.bound, 2.0);
  EXPECT_TRUE(x.ok);

  for (double R : {1.1, 3.0}) {
    const Bernstein1912Report one = check_bernstein_1912(UnivarPoly({1.0}), R);
    EXPECT_DOUBLE_EQ(one.B, 1.0);
    EXPECT_EQ(one.bound, 1.0);
    EXPECT_TRUE(one.ok);
  }

  // T4 = 8x^4 - 8x^2 + 1 is extremal: B/bound lies in (0.5, 1].
  const UnivarPoly t4({1.0, 0.0, -8.0, 0.0, 8.0});
  const Bernstein1912Report t = check_bernstein_1912(t4, 1.5);
  EXPECT_TRUE(t.ok);
  EXPECT_GT(t.B / t.bound, 0.5);
  EXPECT_LE(t.B / t.bound, 1.0 + 1e-6);
  EXPECT_NEAR(t.B, dense_1912_ratio(t4, 1.5), 1e-6 * t.B);
}

TEST(Analysis, Bernstein1912MatchesDenseOracle) {
  std::mt19937_64 rng(41);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 8; ++trial) {
    std::vector<cd> c(1 + trial);
    for (cd& v : c) v = nd(rng);
    const UnivarPoly p(c);
    const double R = 1.2 + 0.1 * trial;
    const Bernstein1912Report r = check_bernstein_1912(p, R);
    EXPECT_NEAR(r.B, dense_1912_ratio(p, R), 1e-6 * r.B);
    EXPECT_TRUE(r.ok);
  }
}

TEST(Analysis, Bernstein1912Validation) {
  EXPECT_EQ(code_of([] { check_bernstein_1912(UnivarPoly({0.0, 1.0}), 1.0); }), Errc::InvalidArgument);
  EXPECT_EQ(code_of([] { check_bernstein_1912(UnivarPoly({cd{0.0, 1.0}, 1.0}), 2.0); }), Errc::InvalidArgument);
}

TEST(Analysis, ZeroCountExamples) {
  EXPECT_EQ(zero_count(fn([](cd z) { return z * z * z; }), 0.0, 1.0), 3);
  const auto quad = fn([](cd z) { return z * z - 0.25; });
  EXPECT_EQ(zero_count(quad, 0.0, 1.0), 2);
  EXPECT_EQ(zero_count(quad, 0.0, 0.4), 0);
  EXPECT_EQ(zero_count(fn([](cd z) { return z + 2.0; }), 0.0, 1.0), 0);
  EXPECT_EQ(zero_count(quad, 0.5, 0.1), 1);
}

TEST(Analysis, ZeroCountClosedDisk) {
  // Zeros on the circle belong to the closed disk.
  EXPECT_EQ(zero_count(fn([](cd z) { return z * z - 0.25; }), 0.0, 0.5), 2);
}

TEST(Analysis, ZeroCountMatchesRootOracle) {
  std::mt19937_64 rng(2024);
  const Tolerances tol;
  int done = 0;
  while (done < 100) {
    const int deg = 1 + static_cast<int>(rng() % 6);
    std::vector<cd> c(deg + 1);
    for (cd& v : c) v = complex_gaussian(rng);
    const UnivarPoly p(c);
    const cd center = uniform_in_disk(rng, 0.0, 0.5);
    const double R = 0.3 + 1.5 * unit_double(rng);
    const RootSet rs = roots(p, tol.cluster_eps, tol);
    int expect = 0;
    bool separated = true;
    for (const auto& r : rs.finite_roots) {
      const double d = std::abs(r.value - center);
      if (std::abs(d - R) < 1e-3) separated = false;
      if (d < R) expect += r.multiplicity;
    }
    if (!separated) continue;
    EXPECT_EQ(zero_count(Evaluator::from_poly(p), center, R), expect) << "deg " << deg;
    ++done;
  }
}

TEST(Analysis, TijdemanExamples) {
  const TijdemanReport r = tijdeman_check(fn([](cd z) { return z * z * z; }), 0.1, 2.0, 1.0);
  EXPECT_EQ(r.N, 3);
  EXPECT_NEAR(r.rhs, 3.0 * std::log(5.0) / std::log(2.0), 1e-6);
  EXPECT_TRUE(r.ok);

  const TijdemanReport one = tijdeman_check(fn([](cd) { return cd{1.0}; }), 0.1, 2.0, 1.0);
  EXPECT_EQ(one.N, 0);
  EXPECT_NEAR(one.rhs, 0.0, 1e-15);
  EXPECT_TRUE(one.ok);

  EXPECT_EQ(code_of([] { tijdeman_check(fn([](cd z) { return z; }), 0.1, 1.0, 1.0); }), Errc::InvalidArgument);
}

TEST(Analysis, TijdemanOnRandomBranches) {
  const double rho = kRho;
  const auto samples = nash::testing::class_a_samples({1, 2, 3}, rho, 20, 606);
  ASSERT_EQ(samples.size(), 20u);
  for (const auto& s : samples) {
    const TijdemanReport r = tijdeman_check(Evaluator::from_branch(s.g), 0.1 * rho, 2.0, 1.0);
    EXPECT_TRUE(r.ok) << "N " << r.N << " rhs " << r.rhs;
  }
}

TEST(Analysis, ValencyExamples) {
  const auto sq = fn([](cd z) { return z * z; });
  EXPECT_EQ(preimage_count(sq, kUnit, 0.25), 2);
  EXPECT_EQ(preimage_count(fn([](cd z) { return z; }), DomainSpec{cd{0.3}, 0.7, 128}, 0.1), 1);

  const ValencyReport v = valency_check(2, sq, kUnit, 6, 1);
  EXPECT_EQ(v.max_preimages, 2);
  EXPECT_TRUE(v.ok);
  EXPECT_EQ(v.counts.size(), 6u);

  const ValencyReport lin = valency_check(1, fn([](cd z) { return 3.0 * z; }), kUnit, 4, 9);
  EXPECT_EQ(lin.max_preimages, 1);

  EXPECT_EQ(code_of([&] { valency_check(2, fn([](cd) { return cd{4.0}; }), kUnit, 3, 1); }), Errc::ConstantBranch);
}

TEST(Analysis, TaylorExamples) {
  const TaylorReport sq = taylor_coeffs(fn([](cd z) { return z * z; }), 0.5, 8);
  EXPECT_LT(std::abs(sq.a0), 1e-14);
  for (int j = 1; j <= 8; ++j) EXPECT_LT(std::abs(sq.coeffs[j - 1] - (j == 2 ? 1.0 : 0.0)), 1e-10);

  const TaylorReport geo = taylor_coeffs(fn([](cd z) { return z / (1.0 - z / 2.0); }), 1.0, 20);
  for (int j = 1; j <= 20; ++j) EXPECT_LT(std::abs(geo.coeffs[j - 1] - std::pow(2.0, 1 - j)), 1e-8) << j;
  EXPECT_NEAR(geo.geometric_rate, 0.5, 1e-6);

  const TaylorReport cub = taylor_coeffs(fn([](cd z) { return 3.0 * z + z * z * z; }), 0.7, 6);
  EXPECT_LT(std::abs(cub.coeffs[0] - 3.0), 1e-12);
  EXPECT_LT(std::abs(cub.coeffs[2] - 1.0), 1e-12);
  EXPECT_LT(std::abs(cub.coeffs[1]), 1e-12);
}

TEST(Analysis, TaylorValidation) {
  const auto id = fn([](cd z) { return z; });
  EXPECT_EQ(code_of([&] { taylor_coeffs(id, 0.5, 20, 64); }), Errc::InvalidArgument);
  EXPECT_EQ(code_of([&] { taylor_coeffs(id, 0.5, 4, 100); }), Errc::InvalidArgument);
  EXPECT_EQ(code_of([&] { taylor_coeffs(id, -1.0, 4); }), Errc::InvalidArgument);
}

TEST(Analysis, TaylorTwoRadiiAgree) {
  const double rho = kRho;
  const auto samples = nash::testing::class_a_samples({2, 3}, rho, 8, 31);
  ASSERT_EQ(samples.size(), 8u);
  for (const auto& s : samples) {
    const Evaluator g = Evaluator::from_branch(s.g);
    // Round-off in a_j grows like r^-j and aliasing like (r / rho)^samples.
    const TaylorReport a = taylor_coeffs(g, 0.5 * rho, 12, 512);
    const TaylorReport b = taylor_coeffs(g, 0.8 * rho, 12, 512);
    EXPECT_LT(std::abs(a.a0), 1e-10);
    for (int j = 0; j < 12; ++j)
      EXPECT_LT(std::abs(a.coeffs[j] - b.coeffs[j]), 1e-7 * std::max(1.0, std::abs(a.coeffs[j]))) << j;
  }
}

TEST(Analysis, CauchyExamples) {
  TaylorReport id = taylor_coeffs(fn([](cd z) { return z; }), 1.0, 16);
  const CauchyReport a = cauchy_bound_check(id, 1.0, 2.0, 2.0);
  EXPECT_NEAR(a.empirical_K, 1.0, 1e-12);
  EXPECT_TRUE(a.ok);
  EXPECT_EQ(id.empirical_K, a.empirical_K);

  // z / (1 - 2z): |a_j| = 2^(j-1), rescaled profile (1/2)^(j+1).
  TaylorReport fast = taylor_coeffs(fn([](cd z) { return z / (1.0 - 2.0 * z); }), 0.4, 16);
  const CauchyReport b = cauchy_bound_check(fast, 1.0, 0.5, 2.0);
  for (int j = 1; j <= 16; ++j) EXPECT_NEAR(b.profile[j - 1], std::pow(0.5, j + 1), 1e-9) << j;
  EXPECT_TRUE(b.ok);

  TaylorReport geo = taylor_coeffs(fn([](cd z) { return z / (1.0 - z / 2.0); }), 1.0, 16);
  const double M = max_modulus(fn([](cd z) { return z / (1.0 - z / 2.0); }), CompactSpec::finite({0.5})).value;
  EXPECT_NEAR(M, 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(cauchy_bound_check(geo, M, 2.0, 2.0).empirical_K, 1.5, 1e-12);
}

TEST(Analysis, CauchyDetectsGrowth) {
  // Coefficients growing like 1.5^j without normalization fail the trend test.
  TaylorReport grow = taylor_coeffs(fn([](cd z) { return z / (1.0 - 1.5 * z); }), 0.5, 16);
  EXPECT_FALSE(cauchy_bound_check(grow, 1.0, 2.0, 2.0).ok);
  EXPECT_EQ(code_of([&] { cauchy_bound_check(grow, 1.0, 0.5, 1.0); }), Errc::InvalidArgument);
}

TEST(Analysis, ScaleInvarianceIsBitwiseForPowersOfTwo) {
  const auto samples = nash::testing::class_a_samples({2, 3}, kRho, 6, 8);
  ASSERT_EQ(samples.size(), 6u);
  for (const auto& s : samples) {
    const Evaluator g = Evaluator::from_branch(s.g);
    const double b0 = bernstein_constant(g, kKSmall, kOmegaSmall).B;
    for (cd c : {cd{4.0}, cd{0.0, 0.125}, cd{-2.0}, cd{0.0, -1024.0}}) {
      const Evaluator cg([&](cd z) { return c * g(z); },
                         [&](std::span<const cd> zs) {
                           auto v = g(zs);
                           for (cd& x : v) x *= c;
                           return v;
                         });
      EXPECT_EQ(bernstein_constant(cg, kKSmall, kOmegaSmall).B, b0);
    }
    std::mt19937_64 rng(5);
    const cd c = complex_gaussian(rng) * 37.0;
    const Evaluator cg([&](cd z) { return c * g(z); });
    EXPECT_NEAR(bernstein_constant(cg, kKSmall, kOmegaSmall).B, b0, 1e-13 * b0);
  }
}

TEST(Analysis, MonotoneInDomainAndAtLeastOne) {
  const auto samples = nash::testing::class_a_samples({1, 2, 3}, kRho, 9, 12);
  ASSERT_EQ(samples.size(), 9u);
  for (const auto& s : samples) {
    const Evaluator g = Evaluator::from_branch(s.g);
    double prev = 0.0;
    for (double r : {0.15, 0.25, 0.35, 0.45}) {
      const double b = bernstein_constant(g, kKSmall, DomainSpec{cd{0.0}, r, 512}).B;
      EXPECT_GE(b, 1.0 - 1e-12);
      EXPECT_GE(b, prev * (1.0 - 1e-12));
      prev = b;
    }
  }
}

TEST(Analysis, ReductionIdentity) {
  std::mt19937_64 rng(17);
  const auto samples = nash::testing::class_a_samples({1, 2, 3}, kRho, 12, 77);
  ASSERT_EQ(samples.size(), 12u);
  const CompactSpec& K = kKSmall;
  for (const auto& s : samples) {
    const Evaluator g = Evaluator::from_branch(s.g);
    const double B = bernstein_constant(g, K, kOmegaSmall).B;
    for (int t = 0; t < 3; ++t) {
      const cd c0 = complex_gaussian(rng) * std::pow(10.0, t - 1.0);
      const Evaluator f([&](cd z) { return g(z) + c0; },
                        [&](std::span<const cd> zs) {
                          auto v = g(zs);
                          for (cd& x : v) x += c0;
                          return v;
                        });
      const double lhs = max_modulus(f, kOmegaSmall).value;
      const double mk = max_modulus(f, K).value;
      EXPECT_LE(lhs, (1.0 + 2.0 * B) * mk * (1.0 + 1e-12));
    }
  }
}

TEST(Analysis, CompactSpecValidation) {
  EXPECT_EQ(code_of([] { CompactSpec::finite({}).validate(); }), Errc::InvalidArgument);
  EXPECT_EQ(code_of([] { CompactSpec::disk(0.0, -1.0).validate(); }), Errc::InvalidArgument);
  EXPECT_EQ(code_of([] { DomainSpec{cd{0.0}, 1.0, 32}.validate(); }), Errc::InvalidArgument);
  EXPECT_EQ(CompactSpec::finite({1.0, 2.0}).cardinality(), 2u);
  EXPECT_NEAR(CompactSpec::segment(cd{-1.0}, cd{0.0, 2.0}).extent_from(0.0), 2.0, 1e-15);
}
