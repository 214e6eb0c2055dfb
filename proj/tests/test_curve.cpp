#include <gtest/gtest.h>

#include <random>

#include "nash/curve.hpp"
#include "nash/error.hpp"
#include "nash/random.hpp"

using namespace nash;

namespace {

constexpr unsigned VL = static_cast<unsigned>(Category::VerticalLine);
constexpr unsigned RI = static_cast<unsigned>(Category::RamificationOrIntersection);
constexpr unsigned PO = static_cast<unsigned>(Category::Pole);

struct Expected {
  cd z;
  unsigned mask;
};

void expect_set(const BivarPoly& s, double rho, const std::vector<Expected>& want) {
  const ExcludedSet e = excluded_points(s, rho);
  ASSERT_EQ(e.points.size(), want.size());
  for (const Expected& w : want) {
    const auto it = std::find_if(e.points.begin(), e.points.end(),
                                 [&](const ExcludedPoint& p) { return std::abs(p.location - w.z) <= 1e-8; });
    ASSERT_NE(it, e.points.end()) << "missing point " << w.z;
    EXPECT_EQ(it->categories, w.mask);
  }
}

BivarPoly random_poly(std::mt19937_64& rng, int k) {
  std::vector<std::vector<cd>> rows(k + 1, std::vector<cd>(k + 1));
  for (int i = 0; i <= k; ++i)
    for (int j = 0; i + j <= k; ++j) rows[i][j] = complex_gaussian(rng);
  return BivarPoly::from_rows(rows);
}

}  // namespace

TEST(Curve, ExcludedExamples) {
  expect_set(BivarPoly{{0, 2, 1.0}, {1, 0, -1.0}}, 1.0, {{0.0, RI}});
  expect_set(BivarPoly{{1, 1, 1.0}, {1, 0, -1.0}}, 1.0, {{0.0, VL}});
  expect_set(BivarPoly{{1, 1, 1.0}, {0, 0, -1.0}}, 1.0, {{0.0, PO}});
  expect_set(BivarPoly{{0, 1, 1.0}, {1, 0, -1.0}}, 1.0, {});
  expect_set(BivarPoly{{0, 1, 1.0}, {1, 0, -1.0}}, 100.0, {});
}

TEST(Curve, OpenDiskSemantics) {
  // Pole of (1 - z/2) w - z sits at 2: outside D_2, inside D_2.5.
  const BivarPoly s{{0, 1, 1.0}, {1, 1, -0.5}, {1, 0, -1.0}};
  EXPECT_TRUE(excluded_points(s, 2.0).points.empty());
  expect_set(s, 2.5, {{2.0, PO}});
}

TEST(Curve, ConstantAndZero) {
  EXPECT_TRUE(excluded_points(BivarPoly{{0, 0, 3.0}}, 1.0).points.empty());
  EXPECT_THROW(excluded_points(BivarPoly{}, 1.0), Error);
}

TEST(Curve, ClassBExamples) {
  // z (w - z^2): content z is a vertical line only.
  const BivarPoly s1 = BivarPoly{{1, 0, 1.0}} * BivarPoly{{0, 1, 1.0}, {2, 0, -1.0}};
  EXPECT_TRUE(is_class_B(s1, 1.0));
  const BivarPoly s2{{0, 2, 1.0}, {1, 0, -1.0}};
  EXPECT_FALSE(is_class_B(s2, 1.0));
  EXPECT_FALSE(is_class_B(s2, 1e-9));
  EXPECT_THROW(is_class_B(s2, 0.0), Error);
}

TEST(Curve, SafeRegionExamples) {
  const SafeRegion a = safe_region(BivarPoly{{0, 1, 1.0}, {1, 0, -1.0}}, 1.0, 0.1);
  EXPECT_DOUBLE_EQ(a.outer_radius(), 0.9);
  EXPECT_TRUE(a.holes.empty());

  const SafeRegion b = safe_region(BivarPoly{{0, 2, 1.0}, {1, 0, -1.0}}, 1.0, 0.2);
  EXPECT_DOUBLE_EQ(b.outer_radius(), 0.8);
  ASSERT_EQ(b.holes.size(), 1u);
  EXPECT_LT(std::abs(b.holes[0].center), 1e-12);
  EXPECT_DOUBLE_EQ(b.holes[0].radius, 0.2);
  EXPECT_FALSE(b.contains(0.1));
  EXPECT_TRUE(b.contains(0.5));
  EXPECT_FALSE(b.contains(0.85));

  EXPECT_THROW(safe_region(BivarPoly{{0, 1, 1.0}}, 1.0, 1.0), Error);
  EXPECT_THROW(safe_region(BivarPoly{{0, 1, 1.0}}, 1.0, 2.0), Error);
}

TEST(Curve, ExcludedBoundFormula) {
  // Vertical lines k, poles k, ramification k^2, pairwise intersections k^2 C(k,2).
  for (int k = 1; k <= 12; ++k) {
    long long expect = 0;
    expect += k;                                   // roots of q
    expect += k;                                   // roots of a_l
    expect += static_cast<long long>(k) * k;       // ramification inside one factor
    expect += static_cast<long long>(k) * k * (k * (k - 1) / 2);
    EXPECT_EQ(excluded_bound(k), expect);
  }
  EXPECT_EQ(excluded_bound(1), 3);
  EXPECT_EQ(excluded_bound(2), 12);
  EXPECT_EQ(excluded_bound(3), 42);
  EXPECT_THROW(excluded_bound(0), Error);
}

TEST(Curve, CardinalityWithinBound) {
  std::mt19937_64 rng(101);
  for (int t = 0; t < 60; ++t) {
    const int k = 1 + t % 5;
    const BivarPoly s = random_poly(rng, k);
    const ExcludedSet e = excluded_points(s, 1e6);
    EXPECT_LE(static_cast<long long>(e.points.size()), excluded_bound(s.deg_total()));
    for (const auto& p : e.points) EXPECT_NE(p.categories, 0u);
  }
}

TEST(Curve, ScaleInvariance) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 20; ++t) {
    const BivarPoly s = random_poly(rng, 1 + t % 4);
    const cd c = complex_gaussian(rng) * std::pow(10.0, static_cast<double>(t % 7) - 3.0);
    const ExcludedSet a = excluded_points(s, 5.0);
    const ExcludedSet b = excluded_points(c * s, 5.0);
    ASSERT_EQ(a.points.size(), b.points.size());
    for (std::size_t i = 0; i < a.points.size(); ++i) {
      EXPECT_LE(std::abs(a.points[i].location - b.points[i].location), 1e-7);
      EXPECT_EQ(a.points[i].categories, b.points[i].categories);
    }
  }
}

TEST(Curve, RamificationPointsHaveRepeatedRootOrDegreeDrop) {
  std::mt19937_64 rng(19);
  const Tolerances tol;
  for (int t = 0; t < 30; ++t) {
    const BivarPoly s = random_poly(rng, 2 + t % 3);
    const Curve c(s);
    for (const auto& p : c.all_excluded()) {
      if (!p.has(Category::RamificationOrIntersection)) continue;
      const UnivarPoly f = specialize_z(c.squarefree(), p.location);
      const RootSet r = roots(f, 1e-4, tol);
      bool repeated = r.count_at_infinity > 0;
      for (const auto& x : r.finite_roots) repeated = repeated || x.multiplicity > 1;
      EXPECT_TRUE(repeated) << "at " << p.location;
    }
  }
}

TEST(Curve, CategoryNames) {
  EXPECT_EQ(category_names(VL | PO), (std::vector<std::string>{"VerticalLine", "Pole"}));
  EXPECT_EQ(to_string(Category::RamificationOrIntersection), "Ramification/Intersection");
}
