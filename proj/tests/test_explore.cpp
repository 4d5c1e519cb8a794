#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "pac/pac.hpp"

using namespace pac;

namespace {

const double kR2 = std::sqrt(2.0);

}  // namespace

// ---------------------------------------------------------------------------
// Clipped square

TEST(ClippedSquare, RatioAtPointOne) {
    const ClippedSquarePair p = clipped_square_pair(0.1);
    EXPECT_NEAR(p.e1_perimeter, 4.0 - 0.1 * (2.0 - kR2), 1e-12);
    EXPECT_NEAR(p.e1_area, 0.995, 1e-12);
    EXPECT_NEAR(p.e1_ratio, 3.961227, 1e-6);
    EXPECT_LT(p.e1_ratio, 4.0);
    EXPECT_NEAR(p.union_ratio, 4.0, 1e-9);
}

TEST(ClippedSquare, KernelMatchesFormulas) {
    for (double x : {0.05, 0.1, 0.2, 0.3, 0.45}) {
        const ClippedSquarePair p = clipped_square_pair(x);
        EXPECT_NEAR(p.e1_perimeter, ClippedSquarePair::formula_perimeter(x), 1e-12);
        EXPECT_NEAR(p.e1_area, ClippedSquarePair::formula_area(x), 1e-12);
        EXPECT_NEAR(p.union_ratio, 4.0, 1e-9);
    }
}

TEST(ClippedSquare, BelowFourForSmallCuts) {
    for (double x : {0.05, 0.1, 0.2}) {
        const ClippedSquarePair p = clipped_square_pair(x);
        EXPECT_LT(p.e1_ratio, 4.0);
        EXPECT_LT(p.e1_ratio, p.union_ratio + 1e-9);
    }
}

TEST(ClippedSquare, CrossesFourAtOneMinusHalfRootTwo) {
    // p/a < 4  <=>  x < 1 - 1/sqrt 2.
    const double x0 = 1.0 - 1.0 / kR2;
    EXPECT_NEAR(ClippedSquarePair::formula_ratio(x0), 4.0, 1e-12);
    EXPECT_LT(clipped_square_pair(x0 - 1e-3).e1_ratio, 4.0);
    EXPECT_GT(clipped_square_pair(x0 + 1e-3).e1_ratio, 4.0);
    EXPECT_GT(clipped_square_pair(0.45).e1_ratio, 4.0);
}

TEST(ClippedSquare, RatioTendsToFourWithNegativeSlope) {
    const double h = 1e-6;
    const double slope = (ClippedSquarePair::formula_ratio(h) - 4.0) / h;
    EXPECT_NEAR(slope, -(2.0 - kR2), 1e-5);
    EXPECT_NEAR(clipped_square_pair(1e-4).e1_ratio, 4.0, 1e-4);
    EXPECT_LT(clipped_square_pair(1e-4).e1_ratio, 4.0);
}

TEST(ClippedSquare, DomainChecked) {
    EXPECT_THROW(clipped_square_pair(0.0), std::domain_error);
    EXPECT_THROW(clipped_square_pair(0.5), std::domain_error);
    EXPECT_THROW(clipped_square_pair(-0.2), std::domain_error);
}

// ---------------------------------------------------------------------------
// Corner triangle

TEST(CornerTriangle, Examples) {
    EXPECT_NEAR(corner_triangle_delta(0.1), 11.715729, 1e-6);
    EXPECT_NEAR(corner_triangle_delta(0.01), 117.157288, 1e-6);
}

TEST(CornerTriangle, ScalesAsOneOverB) {
    for (double b : {0.5, 0.1, 0.01, 0.001}) {
        const CornerTriangleStep s = corner_triangle_step(b);
        EXPECT_NEAR(s.step_ratio * b, 4.0 - 2.0 * kR2, 1e-6) << "b=" << b;
        EXPECT_NEAR(s.step_ratio, CornerTriangleStep::formula(b), 1e-6 * CornerTriangleStep::formula(b));
        EXPECT_NEAR(s.delta_a, 0.5 * b * b, 1e-9);
        EXPECT_NEAR(s.delta_p, (2.0 - kR2) * b, 1e-9);
    }
}

TEST(CornerTriangle, DomainChecked) {
    EXPECT_THROW(corner_triangle_step(0.0), std::domain_error);
    EXPECT_THROW(corner_triangle_step(1.0), std::domain_error);
}

// ---------------------------------------------------------------------------
// Centered squares

TEST(CenteredFamily, Star) {
    const Configuration c = centered_family({0.0, kPi / 4.0});
    const CenteredCheck k = verify_centered(c);
    EXPECT_NEAR(k.area, 4.0 - 2.0 * kR2, 1e-9);
    EXPECT_NEAR(k.perimeter, 16.0 - 8.0 * kR2, 1e-9);
    EXPECT_TRUE(k.passes());
}

TEST(CenteredFamily, SingleSquare) {
    const CenteredCheck k = verify_centered(centered_family({0.4}));
    EXPECT_NEAR(k.ratio, 4.0, 1e-12);
    EXPECT_TRUE(k.passes());
}

TEST(CenteredFamily, RandomAngleSets) {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> t(0.0, kHalfPi);
    std::uniform_int_distribution<int> n(1, 10);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> thetas(static_cast<std::size_t>(n(rng)));
        for (double& v : thetas) v = t(rng);
        const CenteredCheck k = verify_centered(centered_family(thetas));
        EXPECT_TRUE(k.passes()) << "trial " << trial << " ratio " << k.ratio;
    }
}

TEST(CenteredFamily, RequiresSharedCentre) {
    Configuration c = centered_family({0.0, 0.3});
    c.squares.emplace_back(Point{0.1, 0.0}, 0.0);
    EXPECT_THROW(verify_centered(c), std::invalid_argument);
}

// ---------------------------------------------------------------------------
// Overlap profile and filter

TEST(OverlapProfile, Examples) {
    Configuration disjoint;
    disjoint.squares = {UnitSquare({0, 0}, 0.0), UnitSquare({3, 0}, 0.0)};
    EXPECT_NEAR(overlap_profile(disjoint).shared[0], 0.0, 1e-12);
    EXPECT_NEAR(overlap_profile(disjoint).shared[1], 0.0, 1e-12);

    Configuration same;
    same.squares = {UnitSquare({0, 0}, 0.3), UnitSquare({0, 0}, 0.3)};
    EXPECT_NEAR(overlap_profile(same).shared[0], 1.0, 1e-12);
    EXPECT_NEAR(overlap_profile(same).shared[1], 1.0, 1e-12);

    Configuration offset;
    offset.squares = {UnitSquare({0, 0}, 0.0), UnitSquare({0.5, 0}, 0.0)};
    EXPECT_NEAR(overlap_profile(offset).shared[0], 0.5, 1e-12);
    EXPECT_NEAR(overlap_profile(offset).shared[1], 0.5, 1e-12);
}

TEST(OverlapProfile, RequiresTwoSquares) {
    Configuration one;
    one.squares = {UnitSquare({0, 0}, 0.0)};
    EXPECT_THROW(overlap_profile(one), std::invalid_argument);
}

TEST(OverlapProfile, ValuesInUnitInterval) {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 50; ++trial) {
        const Configuration c = oracle::random_free(rng, 2 + trial % 6, 1.5);
        for (double a : overlap_profile(c).shared) {
            EXPECT_GE(a, 0.0);
            EXPECT_LE(a, 1.0);
        }
    }
}

TEST(OptimalityFilter, Examples) {
    Configuration disjoint;
    disjoint.squares = {UnitSquare({0, 0}, 0.0), UnitSquare({3, 0}, 0.0)};
    FilterResult f = optimality_filter(disjoint);
    EXPECT_FALSE(f.passes);
    ASSERT_TRUE(f.witness);
    EXPECT_EQ(*f.witness, 0u);

    Configuration same;
    same.squares = {UnitSquare({0, 0}, 0.0), UnitSquare({0, 0}, 0.0)};
    f = optimality_filter(same);
    EXPECT_TRUE(f.passes);
    EXPECT_FALSE(f.witness);

    Configuration offset;
    offset.squares = {UnitSquare({0, 0}, 0.0), UnitSquare({0.5, 0}, 0.0)};
    f = optimality_filter(offset);
    EXPECT_FALSE(f.passes);
    EXPECT_EQ(f.witness.value_or(99), 0u);
}

TEST(OptimalityFilter, RatioAboveFourImpliesLargeOverlaps) {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 100; ++trial) {
        const Configuration c = oracle::random_free(rng, 2 + trial % 6, 1.5);
        if (ratio(c) > 4.0 + 1e-9) {
            for (double a : overlap_profile(c).shared) EXPECT_GT(a, kPi / 4.0);
        }
        EXPECT_LE(ratio(c), gyenes_bound() + 1e-9);
    }
}

TEST(IsoperimetricBound, Examples) {
    EXPECT_NEAR(isoperimetric_removal_bound(0.0), 4.0, 1e-15);
    EXPECT_NEAR(isoperimetric_removal_bound(kPi / 4.0), 4.0, 1e-12);
    EXPECT_NEAR(isoperimetric_removal_bound(0.3), 2.941, 1e-3);
    EXPECT_THROW(isoperimetric_removal_bound(-0.1), std::domain_error);
    EXPECT_THROW(isoperimetric_removal_bound(0.8), std::domain_error);
}

TEST(IsoperimetricBound, AtMostFour) {
    for (int i = 0; i <= 1000; ++i) EXPECT_LE(isoperimetric_removal_bound(kPi / 4.0 * i / 1000.0), 4.0 + 1e-12);
}

// ---------------------------------------------------------------------------
// Circles

TEST(CircleUnion, SingleCircleMatchesPolygonRatio) {
    const CircleUnionCheck c = circle_union_check({{0, 0}}, 1024);
    EXPECT_NEAR(c.ratio, 2.0 / std::cos(kPi / 1024), 1e-9);
    EXPECT_NEAR(c.ratio, 2.0000094, 1e-7);
    EXPECT_TRUE(c.passes());
}

TEST(CircleUnion, OverlappingCircles) {
    const CircleUnionCheck c = circle_union_check({{0, 0}, {0.2, 0.05}}, 1024);
    EXPECT_LE(c.ratio, 2.00001);
    EXPECT_TRUE(c.passes());
}

TEST(CircleUnion, RatioDecreasesWithResolution) {
    double prev = kgon_ratio(16);
    for (int k = 64; k <= 4096; k *= 4) {
        const double r = circle_union_check({{1, 2}}, k).ratio;
        EXPECT_LT(r, prev);
        EXPECT_GT(r, 2.0);
        prev = r;
    }
}

TEST(CircleUnion, RandomUnions) {
    std::mt19937_64 rng(44);
    std::uniform_real_distribution<double> u(0.0, 3.0);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Point> centers;
        for (int i = 0; i < 1 + trial % 5; ++i) centers.push_back({u(rng), u(rng)});
        EXPECT_TRUE(circle_union_check(centers, 256).passes()) << "trial " << trial;
    }
}

TEST(CircleUnion, DomainChecked) {
    EXPECT_THROW(circle_union_check({{0, 0}}, 8), std::domain_error);
    EXPECT_THROW(circle_union_check({}, 32), std::invalid_argument);
}
