#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "pac/geometry.hpp"
#include "pac/union.hpp"

namespace pac {

// ---------------------------------------------------------------------------
// Clipped-square pair: two congruent convex sets, each with ratio below 4,
// whose union is the unit square.

struct ClippedSquarePair {
    double x = 0.0;
    double e1_perimeter = 0.0;
    double e1_area = 0.0;
    double e1_ratio = 0.0;
    double union_ratio = 0.0;

    /// p(x) = 4 - x(2 - sqrt 2), a(x) = 1 - x^2/2.
    static double formula_perimeter(double x) { return 4.0 - x * (2.0 - std::sqrt(2.0)); }
    static double formula_area(double x) { return 1.0 - 0.5 * x * x; }
    static double formula_ratio(double x) { return formula_perimeter(x) / formula_area(x); }
};

/// Unit square centred at the origin with the top-right corner cut off by an
/// isosceles right triangle of leg x.
inline Polygon clipped_square(double x) {
    return {{-0.5, -0.5}, {0.5, -0.5}, {0.5, 0.5 - x}, {0.5 - x, 0.5}, {-0.5, 0.5}};
}

inline ClippedSquarePair clipped_square_pair(double x) {
    if (!(x > 0.0 && x < 0.5)) throw std::domain_error("clipped_square_pair: x must lie in (0, 0.5)");
    const Polygon e1 = clipped_square(x);
    Polygon e2;
    for (Point p : e1) e2.push_back(-1.0 * p);

    ClippedSquarePair out;
    out.x = x;
    const Region r1 = detail::union_convex({e1});
    out.e1_perimeter = perimeter(r1);
    out.e1_area = area(r1);
    out.e1_ratio = out.e1_perimeter / out.e1_area;
    out.union_ratio = ratio(detail::union_convex({e1, e2}));
    return out;
}

// ---------------------------------------------------------------------------
// Corner triangle: adding a square that is covered except for a corner
// triangle with legs b gives dp/da = (4 - 2 sqrt 2)/b.

struct CornerTriangleStep {
    Configuration base;
    UnitSquare added;
    double delta_p = 0.0;
    double delta_a = 0.0;
    double step_ratio = 0.0;

    static double formula(double b) { return (4.0 - 2.0 * std::sqrt(2.0)) / b; }
};

/// The added square is [0,1]^2. The base is four 45-degree squares tiling a
/// 2x2 block whose lower edge lies on x + y = b; it covers everything except
/// the corner triangle.
inline CornerTriangleStep corner_triangle_step(double b) {
    if (!(b > 0.0 && b < 1.0)) throw std::domain_error("corner_triangle_step: b must lie in (0, 1)");
    const double q = kPi / 4.0;
    const Point eu{std::cos(q), std::sin(q)};
    const Point ew{-std::sin(q), std::cos(q)};
    const double u0 = b / std::sqrt(2.0);

    CornerTriangleStep out;
    out.base.label = "corner-triangle base";
    for (double du : {0.5, 1.5}) {
        for (double dw : {-0.5, 0.5}) out.base.squares.emplace_back((u0 + du) * eu + dw * ew, q);
    }
    out.added = UnitSquare({0.5, 0.5}, 0.0);
    Configuration with = out.base;
    with.squares.push_back(out.added);
    const Region before = union_of(out.base);
    const Region after = union_of(with);
    out.delta_p = perimeter(after) - perimeter(before);
    out.delta_a = area(after) - area(before);
    out.step_ratio = out.delta_p / out.delta_a;
    return out;
}

inline double corner_triangle_delta(double b) { return corner_triangle_step(b).step_ratio; }

// ---------------------------------------------------------------------------
// Squares sharing one centre.

inline Configuration centered_family(const std::vector<double>& thetas) {
    if (thetas.empty()) throw std::invalid_argument("centered_family: need at least one angle");
    Configuration c;
    c.label = "centered family";
    for (double t : thetas) c.squares.emplace_back(Point{0.0, 0.0}, t);
    c.oriented = std::all_of(c.squares.begin(), c.squares.end(), [](const UnitSquare& s) { return s.theta() == 0.0; });
    return c;
}

struct CenteredCheck {
    double perimeter = 0.0;
    double area = 0.0;
    double ratio = 0.0;
    double fan_area = 0.0;  // sum of triangles centre -> boundary segment

    bool passes(double tol = 1e-9) const {
        return std::abs(ratio - 4.0) <= tol && std::abs(fan_area - area) <= tol && std::abs(area - 0.25 * perimeter) <= tol;
    }
};

/// Area by fanning triangles from the common centre over the boundary
/// segments. Every segment lies on an edge at distance 1/2, so the fan area
/// is a quarter of the perimeter.
inline CenteredCheck verify_centered(const Configuration& c) {
    validate(c);
    const Point ctr = c.squares.front().center();
    for (const auto& s : c.squares) {
        if (distance(s.center(), ctr) > kSnapTol) throw std::invalid_argument("verify_centered: squares do not share a centre");
    }
    const Region r = union_of(c);
    CenteredCheck out;
    out.perimeter = perimeter(r);
    out.area = area(r);
    out.ratio = out.perimeter / out.area;
    for (const auto& seg : r.boundary_segments) {
        const Point d = seg.b - seg.a;
        const double height = std::abs(cross(d, ctr - seg.a)) / norm(d);
        out.fan_area += 0.5 * norm(d) * height;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Overlap profile and the optimal-counterexample filter.

/// Area each square shares with the union of the others.
struct OverlapProfile {
    std::vector<double> shared;
};

inline OverlapProfile overlap_profile(const Configuration& c) {
    validate(c);
    if (c.size() < 2) throw std::invalid_argument("overlap_profile: need at least two squares");
    const double whole = area(union_of(c));
    OverlapProfile out;
    out.shared.reserve(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        const double rest = area(union_of(without(c, i)));
        out.shared.push_back(std::clamp(1.0 - whole + rest, 0.0, 1.0));
    }
    return out;
}

/// (4 - 2 sqrt(pi alpha)) / (1 - alpha): bound on dp/da when removing a
/// square that shares area alpha, from the isoperimetric inequality.
inline double isoperimetric_removal_bound(double alpha) {
    if (!(alpha >= 0.0 && alpha <= kPi / 4.0)) throw std::domain_error("isoperimetric_removal_bound: alpha must lie in [0, pi/4]");
    return (4.0 - 2.0 * std::sqrt(kPi * alpha)) / (1.0 - alpha);
}

inline constexpr double kOptimalShareThreshold = kPi / 4.0;

struct FilterResult {
    bool passes = false;
    std::optional<std::size_t> witness;
};

/// An optimal counterexample shares more than pi/4 of every square. The
/// witness is the first square that does not.
inline FilterResult optimality_filter(const OverlapProfile& profile) {
    for (std::size_t i = 0; i < profile.shared.size(); ++i) {
        if (!(profile.shared[i] > kOptimalShareThreshold)) return {false, i};
    }
    return {true, std::nullopt};
}

inline FilterResult optimality_filter(const Configuration& c) { return optimality_filter(overlap_profile(c)); }

// ---------------------------------------------------------------------------
// Unit circles, approximated by inscribed regular k-gons.

struct CircleUnionCheck {
    double ratio = 0.0;
    double bound = 0.0;  // 2 / cos(pi/k), the single k-gon ratio

    bool passes() const { return ratio <= bound + 1e-9; }
};

inline double kgon_ratio(int k) { return 2.0 / std::cos(kPi / k); }

inline CircleUnionCheck circle_union_check(const std::vector<Point>& centers, int k) {
    if (k < 16) throw std::domain_error("circle_union_check: k must be >= 16");
    if (centers.empty()) throw std::invalid_argument("circle_union_check: no circles");
    std::vector<Polygon> polys;
    for (Point c : centers) polys.push_back(regular_polygon(c, 1.0, k));
    CircleUnionCheck out;
    out.ratio = ratio(detail::union_convex(std::move(polys)));
    out.bound = kgon_ratio(k);
    return out;
}

}  // namespace pac
