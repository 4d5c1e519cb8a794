#pragma once

// Executable certificates for the oriented case: the four-direction strip
// average, the bump (rectangle) method for one added square, and the
// boundary-strip classification of an added square's edges.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pac/geometry.hpp"
#include "pac/union.hpp"

namespace pac {

/// Tolerance for every certificate inequality.
inline constexpr double kCertTol = 1e-9;

inline constexpr std::array<double, 4> kCardinalAngles = {0.0, kHalfPi, kPi, 3.0 * kHalfPi};

inline bool is_oriented(const Configuration& c) {
    return std::all_of(c.squares.begin(), c.squares.end(), [](const UnitSquare& s) { return s.theta() == 0.0; });
}

inline void require_oriented(const Configuration& c, const char* fn) {
    validate(c);
    if (!is_oriented(c)) throw std::invalid_argument(std::string(fn) + ": configuration has rotated squares");
}

// ---------------------------------------------------------------------------
// Strip certificate

struct StripCertificate {
    std::array<double, 4> direction_sums{};  // indexed like kCardinalAngles
    double averaged_sum = 0.0;
    double perimeter = 0.0;
    double area = 0.0;

    bool averaged_matches_perimeter() const { return std::abs(averaged_sum - 0.25 * perimeter) <= kCertTol; }
    bool averaged_within_area() const { return averaged_sum <= area + kCertTol; }
    bool each_direction_within_area() const {
        return std::all_of(direction_sums.begin(), direction_sums.end(), [&](double s) { return s <= area + kCertTol; });
    }
    bool passes() const { return averaged_matches_perimeter() && averaged_within_area() && each_direction_within_area(); }
};

/// For each cardinal direction, sums |s_j| times the chord from the segment
/// midpoint across its owning square. Each sum lower-bounds the area, and
/// the four-direction average is exactly a quarter of the perimeter.
inline StripCertificate strip_certificate(const Configuration& c) {
    require_oriented(c, "strip_certificate");
    const Region region = union_of(c);
    std::vector<Polygon> squares;
    squares.reserve(c.size());
    for (const auto& s : c.squares) squares.push_back(square_polygon(s));

    StripCertificate cert;
    cert.area = area(region);
    cert.perimeter = perimeter(region);
    for (const auto& seg : region.boundary_segments) {
        const double len = seg.length();
        for (std::size_t k = 0; k < kCardinalAngles.size(); ++k) {
            const Point dir{std::cos(kCardinalAngles[k]), std::sin(kCardinalAngles[k])};
            cert.direction_sums[k] += len * chord_length(squares[seg.owner], seg.midpoint(), dir);
        }
    }
    for (double s : cert.direction_sums) cert.averaged_sum += 0.25 * s;
    return cert;
}

// ---------------------------------------------------------------------------
// Bump method

/// p(R)/a(R) for a w-by-h rectangle inside the unit square; never below 4.
inline double rectangle_ratio_check(double w, double h) {
    if (!(w > 0.0 && w <= 1.0 && h > 0.0 && h <= 1.0)) {
        throw std::domain_error("rectangle_ratio_check: sides must lie in (0, 1]");
    }
    const double r = 2.0 * (w + h) / (w * h);
    if (r < 4.0 - 1e-12) throw std::logic_error("rectangle_ratio_check: ratio below 4");
    return r;
}

struct Rect {
    double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;

    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
    double perimeter() const { return 2.0 * (width() + height()); }
    double area() const { return width() * height(); }
    bool contains(Point p, double tol) const {
        return p.x >= x0 - tol && p.x <= x1 + tol && p.y >= y0 - tol && p.y <= y1 + tol;
    }
    bool meets(const Rect& o, double tol) const {
        return std::min(x1, o.x1) - std::max(x0, o.x0) >= -tol && std::min(y1, o.y1) - std::max(y0, o.y0) >= -tol;
    }
    Rect hull(const Rect& o) const {
        return {std::min(x0, o.x0), std::min(y0, o.y0), std::max(x1, o.x1), std::max(y1, o.y1)};
    }
};

namespace detail {

/// Lower-left corner of an axis-aligned unit square.
inline Point lower_left(const UnitSquare& s) { return s.center() - Point{0.5, 0.5}; }

/// Closed intersections of each base square with s, in s-local coordinates
/// ([0,1]^2). Degenerate (segment or point) intersections are kept.
inline std::vector<Rect> overlap_rects(const Configuration& base, const UnitSquare& s, double tol) {
    const Point o = lower_left(s);
    std::vector<Rect> out;
    for (const auto& q : base.squares) {
        const Point ql = lower_left(q) - o;
        Rect r{std::max(0.0, ql.x), std::max(0.0, ql.y), std::min(1.0, ql.x + 1.0), std::min(1.0, ql.y + 1.0)};
        if (r.width() < -tol || r.height() < -tol) continue;
        r.x1 = std::max(r.x1, r.x0);
        r.y1 = std::max(r.y1, r.y0);
        out.push_back(r);
    }
    return out;
}

inline bool has_interior_overlap(const std::vector<Rect>& rects, double tol) {
    return std::any_of(rects.begin(), rects.end(), [&](const Rect& r) { return r.width() > tol && r.height() > tol; });
}

/// Corners of [0,1]^2 in CCW order: bottom-left, bottom-right, top-right, top-left.
inline constexpr std::array<Point, 4> kUnitCorners = {Point{0, 0}, Point{1, 0}, Point{1, 1}, Point{0, 1}};

inline Configuration with_square(const Configuration& base, const UnitSquare& s) {
    Configuration out = base;
    out.squares.push_back(s);
    return out;
}

}  // namespace detail

enum class BumpRoute {
    Disjoint,   // no interior overlap: the new square adds 4 and 1 at worst
    Single,     // one covered vertex, one bump rectangle
    Separate,   // two covered vertices, disjoint bump rectangles
    Merged,     // two adjacent covered vertices, overlapping rectangles hulled
    Diagonal,   // two opposite covered vertices, overlapping rectangles
    Direct,     // three or four covered vertices, kernel ratio only
};

inline const char* to_string(BumpRoute r) {
    switch (r) {
    case BumpRoute::Disjoint: return "disjoint";
    case BumpRoute::Single: return "single";
    case BumpRoute::Separate: return "separate";
    case BumpRoute::Merged: return "merged";
    case BumpRoute::Diagonal: return "diagonal";
    case BumpRoute::Direct: return "direct";
    }
    return "?";
}

struct BumpStep {
    Configuration base;
    UnitSquare new_square;
    int case_id = 0;
    BumpRoute route = BumpRoute::Disjoint;
    double delta_p = 0.0;
    double delta_a = 0.0;
    std::vector<Rect> bump_rectangles;  // world coordinates
    std::optional<double> chain_bound;  // (4 - sum p(RB)) / (1 - sum a(RB))
    bool ratio_ok = false;
    bool chain_ok = false;

    bool no_op() const { return std::abs(delta_a) <= kCertTol && std::abs(delta_p) <= kCertTol; }
    std::optional<double> step_ratio() const {
        if (delta_a > kCertTol) return delta_p / delta_a;
        return std::nullopt;
    }
    bool passes() const { return ratio_ok && chain_ok; }
};

/// Adds the axis-aligned square s to an oriented base and certifies that the
/// step cannot push the ratio above 4: dp/da <= 4 when da > 0, dp <= 0 when
/// da = 0. For one or two covered vertices the rectangle chain is checked as
/// well. Vertices of s lying on the boundary of the base count as covered.
inline BumpStep bump_step(const Configuration& base, const UnitSquare& s) {
    require_oriented(base, "bump_step");
    if (s.theta() != 0.0) throw std::invalid_argument("bump_step: new square must be axis-aligned");
    constexpr double tol = kCertTol;

    BumpStep step;
    step.base = base;
    step.new_square = s;
    const Region before = union_of(base);
    const Region after = union_of(detail::with_square(base, s));
    step.delta_p = perimeter(after) - perimeter(before);
    step.delta_a = area(after) - area(before);
    step.ratio_ok = step.delta_a > tol ? step.delta_p <= 4.0 * step.delta_a + tol * (1.0 + 4.0 * step.delta_a)
                                       : step.delta_p <= tol;

    const std::vector<Rect> rects = detail::overlap_rects(base, s, tol);
    const Point origin = detail::lower_left(s);
    auto to_world = [&](const Rect& r) { return Rect{r.x0 + origin.x, r.y0 + origin.y, r.x1 + origin.x, r.y1 + origin.y}; };

    if (!detail::has_interior_overlap(rects, tol)) {
        step.case_id = 0;
        step.route = BumpRoute::Disjoint;
        step.chain_ok = true;
        return step;
    }

    std::vector<std::size_t> covered;
    std::vector<Rect> bumps;
    for (std::size_t k = 0; k < 4; ++k) {
        const Point v = detail::kUnitCorners[k];
        std::optional<Rect> rb;
        for (const Rect& r : rects) {
            if (!r.contains(v, tol)) continue;
            rb = rb ? rb->hull(r) : r;
        }
        if (rb) {
            covered.push_back(k);
            bumps.push_back(*rb);
        }
    }
    step.case_id = static_cast<int>(covered.size());

    // Certifies dp <= 4 - P and da >= 1 - A for the chosen rectangles, the
    // chain value (4 - P)/(1 - A) <= 4, and dp/da <= chain value whenever the
    // numerator is nonnegative (otherwise the ratio link does not follow).
    auto check_chain = [&](const std::vector<Rect>& used) {
        double p = 0.0;
        double a = 0.0;
        for (const Rect& r : used) {
            p += r.perimeter();
            a += r.area();
        }
        bool ok = step.delta_p <= 4.0 - p + tol && step.delta_a >= 1.0 - a - tol;
        if (1.0 - a > tol) {
            const double chain = (4.0 - p) / (1.0 - a);
            step.chain_bound = chain;
            ok = ok && chain <= 4.0 + tol;
            if (4.0 - p >= 0.0 && step.delta_a > tol) {
                ok = ok && step.delta_p / step.delta_a <= chain + tol / step.delta_a;
            }
        }
        for (const Rect& r : used) step.bump_rectangles.push_back(to_world(r));
        step.chain_ok = ok;
    };

    if (covered.size() == 1) {
        step.route = BumpRoute::Single;
        check_chain(bumps);
    } else if (covered.size() == 2) {
        if (!bumps[0].meets(bumps[1], tol)) {
            step.route = BumpRoute::Separate;
            check_chain(bumps);
        } else if ((covered[1] - covered[0]) % 2 == 1) {
            step.route = BumpRoute::Merged;
            check_chain({bumps[0].hull(bumps[1])});
        } else {
            step.route = BumpRoute::Diagonal;
            for (const Rect& r : bumps) step.bump_rectangles.push_back(to_world(r));
            step.chain_ok = step.delta_p <= tol;
        }
    } else {
        step.route = BumpRoute::Direct;
        for (const Rect& r : bumps) step.bump_rectangles.push_back(to_world(r));
        step.chain_ok = true;
    }
    return step;
}

// ---------------------------------------------------------------------------
// Boundary strips

/// 2(h+v)/(h+v-hv): the strip bound on dp/da. At most 4 on (0,1]^2, with
/// equality only at h = v = 1.
inline double strip_bound(double h, double v) {
    if (!(h >= 0.0 && h <= 1.0 && v >= 0.0 && v <= 1.0)) throw std::domain_error("strip_bound: h, v must lie in [0, 1]");
    const double denom = h + v - h * v;
    if (!(denom > 0.0)) throw std::domain_error("strip_bound: h + v - hv must be positive");
    return 2.0 * (h + v) / denom;
}

struct StripClassification {
    std::vector<BoundarySegment> segments;  // partition of the new square's boundary
    double h = 0.0;                         // total length of horizontal P2 pairs
    double v = 0.0;                         // total length of vertical P2 pairs
    double delta_p = 0.0;
    double delta_a = 0.0;

    double length_of(StripClass c) const {
        double total = 0.0;
        for (const auto& s : segments) {
            if (s.strip_class == c) total += s.length();
        }
        return total;
    }
    bool perimeter_ok() const { return delta_p <= 2.0 * (h + v) + kCertTol; }
    bool area_ok() const { return delta_a >= h + v - h * v - kCertTol; }
    bool passes() const { return perimeter_ok() && area_ok(); }
};

namespace detail {

using Interval = std::array<double, 2>;

inline bool in_any(const std::vector<Interval>& ivs, double t) {
    return std::any_of(ivs.begin(), ivs.end(), [t](const Interval& iv) { return t >= iv[0] && t <= iv[1]; });
}

}  // namespace detail

/// Splits the boundary of s into P0 (covered by the base), P1 (uncovered,
/// but the orthogonal line through it meets base ∩ s) and P2 (the rest), and
/// checks dp <= 2(h+v) and da >= h + v - hv against the kernel.
inline StripClassification classify_boundary_strips(const Configuration& base, const UnitSquare& s) {
    require_oriented(base, "classify_boundary_strips");
    if (s.theta() != 0.0) throw std::invalid_argument("classify_boundary_strips: new square must be axis-aligned");
    constexpr double tol = kCertTol;

    const std::vector<Rect> rects = detail::overlap_rects(base, s, tol);
    if (!detail::has_interior_overlap(rects, tol)) {
        throw std::invalid_argument("classify_boundary_strips: new square does not overlap the base");
    }

    std::vector<detail::Interval> proj_x, proj_y;
    for (const Rect& r : rects) {
        proj_x.push_back({r.x0, r.x1});
        proj_y.push_back({r.y0, r.y1});
    }

    struct Side {
        Point start;
        Point dir;
        bool horizontal;
    };
    // CCW: bottom, right, top, left.
    const std::array<Side, 4> sides = {Side{{0, 0}, {1, 0}, true}, Side{{1, 0}, {0, 1}, false},
                                       Side{{1, 1}, {-1, 0}, true}, Side{{0, 1}, {0, -1}, false}};

    StripClassification out;
    const Point origin = detail::lower_left(s);
    const std::size_t owner = base.size();
    for (const Side& side : sides) {
        // Coordinate along the side's axis (x for horizontal sides, y for
        // vertical ones) of the point at arclength t.
        auto axis = [&](double t) {
            const Point p = side.start + t * side.dir;
            return side.horizontal ? p.x : p.y;
        };
        std::vector<detail::Interval> covered;
        for (const Rect& r : rects) {
            const bool touches = side.horizontal ? (side.start.y == 0.0 ? r.y0 <= tol : r.y1 >= 1.0 - tol)
                                                 : (side.start.x == 1.0 ? r.x1 >= 1.0 - tol : r.x0 <= tol);
            if (!touches) continue;
            covered.push_back(side.horizontal ? detail::Interval{r.x0, r.x1} : detail::Interval{r.y0, r.y1});
        }
        const auto& proj = side.horizontal ? proj_x : proj_y;

        std::vector<double> cuts = {0.0, 1.0};
        for (const auto& iv : covered) cuts.insert(cuts.end(), iv.begin(), iv.end());
        for (const auto& iv : proj) cuts.insert(cuts.end(), iv.begin(), iv.end());
        // Convert axis coordinates to arclength along this side.
        const bool reversed = (side.horizontal ? side.dir.x : side.dir.y) < 0.0;
        for (double& c : cuts) c = reversed ? 1.0 - c : c;
        std::sort(cuts.begin(), cuts.end());

        std::optional<BoundarySegment> open;
        auto flush = [&] {
            if (open && open->length() > tol) out.segments.push_back(*open);
            open.reset();
        };
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            const double t0 = cuts[i];
            const double t1 = cuts[i + 1];
            if (t1 - t0 <= tol) continue;
            const double mid = axis(0.5 * (t0 + t1));
            StripClass cls = StripClass::P2;
            if (detail::in_any(covered, mid)) {
                cls = StripClass::P0;
            } else if (detail::in_any(proj, mid)) {
                cls = StripClass::P1;
            }
            const Point a = origin + side.start + t0 * side.dir;
            const Point b = origin + side.start + t1 * side.dir;
            if (open && open->strip_class == cls && distance(open->b, a) <= tol) {
                open->b = b;
            } else {
                flush();
                open = BoundarySegment{a, b, owner, cls};
            }
        }
        flush();
    }

    for (const auto& seg : out.segments) {
        if (seg.strip_class != StripClass::P2) continue;
        const bool horizontal = std::abs(seg.a.y - seg.b.y) <= tol;
        const bool bottom_or_left = horizontal ? std::abs(seg.a.y - origin.y) <= tol : std::abs(seg.a.x - origin.x) <= tol;
        if (!bottom_or_left) continue;
        (horizontal ? out.h : out.v) += seg.length();
    }

    const Region before = union_of(base);
    const Region after = union_of(detail::with_square(base, s));
    out.delta_p = perimeter(after) - perimeter(before);
    out.delta_a = area(after) - area(before);
    return out;
}

/// True iff the reflection of every P2 piece across the square's centre line
/// parallel to it is covered by P2 pieces on the opposite side.
inline bool mirror_property_holds(const StripClassification& c, const UnitSquare& s, double tol = kCertTol) {
    const Point ctr = s.center();
    auto reflect = [&](const BoundarySegment& seg) {
        const bool horizontal = std::abs(seg.a.y - seg.b.y) <= tol;
        auto mirror = [&](Point p) { return horizontal ? Point{p.x, 2.0 * ctr.y - p.y} : Point{2.0 * ctr.x - p.x, p.y}; };
        return std::array<Point, 2>{mirror(seg.a), mirror(seg.b)};
    };
    for (const auto& seg : c.segments) {
        if (seg.strip_class != StripClass::P2) continue;
        const auto [ma, mb] = reflect(seg);
        // Sum the P2 length that overlaps the mirrored piece on the same line.
        double covered = 0.0;
        const Point d = mb - ma;
        const double len = norm(d);
        for (const auto& other : c.segments) {
            if (other.strip_class != StripClass::P2) continue;
            if (std::abs(cross(d, other.a - ma)) / len > tol || std::abs(cross(d, other.b - ma)) / len > tol) continue;
            const double ta = dot(other.a - ma, d) / len;
            const double tb = dot(other.b - ma, d) / len;
            covered += std::max(0.0, std::min(len, std::max(ta, tb)) - std::max(0.0, std::min(ta, tb)));
        }
        if (covered < len - tol) return false;
    }
    return true;
}

}  // namespace pac
