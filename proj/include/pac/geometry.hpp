#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace pac {

/// Global snap tolerance for vertex coincidence and collinearity.
inline constexpr double kSnapTol = 1e-9;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kHalfPi = std::numbers::pi / 2.0;

/// Raised when the union kernel cannot resolve a degenerate overlap.
class GeometryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
    friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
    friend Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
    friend Point operator*(Point a, double s) { return {s * a.x, s * a.y}; }
    friend bool operator==(Point a, Point b) = default;
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double distance(Point a, Point b) { return norm(b - a); }
inline Point rotate(Point p, double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return {c * p.x - s * p.y, s * p.x + c * p.y};
}
inline bool is_finite(Point p) { return std::isfinite(p.x) && std::isfinite(p.y); }

inline std::string to_string(Point p) {
    std::ostringstream os;
    os.precision(17);
    os << '(' << p.x << ", " << p.y << ')';
    return os.str();
}

/// Counter-clockwise vertex ring; the closing edge is implicit.
using Polygon = std::vector<Point>;

/// Angle reduced modulo the square's quarter-turn symmetry into [0, pi/2).
inline double canonical_angle(double theta) {
    double t = std::fmod(theta, kHalfPi);
    if (t < 0.0) t += kHalfPi;
    if (t >= kHalfPi) t = 0.0;
    return t;
}

class UnitSquare {
public:
    UnitSquare() = default;
    UnitSquare(Point center, double theta) : center_(center), theta_(canonical_angle(theta)) {
        if (!is_finite(center) || !std::isfinite(theta)) {
            throw std::invalid_argument("UnitSquare: non-finite center or angle");
        }
    }

    Point center() const { return center_; }
    double theta() const { return theta_; }

    friend bool operator==(const UnitSquare&, const UnitSquare&) = default;

private:
    Point center_{};
    double theta_ = 0.0;
};

/// Vertices center + R(theta)(+-1/2, +-1/2) in CCW order, starting at the
/// image of (-1/2, -1/2).
inline Polygon square_polygon(const UnitSquare& s) {
    static constexpr Point kCorners[4] = {{-0.5, -0.5}, {0.5, -0.5}, {0.5, 0.5}, {-0.5, 0.5}};
    Polygon out;
    out.reserve(4);
    if (s.theta() == 0.0) {
        for (Point c : kCorners) out.push_back(s.center() + c);
    } else {
        for (Point c : kCorners) out.push_back(s.center() + rotate(c, s.theta()));
    }
    return out;
}

/// Regular k-gon inscribed in a circle.
inline Polygon regular_polygon(Point center, double radius, int k, double phase = 0.0) {
    if (k < 3) throw std::invalid_argument("regular_polygon: k must be >= 3");
    Polygon out;
    out.reserve(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) {
        const double a = phase + 2.0 * kPi * j / k;
        out.push_back({center.x + radius * std::cos(a), center.y + radius * std::sin(a)});
    }
    return out;
}

inline double signed_area(std::span<const Point> ring) {
    const std::size_t n = ring.size();
    double twice = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Point a = ring[i];
        const Point b = ring[(i + 1) % n];
        twice += a.x * b.y - b.x * a.y;
    }
    return 0.5 * twice;
}

inline double ring_length(std::span<const Point> ring) {
    const std::size_t n = ring.size();
    double len = 0.0;
    for (std::size_t i = 0; i < n; ++i) len += distance(ring[i], ring[(i + 1) % n]);
    return len;
}

/// Length of the part of the ray p + t*dir (t >= 0) lying in the open interior
/// of a convex CCW polygon. p is expected to lie in the closed polygon.
/// A ray running along an edge has no interior part and yields 0.
inline double chord_length(std::span<const Point> convex, Point p, Point dir) {
    const double dn = norm(dir);
    if (dn == 0.0) return 0.0;
    const Point d = (1.0 / dn) * dir;
    double lo = 0.0;
    double hi = std::numeric_limits<double>::infinity();
    const std::size_t n = convex.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point a = convex[i];
        const Point e = convex[(i + 1) % n] - a;
        const double len = norm(e);
        const Point inward{-e.y / len, e.x / len};
        const double c0 = dot(inward, p - a);
        const double rate = dot(inward, d);
        if (std::abs(rate) < 1e-15) {
            if (c0 <= kSnapTol) return 0.0;
            continue;
        }
        const double t = -c0 / rate;
        if (rate > 0.0) {
            lo = std::max(lo, t);
        } else {
            hi = std::min(hi, t);
        }
    }
    return std::max(0.0, hi - lo);
}

/// Closed-set membership for a convex CCW polygon, with tolerance.
inline bool contains_closed(std::span<const Point> convex, Point p, double tol = kSnapTol) {
    const std::size_t n = convex.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point a = convex[i];
        const Point e = convex[(i + 1) % n] - a;
        if (cross(e, p - a) / norm(e) < -tol) return false;
    }
    return true;
}

/// Point test against a unit square in its own frame; closed, no tolerance.
inline bool square_contains(const UnitSquare& s, Point p) {
    const Point local = rotate(p - s.center(), -s.theta());
    return std::abs(local.x) <= 0.5 && std::abs(local.y) <= 0.5;
}

enum class StripClass { P0, P1, P2 };

inline const char* to_string(StripClass c) {
    switch (c) {
    case StripClass::P0: return "P0";
    case StripClass::P1: return "P1";
    case StripClass::P2: return "P2";
    }
    return "?";
}

struct BoundarySegment {
    Point a;
    Point b;
    std::size_t owner = 0;
    std::optional<StripClass> strip_class;

    double length() const { return distance(a, b); }
    Point midpoint() const { return 0.5 * (a + b); }
};

struct Hole {
    Polygon ring;  // clockwise
    std::size_t shell = 0;
};

/// Union result. Shells are CCW, holes CW; boundary_segments partition the
/// full boundary (shells and holes) and carry the owning input index.
struct Region {
    std::vector<Polygon> shells;
    std::vector<Hole> holes;
    std::vector<BoundarySegment> boundary_segments;

    bool empty() const { return shells.empty(); }
};

inline double area(const Region& r) {
    double a = 0.0;
    for (const auto& s : r.shells) a += signed_area(s);
    for (const auto& h : r.holes) a += signed_area(h.ring);
    return a;
}

inline double perimeter(const Region& r) {
    double p = 0.0;
    for (const auto& s : r.shells) p += ring_length(s);
    for (const auto& h : r.holes) p += ring_length(h.ring);
    return p;
}

struct Configuration {
    std::vector<UnitSquare> squares;
    bool oriented = false;
    std::string label;

    std::size_t size() const { return squares.size(); }
};

/// Throws std::invalid_argument if the configuration breaks its invariants.
inline void validate(const Configuration& c) {
    if (c.squares.empty()) throw std::invalid_argument("configuration has no squares");
    if (c.oriented) {
        for (std::size_t i = 0; i < c.squares.size(); ++i) {
            if (std::abs(c.squares[i].theta()) > 1e-12) {
                throw std::invalid_argument("oriented configuration has rotated square at index " +
                                            std::to_string(i));
            }
        }
    }
}

inline Configuration without(const Configuration& c, std::size_t index) {
    Configuration out = c;
    out.squares.erase(out.squares.begin() + static_cast<std::ptrdiff_t>(index));
    return out;
}

/// Applies one rigid motion (rotation about the origin, then translation).
inline Configuration rigid_motion(const Configuration& c, double angle, Point shift) {
    Configuration out;
    out.label = c.label;
    out.oriented = c.oriented && canonical_angle(angle) == 0.0;
    for (const auto& s : c.squares) {
        out.squares.emplace_back(rotate(s.center(), angle) + shift, s.theta() + angle);
    }
    return out;
}

}  // namespace pac
