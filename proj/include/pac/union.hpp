#pragma once

// Boolean union of convex polygons by edge-arrangement subdivision.
//
// Every input edge is split at every point where it meets another polygon's
// boundary (proper crossings, T-junctions and collinear overlaps), split
// points closer than kSnapTol are merged, and each resulting sub-edge is kept
// iff the region to its right is covered by no input polygon. Collinear
// duplicates running the same way collapse onto the lowest polygon index.
// Surviving sub-edges are chained into rings, taking the leftmost turn at each
// vertex so that rings touching at a single point stay separate.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

#include "pac/geometry.hpp"

namespace pac {
namespace detail {

struct Box {
    double min_x, min_y, max_x, max_y;

    bool contains(Point p, double tol) const {
        return p.x >= min_x - tol && p.x <= max_x + tol && p.y >= min_y - tol && p.y <= max_y + tol;
    }
};

inline Box bounding_box(std::span<const Point> pts) {
    Box b{pts[0].x, pts[0].y, pts[0].x, pts[0].y};
    for (Point p : pts) {
        b.min_x = std::min(b.min_x, p.x);
        b.min_y = std::min(b.min_y, p.y);
        b.max_x = std::max(b.max_x, p.x);
        b.max_y = std::max(b.max_y, p.y);
    }
    return b;
}

struct KernelEdge {
    Point a;
    Point b;
    std::size_t poly;
    Box box;
};

struct Split {
    double t;
    std::size_t point;
};

class DisjointSet {
public:
    explicit DisjointSet(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t i) {
        while (parent_[i] != i) {
            parent_[i] = parent_[parent_[i]];
            i = parent_[i];
        }
        return i;
    }

    // The smaller index always becomes the root, so a cluster is represented
    // by its earliest-inserted point (input vertices come first).
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (a < b) {
            parent_[b] = a;
        } else {
            parent_[a] = b;
        }
    }

private:
    std::vector<std::size_t> parent_;
};

inline std::vector<std::size_t> cluster_points(const std::vector<Point>& pts, double tol) {
    const std::size_t n = pts.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return pts[i].x < pts[j].x; });
    DisjointSet ds(n);
    for (std::size_t k = 0; k < n; ++k) {
        const Point p = pts[order[k]];
        for (std::size_t m = k + 1; m < n && pts[order[m]].x - p.x <= tol; ++m) {
            if (std::abs(pts[order[m]].y - p.y) <= tol) ds.unite(order[k], order[m]);
        }
    }
    std::vector<std::size_t> rep(n);
    for (std::size_t i = 0; i < n; ++i) rep[i] = ds.find(i);
    return rep;
}

inline double line_offset(Point p, Point origin, Point dir, double len) {
    return cross(dir, p - origin) / len;
}

inline bool strictly_inside_segment(double t, double len, double tol) {
    return t * len > tol && (1.0 - t) * len > tol;
}

/// Registers every point where edges e and f meet as a split on both.
inline void intersect_edges(const KernelEdge& e, const KernelEdge& f, std::vector<Split>& e_splits,
                            std::vector<Split>& f_splits, std::vector<Point>& pool, double tol) {
    const Point da = e.b - e.a;
    const Point db = f.b - f.a;
    const double la = norm(da);
    const double lb = norm(db);
    const double fa = line_offset(f.a, e.a, da, la);
    const double fb = line_offset(f.b, e.a, da, la);
    const double ea = line_offset(e.a, f.a, db, lb);
    const double eb = line_offset(e.b, f.a, db, lb);

    auto param = [](Point q, Point origin, Point dir, double len) { return dot(q - origin, dir) / (len * len); };
    auto add_on = [&](Point q, double offset, const KernelEdge& host, Point dir, double len, std::vector<Split>& splits) {
        if (std::abs(offset) > tol) return;
        const double t = param(q, host.a, dir, len);
        if (strictly_inside_segment(t, len, tol)) {
            pool.push_back(q);
            splits.push_back({t, pool.size() - 1});
        }
    };

    const bool collinear = (std::abs(fa) <= tol && std::abs(fb) <= tol) || (std::abs(ea) <= tol && std::abs(eb) <= tol);
    if (collinear) {
        // Offsets are re-measured against the host line; both endpoints are
        // within tolerance of it by construction, so only the parameter test
        // decides.
        add_on(f.a, 0.0, e, da, la, e_splits);
        add_on(f.b, 0.0, e, da, la, e_splits);
        add_on(e.a, 0.0, f, db, lb, f_splits);
        add_on(e.b, 0.0, f, db, lb, f_splits);
        return;
    }

    add_on(f.a, fa, e, da, la, e_splits);
    add_on(f.b, fb, e, da, la, e_splits);
    add_on(e.a, ea, f, db, lb, f_splits);
    add_on(e.b, eb, f, db, lb, f_splits);

    const bool f_straddles = (fa > tol && fb < -tol) || (fa < -tol && fb > tol);
    const bool e_straddles = (ea > tol && eb < -tol) || (ea < -tol && eb > tol);
    if (f_straddles && e_straddles) {
        const double u = fa / (fa - fb);
        const Point x = f.a + u * db;
        pool.push_back(x);
        const std::size_t id = pool.size() - 1;
        e_splits.push_back({param(x, e.a, da, la), id});
        f_splits.push_back({u, id});
    }
}

enum class Cover { Outside, Inside, SameEdge, OppositeEdge };

/// How convex polygon `poly` covers the neighbourhood of sub-edge p->q.
inline Cover cover_of(std::span<const Point> poly, Point p, Point q, double tol) {
    const Point d = q - p;
    const Point m = 0.5 * (p + q);
    const std::size_t n = poly.size();
    double min_offset = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const Point a = poly[i];
        const Point g = poly[(i + 1) % n] - a;
        const double len = norm(g);
        const double op = line_offset(p, a, g, len);
        const double oq = line_offset(q, a, g, len);
        if (std::abs(op) <= tol && std::abs(oq) <= tol) {
            const double t = dot(m - a, g) / (len * len);
            if (t * len >= -tol && (1.0 - t) * len >= -tol) {
                return dot(d, g) > 0.0 ? Cover::SameEdge : Cover::OppositeEdge;
            }
        }
        min_offset = std::min(min_offset, line_offset(m, a, g, len));
    }
    if (min_offset > tol) return Cover::Inside;
    if (min_offset < -tol) return Cover::Outside;
    // Midpoint grazes the boundary without a collinear edge: decide by a
    // point just to the right of the sub-edge.
    const double dl = norm(d);
    const Point probe = m + (16.0 * tol / dl) * Point{d.y, -d.x};
    for (std::size_t i = 0; i < n; ++i) {
        const Point a = poly[i];
        const Point g = poly[(i + 1) % n] - a;
        if (cross(g, probe - a) <= 0.0) return Cover::Outside;
    }
    return Cover::Inside;
}

inline bool ring_contains(std::span<const Point> ring, Point p) {
    bool inside = false;
    const std::size_t n = ring.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Point a = ring[i];
        const Point b = ring[j];
        if ((a.y > p.y) != (b.y > p.y)) {
            const double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if (p.x < x) inside = !inside;
        }
    }
    return inside;
}

struct DirectedEdge {
    std::size_t from;
    std::size_t to;
    std::size_t owner;
    bool used = false;
};

/// Union of convex polygons (vertices in either orientation; CW input is
/// reversed). Internal: the public surface only accepts unit squares, plus
/// the clipped-square and circle approximations in `explore`.
inline Region union_convex(std::vector<Polygon> polys, double tol = kSnapTol) {
    Region region;
    for (auto& poly : polys) {
        if (poly.size() < 3) throw std::invalid_argument("union_convex: polygon with fewer than 3 vertices");
        for (Point p : poly) {
            if (!is_finite(p)) throw std::invalid_argument("union_convex: non-finite vertex " + to_string(p));
        }
        if (signed_area(poly) < 0.0) std::reverse(poly.begin(), poly.end());
    }
    if (polys.empty()) return region;

    std::vector<Point> pool;
    std::vector<KernelEdge> edges;
    std::vector<Box> boxes;
    for (std::size_t pi = 0; pi < polys.size(); ++pi) {
        const auto& poly = polys[pi];
        boxes.push_back(bounding_box(poly));
        for (std::size_t i = 0; i < poly.size(); ++i) {
            const Point a = poly[i];
            const Point b = poly[(i + 1) % poly.size()];
            edges.push_back({a, b, pi, bounding_box(std::vector<Point>{a, b})});
            pool.push_back(a);
        }
    }

    // Per-edge split lists start with the edge's own endpoints.
    std::vector<std::vector<Split>> splits(edges.size());
    {
        std::size_t base = 0;
        for (const auto& poly : polys) {
            const std::size_t k = poly.size();
            for (std::size_t i = 0; i < k; ++i) {
                splits[base + i].push_back({0.0, base + i});
                splits[base + i].push_back({1.0, base + (i + 1) % k});
            }
            base += k;
        }
    }

    std::vector<std::size_t> order(edges.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return edges[i].box.min_x < edges[j].box.min_x; });
    for (std::size_t k = 0; k < order.size(); ++k) {
        const KernelEdge& e = edges[order[k]];
        for (std::size_t m = k + 1; m < order.size(); ++m) {
            const KernelEdge& f = edges[order[m]];
            if (f.box.min_x > e.box.max_x + tol) break;
            if (f.poly == e.poly) continue;
            if (f.box.min_y > e.box.max_y + tol || f.box.max_y < e.box.min_y - tol) continue;
            intersect_edges(e, f, splits[order[k]], splits[order[m]], pool, tol);
        }
    }

    const std::vector<std::size_t> rep = cluster_points(pool, tol);

    std::vector<DirectedEdge> boundary;
    for (std::size_t ei = 0; ei < edges.size(); ++ei) {
        auto& sp = splits[ei];
        std::sort(sp.begin(), sp.end(), [](const Split& a, const Split& b) { return a.t < b.t; });
        std::vector<std::size_t> chain;
        for (const Split& s : sp) {
            const std::size_t r = rep[s.point];
            if (chain.empty() || chain.back() != r) chain.push_back(r);
        }
        const std::size_t owner = edges[ei].poly;
        for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
            const Point p = pool[chain[i]];
            const Point q = pool[chain[i + 1]];
            if (distance(p, q) <= tol) continue;
            const Point m = 0.5 * (p + q);
            bool keep = true;
            for (std::size_t pj = 0; pj < polys.size() && keep; ++pj) {
                if (pj == owner || !boxes[pj].contains(m, tol)) continue;
                switch (cover_of(polys[pj], p, q, tol)) {
                case Cover::Inside:
                case Cover::OppositeEdge:
                    keep = false;
                    break;
                case Cover::SameEdge:
                    if (pj < owner) keep = false;
                    break;
                case Cover::Outside:
                    break;
                }
            }
            if (keep) boundary.push_back({chain[i], chain[i + 1], owner});
        }
    }

    std::vector<std::vector<std::size_t>> outgoing(pool.size());
    for (std::size_t i = 0; i < boundary.size(); ++i) outgoing[boundary[i].from].push_back(i);

    std::vector<Polygon> rings;
    for (std::size_t start = 0; start < boundary.size(); ++start) {
        if (boundary[start].used) continue;
        Polygon ring;
        std::size_t cur = start;
        for (std::size_t guard = 0;; ++guard) {
            if (guard > boundary.size()) {
                throw GeometryError("union: ring tracing did not close near " + to_string(pool[boundary[start].from]));
            }
            DirectedEdge& e = boundary[cur];
            e.used = true;
            ring.push_back(pool[e.from]);
            region.boundary_segments.push_back({pool[e.from], pool[e.to], e.owner, std::nullopt});
            if (e.to == boundary[start].from) break;
            const Point din = pool[e.to] - pool[e.from];
            std::size_t best = boundary.size();
            double best_turn = -std::numeric_limits<double>::infinity();
            for (std::size_t cand : outgoing[e.to]) {
                if (boundary[cand].used) continue;
                const Point dout = pool[boundary[cand].to] - pool[boundary[cand].from];
                const double turn = std::atan2(cross(din, dout), dot(din, dout));
                if (turn > best_turn) {
                    best_turn = turn;
                    best = cand;
                }
            }
            if (best == boundary.size()) {
                throw GeometryError("union: open boundary chain at " + to_string(pool[e.to]) + " (started at " +
                                    to_string(pool[boundary[start].from]) + ")");
            }
            cur = best;
        }
        rings.push_back(std::move(ring));
    }

    std::vector<Polygon> holes;
    for (auto& ring : rings) {
        if (signed_area(ring) > 0.0) {
            region.shells.push_back(std::move(ring));
        } else {
            holes.push_back(std::move(ring));
        }
    }
    for (auto& hole : holes) {
        // A point just left of a hole edge lies in the union's interior.
        const Point a = hole[0];
        const Point b = hole[1];
        const Point d = b - a;
        const Point probe = 0.5 * (a + b) + (64.0 * tol / norm(d)) * Point{-d.y, d.x};
        std::size_t owner = region.shells.size();
        double owner_area = std::numeric_limits<double>::infinity();
        for (std::size_t s = 0; s < region.shells.size(); ++s) {
            const double sa = signed_area(region.shells[s]);
            if (sa < owner_area && ring_contains(region.shells[s], probe)) {
                owner = s;
                owner_area = sa;
            }
        }
        if (owner == region.shells.size()) {
            throw GeometryError("union: hole without enclosing shell near " + to_string(a));
        }
        region.holes.push_back({std::move(hole), owner});
    }
    return region;
}

}  // namespace detail

/// Union of the configuration's squares; segment owners index c.squares.
inline Region union_of(const Configuration& c) {
    validate(c);
    std::vector<Polygon> polys;
    polys.reserve(c.squares.size());
    for (const auto& s : c.squares) polys.push_back(square_polygon(s));
    return detail::union_convex(std::move(polys));
}

inline double ratio(const Region& r) { return perimeter(r) / area(r); }

inline double ratio(const Configuration& c) { return ratio(union_of(c)); }

}  // namespace pac
