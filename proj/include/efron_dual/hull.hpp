#pragma once

#include <algorithm>
#include <cstddef>
#include <unordered_set>
#include <vector>

#include "efron_dual/common.hpp"
#include "efron_dual/predicates.hpp"

namespace efron_dual::geom {

/// Volume and exact vertex combinatorics of one sampled hull.
struct HullSummary {
    double volume = 0.0;
    std::vector<std::size_t> vertex_indices; // sorted, into the input sequence
    std::size_t vertex_count() const { return vertex_indices.size(); }
};

namespace hull_detail {

struct UniquePoints {
    std::vector<Point> pts;
    std::vector<std::size_t> original; // first occurrence in the input
};

inline UniquePoints dedup(const std::vector<Point>& points) {
    UniquePoints u;
    for (std::size_t i = 0; i < points.size(); ++i) {
        bool seen = false;
        for (const Point& q : u.pts)
            if (q == points[i]) { seen = true; break; }
        if (!seen) {
            u.pts.push_back(points[i]);
            u.original.push_back(i);
        }
    }
    return u;
}

inline HullSummary hull_1d(const UniquePoints& u) {
    std::size_t lo = 0, hi = 0;
    for (std::size_t i = 1; i < u.pts.size(); ++i) {
        if (u.pts[i][0] < u.pts[lo][0]) lo = i;
        if (u.pts[i][0] > u.pts[hi][0]) hi = i;
    }
    HullSummary s;
    if (lo == hi) {
        s.vertex_indices = {u.original[lo]};
        return s;
    }
    s.volume = u.pts[hi][0] - u.pts[lo][0];
    s.vertex_indices = {u.original[lo], u.original[hi]};
    std::sort(s.vertex_indices.begin(), s.vertex_indices.end());
    return s;
}

/// Monotone chain with exact, strict turn tests: collinear boundary points
/// are popped, so the result is the exact extreme-point set. Coordinates are
/// read through the axis map (ax, ay) so the planar case inside 3-D can
/// reuse it by dropping one coordinate (an exact projection).
inline std::vector<std::size_t> chain_2d(const std::vector<Point>& pts,
                                         int ax, int ay) {
    std::vector<std::size_t> order(pts.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (pts[a][ax] != pts[b][ax]) return pts[a][ax] < pts[b][ax];
        return pts[a][ay] < pts[b][ay];
    });

    auto turn = [&](std::size_t a, std::size_t b, std::size_t c) {
        return orient2d(pts[a][ax], pts[a][ay], pts[b][ax], pts[b][ay],
                        pts[c][ax], pts[c][ay]);
    };

    std::vector<std::size_t> hull;
    // lower chain
    for (std::size_t idx : order) {
        while (hull.size() >= 2 &&
               turn(hull[hull.size() - 2], hull[hull.size() - 1], idx) <= 0)
            hull.pop_back();
        hull.push_back(idx);
    }
    // upper chain
    const std::size_t lower_len = hull.size() + 1;
    for (std::size_t i = order.size() - 1; i-- > 0;) {
        const std::size_t idx = order[i];
        while (hull.size() >= lower_len &&
               turn(hull[hull.size() - 2], hull[hull.size() - 1], idx) <= 0)
            hull.pop_back();
        hull.push_back(idx);
    }
    hull.pop_back(); // closes back at order[0]
    return hull;
}

inline HullSummary hull_2d(const UniquePoints& u, int ax = 0, int ay = 1) {
    HullSummary s;
    if (u.pts.size() <= 2) {
        s.vertex_indices = u.original;
        std::sort(s.vertex_indices.begin(), s.vertex_indices.end());
        return s; // a point or a segment; 2-D volume 0
    }
    const auto hull = chain_2d(u.pts, ax, ay);
    for (std::size_t idx : hull) s.vertex_indices.push_back(u.original[idx]);
    std::sort(s.vertex_indices.begin(), s.vertex_indices.end());
    if (hull.size() >= 3) {
        double twice_area = 0.0;
        for (std::size_t i = 0; i < hull.size(); ++i) {
            const Point& a = u.pts[hull[i]];
            const Point& b = u.pts[hull[(i + 1) % hull.size()]];
            twice_area += a[ax] * b[ay] - b[ax] * a[ay];
        }
        s.volume = 0.5 * std::fabs(twice_area);
    }
    return s;
}

// ---- exact membership tests for the degenerate-input slow path ----

inline BigRat rq(double x) { return rat_of_double(x); }

inline bool segment_contains(const Point& a, const Point& b, const Point& p) {
    if (!collinear3d(a, b, p)) return false;
    BigRat dot(0), len2(0);
    for (int c = 0; c < 3; ++c) {
        const BigRat d = rq(b[c]) - rq(a[c]);
        dot += (rq(p[c]) - rq(a[c])) * d;
        len2 += d * d;
    }
    return sgn(dot) >= 0 && dot <= len2;
}

inline bool triangle_contains(const Point& a, const Point& b, const Point& c,
                              const Point& p) {
    if (collinear3d(a, b, c)) return false; // covered by segment subsets
    if (orient3d(a, b, c, p) != 0) return false;
    for (const auto& [ax, ay] :
         {std::pair{0, 1}, std::pair{1, 2}, std::pair{2, 0}}) {
        auto o = [&](const Point& r, const Point& s, const Point& t) {
            return orient2d(r[ax], r[ay], s[ax], s[ay], t[ax], t[ay]);
        };
        if (o(a, b, c) == 0) continue; // degenerate projection, try another
        const int s1 = o(a, b, p), s2 = o(b, c, p), s3 = o(c, a, p);
        return (s1 >= 0 && s2 >= 0 && s3 >= 0) ||
               (s1 <= 0 && s2 <= 0 && s3 <= 0);
    }
    return false;
}

inline bool tetrahedron_contains(const Point& a, const Point& b, const Point& c,
                                 const Point& d, const Point& p) {
    const int whole = orient3d(a, b, c, d);
    if (whole == 0) return false; // flat, covered by triangle subsets
    auto side_ok = [&](const Point& f0, const Point& f1, const Point& f2,
                       const Point& opp) {
        const int sp = orient3d(f0, f1, f2, p);
        return sp == 0 || sp == orient3d(f0, f1, f2, opp);
    };
    return side_ok(a, b, c, d) && side_ok(a, b, d, c) && side_ok(a, c, d, b) &&
           side_ok(b, c, d, a);
}

/// p in conv(S \ {p})? Exact, by Caratheodory: enough to scan subsets of
/// size <= 4. Only used when the fast path saw an exact degeneracy, so S is
/// small there.
inline bool in_hull_of_others(const std::vector<Point>& pts,
                              const std::vector<std::size_t>& candidates,
                              std::size_t skip) {
    const Point& p = pts[skip];
    std::vector<std::size_t> others;
    for (std::size_t i : candidates)
        if (i != skip) others.push_back(i);
    const std::size_t n = others.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (segment_contains(pts[others[i]], pts[others[j]], p)) return true;
            for (std::size_t k = j + 1; k < n; ++k) {
                if (triangle_contains(pts[others[i]], pts[others[j]],
                                      pts[others[k]], p))
                    return true;
                for (std::size_t l = k + 1; l < n; ++l)
                    if (tetrahedron_contains(pts[others[i]], pts[others[j]],
                                             pts[others[k]], pts[others[l]], p))
                        return true;
            }
        }
    return false;
}

struct Facet {
    std::size_t a, b, c;
    bool alive = true;
};

inline HullSummary hull_3d(const UniquePoints& u) {
    const auto& pts = u.pts;
    const std::size_t n = pts.size();
    HullSummary s;

    if (n == 1) {
        s.vertex_indices = {u.original[0]};
        return s;
    }

    // Exact affine-rank probe: a segment direction, then a non-collinear
    // point, then a non-coplanar point.
    std::size_t i2 = 0; // first point not collinear with pts[0], pts[1]
    for (std::size_t i = 2; i < n; ++i)
        if (!collinear3d(pts[0], pts[1], pts[i])) { i2 = i; break; }
    if (n == 2 || i2 == 0) {
        // rank 1: endpoints along the dominant axis of the direction
        int axis = 0;
        double best = 0.0;
        for (int c = 0; c < 3; ++c) {
            const double span = std::fabs(pts[1][c] - pts[0][c]);
            if (span > best) { best = span; axis = c; }
        }
        std::size_t lo = 0, hi = 0;
        for (std::size_t i = 1; i < n; ++i) {
            if (pts[i][axis] < pts[lo][axis]) lo = i;
            if (pts[i][axis] > pts[hi][axis]) hi = i;
        }
        s.vertex_indices = {u.original[lo], u.original[hi]};
        std::sort(s.vertex_indices.begin(), s.vertex_indices.end());
        return s;
    }

    std::size_t i3 = 0; // first point off the plane of pts[0], pts[1], pts[i2]
    for (std::size_t i = 2; i < n; ++i) {
        if (i == i2) continue;
        if (orient3d(pts[0], pts[1], pts[i2], pts[i]) != 0) { i3 = i; break; }
    }
    if (i3 == 0) {
        // rank 2: all points share a plane; drop an axis along which the
        // plane normal is provably nonzero and reuse the exact 2-D chain.
        for (const auto& [ax, ay] :
         {std::pair{0, 1}, std::pair{1, 2}, std::pair{2, 0}}) {
            if (orient2d(pts[0][ax], pts[0][ay], pts[1][ax], pts[1][ay],
                         pts[i2][ax], pts[i2][ay]) == 0)
                continue;
            HullSummary planar = hull_2d(u, ax, ay);
            planar.volume = 0.0;
            return planar;
        }
        throw std::logic_error("hull_3d: rank-2 projection not found");
    }

    // rank 3: incremental hull, strict exact visibility. Facets are kept
    // globally outward-oriented, so horizon edges keep their direction in
    // the replacement cone.
    std::vector<Facet> facets;
    auto add_oriented = [&](std::size_t a, std::size_t b, std::size_t c,
                            std::size_t opposite) {
        if (orient3d(pts[a], pts[b], pts[c], pts[opposite]) > 0) std::swap(b, c);
        facets.push_back({a, b, c});
    };
    add_oriented(0, 1, i2, i3);
    add_oriented(0, 1, i3, i2);
    add_oriented(0, i2, i3, 1);
    add_oriented(1, i2, i3, 0);

    bool degenerate = false;
    std::vector<std::size_t> visible;
    for (std::size_t p = 2; p < n; ++p) {
        if (p == i2 || p == i3) continue;
        visible.clear();
        for (std::size_t f = 0; f < facets.size(); ++f) {
            if (!facets[f].alive) continue;
            const int side =
                orient3d(pts[facets[f].a], pts[facets[f].b], pts[facets[f].c], pts[p]);
            if (side > 0) visible.push_back(f);
            else if (side == 0) degenerate = true;
        }
        if (visible.empty()) continue; // inside or on the boundary

        std::unordered_set<std::uint64_t> visible_edges;
        auto key = [n](std::size_t a, std::size_t b) {
            return static_cast<std::uint64_t>(a) * n + b;
        };
        for (std::size_t f : visible) {
            visible_edges.insert(key(facets[f].a, facets[f].b));
            visible_edges.insert(key(facets[f].b, facets[f].c));
            visible_edges.insert(key(facets[f].c, facets[f].a));
        }
        std::vector<std::pair<std::size_t, std::size_t>> horizon;
        for (std::size_t f : visible) {
            const Facet& fc = facets[f];
            for (auto [ea, eb] : {std::pair{fc.a, fc.b}, std::pair{fc.b, fc.c},
                                  std::pair{fc.c, fc.a}})
                if (!visible_edges.count(key(eb, ea))) horizon.push_back({ea, eb});
            facets[f].alive = false;
        }
        for (auto [ea, eb] : horizon) facets.push_back({ea, eb, p});
    }

    // Volume by signed tetrahedra against a fixed reference point; the sum
    // telescopes, so any reference works.
    const Point& ref = pts[0];
    double six_vol = 0.0;
    std::unordered_set<std::size_t> structure;
    for (const Facet& f : facets) {
        if (!f.alive) continue;
        six_vol -= orient3d_value(pts[f.a], pts[f.b], pts[f.c], ref);
        structure.insert(f.a);
        structure.insert(f.b);
        structure.insert(f.c);
    }
    s.volume = six_vol / 6.0;

    std::vector<std::size_t> verts(structure.begin(), structure.end());
    std::sort(verts.begin(), verts.end());

    // Exactly coplanar configurations can leave non-extreme points in the
    // facet structure; audit and, only then, run the exact extreme-point
    // filter.
    if (!degenerate) {
        for (const Facet& f : facets) {
            if (!f.alive || degenerate) continue;
            for (std::size_t q : verts) {
                if (q == f.a || q == f.b || q == f.c) continue;
                if (orient3d(pts[f.a], pts[f.b], pts[f.c], pts[q]) == 0) {
                    degenerate = true;
                    break;
                }
            }
        }
    }
    if (degenerate) {
        std::vector<std::size_t> filtered;
        for (std::size_t v : verts)
            if (!in_hull_of_others(pts, verts, v)) filtered.push_back(v);
        verts = std::move(filtered);
    }

    for (std::size_t v : verts) s.vertex_indices.push_back(u.original[v]);
    std::sort(s.vertex_indices.begin(), s.vertex_indices.end());
    return s;
}

} // namespace hull_detail

/// Convex hull volume and exact vertex set. Vertices are extreme points of
/// the hull: points lying on a facet or edge of the hull of the others are
/// not vertices. Duplicate inputs count once, under their first index.
inline HullSummary convex_hull(const std::vector<Point>& points, int dimension) {
    if (points.empty())
        throw ContractViolation("convex_hull: need at least one point");
    if (dimension < 1 || dimension > 3)
        throw ContractViolation("convex_hull: dimension must be 1, 2, or 3");

    const auto u = hull_detail::dedup(points);
    switch (dimension) {
        case 1: return hull_detail::hull_1d(u);
        case 2: return hull_detail::hull_2d(u);
        default: return hull_detail::hull_3d(u);
    }
}

} // namespace efron_dual::geom
