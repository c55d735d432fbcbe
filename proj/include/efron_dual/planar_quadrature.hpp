#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "efron_dual/body.hpp"
#include "efron_dual/common.hpp"

namespace efron_dual::oracle {

// Deterministic computation of E[area of the hull of 3 uniform points] for a
// convex polygon K, independent of the Monte Carlo path. The innermost
// integral over the third point is evaluated exactly: for fixed x1, x2 the
// integrand |det(x2-x1, x3-x1)| is piecewise linear in x3, so splitting K
// along the line through x1, x2 and using the centroid rule on each piece
// is exact. The remaining four dimensions use tensor Gauss-Legendre with a
// smooth uniform parametrization of each fan triangle.

namespace quad_detail {

struct P2 {
    double x, y;
};

/// Gauss-Legendre nodes/weights on [0, 1] by Newton iteration on P_n.
inline void gauss_legendre_unit(int n, std::vector<double>& nodes,
                                std::vector<double>& weights) {
    nodes.resize(static_cast<std::size_t>(n));
    weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        nodes[static_cast<std::size_t>(n - 1 - i)] = 0.5 * (1.0 + x);
        weights[static_cast<std::size_t>(n - 1 - i)] =
            1.0 / ((1.0 - x * x) * pp * pp);
    }
}

/// Integral of the linear function f over the part of `poly` where f has
/// the requested sign; computed exactly via clipping and the centroid rule.
/// f(p) = det(b - a, p - a) for the splitting points a, b.
inline double clipped_linear_integral(const std::vector<P2>& poly, P2 a, P2 b,
                                      int want_positive) {
    const double ux = b.x - a.x, uy = b.y - a.y;
    auto f = [&](const P2& p) {
        return ux * (p.y - a.y) - uy * (p.x - a.x);
    };
    // Sutherland-Hodgman against the halfplane {sign * f >= 0}
    const double s = want_positive > 0 ? 1.0 : -1.0;
    std::vector<P2> clipped;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const P2& cur = poly[i];
        const P2& nxt = poly[(i + 1) % n];
        const double fc = s * f(cur);
        const double fn = s * f(nxt);
        if (fc >= 0.0) clipped.push_back(cur);
        if ((fc > 0.0 && fn < 0.0) || (fc < 0.0 && fn > 0.0)) {
            const double t = fc / (fc - fn);
            clipped.push_back({cur.x + t * (nxt.x - cur.x),
                               cur.y + t * (nxt.y - cur.y)});
        }
    }
    if (clipped.size() < 3) return 0.0;

    // centroid rule: integral of a linear function = area * f(centroid)
    double twice_area = 0.0, cx = 0.0, cy = 0.0;
    for (std::size_t i = 0; i < clipped.size(); ++i) {
        const P2& p = clipped[i];
        const P2& q = clipped[(i + 1) % clipped.size()];
        const double w = p.x * q.y - q.x * p.y;
        twice_area += w;
        cx += (p.x + q.x) * w;
        cy += (p.y + q.y) * w;
    }
    if (twice_area == 0.0) return 0.0;
    const double area = 0.5 * twice_area;
    cx /= 3.0 * twice_area;
    cy /= 3.0 * twice_area;
    return area * f({cx, cy});
}

/// g(x1, x2) = integral over K of |det(x2-x1, x3-x1)| dx3, exact.
inline double abs_det_integral(const std::vector<P2>& poly, P2 a, P2 b) {
    return clipped_linear_integral(poly, a, b, +1) -
           clipped_linear_integral(poly, a, b, -1);
}

struct Tri {
    P2 a, b, c;
    double area;
};

inline std::vector<Tri> fan(const std::vector<P2>& poly) {
    std::vector<Tri> tris;
    for (std::size_t i = 2; i < poly.size(); ++i) {
        const P2& a = poly[0];
        const P2& b = poly[i - 1];
        const P2& c = poly[i];
        const double area =
            0.5 * std::fabs((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x));
        tris.push_back({a, b, c, area});
    }
    return tris;
}

/// Smooth uniform map of [0,1]^2 onto a triangle: with the s^2 substitution
/// the sampling map becomes polynomial and the density weight is 2s.
inline P2 tri_map(const Tri& t, double s, double v) {
    return {(1.0 - s) * t.a.x + s * ((1.0 - v) * t.b.x + v * t.c.x),
            (1.0 - s) * t.a.y + s * ((1.0 - v) * t.b.y + v * t.c.y)};
}

} // namespace quad_detail

/// E[area(hull of 3 uniform points in K)] / area(K) for a convex polygon,
/// by deterministic quadrature. `order` is the Gauss-Legendre point count
/// per dimension of the outer 4-D integral.
inline double expected_triangle_area_ratio(const geom::ConvexBody& body,
                                           int order = 32) {
    if (body.dimension() != 2 ||
        (body.kind() != geom::BodyKind::polygon &&
         body.kind() != geom::BodyKind::simplex &&
         body.kind() != geom::BodyKind::cube))
        throw ContractViolation(
            "expected_triangle_area_ratio: need a 2-D polygonal body");

    using namespace quad_detail;
    std::vector<P2> poly;
    if (body.kind() == geom::BodyKind::cube) {
        const double side = std::sqrt(body.reference_volume());
        poly = {{0, 0}, {side, 0}, {side, side}, {0, side}};
    } else {
        for (const auto& v : body.vertices()) poly.push_back({v[0], v[1]});
    }

    const double area = body.reference_volume();
    const auto tris = fan(poly);

    std::vector<double> nodes, weights;
    gauss_legendre_unit(order, nodes, weights);

    // E area = 1/(2 area^3) * Int_{K^2} g(x1,x2) dx1 dx2, split over fan
    // triangle pairs. Uniform measure on a triangle T of area A maps to
    // A * 2s ds dv on [0,1]^2.
    double total = 0.0;
    for (const auto& t1 : tris) {
        for (const auto& t2 : tris) {
            double pair_sum = 0.0;
            for (int i1 = 0; i1 < order; ++i1)
                for (int j1 = 0; j1 < order; ++j1) {
                    const double s1 = nodes[static_cast<std::size_t>(i1)];
                    const double w1 = weights[static_cast<std::size_t>(i1)] *
                                      weights[static_cast<std::size_t>(j1)] * 2.0 * s1;
                    const P2 x1 = tri_map(t1, s1, nodes[static_cast<std::size_t>(j1)]);
                    for (int i2 = 0; i2 < order; ++i2)
                        for (int j2 = 0; j2 < order; ++j2) {
                            const double s2 = nodes[static_cast<std::size_t>(i2)];
                            const double w2 =
                                weights[static_cast<std::size_t>(i2)] *
                                weights[static_cast<std::size_t>(j2)] * 2.0 * s2;
                            const P2 x2 =
                                tri_map(t2, s2, nodes[static_cast<std::size_t>(j2)]);
                            pair_sum += w1 * w2 * abs_det_integral(poly, x1, x2);
                        }
                }
            total += pair_sum * t1.area * t2.area;
        }
    }
    const double expected_area = total / (2.0 * area * area * area);
    return expected_area / area;
}

} // namespace efron_dual::oracle
