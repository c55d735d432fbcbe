#pragma once

#include <array>
#include <cmath>

#include "efron_dual/exact.hpp"

namespace efron_dual::geom {

using Point = std::array<double, 3>;

// Static floating-point filters in the style of Shewchuk's adaptive
// predicates: if the double-precision determinant clears the forward error
// bound its sign is certain; otherwise fall back to exact rational
// arithmetic on the inputs (doubles convert to rationals losslessly). The
// returned sign is therefore exact for every input.
namespace detail {
inline constexpr double kEps = 1.1102230246251565e-16; // 2^-53
inline constexpr double kCcwErrBound = (3.0 + 16.0 * kEps) * kEps;
inline constexpr double kO3dErrBound = (7.0 + 56.0 * kEps) * kEps;

inline int exact_orient2d(double ax, double ay, double bx, double by,
                          double cx, double cy) {
    const BigRat det = (rat_of_double(ax) - rat_of_double(cx)) *
                           (rat_of_double(by) - rat_of_double(cy)) -
                       (rat_of_double(ay) - rat_of_double(cy)) *
                           (rat_of_double(bx) - rat_of_double(cx));
    return sgn(det);
}

inline int exact_orient3d(const Point& a, const Point& b, const Point& c,
                          const Point& d) {
    BigRat m[3][3];
    const Point* rows[3] = {&a, &b, &c};
    for (int r = 0; r < 3; ++r)
        for (int col = 0; col < 3; ++col)
            m[r][col] = rat_of_double((*rows[r])[col]) - rat_of_double(d[col]);
    const BigRat det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                       m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                       m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    return sgn(det);
}
} // namespace detail

/// Sign of the 2x2 determinant |b-a, c-a|: +1 if a,b,c make a left (ccw)
/// turn, -1 for a right turn, 0 iff exactly collinear.
inline int orient2d(double ax, double ay, double bx, double by, double cx,
                    double cy) {
    const double detleft = (ax - cx) * (by - cy);
    const double detright = (ay - cy) * (bx - cx);
    const double det = detleft - detright;
    const double detsum = std::fabs(detleft) + std::fabs(detright);
    if (std::fabs(det) > detail::kCcwErrBound * detsum)
        return det > 0 ? 1 : -1;
    return detail::exact_orient2d(ax, ay, bx, by, cx, cy);
}

inline int orient2d(const Point& a, const Point& b, const Point& c) {
    return orient2d(a[0], a[1], b[0], b[1], c[0], c[1]);
}

/// Sign of det(b-a, c-a, d-a): positive when d lies on the side of plane
/// (a,b,c) toward which the normal (b-a) x (c-a) points, i.e. the side from
/// which a,b,c wind counterclockwise; 0 iff d is exactly coplanar.
inline int orient3d(const Point& a, const Point& b, const Point& c,
                    const Point& d) {
    const double adx = a[0] - d[0], ady = a[1] - d[1], adz = a[2] - d[2];
    const double bdx = b[0] - d[0], bdy = b[1] - d[1], bdz = b[2] - d[2];
    const double cdx = c[0] - d[0], cdy = c[1] - d[1], cdz = c[2] - d[2];

    const double bdxcdy = bdx * cdy, cdxbdy = cdx * bdy;
    const double cdxady = cdx * ady, adxcdy = adx * cdy;
    const double adxbdy = adx * bdy, bdxady = bdx * ady;

    // det(a-d, b-d, c-d) = -det(b-a, c-a, d-a)
    const double det = adz * (bdxcdy - cdxbdy) + bdz * (cdxady - adxcdy) +
                       cdz * (adxbdy - bdxady);
    const double permanent = (std::fabs(bdxcdy) + std::fabs(cdxbdy)) * std::fabs(adz) +
                             (std::fabs(cdxady) + std::fabs(adxcdy)) * std::fabs(bdz) +
                             (std::fabs(adxbdy) + std::fabs(bdxady)) * std::fabs(cdz);
    if (std::fabs(det) > detail::kO3dErrBound * permanent)
        return det > 0 ? -1 : 1;
    return -detail::exact_orient3d(a, b, c, d);
}

/// Raw value of det(b-a, c-a, d-a); six times the signed tetrahedron volume.
inline double orient3d_value(const Point& a, const Point& b, const Point& c,
                             const Point& d) {
    const double ux = b[0] - a[0], uy = b[1] - a[1], uz = b[2] - a[2];
    const double vx = c[0] - a[0], vy = c[1] - a[1], vz = c[2] - a[2];
    const double wx = d[0] - a[0], wy = d[1] - a[1], wz = d[2] - a[2];
    return ux * (vy * wz - vz * wy) - uy * (vx * wz - vz * wx) +
           uz * (vx * wy - vy * wx);
}

/// True iff the three points are exactly collinear (all three coordinate-
/// plane projections are degenerate).
inline bool collinear3d(const Point& a, const Point& b, const Point& c) {
    return orient2d(a[1], a[2], b[1], b[2], c[1], c[2]) == 0 &&
           orient2d(a[2], a[0], b[2], b[0], c[2], c[0]) == 0 &&
           orient2d(a[0], a[1], b[0], b[1], c[0], c[1]) == 0;
}

} // namespace efron_dual::geom
