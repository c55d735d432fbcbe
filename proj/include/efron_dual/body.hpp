#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "efron_dual/common.hpp"
#include "efron_dual/predicates.hpp"
#include "efron_dual/rng.hpp"

namespace efron_dual::geom {

enum class BodyKind { interval, simplex, cube, ball, polygon };

inline const char* to_string(BodyKind k) {
    switch (k) {
        case BodyKind::interval: return "interval";
        case BodyKind::simplex: return "simplex";
        case BodyKind::cube: return "cube";
        case BodyKind::ball: return "ball";
        case BodyKind::polygon: return "polygon";
    }
    return "?";
}

/// A sampleable convex body with a closed-form reference volume. Instances
/// are immutable after construction.
class ConvexBody {
public:
    static ConvexBody interval(double a, double b) {
        if (!(a < b)) throw ContractViolation("interval: need a < b");
        ConvexBody body(BodyKind::interval, 1, "interval");
        body.lo_ = a;
        body.hi_ = b;
        body.volume_ = b - a;
        return body;
    }

    static ConvexBody cube(int dimension, double side) {
        check_dimension(dimension);
        if (!(side > 0)) throw ContractViolation("cube: need side > 0");
        ConvexBody body(BodyKind::cube, dimension, "cube");
        body.side_ = side;
        body.volume_ = std::pow(side, dimension);
        return body;
    }

    static ConvexBody ball(int dimension, double radius) {
        check_dimension(dimension);
        if (!(radius > 0)) throw ContractViolation("ball: need radius > 0");
        ConvexBody body(BodyKind::ball, dimension, "ball");
        body.radius_ = radius;
        switch (dimension) {
            case 1: body.volume_ = 2.0 * radius; break;
            case 2: body.volume_ = std::numbers::pi * radius * radius; break;
            default:
                body.volume_ = 4.0 / 3.0 * std::numbers::pi * radius * radius * radius;
        }
        return body;
    }

    /// dimension+1 affinely independent vertices.
    static ConvexBody simplex(int dimension, std::vector<Point> vertices) {
        check_dimension(dimension);
        if (vertices.size() != static_cast<std::size_t>(dimension) + 1)
            throw ContractViolation("simplex: need dimension+1 vertices");
        ConvexBody body(BodyKind::simplex, dimension, "simplex");
        body.vertices_ = std::move(vertices);
        const double vol = simplex_volume(body.vertices_, dimension);
        if (vol <= 0.0)
            throw ContractViolation("simplex: vertices affinely dependent");
        body.volume_ = vol;
        return body;
    }

    /// The standard simplex conv{0, e_1, ..., e_d}.
    static ConvexBody standard_simplex(int dimension) {
        std::vector<Point> v(static_cast<std::size_t>(dimension) + 1,
                             Point{0.0, 0.0, 0.0});
        for (int i = 1; i <= dimension; ++i) v[static_cast<std::size_t>(i)][i - 1] = 1.0;
        return simplex(dimension, std::move(v));
    }

    /// Convex polygon, vertices in strictly counterclockwise order (2-D only).
    static ConvexBody polygon(std::vector<Point> vertices) {
        if (vertices.size() < 3)
            throw ContractViolation("polygon: need at least 3 vertices");
        const std::size_t n = vertices.size();
        for (std::size_t i = 0; i < n; ++i) {
            if (orient2d(vertices[i], vertices[(i + 1) % n],
                         vertices[(i + 2) % n]) <= 0)
                throw ContractViolation(
                    "polygon: vertices must be in strictly convex ccw position");
        }
        ConvexBody body(BodyKind::polygon, 2, "polygon");
        body.vertices_ = std::move(vertices);
        body.volume_ = polygon_area(body.vertices_);
        body.build_fan();
        return body;
    }

    BodyKind kind() const { return kind_; }
    int dimension() const { return dimension_; }
    double reference_volume() const { return volume_; }
    const std::string& label() const { return label_; }
    void set_label(std::string label) { label_ = std::move(label); }
    const std::vector<Point>& vertices() const { return vertices_; }

    Point sample(RngStream& rng) const {
        switch (kind_) {
            case BodyKind::interval:
                return {lo_ + (hi_ - lo_) * rng.next_unit(), 0.0, 0.0};
            case BodyKind::cube: {
                Point p{0.0, 0.0, 0.0};
                for (int i = 0; i < dimension_; ++i) p[i] = side_ * rng.next_unit();
                return p;
            }
            case BodyKind::simplex: return sample_simplex(rng);
            case BodyKind::ball: return sample_ball(rng);
            case BodyKind::polygon: return sample_polygon(rng);
        }
        return {0.0, 0.0, 0.0};
    }

    /// Membership test with a relative tolerance; used by containment checks.
    bool contains(const Point& p, double tol = 1e-12) const {
        switch (kind_) {
            case BodyKind::interval:
                return p[0] >= lo_ - tol && p[0] <= hi_ + tol;
            case BodyKind::cube:
                for (int i = 0; i < dimension_; ++i)
                    if (p[i] < -tol || p[i] > side_ + tol) return false;
                return true;
            case BodyKind::ball: {
                double r2 = 0.0;
                for (int i = 0; i < dimension_; ++i) r2 += p[i] * p[i];
                return std::sqrt(r2) <= radius_ * (1.0 + tol) + tol;
            }
            case BodyKind::simplex: {
                const auto bary = barycentric(p);
                double sum = 0.0;
                for (int i = 0; i <= dimension_; ++i) {
                    if (bary[static_cast<std::size_t>(i)] < -tol) return false;
                    sum += bary[static_cast<std::size_t>(i)];
                }
                return sum <= 1.0 + tol;
            }
            case BodyKind::polygon: {
                const std::size_t n = vertices_.size();
                for (std::size_t i = 0; i < n; ++i) {
                    const Point& a = vertices_[i];
                    const Point& b = vertices_[(i + 1) % n];
                    const double cross = (b[0] - a[0]) * (p[1] - a[1]) -
                                         (b[1] - a[1]) * (p[0] - a[0]);
                    if (cross < -tol * volume_) return false;
                }
                return true;
            }
        }
        return false;
    }

    /// Barycentric coordinates w.r.t. the simplex vertices (d+1 values
    /// summing to 1 for points in the affine hull).
    std::vector<double> barycentric(const Point& p) const {
        const double total = simplex_volume_signed(vertices_, dimension_);
        std::vector<double> out(static_cast<std::size_t>(dimension_) + 1);
        for (int i = 0; i <= dimension_; ++i) {
            auto sub = vertices_;
            sub[static_cast<std::size_t>(i)] = p;
            out[static_cast<std::size_t>(i)] =
                simplex_volume_signed(sub, dimension_) / total;
        }
        return out;
    }

private:
    ConvexBody(BodyKind kind, int dimension, std::string label)
        : kind_(kind), dimension_(dimension), label_(std::move(label)) {}

    static void check_dimension(int d) {
        if (d < 1 || d > 3)
            throw ContractViolation("dimension must be 1, 2, or 3");
    }

    static double simplex_volume_signed(const std::vector<Point>& v, int d) {
        const Point& o = v[0];
        switch (d) {
            case 1: return v[1][0] - o[0];
            case 2:
                return 0.5 * ((v[1][0] - o[0]) * (v[2][1] - o[1]) -
                              (v[1][1] - o[1]) * (v[2][0] - o[0]));
            default:
                return orient3d_value(o, v[1], v[2], v[3]) / 6.0;
        }
    }

    static double simplex_volume(const std::vector<Point>& v, int d) {
        return std::fabs(simplex_volume_signed(v, d));
    }

    static double polygon_area(const std::vector<Point>& v) {
        double acc = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            const Point& a = v[i];
            const Point& b = v[(i + 1) % v.size()];
            acc += a[0] * b[1] - b[0] * a[1];
        }
        return 0.5 * acc;
    }

    /// Normalized exponential spacings give uniform barycentric weights.
    Point sample_simplex(RngStream& rng) const {
        double e[4];
        double sum = 0.0;
        for (int i = 0; i <= dimension_; ++i) {
            e[i] = rng.next_exponential();
            sum += e[i];
        }
        Point p{0.0, 0.0, 0.0};
        for (int i = 0; i <= dimension_; ++i) {
            const double w = e[i] / sum;
            for (int c = 0; c < dimension_; ++c)
                p[c] += w * vertices_[static_cast<std::size_t>(i)][c];
        }
        return p;
    }

    /// Isotropic direction, radius with density proportional to r^{d-1}.
    Point sample_ball(RngStream& rng) const {
        Point dir{0.0, 0.0, 0.0};
        if (dimension_ == 1) {
            dir[0] = rng.next_unit() < 0.5 ? -1.0 : 1.0;
        } else {
            double g[4];
            rng.next_gaussian_pair(g[0], g[1]);
            if (dimension_ == 3) rng.next_gaussian_pair(g[2], g[3]);
            double norm2 = 0.0;
            for (int i = 0; i < dimension_; ++i) norm2 += g[i] * g[i];
            if (norm2 == 0.0) { g[0] = 1.0; norm2 = 1.0; } // probability-zero guard
            const double inv = 1.0 / std::sqrt(norm2);
            for (int i = 0; i < dimension_; ++i) dir[i] = g[i] * inv;
        }
        const double r =
            radius_ * std::pow(rng.next_unit(), 1.0 / static_cast<double>(dimension_));
        for (int i = 0; i < dimension_; ++i) dir[i] *= r;
        return dir;
    }

    void build_fan() {
        fan_cum_.clear();
        double cum = 0.0;
        for (std::size_t i = 2; i < vertices_.size(); ++i) {
            const double a = 0.5 * std::fabs(
                (vertices_[i - 1][0] - vertices_[0][0]) * (vertices_[i][1] - vertices_[0][1]) -
                (vertices_[i - 1][1] - vertices_[0][1]) * (vertices_[i][0] - vertices_[0][0]));
            cum += a;
            fan_cum_.push_back(cum);
        }
        for (double& c : fan_cum_) c /= cum;
        fan_cum_.back() = 1.0;
    }

    /// Area-weighted fan triangle, then uniform inside it. The s = sqrt(u)
    /// substitution makes the in-triangle density uniform.
    Point sample_polygon(RngStream& rng) const {
        const double pick = rng.next_unit();
        std::size_t t = 0;
        while (t + 1 < fan_cum_.size() && pick > fan_cum_[t]) ++t;
        const Point& a = vertices_[0];
        const Point& b = vertices_[t + 1];
        const Point& c = vertices_[t + 2];
        const double s = std::sqrt(rng.next_unit());
        const double v = rng.next_unit();
        Point p{0.0, 0.0, 0.0};
        for (int i = 0; i < 2; ++i)
            p[i] = (1.0 - s) * a[i] + s * (1.0 - v) * b[i] + s * v * c[i];
        return p;
    }

    BodyKind kind_;
    int dimension_;
    std::string label_;
    double volume_ = 0.0;
    double lo_ = 0.0, hi_ = 0.0; // interval
    double side_ = 0.0;          // cube
    double radius_ = 0.0;        // ball
    std::vector<Point> vertices_;  // simplex, polygon
    std::vector<double> fan_cum_;  // polygon fan cumulative areas
};

/// count independent uniform points; deterministic given the stream spec.
inline std::vector<Point> sample_uniform(const ConvexBody& body,
                                         std::size_t count,
                                         RngStreamSpec stream) {
    if (count < 1) throw ContractViolation("sample_uniform: count >= 1");
    RngStream rng(stream);
    std::vector<Point> pts(count);
    for (auto& p : pts) p = body.sample(rng);
    return pts;
}

} // namespace efron_dual::geom
