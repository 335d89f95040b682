#pragma once

// Per-triangle signed-distance kernel shared by geometry and the rasterizer.
// Internal; not part of the stable interface.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "softsil/vec.hpp"

namespace softsil::detail {

struct TriangleSetup {
    std::array<Vec2, 3> v{};
    std::array<Vec2, 3> edge{};       // v[i+1] - v[i]
    std::array<double, 3> inv_len2{};  // 1 / |edge|^2, 0 for zero-length edges
    std::array<double, 3> inv_len{};   // 1 / |edge|, 0 for zero-length edges
    double orient = 0.0;              // +1 CCW (y up), -1 CW, 0 degenerate

    TriangleSetup() = default;
    TriangleSetup(Vec2 a, Vec2 b, Vec2 c) : v{a, b, c} {
        for (int i = 0; i < 3; ++i) {
            edge[i] = v[(i + 1) % 3] - v[i];
            const double l2 = dot(edge[i], edge[i]);
            inv_len2[i] = l2 > 0.0 ? 1.0 / l2 : 0.0;
            inv_len[i] = l2 > 0.0 ? 1.0 / std::sqrt(l2) : 0.0;
        }
        const double area2 = cross(edge[0], v[2] - v[0]);
        orient = area2 > 0.0 ? 1.0 : (area2 < 0.0 ? -1.0 : 0.0);
    }

    bool degenerate() const { return orient == 0.0; }
};

enum class Coverage { Outside, Boundary, Inside };

/// Orientation-normalised edge-function test; boundary points count as covered
/// by the hard test and get distance exactly 0.
inline Coverage coverage(const TriangleSetup& t, Vec2 p) {
    if (t.degenerate()) return Coverage::Outside;
    double lowest = 0.0;
    for (int i = 0; i < 3; ++i) {
        const double w = t.orient * cross(t.edge[i], p - t.v[i]);
        if (w < 0.0) return Coverage::Outside;
        if (i == 0 || w < lowest) lowest = w;
    }
    return lowest == 0.0 ? Coverage::Boundary : Coverage::Inside;
}

struct NearestFeature {
    double dist2 = 0.0;
    int edge = 0;
    double t = 0.0;  // clamped projection parameter along the edge
};

inline NearestFeature nearest_feature(const TriangleSetup& tri, Vec2 p) {
    NearestFeature best;
    for (int i = 0; i < 3; ++i) {
        const Vec2 rel = p - tri.v[i];
        double t = dot(rel, tri.edge[i]) * tri.inv_len2[i];
        t = t < 0.0 ? 0.0 : (t > 1.0 ? 1.0 : t);
        const Vec2 diff = rel - tri.edge[i] * t;
        const double d2 = dot(diff, diff);
        if (i == 0 || d2 < best.dist2) best = {d2, i, t};
    }
    return best;
}

inline double segment_distance2(const TriangleSetup& tri, int i, Vec2 p) {
    const Vec2 rel = p - tri.v[i];
    double t = dot(rel, tri.edge[i]) * tri.inv_len2[i];
    t = t < 0.0 ? 0.0 : (t > 1.0 ? 1.0 : t);
    const Vec2 diff = rel - tri.edge[i] * t;
    return dot(diff, diff);
}

/// Inside a triangle the nearest boundary point lies on the nearest supporting
/// line; outside it lies on an edge that faces the point. Both facts cut the
/// work to edge functions plus at most two segment distances.
inline double signed_distance(const TriangleSetup& tri, Vec2 p) {
    if (tri.degenerate()) return -std::sqrt(nearest_feature(tri, p).dist2);
    std::array<double, 3> w;
    for (int i = 0; i < 3; ++i) w[i] = tri.orient * cross(tri.edge[i], p - tri.v[i]);
    if (w[0] >= 0.0 && w[1] >= 0.0 && w[2] >= 0.0) {
        if (w[0] == 0.0 || w[1] == 0.0 || w[2] == 0.0) return 0.0;
        return std::min({w[0] * tri.inv_len[0], w[1] * tri.inv_len[1], w[2] * tri.inv_len[2]});
    }
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 3; ++i) {
        if (w[i] < 0.0) best = std::min(best, segment_distance2(tri, i, p));
    }
    return -std::sqrt(best);
}

/// Signed distance and its gradient with respect to the three vertices.
inline double signed_distance_grad(const TriangleSetup& tri, Vec2 p, std::array<Vec2, 3>& grad) {
    grad = {};
    const Coverage cov = coverage(tri, p);
    const NearestFeature nf = nearest_feature(tri, p);
    const double dist = std::sqrt(nf.dist2);
    const double sign = cov == Coverage::Outside ? -1.0 : 1.0;
    const double value = cov == Coverage::Boundary ? 0.0 : sign * dist;

    const int i0 = nf.edge;
    const int i1 = (nf.edge + 1) % 3;
    if (nf.t > 0.0 && nf.t < 1.0) {
        // Interior of an edge: d is the signed distance to the supporting line.
        const Vec2 e = tri.edge[i0];
        const double len = std::sqrt(dot(e, e));
        const Vec2 left{-e.y / len, e.x / len};
        if (tri.degenerate()) {
            // No interior: d = -|n . (p - q)| with n the unit normal facing p.
            if (dist == 0.0) return value;
            const Vec2 diff = p - (tri.v[i0] + e * nf.t);
            const Vec2 toward_p = dot(diff, left) >= 0.0 ? left : left * -1.0;
            grad[i0] = toward_p * (1.0 - nf.t);
            grad[i1] = toward_p * nf.t;
            return value;
        }
        const Vec2 inward = left * tri.orient;
        grad[i0] = inward * -(1.0 - nf.t);
        grad[i1] = inward * -nf.t;
    } else {
        // Nearest feature is a vertex: d = sign * |p - v|.
        const int iv = nf.t <= 0.0 ? i0 : i1;
        if (dist == 0.0) return value;
        const Vec2 dir = (p - tri.v[iv]) * (sign / dist);
        grad[iv] = dir * -1.0;
    }
    return value;
}

}  // namespace softsil::detail
