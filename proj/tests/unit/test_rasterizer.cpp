#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "softsil/errors.hpp"
#include "softsil/rasterizer.hpp"

using namespace softsil;

namespace {

ScreenMesh triangles(const std::vector<std::array<Vec2, 3>>& tris, double z = 3.0) {
    ScreenMesh m;
    for (const auto& t : tris) {
        const int base = static_cast<int>(m.vertices.size());
        for (const Vec2& v : t) m.vertices.push_back({v.x, v.y, z});
        m.faces.push_back({base, base + 1, base + 2});
    }
    return m;
}

RenderConfig config(const char* dist, const char* tc, double tau, int size = 32) {
    RenderConfig c;
    c.distribution = DistributionSpec::parse(dist);
    c.tconorm = TConormSpec::parse(tc);
    c.tau = tau;
    c.width = size;
    c.height = size;
    return c;
}

double cross2(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

// +1 inside, -1 outside, 0 when the point is within `margin` of an edge line.
int barycentric_side(Vec2 p, const std::array<Vec2, 3>& t, double margin = 1e-3) {
    const double area = cross2(t[1] - t[0], t[2] - t[0]);
    double smallest = INFINITY;
    bool inside = true;
    for (int k = 0; k < 3; ++k) {
        const Vec2 a = t[k], b = t[(k + 1) % 3];
        const double s = cross2(b - a, p - a) / area;  // scaled by the edge length below
        const double dist = s * area / norm(b - a);
        smallest = std::min(smallest, std::abs(dist));
        if (s < 0) inside = false;
    }
    if (smallest < margin) return 0;
    return inside ? 1 : -1;
}

std::array<Vec2, 3> random_triangle(std::mt19937_64& gen, double lo, double hi) {
    std::uniform_real_distribution<double> u(lo, hi);
    return {Vec2{u(gen), u(gen)}, Vec2{u(gen), u(gen)}, Vec2{u(gen), u(gen)}};
}

}  // namespace

TEST(Render, EmptyMeshIsBlack) {
    const Image img = render_silhouette(ScreenMesh{}, config("logistic", "probabilistic", 1.0));
    for (double v : img.values) EXPECT_EQ(v, 0.0);
    const Image hard = hard_render(ScreenMesh{}, 8, 8);
    for (double v : hard.values) EXPECT_EQ(v, 0.0);
}

TEST(Render, HeavisideMatchesBarycentricCoverage) {
    const std::array<Vec2, 3> t{Vec2{2.3, 3.1}, Vec2{29.4, 6.2}, Vec2{11.7, 27.9}};
    const Image img = render_silhouette(triangles({t}), config("heaviside", "max", 1.0));
    for (int j = 0; j < 32; ++j) {
        for (int i = 0; i < 32; ++i) {
            const int side = barycentric_side({i + 0.5, j + 0.5}, t);
            if (side == 0) continue;
            EXPECT_EQ(img.at(i, j), side > 0 ? 1.0 : 0.0) << i << "," << j;
        }
    }
}

TEST(Render, RandomTrianglesAgreeWithBarycentricChecker) {
    std::mt19937_64 gen(31);
    for (int trial = 0; trial < 20; ++trial) {
        const auto t = random_triangle(gen, -4.0, 36.0);
        if (std::abs(cross2(t[1] - t[0], t[2] - t[0])) < 1.0) continue;
        const ScreenMesh m = triangles({t});
        const Image soft = render_silhouette(m, config("heaviside", "max", 1.0));
        const Image hard = hard_render(m, 32, 32);
        for (int j = 0; j < 32; ++j) {
            for (int i = 0; i < 32; ++i) {
                const int side = barycentric_side({i + 0.5, j + 0.5}, t);
                if (side == 0) continue;
                EXPECT_EQ(hard.at(i, j), side > 0 ? 1.0 : 0.0);
                EXPECT_EQ(soft.at(i, j), side > 0 ? 1.0 : 0.0);
            }
        }
    }
}

TEST(Render, LogisticOnAnEdgeIsOneHalf) {
    // The pixel centre (10.5, 16.5) lies on the vertical edge x = 10.5.
    const ScreenMesh m = triangles({{Vec2{10.5, 0.0}, Vec2{10.5, 32.0}, Vec2{40.0, 16.0}}});
    const Image img = render_silhouette(m, config("logistic", "probabilistic", 2.0));
    EXPECT_NEAR(img.at(10, 16), 0.5, 1e-15);
    EXPECT_GT(img.at(12, 16), 0.5);
    EXPECT_LT(img.at(8, 16), 0.5);
}

TEST(Render, StackedFacesUseTheProbabilisticSum) {
    const std::array<Vec2, 3> t{Vec2{4.2, 5.1}, Vec2{25.3, 8.7}, Vec2{12.9, 26.4}};
    const RenderConfig c = config("logistic", "probabilistic", 1.5);
    const Image one = render_silhouette(triangles({t}), c);
    const Image two = render_silhouette(triangles({t, t}), c);
    for (std::size_t k = 0; k < one.values.size(); ++k) {
        const double v = one.values[k];
        EXPECT_NEAR(two.values[k], 1.0 - (1.0 - v) * (1.0 - v), 1e-14);
    }
}

TEST(Render, AverageDividesByFaceCount) {
    const std::array<Vec2, 3> t{Vec2{4.2, 5.1}, Vec2{25.3, 8.7}, Vec2{12.9, 26.4}};
    const std::array<Vec2, 3> far{Vec2{500, 500}, Vec2{510, 500}, Vec2{500, 510}};
    const RenderConfig c = config("logistic", "average", 1.0);
    const Image one = render_silhouette(triangles({t}), c);
    const Image two = render_silhouette(triangles({t, far}), c);
    for (std::size_t k = 0; k < one.values.size(); ++k) EXPECT_NEAR(two.values[k], 0.5 * one.values[k], 1e-12);
}

TEST(Render, OffScreenTriangleIsBlack) {
    const ScreenMesh m = triangles({{Vec2{100, 100}, Vec2{140, 100}, Vec2{100, 140}}});
    for (double v : hard_render(m, 32, 32).values) EXPECT_EQ(v, 0.0);
    for (double v : render_silhouette(m, config("logistic", "probabilistic", 1.0)).values) EXPECT_EQ(v, 0.0);
}

TEST(Render, HardRenderEqualsHeavisideMax) {
    std::mt19937_64 gen(32);
    std::vector<std::array<Vec2, 3>> tris;
    for (int i = 0; i < 12; ++i) tris.push_back(random_triangle(gen, -2.0, 34.0));
    const ScreenMesh m = triangles(tris);
    EXPECT_EQ(hard_render(m, 32, 32), render_silhouette(m, config("heaviside", "max", 1.0)));
}

TEST(Render, ValuesStayInTheUnitIntervalAndAreDeterministic) {
    std::mt19937_64 gen(33);
    std::vector<std::array<Vec2, 3>> tris;
    for (int i = 0; i < 30; ++i) tris.push_back(random_triangle(gen, -5.0, 37.0));
    const ScreenMesh m = triangles(tris);
    for (const char* d : {"logistic", "cauchy", "gumbel-max(sq)", "uniform", "levy"}) {
        for (const char* t : {"probabilistic", "einstein", "yager(p=2)", "max", "average"}) {
            const RenderConfig c = config(d, t, 0.7);
            const Image a = render_silhouette(m, c);
            EXPECT_EQ(a, render_silhouette(m, c)) << d << " " << t;
            for (double v : a.values) {
                EXPECT_GE(v, 0.0);
                EXPECT_LE(v, 1.0);
            }
        }
    }
}

TEST(Render, MonotoneInTemperature) {
    const std::array<Vec2, 3> t{Vec2{8.2, 9.1}, Vec2{23.3, 10.7}, Vec2{14.9, 22.4}};
    const ScreenMesh m = triangles({t});
    Image previous;
    for (double tau : {0.25, 0.5, 1.0, 2.0, 4.0}) {
        const Image img = render_silhouette(m, config("logistic", "probabilistic", tau));
        if (!previous.values.empty()) {
            for (int j = 0; j < 32; ++j) {
                for (int i = 0; i < 32; ++i) {
                    const int side = barycentric_side({i + 0.5, j + 0.5}, t);
                    if (side < 0) EXPECT_GE(img.at(i, j), previous.at(i, j));
                    if (side > 0) EXPECT_LE(img.at(i, j), previous.at(i, j));
                }
            }
        }
        previous = img;
    }
}

TEST(Render, AddingAFaceNeverDarkensAPixel) {
    std::mt19937_64 gen(34);
    for (const char* t : {"probabilistic", "einstein", "max", "yager(p=0.5)", "dombi(p=2)", "frank(p=4)"}) {
        std::vector<std::array<Vec2, 3>> tris;
        Image previous(32, 32);
        for (int k = 0; k < 8; ++k) {
            tris.push_back(random_triangle(gen, -3.0, 35.0));
            const Image img = render_silhouette(triangles(tris), config("logistic", t, 1.0));
            for (std::size_t p = 0; p < img.values.size(); ++p) EXPECT_GE(img.values[p], previous.values[p] - 1e-15) << t;
            previous = img;
        }
    }
}

TEST(Render, SmallTemperatureApproachesTheHardRender) {
    std::mt19937_64 gen(35);
    std::vector<std::array<Vec2, 3>> tris;
    for (int i = 0; i < 50; ++i) tris.push_back(random_triangle(gen, -2.0, 34.0));
    const ScreenMesh m = triangles(tris);
    const Image hard = hard_render(m, 32, 32);
    const Image soft = render_silhouette(m, config("logistic", "probabilistic", 1e-6));
    int agree = 0;
    for (std::size_t k = 0; k < hard.values.size(); ++k) agree += std::abs(hard.values[k] - soft.values[k]) < 1e-3;
    EXPECT_GE(agree, static_cast<int>(0.99 * hard.values.size()));
}

TEST(Render, InfluenceRadiusBoundsTheSupport) {
    const RenderConfig c = config("logistic", "probabilistic", 1.0, 64);
    const double r = influence_radius_px(c);
    // logistic(-r) <= 1e-6 requires r >= ln(1e6 - 1).
    EXPECT_GE(r, std::log(1e6 - 1.0) - 1e-9);
    EXPECT_LT(r, 20.0);
    const ScreenMesh m = triangles({{Vec2{2, 2}, Vec2{10, 2}, Vec2{2, 10}}});
    const Image img = render_silhouette(m, c);
    for (int j = 0; j < 64; ++j) {
        for (int i = 0; i < 64; ++i) {
            if (i + 0.5 > 10 + r + 1 || j + 0.5 > 10 + r + 1) EXPECT_EQ(img.at(i, j), 0.0);
        }
    }
    // Heavy tails fall back to the image diagonal.
    EXPECT_NEAR(influence_radius_px(config("cauchy", "probabilistic", 1.0, 64)), std::hypot(64.0, 64.0), 1e-9);
}

TEST(Render, RejectsBadConfiguration) {
    RenderConfig c = config("logistic", "probabilistic", 0.0);
    EXPECT_THROW(render_silhouette(ScreenMesh{}, c), ConfigError);
    c.tau = 1.0;
    c.width = 0;
    EXPECT_THROW(render_silhouette(ScreenMesh{}, c), ConfigError);
    ScreenMesh bad;
    bad.vertices = {{0, 0, 1}};
    bad.faces = {{0, 0, 1}};
    EXPECT_THROW(render_silhouette(bad, config("logistic", "probabilistic", 1.0)), ConfigError);
}

TEST(DepthAggregation, SingleFaceMatchesTheClosedForm) {
    RenderConfig c = config("logistic", "probabilistic", 1.0);
    c.depth_softmin_tau = 0.5;
    c.depth_far = 10.0;
    const ScreenMesh m = triangles({{Vec2{2.1, 2.2}, Vec2{30.3, 3.4}, Vec2{15.5, 29.6}}}, 3.0);
    const std::vector<double> values{0.8};
    const Image img = render_depth_aggregated(m, c, values);
    const Image occ = render_silhouette(m, c);
    for (std::size_t k = 0; k < img.values.size(); ++k) {
        const double w = occ.values[k] * std::exp(-3.0 / 0.5);
        const double bg = std::exp(-10.0 / 0.5);
        EXPECT_NEAR(img.values[k], 0.8 * w / (w + bg), 1e-12);
    }
}

TEST(DepthAggregation, CoincidentDepthsAverage) {
    RenderConfig c = config("logistic", "probabilistic", 1.0);
    c.depth_softmin_tau = 1.0;
    c.depth_far = 200.0;
    const std::array<Vec2, 3> t{Vec2{2.1, 2.2}, Vec2{30.3, 3.4}, Vec2{15.5, 29.6}};
    const std::vector<double> values{0.2, 0.8};
    const Image img = render_depth_aggregated(triangles({t, t}, 3.0), c, values);
    EXPECT_NEAR(img.at(16, 12), 0.5, 1e-12);
}

TEST(DepthAggregation, SmallDepthTemperaturePicksTheNearestFace) {
    RenderConfig c = config("logistic", "probabilistic", 0.5);
    c.depth_softmin_tau = 1e-3;
    c.depth_far = 50.0;
    const std::array<Vec2, 3> t{Vec2{2.1, 2.2}, Vec2{30.3, 3.4}, Vec2{15.5, 29.6}};
    ScreenMesh m = triangles({t, t});
    for (int k = 0; k < 3; ++k) m.vertices[k].z = 4.0;  // first face behind
    for (int k = 3; k < 6; ++k) m.vertices[k].z = 2.0;
    const std::vector<double> values{0.1, 0.9};
    const Image img = render_depth_aggregated(m, c, values);
    EXPECT_NEAR(img.at(16, 12), 0.9, 1e-9);
    const std::vector<double> too_few{0.1};
    EXPECT_THROW(render_depth_aggregated(m, c, too_few), ConfigError);
    c.depth_softmin_tau.reset();
    EXPECT_THROW(render_depth_aggregated(m, c, values), ConfigError);
}

TEST(Backward, MatchesCentralDifferencesOfAWeightedSum) {
    std::mt19937_64 gen(36);
    std::vector<std::array<Vec2, 3>> tris;
    for (int i = 0; i < 6; ++i) tris.push_back(random_triangle(gen, 2.0, 30.0));
    ScreenMesh m = triangles(tris);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Image weights(32, 32);
    for (double& w : weights.values) w = u(gen);
    auto objective = [&](const ScreenMesh& mesh, const RenderConfig& c) {
        const Image img = render_silhouette(mesh, c);
        double s = 0.0;
        for (std::size_t k = 0; k < img.values.size(); ++k) s += weights.values[k] * img.values[k];
        return s;
    };
    for (const char* tc : {"probabilistic", "einstein", "yager(p=2)", "average"}) {
        const RenderConfig c = config("logistic", tc, 1.5);
        const std::vector<Vec2> grad = render_silhouette_backward(m, c, weights);
        const SilhouetteRecording rec(m, c);
        EXPECT_EQ(rec.image(), render_silhouette(m, c));
        const std::vector<Vec2> again = rec.backward(weights);
        const double h = 1e-6;
        for (std::size_t v = 0; v < m.vertices.size(); ++v) {
            EXPECT_EQ(again[v].x, grad[v].x);
            for (int axis = 0; axis < 2; ++axis) {
                ScreenMesh plus = m, minus = m;
                (axis == 0 ? plus.vertices[v].x : plus.vertices[v].y) += h;
                (axis == 0 ? minus.vertices[v].x : minus.vertices[v].y) -= h;
                const double fd = (objective(plus, c) - objective(minus, c)) / (2 * h);
                const double an = axis == 0 ? grad[v].x : grad[v].y;
                EXPECT_NEAR(an, fd, 1e-5 * std::max(1.0, std::abs(fd))) << tc << " vertex " << v;
            }
        }
    }
}

TEST(RegimeSignature, StableUnderTinyMovesAwayFromKinks) {
    const ScreenMesh m = triangles({{Vec2{2.2, 2.3}, Vec2{20.1, 2.9}, Vec2{2.7, 20.4}}});
    const RenderConfig c = config("uniform", "yager(p=2)", 3.0);
    ScreenMesh nudged = m;
    nudged.vertices[0].x += 1e-9;
    EXPECT_EQ(regime_signature(m, c), regime_signature(nudged, c));
    ScreenMesh moved = m;
    moved.vertices[0].x += 2.0;
    EXPECT_NE(regime_signature(m, c), regime_signature(moved, c));
}
