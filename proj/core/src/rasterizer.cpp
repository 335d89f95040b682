#include "softsil/rasterizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "softsil/errors.hpp"
#include "softsil/text.hpp"
#include "softsil/detail/triangle.hpp"

namespace softsil {
namespace {

constexpr int kTile = 8;

struct PreparedFace {
    int index = 0;
    detail::TriangleSetup tri;
    // Pixel-centre bounds (inclusive) after expanding by the influence radius.
    double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
};

// Faces binned into square tiles; every tile lists its faces in ascending index.
class FaceBins {
public:
    FaceBins(const ScreenMesh& mesh, int width, int height, double radius)
        : width_(width), height_(height), tiles_x_((width + kTile - 1) / kTile),
          tiles_y_((height + kTile - 1) / kTile), bins_(static_cast<std::size_t>(tiles_x_) * tiles_y_) {
        faces_.reserve(mesh.faces.size());
        for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
            const auto& face = mesh.faces[f];
            const auto& a = mesh.vertices[face[0]];
            const auto& b = mesh.vertices[face[1]];
            const auto& c = mesh.vertices[face[2]];
            PreparedFace pf;
            pf.index = static_cast<int>(f);
            pf.tri = detail::TriangleSetup({a.x, a.y}, {b.x, b.y}, {c.x, c.y});
            if (pf.tri.degenerate()) continue;  // no interior: occupancy ~ F(-inf) = 0
            pf.x0 = std::min({a.x, b.x, c.x}) - radius;
            pf.x1 = std::max({a.x, b.x, c.x}) + radius;
            pf.y0 = std::min({a.y, b.y, c.y}) - radius;
            pf.y1 = std::max({a.y, b.y, c.y}) + radius;
            // Pixel (i, j) has centre (i + 0.5, j + 0.5).
            const int i0 = std::max(0, static_cast<int>(std::ceil(pf.x0 - 0.5)));
            const int i1 = std::min(width - 1, static_cast<int>(std::floor(pf.x1 - 0.5)));
            const int j0 = std::max(0, static_cast<int>(std::ceil(pf.y0 - 0.5)));
            const int j1 = std::min(height - 1, static_cast<int>(std::floor(pf.y1 - 0.5)));
            if (i0 > i1 || j0 > j1) continue;
            const int slot = static_cast<int>(faces_.size());
            faces_.push_back(pf);
            for (int ty = j0 / kTile; ty <= j1 / kTile; ++ty) {
                for (int tx = i0 / kTile; tx <= i1 / kTile; ++tx) {
                    bins_[static_cast<std::size_t>(ty) * tiles_x_ + tx].push_back(slot);
                }
            }
        }
    }

    const std::vector<int>& tile_for(int i, int j) const {
        return bins_[static_cast<std::size_t>(j / kTile) * tiles_x_ + i / kTile];
    }
    const PreparedFace& face(std::size_t slot) const { return faces_[slot]; }
    std::size_t size() const { return faces_.size(); }

    static bool covers(const PreparedFace& f, double px, double py) {
        return px >= f.x0 && px <= f.x1 && py >= f.y0 && py <= f.y1;
    }

private:
    int width_, height_;
    int tiles_x_, tiles_y_;
    std::vector<PreparedFace> faces_;
    std::vector<std::vector<int>> bins_;
};

double argument_scale(const RenderConfig& config) {
    return scaled_argument(config.distribution, config.distance_scale, config.tau).x;
}

void check_mesh(const ScreenMesh& mesh) {
    const auto n = static_cast<long long>(mesh.vertices.size());
    for (const auto& face : mesh.faces) {
        for (int idx : face) {
            if (idx < 0 || idx >= n) throw ConfigError("screen mesh face index out of range");
        }
    }
}

}  // namespace

void RenderConfig::validate() const {
    distribution.validate();
    tconorm.validate();
    if (!(tau > 0.0) || !std::isfinite(tau)) throw ConfigError("tau must be positive and finite");
    if (width < 1 || height < 1) throw ConfigError("image size must be at least 1x1");
    if (!(distance_scale > 0.0) || !std::isfinite(distance_scale)) {
        throw ConfigError("distance scale must be positive and finite");
    }
    if (depth_softmin_tau && !(*depth_softmin_tau > 0.0)) {
        throw ConfigError("depth softmin temperature must be positive");
    }
}

double influence_radius_px(const RenderConfig& config) {
    const double diagonal = std::hypot(static_cast<double>(config.width), static_cast<double>(config.height));
    const double k = argument_scale(config);
    const double x_cap = diagonal * k;
    const double cut = left_cutoff(config.distribution, kCullThreshold, x_cap);
    if (cut <= -x_cap) return diagonal;
    return std::max(0.0, -cut / k);
}

Image render_silhouette(const ScreenMesh& mesh, const RenderConfig& config) {
    config.validate();
    check_mesh(mesh);
    const int w = config.width;
    const int h = config.height;
    Image image(w, h);
    if (mesh.faces.empty()) return image;

    const FaceBins bins(mesh, w, h, influence_radius_px(config));
    const double k = argument_scale(config);
    const DistributionSpec& dist = config.distribution;
    const TConormSpec& tc = config.tconorm;
    const bool average = tc.family == TConormFamily::Average;
    const double inv_faces = 1.0 / static_cast<double>(mesh.faces.size());

    for (int j = 0; j < h; ++j) {
        for (int i = 0; i < w; ++i) {
            const Vec2 p{i + 0.5, j + 0.5};
            double acc = 0.0;
            for (int slot : bins.tile_for(i, j)) {
                const PreparedFace& f = bins.face(slot);
                if (!FaceBins::covers(f, p.x, p.y)) continue;
                const double v = cdf(dist, detail::signed_distance(f.tri, p) * k);
                if (v == 0.0) continue;
                acc = average ? acc + v : tconorm(tc, acc, v);
            }
            image.at(i, j) = average ? acc * inv_faces : acc;
        }
    }
    return image;
}

SilhouetteRecording::SilhouetteRecording(const ScreenMesh& mesh, const RenderConfig& config)
    : config_(config), faces_(mesh.faces), vertex_count_(mesh.vertices.size()) {
    config.validate();
    check_mesh(mesh);
    const int w = config.width;
    const int h = config.height;
    image_ = Image(w, h);
    pixel_begin_.assign(static_cast<std::size_t>(w) * h + 1, 0);
    if (mesh.faces.empty()) return;

    const FaceBins bins(mesh, w, h, influence_radius_px(config));
    setups_.resize(mesh.faces.size());
    for (std::size_t slot = 0; slot < bins.size(); ++slot) setups_[bins.face(slot).index] = bins.face(slot).tri;
    arg_scale_ = argument_scale(config);
    const DistributionSpec& dist = config.distribution;
    const TConormSpec& tc = config.tconorm;
    const bool average = tc.family == TConormFamily::Average;
    const double inv_faces = 1.0 / static_cast<double>(mesh.faces.size());

    std::size_t bound = 0;
    for (int j = 0; j < h; ++j) {
        for (int i = 0; i < w; i += kTile) bound += bins.tile_for(i, j).size() * std::min(kTile, w - i);
    }
    fragments_.reserve(bound);

    std::size_t pixel = 0;
    for (int j = 0; j < h; ++j) {
        for (int i = 0; i < w; ++i, ++pixel) {
            pixel_begin_[pixel] = fragments_.size();
            const Vec2 p{i + 0.5, j + 0.5};
            double acc = 0.0;
            for (int slot : bins.tile_for(i, j)) {
                const PreparedFace& f = bins.face(slot);
                if (!FaceBins::covers(f, p.x, p.y)) continue;
                const double x = detail::signed_distance(f.tri, p) * arg_scale_;
                const CdfPdf cp = cdf_and_pdf(dist, x);
                const double v = cp.cdf;
                if (v == 0.0) continue;
                fragments_.push_back({f.index, v, cp.pdf, acc});
                acc = average ? acc + v : tconorm(tc, acc, v);
            }
            image_.values[pixel] = average ? acc * inv_faces : acc;
        }
    }
    pixel_begin_[pixel] = fragments_.size();
}

std::vector<Vec2> SilhouetteRecording::backward(const Image& dloss_dpixel) const {
    if (dloss_dpixel.width != image_.width || dloss_dpixel.height != image_.height) {
        throw ConfigError("gradient image size does not match the render configuration");
    }
    std::vector<Vec2> grad(vertex_count_);
    if (faces_.empty()) return grad;
    const TConormSpec& tc = config_.tconorm;
    const bool average = tc.family == TConormFamily::Average;
    const double inv_faces = 1.0 / static_cast<double>(faces_.size());
    const int w = image_.width;

    std::array<Vec2, 3> dd{};
    for (std::size_t pixel = 0; pixel + 1 < pixel_begin_.size(); ++pixel) {
        const double g = dloss_dpixel.values[pixel];
        if (g == 0.0) continue;
        const Vec2 p{static_cast<double>(pixel % w) + 0.5, static_cast<double>(pixel / w) + 0.5};
        // Reverse sweep through the fold: carry = dL / d(fold value after the fragment).
        double carry = g;
        for (std::size_t n = pixel_begin_[pixel + 1]; n-- > pixel_begin_[pixel];) {
            const Fragment& fr = fragments_[n];
            double dv;
            if (average) {
                dv = g * inv_faces;
            } else {
                const TConormPartials part = tconorm_partials(tc, fr.acc, fr.v);
                dv = carry * part.db;
                carry *= part.da;
            }
            if (dv == 0.0 || fr.density == 0.0) continue;
            detail::signed_distance_grad(setups_[fr.face], p, dd);
            const double scale = dv * fr.density * arg_scale_;
            const Face& face = faces_[fr.face];
            for (int k = 0; k < 3; ++k) grad[face[k]] += dd[k] * scale;
        }
    }
    return grad;
}

std::vector<Vec2> render_silhouette_backward(const ScreenMesh& mesh, const RenderConfig& config,
                                             const Image& dloss_dpixel) {
    if (dloss_dpixel.width != config.width || dloss_dpixel.height != config.height) {
        throw ConfigError("gradient image size does not match the render configuration");
    }
    return SilhouetteRecording(mesh, config).backward(dloss_dpixel);
}

std::uint64_t regime_signature(const ScreenMesh& mesh, const RenderConfig& config) {
    config.validate();
    check_mesh(mesh);
    std::uint64_t hash = 14695981039346656037ULL;
    const auto mix = [&hash](std::uint64_t value) {
        for (int b = 0; b < 8; ++b) {
            hash ^= (value >> (8 * b)) & 0xffU;
            hash *= 1099511628211ULL;
        }
    };
    if (mesh.faces.empty()) return hash;

    const int w = config.width;
    const int h = config.height;
    const FaceBins bins(mesh, w, h, influence_radius_px(config));
    const double k = argument_scale(config);
    const std::vector<double> kinks = cdf_kinks(config.distribution);
    const bool average = config.tconorm.family == TConormFamily::Average;

    for (int j = 0; j < h; ++j) {
        for (int i = 0; i < w; ++i) {
            const Vec2 p{i + 0.5, j + 0.5};
            double acc = 0.0;
            mix(0xffffffffULL);
            for (int slot : bins.tile_for(i, j)) {
                const PreparedFace& f = bins.face(slot);
                if (!FaceBins::covers(f, p.x, p.y)) continue;
                const detail::Coverage cov = detail::coverage(f.tri, p);
                const double x = detail::signed_distance(f.tri, p) * k;
                const auto piece = std::upper_bound(kinks.begin(), kinks.end(), x) - kinks.begin();
                const int edge = cov == detail::Coverage::Outside ? 3 : detail::nearest_feature(f.tri, p).edge;
                const double v = cdf(config.distribution, x);
                int tc_piece = 0;
                if (v != 0.0 && !average) {
                    tc_piece = tconorm_regime(config.tconorm, acc, v);
                    acc = tconorm(config.tconorm, acc, v);
                }
                // Fragments in the flat zero tail of a CDF only matter through the cull box.
                if (cov == detail::Coverage::Outside && v == 0.0 && piece == 0) continue;
                mix(static_cast<std::uint64_t>(f.index) << 16 | static_cast<std::uint64_t>(piece) << 8 |
                    static_cast<std::uint64_t>(edge) << 4 | static_cast<std::uint64_t>(tc_piece));
            }
        }
    }
    return hash;
}

Image hard_render(const ScreenMesh& mesh, int width, int height) {
    if (width < 1 || height < 1) throw ConfigError("image size must be at least 1x1");
    check_mesh(mesh);
    Image image(width, height);
    const FaceBins bins(mesh, width, height, 0.0);
    for (int j = 0; j < height; ++j) {
        for (int i = 0; i < width; ++i) {
            const Vec2 p{i + 0.5, j + 0.5};
            for (int slot : bins.tile_for(i, j)) {
                const PreparedFace& f = bins.face(slot);
                if (!FaceBins::covers(f, p.x, p.y)) continue;
                if (detail::coverage(f.tri, p) != detail::Coverage::Outside) {
                    image.at(i, j) = 1.0;
                    break;
                }
            }
        }
    }
    return image;
}

Image render_depth_aggregated(const ScreenMesh& mesh, const RenderConfig& config,
                              std::span<const double> face_values) {
    config.validate();
    check_mesh(mesh);
    if (!config.depth_softmin_tau) throw ConfigError("depth aggregation requires depth_softmin_tau");
    if (face_values.size() != mesh.faces.size()) {
        throw ConfigError("expected one value per face (" + std::to_string(mesh.faces.size()) + "), got " +
                          std::to_string(face_values.size()));
    }
    const int w = config.width;
    const int h = config.height;
    Image image(w, h);
    if (mesh.faces.empty()) return image;

    double max_depth = 0.0;
    for (const auto& v : mesh.vertices) max_depth = std::max(max_depth, v.z);
    const double z_far = config.depth_far.value_or(max_depth + 1.0);
    const double tau_d = *config.depth_softmin_tau;

    const FaceBins bins(mesh, w, h, influence_radius_px(config));
    const double k = argument_scale(config);

    struct Sample {
        double occupancy, depth, value;
    };
    std::vector<Sample> samples;
    for (int j = 0; j < h; ++j) {
        for (int i = 0; i < w; ++i) {
            const Vec2 p{i + 0.5, j + 0.5};
            samples.clear();
            double z_min = z_far;
            for (int slot : bins.tile_for(i, j)) {
                const PreparedFace& f = bins.face(slot);
                if (!FaceBins::covers(f, p.x, p.y)) continue;
                const double occ = cdf(config.distribution, detail::signed_distance(f.tri, p) * k);
                if (occ == 0.0) continue;
                // Screen-space barycentrics, clamped onto the triangle for outside pixels.
                const auto& tri = f.tri;
                const double area = cross(tri.edge[0], tri.v[2] - tri.v[0]);
                std::array<double, 3> lambda{cross(tri.v[1] - p, tri.v[2] - p) / area,
                                             cross(tri.v[2] - p, tri.v[0] - p) / area,
                                             cross(tri.v[0] - p, tri.v[1] - p) / area};
                double total = 0.0;
                for (double& l : lambda) total += (l = std::max(0.0, l));
                const auto& face = mesh.faces[f.index];
                double z = 0.0;
                for (int c = 0; c < 3; ++c) z += lambda[c] / total * mesh.vertices[face[c]].z;
                samples.push_back({occ, z, face_values[f.index]});
                z_min = std::min(z_min, z);
            }
            // Shift exponents by the nearest depth so the largest weight is O(1).
            double num = 0.0;
            double den = std::exp(-(z_far - z_min) / tau_d);
            for (const auto& s : samples) {
                const double wgt = s.occupancy * std::exp(-(s.depth - z_min) / tau_d);
                num += wgt * s.value;
                den += wgt;
            }
            image.at(i, j) = num / den;
        }
    }
    return image;
}

}  // namespace softsil
