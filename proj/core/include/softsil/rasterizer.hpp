#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "softsil/detail/triangle.hpp"
#include "softsil/distributions.hpp"
#include "softsil/geometry.hpp"
#include "softsil/image.hpp"
#include "softsil/tconorms.hpp"

namespace softsil {

/// Everything the soft rasterizer needs besides the geometry.
///
/// Signed distances are measured in pixels and multiplied by `distance_scale`
/// before the temperature is applied, so `tau` is in pixel units by default.
/// Setting `distance_scale = 2 / width` expresses distances (and tau) in
/// normalized image units where the image spans [-1, 1] horizontally.
struct RenderConfig {
    DistributionSpec distribution;
    TConormSpec tconorm;
    double tau = 1.0;
    int width = 64;
    int height = 64;
    double distance_scale = 1.0;
    std::optional<double> depth_softmin_tau;
    std::optional<double> depth_far;  // background depth; defaults to max depth + 1

    void validate() const;
};

/// Occupancy below this value is treated as exactly zero when culling faces.
inline constexpr double kCullThreshold = 1e-6;

/// Pixel radius around a face's bounding box outside which its occupancy is
/// below kCullThreshold; capped at the image diagonal for heavy left tails.
double influence_radius_px(const RenderConfig& config);

/// Soft silhouette: per pixel, the T-conorm fold (ascending face index) of the
/// per-face occlusion probabilities F(d / tau). Pixel centres sit at (i + 0.5, j + 0.5).
Image render_silhouette(const ScreenMesh& mesh, const RenderConfig& config);

/// Binary coverage: 1 where at least one face covers the pixel centre
/// (boundary included), 0 elsewhere.
Image hard_render(const ScreenMesh& mesh, int width, int height);

/// Softmin depth blending of per-face values. Per pixel, face i gets weight
/// occupancy_i * exp(-z_i / depth_softmin_tau), where z_i is the face depth
/// interpolated at the pixel; the background (value 0) gets weight
/// exp(-depth_far / depth_softmin_tau). The result is the weighted mean.
Image render_depth_aggregated(const ScreenMesh& mesh, const RenderConfig& config,
                              std::span<const double> face_values);

/// A forward render that keeps the per-pixel fold so that any number of
/// backward passes can reuse it.
class SilhouetteRecording {
public:
    SilhouetteRecording(const ScreenMesh& mesh, const RenderConfig& config);

    const Image& image() const { return image_; }

    /// dL/d(screen x, y) per vertex given dL/d(pixel); row-major accumulation.
    std::vector<Vec2> backward(const Image& dloss_dpixel) const;

private:
    struct Fragment {
        int face;
        double v;        // occupancy
        double density;  // dF/dx at the fragment
        double acc;      // fold value before this fragment
    };

    RenderConfig config_;
    std::vector<Face> faces_;
    std::size_t vertex_count_ = 0;
    double arg_scale_ = 1.0;
    std::vector<detail::TriangleSetup> setups_;  // per face; only culled-in faces are filled
    std::vector<Fragment> fragments_;
    std::vector<std::size_t> pixel_begin_;      // width * height + 1 offsets into fragments_
    Image image_;
};

/// Vector-Jacobian product of render_silhouette: given dL/d(pixel), returns
/// dL/d(screen x, y) for every screen vertex. Accumulation order is row-major
/// over pixels, so the result is bitwise reproducible.
std::vector<Vec2> render_silhouette_backward(const ScreenMesh& mesh, const RenderConfig& config,
                                             const Image& dloss_dpixel);

/// Hash of every piecewise-smooth branch the render passes through: per pixel,
/// the culled face set, the CDF piece, the nearest inside edge and the
/// T-conorm piece. Two parameter settings with equal signatures lie on the
/// same smooth piece of the render (up to hash collisions).
std::uint64_t regime_signature(const ScreenMesh& mesh, const RenderConfig& config);

}  // namespace softsil
