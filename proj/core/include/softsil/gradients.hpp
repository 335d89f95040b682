#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "softsil/geometry.hpp"
#include "softsil/image.hpp"
#include "softsil/rasterizer.hpp"

namespace softsil {

/// Silhouette losses. `iou` is 1 - sum(min(r, t)) / sum(max(r, t)); `mse` is
/// the mean squared pixel error.
enum class LossKind { Iou, Mse };

std::string_view loss_name(LossKind kind);
LossKind parse_loss(std::string_view text);

struct LossResult {
    double value = 0.0;
    Image d_image;  // dL / d(rendered pixel)
};

/// Where min(r, t) and max(r, t) tie, the derivative is routed through min.
LossResult image_loss(LossKind kind, const Image& rendered, const Image& target);

/// Loss and its gradient with respect to the screen positions of all vertices.
struct ScreenGradient {
    double loss = 0.0;
    std::vector<Vec2> d_screen;
};
ScreenGradient grad_loss_wrt_screen(const ScreenMesh& mesh, const RenderConfig& config, const Image& target,
                                    LossKind loss);

/// Renders through `camera` (its image size overrides the one in `config`).
struct VertexGradient {
    double loss = 0.0;
    std::vector<Vec3> d_vertices;
};
VertexGradient grad_loss_wrt_vertices(const Mesh& mesh, const Camera& camera, const RenderConfig& config,
                                      const Image& target, LossKind loss);

/// Gradient over (azimuth [rad], elevation [rad], distance).
struct CameraGradient {
    double loss = 0.0;
    std::array<double, 3> d_pose{};
};
CameraGradient grad_loss_wrt_camera(const Mesh& mesh, const Camera& camera, const RenderConfig& config,
                                    const Image& target, LossKind loss);

/// Loss only, same rendering path as the gradient functions.
double evaluate_loss(const Mesh& mesh, const Camera& camera, const RenderConfig& config, const Image& target,
                     LossKind loss);

enum class GradientParameters { Vertices, Camera };

struct GradientScene {
    Mesh mesh;
    Camera camera;
    Image target;
    LossKind loss = LossKind::Mse;
};

struct GradientReport {
    double max_rel_error = 0.0;
    std::size_t argmax = 0;  // flat parameter index (vertex * 3 + axis, or pose index)
    double h = 0.0;
    std::size_t checked = 0;
    std::vector<std::size_t> excluded;  // parameters whose stencil crosses a kink
};

/// Central differences on up to `max_parameters` randomly chosen parameters.
/// Relative error uses the denominator max(|analytic|, |numeric|, 1e-8).
/// A parameter is excluded when the render at x - h and x + h lies on
/// different smooth pieces (see regime_signature).
/// Throws ConfigError when h is outside [1e-6, 1e-2].
GradientReport finite_difference_check(const GradientScene& scene, const RenderConfig& config,
                                       GradientParameters which, double h, std::uint64_t seed,
                                       std::size_t max_parameters = 64);

}  // namespace softsil
