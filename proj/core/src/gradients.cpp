#include "softsil/gradients.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "softsil/errors.hpp"
#include "softsil/random.hpp"

namespace softsil {
namespace {

constexpr double kRadToDeg = 180.0 / 3.14159265358979323846;

void require_differentiable(const RenderConfig& config) {
    if (!config.distribution.differentiable()) {
        throw NonDifferentiableError("distribution '" + config.distribution.to_string() +
                                     "' has no useful gradient; choose a smooth distribution");
    }
}

RenderConfig sized_for(const RenderConfig& config, const Camera& camera) {
    RenderConfig out = config;
    out.width = camera.width;
    out.height = camera.height;
    return out;
}

void check_target(const Image& target, int width, int height) {
    if (target.width != width || target.height != height) {
        throw ConfigError("target image is " + std::to_string(target.width) + "x" + std::to_string(target.height) +
                          ", render is " + std::to_string(width) + "x" + std::to_string(height));
    }
}

}  // namespace

std::string_view loss_name(LossKind kind) { return kind == LossKind::Iou ? "iou" : "mse"; }

LossKind parse_loss(std::string_view text) {
    if (text == "iou") return LossKind::Iou;
    if (text == "mse") return LossKind::Mse;
    throw ConfigError("unknown loss '" + std::string(text) + "' (expected iou or mse)");
}

LossResult image_loss(LossKind kind, const Image& rendered, const Image& target) {
    check_target(target, rendered.width, rendered.height);
    LossResult out;
    out.d_image = Image(rendered.width, rendered.height);
    const std::size_t n = rendered.values.size();
    if (n == 0) return out;

    if (kind == LossKind::Mse) {
        double sum = 0.0;
        const double scale = 2.0 / static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double diff = rendered.values[i] - target.values[i];
            sum += diff * diff;
            out.d_image.values[i] = scale * diff;
        }
        out.value = sum / static_cast<double>(n);
        return out;
    }

    double inter = 0.0;
    double uni = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        inter += std::min(rendered.values[i], target.values[i]);
        uni += std::max(rendered.values[i], target.values[i]);
    }
    if (uni == 0.0) return out;  // both empty: perfect match, flat loss
    out.value = 1.0 - inter / uni;
    // L = 1 - I/U, dL/dr = -(dI/dr * U - I * dU/dr) / U^2.
    const double di = -1.0 / uni;
    const double du = inter / (uni * uni);
    for (std::size_t i = 0; i < n; ++i) {
        out.d_image.values[i] = rendered.values[i] <= target.values[i] ? di : du;
    }
    return out;
}

ScreenGradient grad_loss_wrt_screen(const ScreenMesh& mesh, const RenderConfig& config, const Image& target,
                                    LossKind loss) {
    require_differentiable(config);
    check_target(target, config.width, config.height);
    const SilhouetteRecording recording(mesh, config);
    const LossResult lr = image_loss(loss, recording.image(), target);
    return {lr.value, recording.backward(lr.d_image)};
}

VertexGradient grad_loss_wrt_vertices(const Mesh& mesh, const Camera& camera, const RenderConfig& config,
                                      const Image& target, LossKind loss) {
    require_differentiable(config);
    std::vector<Jacobian23> jac;
    const ScreenMesh screen = transform_project_vertex_jacobians(mesh, camera, jac);
    const ScreenGradient sg = grad_loss_wrt_screen(screen, sized_for(config, camera), target, loss);
    VertexGradient out;
    out.loss = sg.loss;
    out.d_vertices.resize(mesh.vertices.size());
    for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
        const Vec2 g = sg.d_screen[i];
        out.d_vertices[i] = {g.x * jac[i][0][0] + g.y * jac[i][1][0], g.x * jac[i][0][1] + g.y * jac[i][1][1],
                             g.x * jac[i][0][2] + g.y * jac[i][1][2]};
    }
    return out;
}

CameraGradient grad_loss_wrt_camera(const Mesh& mesh, const Camera& camera, const RenderConfig& config,
                                    const Image& target, LossKind loss) {
    require_differentiable(config);
    std::vector<Jacobian23> jac;
    const ScreenMesh screen = transform_project_camera_jacobians(mesh, camera, jac);
    const ScreenGradient sg = grad_loss_wrt_screen(screen, sized_for(config, camera), target, loss);
    CameraGradient out;
    out.loss = sg.loss;
    for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
        const Vec2 g = sg.d_screen[i];
        for (int k = 0; k < 3; ++k) out.d_pose[k] += g.x * jac[i][0][k] + g.y * jac[i][1][k];
    }
    return out;
}

double evaluate_loss(const Mesh& mesh, const Camera& camera, const RenderConfig& config, const Image& target,
                     LossKind loss) {
    const RenderConfig sized = sized_for(config, camera);
    check_target(target, sized.width, sized.height);
    const Image rendered = render_silhouette(transform_project(mesh, camera), sized);
    return image_loss(loss, rendered, target).value;
}

GradientReport finite_difference_check(const GradientScene& scene, const RenderConfig& config,
                                       GradientParameters which, double h, std::uint64_t seed,
                                       std::size_t max_parameters) {
    if (!(h >= 1e-6 && h <= 1e-2)) throw ConfigError("finite-difference step must lie in [1e-6, 1e-2]");
    require_differentiable(config);
    const RenderConfig sized = sized_for(config, scene.camera);

    std::vector<double> analytic;
    if (which == GradientParameters::Vertices) {
        const VertexGradient g = grad_loss_wrt_vertices(scene.mesh, scene.camera, config, scene.target, scene.loss);
        for (const Vec3& d : g.d_vertices) analytic.insert(analytic.end(), {d.x, d.y, d.z});
    } else {
        const CameraGradient g = grad_loss_wrt_camera(scene.mesh, scene.camera, config, scene.target, scene.loss);
        analytic.assign(g.d_pose.begin(), g.d_pose.end());
    }

    // Partial Fisher-Yates selection of the parameters to probe.
    std::vector<std::size_t> order(analytic.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    const std::size_t count = std::min(max_parameters, order.size());
    Rng rng(seed);
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.below(order.size() - i));
        std::swap(order[i], order[j]);
    }
    order.resize(count);
    std::sort(order.begin(), order.end());

    // Evaluates the loss and the regime signature with parameter `index` offset by `delta`.
    const auto probe = [&](std::size_t index, double delta) {
        Mesh mesh = scene.mesh;
        Camera camera = scene.camera;
        if (which == GradientParameters::Vertices) {
            Vec3& v = mesh.vertices[index / 3];
            (index % 3 == 0 ? v.x : index % 3 == 1 ? v.y : v.z) += delta;
        } else if (index == 0) {
            camera.azimuth_deg += delta * kRadToDeg;
        } else if (index == 1) {
            camera.elevation_deg += delta * kRadToDeg;
        } else {
            camera.distance += delta;
        }
        const ScreenMesh screen = transform_project(mesh, camera);
        const Image rendered = render_silhouette(screen, sized);
        return std::pair{image_loss(scene.loss, rendered, scene.target).value, regime_signature(screen, sized)};
    };

    GradientReport report;
    report.h = h;
    for (std::size_t index : order) {
        const auto [plus, sig_plus] = probe(index, h);
        const auto [minus, sig_minus] = probe(index, -h);
        if (sig_plus != sig_minus) {
            report.excluded.push_back(index);
            continue;
        }
        const double numeric = (plus - minus) / (2.0 * h);
        const double a = analytic[index];
        const double rel = std::abs(a - numeric) / std::max({std::abs(a), std::abs(numeric), 1e-8});
        ++report.checked;
        if (report.checked == 1 || rel > report.max_rel_error) {
            report.max_rel_error = rel;
            report.argmax = index;
        }
    }
    return report;
}

}  // namespace softsil
