#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "softsil/dual.hpp"
#include "softsil/vec.hpp"

namespace softsil {

using Face = std::array<int, 3>;

/// Triangle mesh in world units. Faces are CCW when seen from outside.
struct Mesh {
    std::vector<Vec3> vertices;
    std::vector<Face> faces;

    /// Throws ConfigError on out-of-range indices or all-identical faces.
    void validate() const;
};

/// Look-at pinhole camera on a sphere of radius `distance` around the origin,
/// up = +Y. `fov_deg` is the angle spanned by the image width.
struct Camera {
    double azimuth_deg = 0.0;
    double elevation_deg = 0.0;
    double distance = 2.732;
    double fov_deg = 30.0;
    int width = 64;
    int height = 64;

    void validate() const;
    double focal_px() const;
};

struct ScreenVertex {
    double x = 0.0;  // pixels, increasing to the right
    double y = 0.0;  // pixels, increasing downward
    double z = 0.0;  // camera-space depth, positive in front
};

struct ScreenMesh {
    std::vector<ScreenVertex> vertices;
    std::vector<Face> faces;
};

/// World-to-camera rotation of a look-at pose; rows are right, up and forward.
using Rotation = std::array<Vec3, 3>;
Rotation look_at_rotation(double azimuth_rad, double elevation_rad);

/// Geodesic distance on SO(3) between two rotations, in radians.
double rotation_geodesic(const Rotation& a, const Rotation& b);

template <typename T>
struct Projected {
    T x, y, z;
};

/// Projects one world point for a pose given in radians. Templated so that dual
/// numbers can carry derivatives with respect to the point or to the pose.
/// The camera frame is written in closed form, so it stays orthonormal for
/// any elevation.
template <typename T>
Projected<T> project_point(const Vec3T<T>& p, const T& azimuth, const T& elevation, const T& distance,
                           double focal, double cx, double cy) {
    using std::cos;
    using std::sin;
    const T sa = sin(azimuth), ca = cos(azimuth);
    const T se = sin(elevation), ce = cos(elevation);
    const Vec3T<T> eye{distance * ce * sa, distance * se, distance * ce * ca};
    const Vec3T<T> right{ca, T(0.0), -sa};
    const Vec3T<T> up{-(sa * se), ce, -(ca * se)};
    const Vec3T<T> forward{-(ce * sa), -se, -(ce * ca)};
    const Vec3T<T> q = p - eye;
    const T xc = dot(q, right);
    const T yc = dot(q, up);
    const T zc = dot(q, forward);
    return {T(cx) + T(focal) * xc / zc, T(cy) - T(focal) * yc / zc, zc};
}

/// Perspective projection into pixel coordinates. Throws NumericError when a
/// vertex lies on or behind the camera plane.
ScreenMesh transform_project(const Mesh& mesh, const Camera& camera);

/// 2x3 Jacobian of a screen position (x, y) with respect to three parameters.
using Jacobian23 = std::array<std::array<double, 3>, 2>;

/// Projection plus, per vertex, d(x, y) / d(world x, y, z).
ScreenMesh transform_project_vertex_jacobians(const Mesh& mesh, const Camera& camera,
                                              std::vector<Jacobian23>& jacobians);

/// Projection plus, per vertex, d(x, y) / d(azimuth [rad], elevation [rad], distance).
ScreenMesh transform_project_camera_jacobians(const Mesh& mesh, const Camera& camera,
                                              std::vector<Jacobian23>& jacobians);

/// Signed Euclidean distance from `p` to the boundary of triangle (a, b, c):
/// positive strictly inside, negative strictly outside, zero on the boundary.
/// Either winding is accepted. Degenerate triangles have no interior, so the
/// result is never positive for them.
double signed_distance(Vec2 p, Vec2 a, Vec2 b, Vec2 c);

/// Signed distance with its gradient with respect to the three vertices.
/// When two edges are equidistant the lower edge index (ab, bc, ca) is used.
struct SignedDistanceGrad {
    double value = 0.0;
    std::array<Vec2, 3> d_vertex{};
};
SignedDistanceGrad signed_distance_grad(Vec2 p, Vec2 a, Vec2 b, Vec2 c);

/// Unit icosphere with 10 * 4^s + 2 vertices, 0 <= s <= 5.
Mesh icosphere(int subdivisions);

/// Axis-aligned cube [-h, h]^3 as 12 triangles.
Mesh cube(double half_extent = 1.0);

/// Recentres on the bounding-box centre and scales to a unit bounding sphere.
Mesh normalize_to_unit_sphere(const Mesh& mesh);

struct ObjFile {
    Mesh mesh;
    std::size_t ignored_records = 0;
};

/// Wavefront OBJ subset: `v x y z`, `f i j k ...` (fan-triangulated, 1-based or
/// negative relative indices, `i/t/n` forms accepted), `#` comments. Other
/// records are counted in `ignored_records`. Throws ParseError with a line number.
ObjFile read_obj(std::istream& in);
Mesh load_obj(const std::filesystem::path& path);
void write_obj(std::ostream& out, const Mesh& mesh);

}  // namespace softsil
