#include "softsil/geometry.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>

#include "softsil/errors.hpp"
#include "softsil/text.hpp"
#include "softsil/detail/triangle.hpp"

namespace softsil {
namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

// Depth below which a vertex is treated as lying on the camera plane.
constexpr double kNearPlane = 1e-9;

void check_depth(double z, std::size_t index) {
    if (!(z > kNearPlane)) {
        throw NumericError("singular projection: vertex " + std::to_string(index) +
                           " is at or behind the camera (depth " + format_real(z) + ")");
    }
}

}  // namespace

void Mesh::validate() const {
    const auto n = static_cast<long long>(vertices.size());
    for (std::size_t f = 0; f < faces.size(); ++f) {
        const Face& face = faces[f];
        for (int idx : face) {
            if (idx < 0 || idx >= n) {
                throw ConfigError("face " + std::to_string(f) + " references vertex " + std::to_string(idx) +
                                  " but the mesh has " + std::to_string(n) + " vertices");
            }
        }
        if (face[0] == face[1] && face[1] == face[2]) {
            throw ConfigError("face " + std::to_string(f) + " has three identical indices");
        }
    }
    for (std::size_t v = 0; v < vertices.size(); ++v) {
        const Vec3& p = vertices[v];
        if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z)) {
            throw ConfigError("vertex " + std::to_string(v) + " is not finite");
        }
    }
}

void Camera::validate() const {
    if (!(distance > 0.0) || !std::isfinite(distance)) throw ConfigError("camera distance must be positive");
    if (!(fov_deg > 0.0 && fov_deg < 180.0)) throw ConfigError("camera fov must lie in (0, 180) degrees");
    if (width < 1 || height < 1) throw ConfigError("image size must be at least 1x1");
    if (!std::isfinite(azimuth_deg) || !std::isfinite(elevation_deg)) {
        throw ConfigError("camera angles must be finite");
    }
}

double Camera::focal_px() const { return 0.5 * width / std::tan(0.5 * fov_deg * kDegToRad); }

Rotation look_at_rotation(double azimuth_rad, double elevation_rad) {
    const double sa = std::sin(azimuth_rad), ca = std::cos(azimuth_rad);
    const double se = std::sin(elevation_rad), ce = std::cos(elevation_rad);
    return {Vec3{ca, 0.0, -sa}, Vec3{-sa * se, ce, -ca * se}, Vec3{-ce * sa, -se, -ce * ca}};
}

double rotation_geodesic(const Rotation& a, const Rotation& b) {
    // trace(A B^T) = sum of row-wise dot products.
    const double trace = dot(a[0], b[0]) + dot(a[1], b[1]) + dot(a[2], b[2]);
    return std::acos(std::clamp(0.5 * (trace - 1.0), -1.0, 1.0));
}

ScreenMesh transform_project(const Mesh& mesh, const Camera& camera) {
    camera.validate();
    if (mesh.vertices.empty()) throw ConfigError("cannot project an empty mesh");
    const double az = camera.azimuth_deg * kDegToRad;
    const double el = camera.elevation_deg * kDegToRad;
    const double focal = camera.focal_px();
    const double cx = 0.5 * camera.width;
    const double cy = 0.5 * camera.height;

    ScreenMesh out;
    out.faces = mesh.faces;
    out.vertices.reserve(mesh.vertices.size());
    for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
        const auto pr = project_point<double>(mesh.vertices[i], az, el, camera.distance, focal, cx, cy);
        check_depth(pr.z, i);
        out.vertices.push_back({pr.x, pr.y, pr.z});
    }
    return out;
}

ScreenMesh transform_project_vertex_jacobians(const Mesh& mesh, const Camera& camera,
                                              std::vector<Jacobian23>& jacobians) {
    camera.validate();
    if (mesh.vertices.empty()) throw ConfigError("cannot project an empty mesh");
    using D = Dual<3>;
    const D az(camera.azimuth_deg * kDegToRad);
    const D el(camera.elevation_deg * kDegToRad);
    const D dist(camera.distance);
    const double focal = camera.focal_px();
    const double cx = 0.5 * camera.width;
    const double cy = 0.5 * camera.height;

    ScreenMesh out;
    out.faces = mesh.faces;
    out.vertices.reserve(mesh.vertices.size());
    jacobians.assign(mesh.vertices.size(), Jacobian23{});
    for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
        const Vec3& v = mesh.vertices[i];
        const Vec3T<D> p{D(v.x, 0), D(v.y, 1), D(v.z, 2)};
        const auto pr = project_point<D>(p, az, el, dist, focal, cx, cy);
        check_depth(pr.z.v, i);
        out.vertices.push_back({pr.x.v, pr.y.v, pr.z.v});
        jacobians[i] = {pr.x.d, pr.y.d};
    }
    return out;
}

ScreenMesh transform_project_camera_jacobians(const Mesh& mesh, const Camera& camera,
                                              std::vector<Jacobian23>& jacobians) {
    camera.validate();
    if (mesh.vertices.empty()) throw ConfigError("cannot project an empty mesh");
    using D = Dual<3>;
    const D az(camera.azimuth_deg * kDegToRad, 0);
    const D el(camera.elevation_deg * kDegToRad, 1);
    const D dist(camera.distance, 2);
    const double focal = camera.focal_px();
    const double cx = 0.5 * camera.width;
    const double cy = 0.5 * camera.height;

    ScreenMesh out;
    out.faces = mesh.faces;
    out.vertices.reserve(mesh.vertices.size());
    jacobians.assign(mesh.vertices.size(), Jacobian23{});
    for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
        const Vec3& v = mesh.vertices[i];
        const Vec3T<D> p{D(v.x), D(v.y), D(v.z)};
        const auto pr = project_point<D>(p, az, el, dist, focal, cx, cy);
        check_depth(pr.z.v, i);
        out.vertices.push_back({pr.x.v, pr.y.v, pr.z.v});
        jacobians[i] = {pr.x.d, pr.y.d};
    }
    return out;
}

double signed_distance(Vec2 p, Vec2 a, Vec2 b, Vec2 c) {
    return detail::signed_distance(detail::TriangleSetup(a, b, c), p);
}

SignedDistanceGrad signed_distance_grad(Vec2 p, Vec2 a, Vec2 b, Vec2 c) {
    SignedDistanceGrad out;
    out.value = detail::signed_distance_grad(detail::TriangleSetup(a, b, c), p, out.d_vertex);
    return out;
}

Mesh icosphere(int subdivisions) {
    if (subdivisions < 0 || subdivisions > 5) {
        throw ConfigError("icosphere subdivisions must lie in [0, 5], got " + std::to_string(subdivisions));
    }
    const double t = (1.0 + std::sqrt(5.0)) / 2.0;
    Mesh mesh;
    mesh.vertices = {{-1, t, 0}, {1, t, 0},  {-1, -t, 0}, {1, -t, 0}, {0, -1, t},  {0, 1, t},
                     {0, -1, -t}, {0, 1, -t}, {t, 0, -1},  {t, 0, 1},  {-t, 0, -1}, {-t, 0, 1}};
    mesh.faces = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11}, {1, 5, 9},  {5, 11, 4},
                  {11, 10, 2}, {10, 7, 6}, {7, 1, 8},  {3, 9, 4},  {3, 4, 2},   {3, 2, 6},  {3, 6, 8},
                  {3, 8, 9},  {4, 9, 5},  {2, 4, 11}, {6, 2, 10}, {8, 6, 7},   {9, 8, 1}};
    for (auto& v : mesh.vertices) v = normalized(v);

    for (int level = 0; level < subdivisions; ++level) {
        std::map<std::pair<int, int>, int> midpoint;
        auto mid = [&](int i, int j) {
            const auto key = std::minmax(i, j);
            if (auto it = midpoint.find(key); it != midpoint.end()) return it->second;
            const Vec3 m = normalized((mesh.vertices[i] + mesh.vertices[j]) * 0.5);
            mesh.vertices.push_back(m);
            const int idx = static_cast<int>(mesh.vertices.size()) - 1;
            midpoint.emplace(key, idx);
            return idx;
        };
        std::vector<Face> next;
        next.reserve(mesh.faces.size() * 4);
        for (const Face& f : mesh.faces) {
            const int ab = mid(f[0], f[1]);
            const int bc = mid(f[1], f[2]);
            const int ca = mid(f[2], f[0]);
            next.push_back({f[0], ab, ca});
            next.push_back({f[1], bc, ab});
            next.push_back({f[2], ca, bc});
            next.push_back({ab, bc, ca});
        }
        mesh.faces = std::move(next);
    }
    return mesh;
}

Mesh cube(double half_extent) {
    const double h = half_extent;
    Mesh mesh;
    mesh.vertices = {{-h, -h, -h}, {h, -h, -h}, {h, h, -h}, {-h, h, -h},
                     {-h, -h, h},  {h, -h, h},  {h, h, h},  {-h, h, h}};
    mesh.faces = {{0, 3, 2}, {0, 2, 1}, {4, 5, 6}, {4, 6, 7}, {0, 1, 5}, {0, 5, 4},
                  {3, 7, 6}, {3, 6, 2}, {0, 4, 7}, {0, 7, 3}, {1, 2, 6}, {1, 6, 5}};
    return mesh;
}

Mesh normalize_to_unit_sphere(const Mesh& mesh) {
    if (mesh.vertices.empty()) throw ConfigError("cannot normalize an empty mesh");
    Vec3 lo = mesh.vertices.front();
    Vec3 hi = lo;
    for (const Vec3& v : mesh.vertices) {
        lo = {std::min(lo.x, v.x), std::min(lo.y, v.y), std::min(lo.z, v.z)};
        hi = {std::max(hi.x, v.x), std::max(hi.y, v.y), std::max(hi.z, v.z)};
    }
    const Vec3 centre = (lo + hi) * 0.5;
    double radius = 0.0;
    for (const Vec3& v : mesh.vertices) radius = std::max(radius, norm(v - centre));
    if (!(radius > 0.0)) throw ConfigError("cannot normalize a mesh with zero extent");
    Mesh out = mesh;
    for (Vec3& v : out.vertices) v = (v - centre) * (1.0 / radius);
    return out;
}

namespace {

std::vector<std::string_view> tokens(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

}  // namespace

ObjFile read_obj(std::istream& in) {
    ObjFile out;
    struct PendingFace {
        std::array<long long, 3> idx;
        std::size_t line;
    };
    std::vector<PendingFace> pending;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view(line);
        if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
        const auto tok = tokens(view);
        if (tok.empty()) continue;
        if (tok[0] == "v") {
            if (tok.size() < 4 || tok.size() > 5) throw ParseError(line_no, "vertex record needs 3 coordinates");
            double xyz[3];
            for (int k = 0; k < 3; ++k) {
                const auto value = parse_real(tok[k + 1]);
                if (!value) throw ParseError(line_no, "cannot parse coordinate '" + std::string(tok[k + 1]) + "'");
                if (!std::isfinite(*value)) throw ParseError(line_no, "non-finite coordinate");
                xyz[k] = *value;
            }
            out.mesh.vertices.push_back({xyz[0], xyz[1], xyz[2]});
        } else if (tok[0] == "f") {
            if (tok.size() < 4) throw ParseError(line_no, "face record needs at least 3 vertices");
            std::vector<long long> idx;
            for (std::size_t k = 1; k < tok.size(); ++k) {
                const std::string_view item = tok[k].substr(0, tok[k].find('/'));
                long long value = 0;
                const auto res = std::from_chars(item.data(), item.data() + item.size(), value);
                if (res.ec != std::errc{} || res.ptr != item.data() + item.size() || value == 0) {
                    throw ParseError(line_no, "cannot parse face index '" + std::string(tok[k]) + "'");
                }
                // Negative indices are relative to the vertices read so far.
                idx.push_back(value > 0 ? value - 1 : static_cast<long long>(out.mesh.vertices.size()) + value);
            }
            for (std::size_t k = 1; k + 1 < idx.size(); ++k) {
                pending.push_back({{idx[0], idx[k], idx[k + 1]}, line_no});
            }
        } else {
            ++out.ignored_records;
        }
    }
    const auto n = static_cast<long long>(out.mesh.vertices.size());
    out.mesh.faces.reserve(pending.size());
    for (const auto& pf : pending) {
        for (long long i : pf.idx) {
            if (i < 0 || i >= n) {
                throw ParseError(pf.line, "face index " + std::to_string(i + 1) + " out of range (" +
                                              std::to_string(n) + " vertices)");
            }
        }
        if (pf.idx[0] == pf.idx[1] && pf.idx[1] == pf.idx[2]) {
            throw ParseError(pf.line, "degenerate face with three identical indices");
        }
        out.mesh.faces.push_back({static_cast<int>(pf.idx[0]), static_cast<int>(pf.idx[1]),
                                  static_cast<int>(pf.idx[2])});
    }
    return out;
}

Mesh load_obj(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open OBJ file '" + path.string() + "'");
    return read_obj(in).mesh;
}

void write_obj(std::ostream& out, const Mesh& mesh) {
    for (const Vec3& v : mesh.vertices) {
        out << "v " << format_real(v.x) << ' ' << format_real(v.y) << ' ' << format_real(v.z) << '\n';
    }
    for (const Face& f : mesh.faces) out << "f " << f[0] + 1 << ' ' << f[1] + 1 << ' ' << f[2] + 1 << '\n';
}

}  // namespace softsil
