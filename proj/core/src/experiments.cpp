#include "softsil/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "softsil/errors.hpp"
#include "softsil/optimizer.hpp"
#include "softsil/random.hpp"
#include "softsil/text.hpp"

namespace softsil {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kDegToRad = kPi / 180.0;
constexpr double kRadToDeg = 180.0 / kPi;

std::string join_reals(const std::vector<double>& values) {
    std::string out;
    for (double v : values) {
        if (!out.empty()) out += '/';
        out += format_real(v);
    }
    return out;
}

RenderConfig normalized_renderer(const RenderConfig& renderer, int resolution, double tau) {
    RenderConfig out = renderer;
    out.width = resolution;
    out.height = resolution;
    out.distance_scale = 2.0 / resolution;
    out.tau = tau;
    return out;
}

// Uniform Laplacian energy w * sum_i |v_i - mean of neighbours|^2 and its gradient.
class LaplacianTerm {
public:
    explicit LaplacianTerm(const Mesh& mesh) : neighbours_(mesh.vertices.size()) {
        std::vector<std::set<int>> adj(mesh.vertices.size());
        for (const Face& f : mesh.faces) {
            for (int c = 0; c < 3; ++c) {
                adj[f[c]].insert(f[(c + 1) % 3]);
                adj[f[c]].insert(f[(c + 2) % 3]);
            }
        }
        for (std::size_t i = 0; i < adj.size(); ++i) neighbours_[i].assign(adj[i].begin(), adj[i].end());
    }

    double accumulate(const std::vector<Vec3>& v, double weight, std::vector<Vec3>& grad) const {
        std::vector<Vec3> delta(v.size());
        double energy = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (neighbours_[i].empty()) continue;
            Vec3 mean{};
            for (int j : neighbours_[i]) mean += v[j];
            delta[i] = v[i] - mean * (1.0 / static_cast<double>(neighbours_[i].size()));
            energy += dot(delta[i], delta[i]);
        }
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (neighbours_[i].empty()) continue;
            grad[i] += delta[i] * (2.0 * weight);
            const double share = -2.0 * weight / static_cast<double>(neighbours_[i].size());
            for (int j : neighbours_[i]) grad[j] += delta[i] * share;
        }
        return weight * energy;
    }

private:
    std::vector<std::vector<int>> neighbours_;
};

std::string shape_fingerprint(const ShapeTaskConfig& cfg) {
    std::ostringstream fp;
    fp << "task=shape;target=" << cfg.target_name << ";mesh=unit-sphere;res=" << cfg.resolution
       << ";pixel=center+0.5;tau_units=2/width;views=" << cfg.n_azimuths
       << ";elev=" << join_reals(cfg.elevations_deg) << ";init=icosphere" << cfg.icosphere_subdivisions << "*"
       << format_real(cfg.init_radius) << ";cam=" << format_real(cfg.camera_distance) << "@"
       << format_real(cfg.fov_deg) << ";adam=0.5/0.95/1e-08;laplacian=" << format_real(cfg.laplacian_weight);
    return fp.str();
}

std::string pose_fingerprint(const PoseTaskConfig& cfg) {
    std::ostringstream fp;
    fp << "task=pose;target=" << cfg.target_name << ";mesh=unit-sphere;res=" << cfg.resolution
       << ";pixel=center+0.5;tau_units=2/width;trials=" << cfg.n_trials << ";init_deg="
       << format_real(cfg.init_angle_min_deg) << "-" << format_real(cfg.init_angle_max_deg)
       << ";axis=perp-view;distance=" << format_real(cfg.distance_min) << "-" << format_real(cfg.distance_max)
       << ";fov=" << format_real(cfg.fov_min_deg) << "-" << format_real(cfg.fov_max_deg)
       << ";elev=+-" << format_real(cfg.elevation_limit_deg)
       << ";success_deg=" << format_real(cfg.success_threshold_deg) << ";params=deg,deg,dist;adam=0.5/0.95/1e-08";
    return fp.str();
}

double shape_run_one_elevation(const ShapeTaskConfig& cfg, const Mesh& target, const RenderConfig& rc, double lr,
                               double elevation, std::vector<double>& trace) {
    std::vector<Camera> cameras;
    std::vector<Image> targets;
    for (int k = 0; k < cfg.n_azimuths; ++k) {
        Camera cam;
        cam.azimuth_deg = 360.0 * k / cfg.n_azimuths;
        cam.elevation_deg = elevation;
        cam.distance = cfg.camera_distance;
        cam.fov_deg = cfg.fov_deg;
        cam.width = cam.height = cfg.resolution;
        targets.push_back(hard_render(transform_project(target, cam), cam.width, cam.height));
        cameras.push_back(cam);
    }

    Mesh mesh = icosphere(cfg.icosphere_subdivisions);
    for (Vec3& v : mesh.vertices) v = v * cfg.init_radius;
    const std::optional<LaplacianTerm> laplacian =
        cfg.laplacian_weight > 0.0 ? std::optional<LaplacianTerm>(LaplacianTerm(mesh)) : std::nullopt;

    std::vector<double> flat;
    for (const Vec3& v : mesh.vertices) flat.insert(flat.end(), {v.x, v.y, v.z});
    AdamState adam = AdamState::create(std::move(flat), lr);

    const double inv_views = 1.0 / cfg.n_azimuths;
    const auto evaluate = [&](bool with_grad, std::vector<double>& grad_flat) {
        for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
            mesh.vertices[i] = {adam.params[3 * i], adam.params[3 * i + 1], adam.params[3 * i + 2]};
        }
        double loss = 0.0;
        std::vector<Vec3> grad(mesh.vertices.size());
        for (std::size_t k = 0; k < cameras.size(); ++k) {
            if (with_grad) {
                const VertexGradient g = grad_loss_wrt_vertices(mesh, cameras[k], rc, targets[k], cfg.loss);
                loss += g.loss * inv_views;
                for (std::size_t i = 0; i < grad.size(); ++i) grad[i] += g.d_vertices[i] * inv_views;
            } else {
                loss += evaluate_loss(mesh, cameras[k], rc, targets[k], cfg.loss) * inv_views;
            }
        }
        if (laplacian) loss += laplacian->accumulate(mesh.vertices, cfg.laplacian_weight, grad);
        if (with_grad) {
            grad_flat.clear();
            for (const Vec3& g : grad) grad_flat.insert(grad_flat.end(), {g.x, g.y, g.z});
        }
        return loss;
    };

    std::vector<double> grad_flat;
    for (int step = 0; step < cfg.steps; ++step) {
        const double loss = evaluate(true, grad_flat);
        trace.push_back(loss);
        if (!std::isfinite(loss)) throw NumericError("non-finite loss at step " + std::to_string(step));
        adam_step(adam, grad_flat);
    }
    const double final_loss = evaluate(false, grad_flat);
    if (!std::isfinite(final_loss)) throw NumericError("non-finite final loss");
    return final_loss;
}

Vec3 eye_direction(double az_rad, double el_rad) {
    return {std::cos(el_rad) * std::sin(az_rad), std::sin(el_rad), std::cos(el_rad) * std::cos(az_rad)};
}

double pose_error_deg(const Camera& a, const Camera& b) {
    return rotation_geodesic(look_at_rotation(a.azimuth_deg * kDegToRad, a.elevation_deg * kDegToRad),
                             look_at_rotation(b.azimuth_deg * kDegToRad, b.elevation_deg * kDegToRad)) *
           kRadToDeg;
}

// Final orientation error of one trial, +inf when the camera left the valid region.
double pose_run_trial(const PoseTaskConfig& cfg, const Mesh& mesh, const RenderConfig& base, double lr,
                      const PoseTrial& trial) {
    const Image reference = hard_render(transform_project(mesh, trial.truth), cfg.resolution, cfg.resolution);
    Schedule schedule;
    schedule.kind = Schedule::Kind::LogInterpolate;
    schedule.start = cfg.sigma_start;
    schedule.end = cfg.sigma_end;
    schedule.total_steps = std::max(1, cfg.steps - 1);

    // Angles are optimized in degrees, so lr is roughly a step size in degrees.
    AdamState adam = AdamState::create({trial.init.azimuth_deg, trial.init.elevation_deg, trial.init.distance}, lr);
    Camera cam = trial.init;
    const auto sync = [&] {
        cam.azimuth_deg = adam.params[0];
        cam.elevation_deg = adam.params[1];
        cam.distance = adam.params[2];
    };
    std::array<double, 3> grad{};
    try {
        for (int step = 0; step < cfg.steps; ++step) {
            const RenderConfig rc = normalized_renderer(base, cfg.resolution, schedule_value(schedule, step));
            const CameraGradient g = grad_loss_wrt_camera(mesh, cam, rc, reference, cfg.loss);
            if (!std::isfinite(g.loss)) return std::numeric_limits<double>::infinity();
            grad = {g.d_pose[0] * kDegToRad, g.d_pose[1] * kDegToRad, g.d_pose[2]};
            adam_step(adam, grad);
            sync();
            if (!(cam.distance > 0.0)) return std::numeric_limits<double>::infinity();
        }
    } catch (const NumericError&) {
        return std::numeric_limits<double>::infinity();
    }
    return pose_error_deg(cam, trial.truth);
}

template <typename Task>
void run_parallel(std::size_t count, int jobs, const Task& task) {
    const int workers = static_cast<int>(std::min<std::size_t>(std::max(1, jobs), count));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) task(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> threads;
    std::exception_ptr error;
    std::mutex error_mutex;
    for (int w = 0; w < workers; ++w) {
        threads.emplace_back([&] {
            for (std::size_t i; (i = next.fetch_add(1)) < count;) {
                try {
                    task(i);
                } catch (...) {
                    const std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    }
    for (auto& t : threads) t.join();
    if (error) std::rethrow_exception(error);
}

bool better(double a, double b, bool higher_is_better) {
    if (std::isnan(b)) return !std::isnan(a);
    if (std::isnan(a)) return false;
    return higher_is_better ? a > b : a < b;
}

std::vector<GridCell> summarize(const std::vector<RunRecord>& records, bool higher_is_better) {
    std::vector<GridCell> cells;
    std::size_t begin = 0;
    while (begin < records.size()) {
        std::size_t end = begin;
        while (end < records.size() && records[end].distribution == records[begin].distribution &&
               records[end].tconorm == records[begin].tconorm) {
            ++end;
        }
        GridCell cell;
        cell.distribution = records[begin].distribution;
        cell.tconorm = records[begin].tconorm;
        cell.metric = std::numeric_limits<double>::quiet_NaN();
        std::vector<std::string> taus;
        for (std::size_t i = begin; i < end; ++i) {
            if (taus.empty() || taus.back() != records[i].tau) taus.push_back(records[i].tau);
            if (i == begin || better(records[i].metric, cell.metric, higher_is_better)) {
                cell.metric = records[i].metric;
                cell.best_tau = records[i].tau;
                cell.best_lr = records[i].lr;
            }
        }
        cell.tau_at_extreme = taus.size() > 2 && (cell.best_tau == taus.front() || cell.best_tau == taus.back());
        cells.push_back(cell);
        begin = end;
    }
    return cells;
}

bool record_less(const RunRecord& a, const RunRecord& b) {
    if (a.distribution != b.distribution) return a.distribution < b.distribution;
    if (a.tconorm != b.tconorm) return a.tconorm < b.tconorm;
    const auto ta = parse_real(a.tau);
    const auto tb = parse_real(b.tau);
    if (ta && tb && *ta != *tb) return *ta > *tb;  // descending temperature, as in the grid definition
    if (a.tau != b.tau) return a.tau < b.tau;
    return a.lr > b.lr;
}

template <typename Runner>
GridResult run_grid(const GridSpec& grid, const std::vector<double>& taus, const std::vector<double>& lrs,
                    const GridOptions& options, bool higher_is_better, const Runner& runner) {
    struct Job {
        RenderConfig renderer;
        double lr;
    };
    std::vector<Job> jobs;
    for (const auto& d : grid.distributions) {
        for (const auto& t : grid.tconorms) {
            for (double tau : taus) {
                for (double lr : lrs) {
                    RenderConfig rc;
                    rc.distribution = d;
                    rc.tconorm = t;
                    rc.tau = tau;
                    rc.validate();
                    if (!d.differentiable()) {
                        throw NonDifferentiableError("grid contains non-differentiable distribution " + d.to_string());
                    }
                    jobs.push_back({rc, lr});
                }
            }
        }
    }
    GridResult result;
    result.higher_is_better = higher_is_better;
    result.records.resize(jobs.size());
    run_parallel(jobs.size(), options.jobs, [&](std::size_t i) {
        const auto t0 = std::chrono::steady_clock::now();
        RunRecord rec = runner(jobs[i].renderer, jobs[i].lr);
        if (options.timing) {
            rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        }
        result.records[i] = std::move(rec);
    });
    std::stable_sort(result.records.begin(), result.records.end(), record_less);
    result.cells = summarize(result.records, higher_is_better);
    return result;
}

std::string metric_text(double v) { return std::isnan(v) ? "nan" : format_real(v); }

}  // namespace

ShapeTaskConfig::ShapeTaskConfig() : target(cube()) {
    lr_grid = {std::pow(10.0, -1.25), std::pow(10.0, -1.5), std::pow(10.0, -1.75)};
    for (int n = 0; n <= 80; ++n) tau_grid.push_back(std::pow(10.0, -0.1 * n));
}

ShapeTaskConfig ShapeTaskConfig::desk() {
    ShapeTaskConfig cfg;
    cfg.n_azimuths = 8;
    cfg.elevations_deg = {30.0};
    cfg.tau_grid = {std::pow(10.0, -2.0), std::pow(10.0, -2.5), std::pow(10.0, -3.0), std::pow(10.0, -3.5)};
    return cfg;
}

void ShapeTaskConfig::validate() const {
    target.validate();
    if (target.faces.empty()) throw ConfigError("shape target mesh has no faces");
    if (n_azimuths < 1) throw ConfigError("need at least one azimuth");
    if (elevations_deg.empty() || lr_grid.empty() || tau_grid.empty()) throw ConfigError("grids must be non-empty");
    if (steps < 1) throw ConfigError("steps must be at least 1");
    if (resolution < 1) throw ConfigError("resolution must be at least 1");
    if (icosphere_subdivisions < 0 || icosphere_subdivisions > 5) throw ConfigError("icosphere subdivisions in [0, 5]");
    if (!(init_radius > 0.0) || !(camera_distance > 1.0)) throw ConfigError("invalid initial radius or distance");
    if (!(fov_deg > 0.0 && fov_deg < 180.0)) throw ConfigError("fov must lie in (0, 180)");
    if (!(laplacian_weight >= 0.0)) throw ConfigError("laplacian weight must be nonnegative");
    for (double v : lr_grid) {
        if (!(v > 0.0)) throw ConfigError("learning rates must be positive");
    }
    for (double v : tau_grid) {
        if (!(v > 0.0)) throw ConfigError("temperatures must be positive");
    }
}

PoseTaskConfig PoseTaskConfig::desk() { return PoseTaskConfig(); }

void PoseTaskConfig::validate() const {
    target.validate();
    if (target.faces.empty()) throw ConfigError("pose target mesh has no faces");
    if (n_trials < 1 || steps < 1) throw ConfigError("trials and steps must be at least 1");
    if (!(init_angle_min_deg >= 0.0 && init_angle_min_deg <= init_angle_max_deg && init_angle_max_deg <= 180.0)) {
        throw ConfigError("initial angle range must satisfy 0 <= min <= max <= 180");
    }
    if (lr_grid.empty()) throw ConfigError("learning-rate grid must be non-empty");
    for (double v : lr_grid) {
        if (!(v > 0.0)) throw ConfigError("learning rates must be positive");
    }
    if (!(sigma_start > 0.0 && sigma_end > 0.0)) throw ConfigError("sigma schedule endpoints must be positive");
    if (!(success_threshold_deg > 0.0)) throw ConfigError("success threshold must be positive");
    if (!(distance_min > 1.0 && distance_min <= distance_max)) {
        throw ConfigError("distance range must satisfy 1 < min <= max (mesh radius is 1)");
    }
    if (!(fov_min_deg > 0.0 && fov_min_deg <= fov_max_deg && fov_max_deg < 180.0)) {
        throw ConfigError("fov range must lie in (0, 180)");
    }
    if (!(elevation_limit_deg >= 0.0 && elevation_limit_deg < 90.0)) {
        throw ConfigError("elevation limit must lie in [0, 90)");
    }
    if (resolution < 1) throw ConfigError("resolution must be at least 1");
}

bool RunRecord::failed() const { return std::isnan(metric); }

std::string RunRecord::csv_row() const {
    std::string row = csv_field(distribution) + "," + csv_field(tconorm) + "," + csv_field(tau) + "," +
                      format_real(lr) + "," + csv_field(loss) + "," + std::to_string(seed) + "," + metric_text(metric) +
                      "," + std::to_string(steps) + ",";
    if (wall_ms) row += format_real(*wall_ms);
    return row + "," + csv_field(fingerprint);
}

RunRecord RunRecord::parse_csv_row(const std::string& row) {
    const auto fields = split_csv_record(row);
    if (fields.size() != 10) throw ParseError(1, "expected 10 CSV fields, got " + std::to_string(fields.size()));
    const auto real = [](const std::string& text) {
        if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
        const auto v = parse_real(text);
        if (!v) throw ParseError(1, "invalid number '" + text + "'");
        return *v;
    };
    RunRecord r;
    r.distribution = fields[0];
    r.tconorm = fields[1];
    r.tau = fields[2];
    r.lr = real(fields[3]);
    r.loss = fields[4];
    try {
        r.seed = std::stoull(fields[5]);
        r.steps = std::stoi(fields[7]);
    } catch (const std::exception&) {
        throw ParseError(1, "invalid integer field");
    }
    r.metric = real(fields[6]);
    if (!fields[8].empty()) r.wall_ms = real(fields[8]);
    r.fingerprint = fields[9];
    return r;
}

RunRecord run_shape_optimization(const ShapeTaskConfig& cfg, const RenderConfig& renderer, double lr) {
    cfg.validate();
    if (!(lr > 0.0)) throw ConfigError("learning rate must be positive");
    const RenderConfig rc = normalized_renderer(renderer, cfg.resolution, renderer.tau);
    rc.validate();
    if (!rc.distribution.differentiable()) {
        throw NonDifferentiableError("shape optimization needs a differentiable distribution, got " +
                                     rc.distribution.to_string());
    }
    const Mesh target = normalize_to_unit_sphere(cfg.target);

    RunRecord rec;
    rec.distribution = rc.distribution.to_string();
    rec.tconorm = rc.tconorm.to_string();
    rec.tau = format_real(rc.tau);
    rec.lr = lr;
    rec.loss = std::string(loss_name(cfg.loss));
    rec.seed = cfg.seed;
    rec.steps = cfg.steps;
    rec.fingerprint = shape_fingerprint(cfg);

    double total = 0.0;
    try {
        for (double elevation : cfg.elevations_deg) {
            total += shape_run_one_elevation(cfg, target, rc, lr, elevation, rec.trace);
        }
        rec.metric = total / static_cast<double>(cfg.elevations_deg.size());
        rec.fingerprint += ";status=ok";
    } catch (const NumericError&) {
        rec.metric = std::numeric_limits<double>::quiet_NaN();
        rec.fingerprint += ";status=diverged";
    }
    return rec;
}

std::vector<PoseTrial> sample_pose_trials(const PoseTaskConfig& cfg) {
    cfg.validate();
    Rng rng(cfg.seed);
    std::vector<PoseTrial> trials;
    for (int t = 0; t < cfg.n_trials; ++t) {
        PoseTrial trial;
        Camera& truth = trial.truth;
        truth.azimuth_deg = rng.uniform(0.0, 360.0);
        truth.elevation_deg = rng.uniform(-cfg.elevation_limit_deg, cfg.elevation_limit_deg);
        truth.distance = rng.uniform(cfg.distance_min, cfg.distance_max);
        truth.fov_deg = rng.uniform(cfg.fov_min_deg, cfg.fov_max_deg);
        truth.width = truth.height = cfg.resolution;

        const double angle = rng.uniform(cfg.init_angle_min_deg, cfg.init_angle_max_deg) * kDegToRad;
        const double phi = rng.uniform(0.0, 2.0 * kPi);
        const double init_distance = rng.uniform(cfg.distance_min, cfg.distance_max);

        // Rotate the eye direction by `angle` about an axis perpendicular to it.
        const Vec3 e = eye_direction(truth.azimuth_deg * kDegToRad, truth.elevation_deg * kDegToRad);
        const Vec3 u = normalized(cross(e, Vec3{0.0, 1.0, 0.0}));
        const Vec3 w = cross(e, u);
        const Vec3 axis = u * std::cos(phi) + w * std::sin(phi);
        const Vec3 moved = e * std::cos(angle) + cross(axis, e) * std::sin(angle);

        trial.init = truth;
        trial.init.elevation_deg = std::asin(std::clamp(moved.y, -1.0, 1.0)) * kRadToDeg;
        trial.init.azimuth_deg = std::atan2(moved.x, moved.z) * kRadToDeg;
        if (cfg.randomize_init_distance) trial.init.distance = init_distance;
        trial.init_error_deg = pose_error_deg(trial.init, truth);
        trials.push_back(trial);
    }
    return trials;
}

RunRecord run_pose_optimization(const PoseTaskConfig& cfg, const RenderConfig& renderer, double lr) {
    cfg.validate();
    if (!(lr > 0.0)) throw ConfigError("learning rate must be positive");
    RenderConfig base = normalized_renderer(renderer, cfg.resolution, cfg.sigma_start);
    base.validate();
    if (!base.distribution.differentiable()) {
        throw NonDifferentiableError("pose optimization needs a differentiable distribution, got " +
                                     base.distribution.to_string());
    }
    const Mesh mesh = normalize_to_unit_sphere(cfg.target);
    const std::vector<PoseTrial> trials = sample_pose_trials(cfg);

    RunRecord rec;
    rec.distribution = base.distribution.to_string();
    rec.tconorm = base.tconorm.to_string();
    rec.tau = "log:" + format_real(cfg.sigma_start) + ":" + format_real(cfg.sigma_end);
    rec.lr = lr;
    rec.loss = std::string(loss_name(cfg.loss));
    rec.seed = cfg.seed;
    rec.steps = cfg.steps;
    rec.fingerprint = pose_fingerprint(cfg) + ";status=ok";

    int successes = 0;
    for (const PoseTrial& trial : trials) {
        const double error = pose_run_trial(cfg, mesh, base, lr, trial);
        rec.trace.push_back(error);
        if (error <= cfg.success_threshold_deg) ++successes;
    }
    rec.metric = static_cast<double>(successes) / static_cast<double>(trials.size());
    return rec;
}

GridResult grid_search(const ShapeTaskConfig& cfg, const GridSpec& grid, const GridOptions& options) {
    cfg.validate();
    return run_grid(grid, cfg.tau_grid, cfg.lr_grid, options, false,
                    [&](const RenderConfig& rc, double lr) { return run_shape_optimization(cfg, rc, lr); });
}

GridResult grid_search(const PoseTaskConfig& cfg, const GridSpec& grid, const GridOptions& options) {
    cfg.validate();
    return run_grid(grid, {cfg.sigma_start}, cfg.lr_grid, options, true,
                    [&](const RenderConfig& rc, double lr) { return run_pose_optimization(cfg, rc, lr); });
}

void write_records_csv(std::ostream& out, const std::vector<RunRecord>& records) {
    out << kCsvHeader << '\n';
    for (const auto& r : records) out << r.csv_row() << '\n';
}

void write_heatmap_csv(std::ostream& out, const GridResult& result) {
    std::vector<std::string> dists;
    std::vector<std::string> tcs;
    for (const auto& c : result.cells) {
        if (std::find(dists.begin(), dists.end(), c.distribution) == dists.end()) dists.push_back(c.distribution);
        if (std::find(tcs.begin(), tcs.end(), c.tconorm) == tcs.end()) tcs.push_back(c.tconorm);
    }
    out << "tconorm";
    for (const auto& d : dists) out << ',' << csv_field(d);
    out << '\n';
    for (const auto& t : tcs) {
        out << csv_field(t);
        for (const auto& d : dists) {
            out << ',';
            for (const auto& c : result.cells) {
                if (c.distribution == d && c.tconorm == t) out << metric_text(c.metric);
            }
        }
        out << '\n';
    }
}

std::vector<DistributionSpec> benchmark_base_distributions() {
    std::vector<DistributionSpec> out;
    for (const char* text :
         {"uniform", "cubic-hermite", "wigner-semicircle", "gaussian", "laplace", "logistic", "hyperbolic-secant",
          "cauchy", "reciprocal", "gumbel-max", "gumbel-min", "exponential", "exponential(rev)", "levy", "levy(rev)",
          "gamma(p=0.5)", "gamma(p=1)", "gamma(p=2)", "gamma(p=0.5,rev)", "gamma(p=1,rev)", "gamma(p=2,rev)"}) {
        out.push_back(DistributionSpec::parse(text));
    }
    return out;
}

std::vector<TConormSpec> benchmark_tconorms() {
    std::vector<TConormSpec> out;
    for (const char* text : {"max", "probabilistic", "einstein", "average"}) out.push_back(TConormSpec::parse(text));
    const std::vector<double> positive{0.5, 1.0, 2.0, 4.0};
    const auto add = [&out](TConormFamily family, const std::vector<double>& ps) {
        for (double p : ps) out.push_back(TConormSpec{family, p});
    };
    add(TConormFamily::Hamacher, positive);
    add(TConormFamily::Frank, {0.5, 2.0, 4.0});
    add(TConormFamily::Yager, positive);
    add(TConormFamily::AczelAlsina, positive);
    add(TConormFamily::Dombi, positive);
    add(TConormFamily::SchweizerSklar, {-0.5, -1.0, -2.0, -4.0});
    return out;
}

RendererEnumeration enumerate_renderers() {
    RendererEnumeration e;
    for (const auto& d : benchmark_base_distributions()) {
        e.distributions.push_back(d);
        DistributionSpec sq = d;
        sq.squares = true;
        e.distributions.push_back(sq);
    }
    e.tconorms = benchmark_tconorms();
    for (const auto& d : e.distributions) {
        for (const auto& t : e.tconorms) e.renderers.emplace_back(d, t);
    }
    return e;
}

TopDecileHistogram top_decile_histogram(const std::vector<GridCell>& cells, bool higher_is_better) {
    if (cells.size() < 10) {
        throw ConfigError("top-decile histogram needs at least 10 cells, got " + std::to_string(cells.size()));
    }
    std::vector<const GridCell*> order;
    for (const auto& c : cells) order.push_back(&c);
    std::sort(order.begin(), order.end(), [higher_is_better](const GridCell* a, const GridCell* b) {
        if (better(a->metric, b->metric, higher_is_better)) return true;
        if (better(b->metric, a->metric, higher_is_better)) return false;
        return a->distribution + "|" + a->tconorm < b->distribution + "|" + b->tconorm;
    });
    TopDecileHistogram h;
    h.top_count = (cells.size() + 9) / 10;
    for (std::size_t i = 0; i < h.top_count; ++i) {
        ++h.by_distribution[order[i]->distribution];
        ++h.by_tconorm[order[i]->tconorm];
    }
    return h;
}

}  // namespace softsil
