#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "softsil/distributions.hpp"
#include "softsil/errors.hpp"
#include "softsil/experiments.hpp"
#include "softsil/geometry.hpp"
#include "softsil/gradients.hpp"
#include "softsil/image.hpp"
#include "softsil/property_suites.hpp"
#include "softsil/rasterizer.hpp"
#include "softsil/tconorms.hpp"
#include "softsil/text.hpp"

#ifndef SOFTSIL_DATA_DIR
#define SOFTSIL_DATA_DIR "data"
#endif

namespace fs = std::filesystem;
using namespace softsil;

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitNumeric = 2;

struct Common {
    std::string out = "out";
    std::string seed_text;
    int jobs = static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
    std::string preset = "full";
    bool timing = false;

    std::uint64_t seed() const {
        if (!seed_text.empty()) {
            const auto v = parse_real(seed_text);
            if (!v || *v < 0 || *v != static_cast<double>(static_cast<std::uint64_t>(*v))) {
                throw ConfigError("--seed must be a nonnegative integer, got '" + seed_text + "'");
            }
            return static_cast<std::uint64_t>(*v);
        }
        static const std::uint64_t chosen = std::random_device{}() & 0xffffffffU;
        return chosen;
    }
};

// `cube`, `icosphere:N`, or a path to an OBJ file.
Mesh load_mesh(const std::string& name) {
    if (name == "cube") return cube();
    if (name.rfind("icosphere:", 0) == 0) {
        const auto s = parse_real(name.substr(10));
        if (!s) throw ConfigError("bad icosphere level in '" + name + "'");
        return icosphere(static_cast<int>(*s));
    }
    if (!fs::exists(name)) throw ConfigError("mesh file not found: " + name);
    return load_obj(name);
}

std::string mesh_label(const std::string& name) {
    if (name == "cube" || name.rfind("icosphere:", 0) == 0) return name;
    return fs::path(name).stem().string();
}

fs::path output_dir(const Common& common) {
    fs::path dir(common.out);
    fs::create_directories(dir);
    return dir;
}

void write_image(const fs::path& path, const Image& image) {
    if (path.extension() == ".pgm") {
        write_pgm(path, image);
    } else {
        write_png(path, image);
    }
}

std::vector<double> parse_list(const std::vector<std::string>& items, const char* what) {
    std::vector<double> out;
    for (const auto& s : items) {
        const auto v = parse_real(s);
        if (!v) throw ConfigError(std::string("bad number in ") + what + ": '" + s + "'");
        out.push_back(*v);
    }
    return out;
}

void add_common(CLI::App* cmd, Common& c, bool jobs, bool preset) {
    cmd->add_option("--out", c.out, "Output directory")->capture_default_str();
    cmd->add_option("--seed", c.seed_text, "PRNG seed (nonnegative integer); printed when auto-chosen");
    if (jobs) cmd->add_option("--jobs", c.jobs, "Worker threads (default: available parallelism)")->capture_default_str();
    if (preset) {
        cmd->add_option("--preset", c.preset, "Task scale: full or desk")
            ->check(CLI::IsMember({"full", "desk"}))
            ->capture_default_str();
    }
}

void announce_seed(const Common& c) {
    if (c.seed_text.empty()) std::cout << "seed: " << c.seed() << " (auto-chosen)\n";
}

struct RenderArgs {
    std::string mesh = "cube";
    std::string dist = "logistic";
    std::string tconorm = "probabilistic";
    double tau = 1.0;
    int size = 64;
    double azimuth = 30.0;
    double elevation = 20.0;
    double distance = 4.0;
    double fov = 30.0;
    double distance_scale = 1.0;
    std::string format = "png";
    std::optional<double> depth_tau;
    bool check_grads = false;
};

void add_render_options(CLI::App* cmd, RenderArgs& r) {
    cmd->add_option("--mesh", r.mesh, "Mesh: cube, icosphere:N or an OBJ path")->capture_default_str();
    cmd->add_option("--dist", r.dist, "Distribution spec")->capture_default_str();
    cmd->add_option("--tconorm", r.tconorm, "T-conorm spec")->capture_default_str();
    cmd->add_option("--tau", r.tau, "Temperature (pixel units unless --normalized)")->capture_default_str();
    cmd->add_option("--size", r.size, "Image width and height")->capture_default_str();
    cmd->add_option("--azimuth", r.azimuth, "Camera azimuth [deg]")->capture_default_str();
    cmd->add_option("--elevation", r.elevation, "Camera elevation [deg]")->capture_default_str();
    cmd->add_option("--distance", r.distance, "Camera distance (mesh is scaled to a unit sphere)")->capture_default_str();
    cmd->add_option("--fov", r.fov, "Horizontal field of view [deg]")->capture_default_str();
}

RenderConfig make_render_config(const RenderArgs& r) {
    RenderConfig rc;
    rc.distribution = DistributionSpec::parse(r.dist);
    rc.tconorm = TConormSpec::parse(r.tconorm);
    rc.tau = r.tau;
    rc.width = rc.height = r.size;
    rc.distance_scale = r.distance_scale;
    rc.depth_softmin_tau = r.depth_tau;
    rc.validate();
    return rc;
}

Camera make_camera(const RenderArgs& r) {
    Camera cam;
    cam.azimuth_deg = r.azimuth;
    cam.elevation_deg = r.elevation;
    cam.distance = r.distance;
    cam.fov_deg = r.fov;
    cam.width = cam.height = r.size;
    cam.validate();
    return cam;
}

void print_report(const GradientReport& rep) {
    std::cout << "finite-difference check: max_rel_error=" << format_real(rep.max_rel_error)
              << " argmax=" << rep.argmax << " h=" << format_real(rep.h) << " checked=" << rep.checked
              << " excluded=" << rep.excluded.size() << '\n';
}

int cmd_render(const RenderArgs& r, const Common& c) {
    const RenderConfig rc = make_render_config(r);
    if (r.check_grads && !rc.distribution.differentiable()) {
        throw NonDifferentiableError("--check-grads needs a differentiable distribution, got " +
                                     rc.distribution.to_string());
    }
    const Camera cam = make_camera(r);
    const Mesh mesh = normalize_to_unit_sphere(load_mesh(r.mesh));
    const ScreenMesh screen = transform_project(mesh, cam);
    const fs::path dir = output_dir(c);
    const std::string ext = r.format == "pgm" ? ".pgm" : ".png";

    write_image(dir / ("render" + ext), render_silhouette(screen, rc));
    write_image(dir / ("hard" + ext), hard_render(screen, rc.width, rc.height));
    if (rc.depth_softmin_tau) {
        // Shade each face by its index so the blending is visible.
        std::vector<double> values(screen.faces.size());
        for (std::size_t f = 0; f < values.size(); ++f) values[f] = (f + 1.0) / values.size();
        write_image(dir / ("depth" + ext), render_depth_aggregated(screen, rc, values));
    }
    std::cout << "fingerprint: render;mesh=" << mesh_label(r.mesh) << ";dist=" << rc.distribution.to_string()
              << ";tconorm=" << rc.tconorm.to_string() << ";tau=" << format_real(rc.tau)
              << ";distance_scale=" << format_real(rc.distance_scale) << ";size=" << rc.width
              << ";pixel=center+0.5;mesh_norm=unit-sphere\n";
    std::cout << "wrote " << (dir / ("render" + ext)).string() << '\n';

    if (r.check_grads) {
        GradientScene scene;
        scene.mesh = mesh;
        scene.camera = cam;
        Camera shifted = cam;
        shifted.azimuth_deg += 5.0;
        scene.target = hard_render(transform_project(mesh, shifted), rc.width, rc.height);
        announce_seed(c);
        const GradientReport rep = finite_difference_check(scene, rc, GradientParameters::Vertices, 1e-5, c.seed());
        print_report(rep);
        if (!(rep.max_rel_error < 1e-3)) return kExitNumeric;
    }
    return 0;
}

struct OptArgs {
    std::string target;
    std::string dist = "logistic";
    std::string tconorm = "probabilistic";
    std::optional<double> tau;
    std::optional<double> lr;
    std::optional<int> steps;
    std::string loss = "iou";
    std::optional<int> azimuths;
    std::vector<std::string> elevations;
    double laplacian = 0.0;
    std::optional<int> trials;
    std::optional<double> init_min;
    std::optional<double> init_max;
};

ShapeTaskConfig shape_config(const OptArgs& a, const Common& c) {
    ShapeTaskConfig cfg = c.preset == "desk" ? ShapeTaskConfig::desk() : ShapeTaskConfig();
    const std::string target = a.target.empty() ? "cube" : a.target;
    cfg.target = load_mesh(target);
    cfg.target_name = mesh_label(target);
    if (a.steps) cfg.steps = *a.steps;
    if (a.azimuths) cfg.n_azimuths = *a.azimuths;
    if (!a.elevations.empty()) cfg.elevations_deg = parse_list(a.elevations, "--elevation");
    cfg.loss = parse_loss(a.loss);
    cfg.laplacian_weight = a.laplacian;
    cfg.seed = c.seed();
    return cfg;
}

PoseTaskConfig pose_config(const OptArgs& a, const Common& c) {
    PoseTaskConfig cfg = c.preset == "desk" ? PoseTaskConfig::desk() : PoseTaskConfig();
    const std::string target = a.target.empty() ? std::string(SOFTSIL_DATA_DIR) + "/teapot.obj" : a.target;
    cfg.target = load_mesh(target);
    cfg.target_name = mesh_label(target);
    if (a.steps) cfg.steps = *a.steps;
    if (a.trials) cfg.n_trials = *a.trials;
    if (a.init_min) cfg.init_angle_min_deg = *a.init_min;
    if (a.init_max) cfg.init_angle_max_deg = *a.init_max;
    cfg.loss = parse_loss(a.loss);
    cfg.seed = c.seed();
    return cfg;
}

RenderConfig renderer_spec(const std::string& dist, const std::string& tconorm) {
    RenderConfig rc;
    rc.distribution = DistributionSpec::parse(dist);
    rc.tconorm = TConormSpec::parse(tconorm);
    return rc;
}

void write_record(const fs::path& path, const RunRecord& rec) {
    std::ofstream out(path);
    write_records_csv(out, {rec});
    if (!out) throw NumericError("could not write " + path.string());
}

void write_trace(const fs::path& path, const char* column, const std::vector<double>& trace) {
    std::ofstream out(path);
    out << "index," << column << '\n';
    for (std::size_t i = 0; i < trace.size(); ++i) out << i << ',' << format_real(trace[i]) << '\n';
}

int cmd_shape(const OptArgs& a, const Common& c) {
    announce_seed(c);
    const ShapeTaskConfig cfg = shape_config(a, c);
    RenderConfig rc = renderer_spec(a.dist, a.tconorm);
    rc.tau = a.tau.value_or(cfg.tau_grid[cfg.tau_grid.size() / 2]);
    const double lr = a.lr.value_or(cfg.lr_grid[cfg.lr_grid.size() / 2]);
    const RunRecord rec = run_shape_optimization(cfg, rc, lr);
    const fs::path dir = output_dir(c);
    write_record(dir / "shape.csv", rec);
    write_trace(dir / "shape_trace.csv", "loss", rec.trace);
    std::cout << "fingerprint: " << rec.fingerprint << '\n';
    std::cout << "final loss: " << format_real(rec.metric) << '\n';
    return rec.failed() ? kExitNumeric : 0;
}

int cmd_pose(const OptArgs& a, const Common& c) {
    announce_seed(c);
    const PoseTaskConfig cfg = pose_config(a, c);
    const RenderConfig rc = renderer_spec(a.dist, a.tconorm);
    const double lr = a.lr.value_or(cfg.lr_grid.front());
    const RunRecord rec = run_pose_optimization(cfg, rc, lr);
    const fs::path dir = output_dir(c);
    write_record(dir / "pose.csv", rec);
    write_trace(dir / "pose_trials.csv", "final_error_deg", rec.trace);
    std::cout << "fingerprint: " << rec.fingerprint << '\n';
    std::cout << "success fraction: " << format_real(rec.metric) << '\n';
    return 0;
}

struct GridArgs {
    std::string task = "shape";
    std::vector<std::string> dists;
    std::vector<std::string> tconorms;
    std::vector<std::string> taus;
    std::vector<std::string> lrs;
    OptArgs opt;
};

int cmd_grid(const GridArgs& g, const Common& c) {
    announce_seed(c);
    GridSpec grid;
    const RendererEnumeration all = enumerate_renderers();
    if (g.dists.empty()) {
        grid.distributions = all.distributions;
    } else {
        for (const auto& d : g.dists) grid.distributions.push_back(DistributionSpec::parse(d));
    }
    if (g.tconorms.empty()) {
        grid.tconorms = all.tconorms;
    } else {
        for (const auto& t : g.tconorms) grid.tconorms.push_back(TConormSpec::parse(t));
    }
    GridOptions options;
    options.jobs = c.jobs;
    options.timing = c.timing;

    GridResult result;
    if (g.task == "shape") {
        ShapeTaskConfig cfg = shape_config(g.opt, c);
        if (!g.taus.empty()) cfg.tau_grid = parse_list(g.taus, "--tau");
        if (!g.lrs.empty()) cfg.lr_grid = parse_list(g.lrs, "--lr");
        result = grid_search(cfg, grid, options);
    } else {
        PoseTaskConfig cfg = pose_config(g.opt, c);
        if (!g.lrs.empty()) cfg.lr_grid = parse_list(g.lrs, "--lr");
        result = grid_search(cfg, grid, options);
    }

    const fs::path dir = output_dir(c);
    {
        std::ofstream out(dir / "grid.csv");
        write_records_csv(out, result.records);
    }
    {
        std::ofstream out(dir / "heatmap.csv");
        write_heatmap_csv(out, result);
    }
    {
        std::ofstream out(dir / "cells.csv");
        out << "distribution,tconorm,metric,best_tau,best_lr,tau_at_extreme\n";
        for (const auto& cell : result.cells) {
            out << csv_field(cell.distribution) << ',' << csv_field(cell.tconorm) << ',' << format_real(cell.metric) << ','
                << csv_field(cell.best_tau) << ',' << format_real(cell.best_lr) << ',' << (cell.tau_at_extreme ? 1 : 0) << '\n';
        }
    }
    if (!result.records.empty()) std::cout << "fingerprint: " << result.records.front().fingerprint << '\n';
    std::cout << "runs: " << result.records.size() << ", cells: " << result.cells.size() << '\n';
    for (const auto& cell : result.cells) {
        if (cell.tau_at_extreme) {
            std::cout << "note: best tau of " << cell.distribution << " x " << cell.tconorm
                      << " lies at the edge of the grid\n";
        }
    }
    if (result.cells.size() >= 10) {
        const TopDecileHistogram h = top_decile_histogram(result.cells, result.higher_is_better);
        std::cout << "top decile (" << h.top_count << " cells):\n";
        for (const auto& [name, n] : h.by_distribution) std::cout << "  " << name << ": " << n << '\n';
        for (const auto& [name, n] : h.by_tconorm) std::cout << "  " << name << ": " << n << '\n';
    }
    std::cout << "wrote " << (dir / "grid.csv").string() << '\n';
    return 0;
}

int cmd_enumerate(const Common& c, bool write) {
    const RendererEnumeration e = enumerate_renderers();
    const std::size_t base = benchmark_base_distributions().size();
    std::cout << "renderers: " << e.renderers.size() << " = " << base << " base distributions x 2 (plain, squares) x "
              << e.tconorms.size() << " aggregators\n";
    std::cout << "published count: 1242 (difference " << static_cast<long>(e.renderers.size()) - 1242L << ")\n";
    if (write) {
        const fs::path dir = output_dir(c);
        std::ofstream out(dir / "renderers.csv");
        out << "distribution,tconorm\n";
        for (const auto& [d, t] : e.renderers) out << '"' << d.to_string() << "\",\"" << t.to_string() << "\"\n";
        std::cout << "wrote " << (dir / "renderers.csv").string() << '\n';
    }
    return 0;
}

struct CheckArgs {
    RenderArgs render;
    std::string params = "vertices";
    double h = 1e-5;
    int max_params = 64;
    double tolerance = 1e-3;
};

int cmd_check(const CheckArgs& a, const Common& c) {
    announce_seed(c);
    const RenderConfig rc = make_render_config(a.render);
    if (!rc.distribution.differentiable()) {
        throw NonDifferentiableError("gradient check needs a differentiable distribution, got " +
                                     rc.distribution.to_string());
    }
    GradientScene scene;
    scene.mesh = normalize_to_unit_sphere(load_mesh(a.render.mesh));
    scene.camera = make_camera(a.render);
    Camera shifted = scene.camera;
    shifted.azimuth_deg += 5.0;
    scene.target = hard_render(transform_project(scene.mesh, shifted), rc.width, rc.height);
    const auto which = a.params == "camera" ? GradientParameters::Camera : GradientParameters::Vertices;
    const GradientReport rep =
        finite_difference_check(scene, rc, which, a.h, c.seed(), static_cast<std::size_t>(std::max(1, a.max_params)));
    std::cout << "fingerprint: check-grads;mesh=" << mesh_label(a.render.mesh) << ";dist=" << rc.distribution.to_string()
              << ";tconorm=" << rc.tconorm.to_string() << ";tau=" << format_real(rc.tau) << ";params=" << a.params
              << ";loss=mse\n";
    print_report(rep);
    return rep.max_rel_error < a.tolerance ? 0 : kExitNumeric;
}

int cmd_selftest(const std::string& suite, const Common& c) {
    std::vector<SuiteReport> reports;
    const std::uint64_t seed = c.seed_text.empty() ? 1 : c.seed();
    if (suite == "all") {
        reports = run_selftest(seed);
    } else if (suite == "tconorms") {
        reports.push_back(run_tconorm_axiom_suite(seed));
    } else if (suite == "distributions") {
        reports.push_back(run_distribution_suite());
    } else if (suite == "special") {
        reports.push_back(run_special_function_suite());
    } else {
        reports.push_back(run_gradient_suite(seed));
    }
    std::cout << "fingerprint: selftest;suite=" << suite << ";seed=" << seed << '\n';
    bool ok = true;
    for (const auto& r : reports) {
        std::printf("%-18s %4zu checks  %3zu failed  %.2f s\n", r.suite.c_str(), r.checks.size(), r.failures(),
                    r.seconds);
        for (const auto& check : r.checks) {
            if (!check.passed) std::printf("  FAIL %s: %s\n", check.name.c_str(), check.detail.c_str());
        }
        ok = ok && r.passed();
    }
    return ok ? 0 : kExitNumeric;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Soft silhouette rasterizer: rendering, gradients, shape and pose fitting, grid search"};
    app.footer("\n" + distribution_grammar_help() + "\n" + tconorm_grammar_help() +
               "\nExit codes: 0 success, 1 configuration error, 2 numeric or runtime error.");
    app.require_subcommand(1);

    Common common;
    RenderArgs render;
    bool render_pgm = false;
    bool normalized = false;
    double depth_tau = 0.0;
    auto* render_cmd = app.add_subcommand("render", "Render soft and hard silhouettes of a mesh");
    add_common(render_cmd, common, false, false);
    add_render_options(render_cmd, render);
    render_cmd->add_flag("--pgm", render_pgm, "Write PGM instead of PNG");
    render_cmd->add_flag("--normalized", normalized, "Interpret --tau in normalized image units (2 / size per pixel)");
    render_cmd->add_option("--depth-tau", depth_tau, "Also write a softmin depth-blended image with this temperature");
    render_cmd->add_flag("--check-grads", render.check_grads, "Run a finite-difference gradient check on the render");

    OptArgs shape;
    auto* shape_cmd = app.add_subcommand("shape-opt", "Deform an icosphere to match multi-view silhouettes");
    add_common(shape_cmd, common, false, true);
    shape_cmd->add_option("--target", shape.target, "Target mesh: cube, icosphere:N or an OBJ path (default cube)");
    shape_cmd->add_option("--dist", shape.dist, "Distribution spec")->capture_default_str();
    shape_cmd->add_option("--tconorm", shape.tconorm, "T-conorm spec")->capture_default_str();
    shape_cmd->add_option("--tau", shape.tau, "Temperature in normalized units (default: middle of the preset grid)");
    shape_cmd->add_option("--lr", shape.lr, "Adam learning rate (default: middle of the preset grid)");
    shape_cmd->add_option("--steps", shape.steps, "Optimization steps (default 100)");
    shape_cmd->add_option("--azimuths", shape.azimuths, "Number of views on the azimuth ring");
    shape_cmd->add_option("--elevation", shape.elevations, "Elevation [deg]; repeat for several runs");
    shape_cmd->add_option("--loss", shape.loss, "iou or mse")->capture_default_str();
    shape_cmd->add_option("--laplacian", shape.laplacian, "Laplacian smoothing weight")->capture_default_str();

    OptArgs pose;
    auto* pose_cmd = app.add_subcommand("pose-opt", "Recover camera poses from hard reference silhouettes");
    add_common(pose_cmd, common, false, true);
    pose_cmd->add_option("--target", pose.target, "Target mesh (default data/teapot.obj)");
    pose_cmd->add_option("--dist", pose.dist, "Distribution spec")->capture_default_str();
    pose_cmd->add_option("--tconorm", pose.tconorm, "T-conorm spec")->capture_default_str();
    pose_cmd->add_option("--lr", pose.lr, "Adam learning rate in degrees (default 0.1)");
    pose_cmd->add_option("--steps", pose.steps, "Optimization steps (default 1000)");
    pose_cmd->add_option("--trials", pose.trials, "Number of random trials (default 20)");
    pose_cmd->add_option("--init-min", pose.init_min, "Smallest initial rotation error [deg] (default 15)");
    pose_cmd->add_option("--init-max", pose.init_max, "Largest initial rotation error [deg] (default 75)");
    pose_cmd->add_option("--loss", pose.loss, "iou or mse")->capture_default_str();

    GridArgs grid;
    auto* grid_cmd = app.add_subcommand("grid-search", "Evaluate distribution x T-conorm x lr x tau grids");
    add_common(grid_cmd, common, true, true);
    grid_cmd->add_option("--task", grid.task, "shape or pose")->check(CLI::IsMember({"shape", "pose"}))->capture_default_str();
    grid_cmd->add_option("--dist", grid.dists, "Distribution spec; repeat for several (default: all 42)");
    grid_cmd->add_option("--tconorm", grid.tconorms, "T-conorm spec; repeat for several (default: all 27)");
    grid_cmd->add_option("--tau", grid.taus, "Temperature grid value; repeat (shape only)");
    grid_cmd->add_option("--lr", grid.lrs, "Learning-rate grid value; repeat");
    grid_cmd->add_option("--target", grid.opt.target, "Target mesh");
    grid_cmd->add_option("--steps", grid.opt.steps, "Optimization steps");
    grid_cmd->add_option("--azimuths", grid.opt.azimuths, "Number of views (shape)");
    grid_cmd->add_option("--elevation", grid.opt.elevations, "Elevation [deg]; repeat (shape)");
    grid_cmd->add_option("--trials", grid.opt.trials, "Number of trials (pose)");
    grid_cmd->add_option("--init-min", grid.opt.init_min, "Smallest initial rotation error [deg] (pose)");
    grid_cmd->add_option("--init-max", grid.opt.init_max, "Largest initial rotation error [deg] (pose)");
    grid_cmd->add_option("--loss", grid.opt.loss, "iou or mse")->capture_default_str();
    grid_cmd->add_flag("--timing", common.timing, "Record wall_ms (output is then not byte-reproducible)");

    bool enumerate_write = false;
    auto* enum_cmd = app.add_subcommand("enumerate", "List the benchmark renderer space and its size");
    add_common(enum_cmd, common, false, false);
    enum_cmd->add_flag("--write", enumerate_write, "Write renderers.csv to --out");

    CheckArgs check;
    auto* check_cmd = app.add_subcommand("check-grads", "Compare analytic gradients with central differences");
    add_common(check_cmd, common, false, false);
    add_render_options(check_cmd, check.render);
    check_cmd->add_option("--params", check.params, "vertices or camera")
        ->check(CLI::IsMember({"vertices", "camera"}))
        ->capture_default_str();
    check_cmd->add_flag("--normalized", normalized, "Interpret --tau in normalized image units (2 / size per pixel)");
    check_cmd->add_option("--step", check.h, "Finite-difference step, in [1e-6, 1e-2]")->capture_default_str();
    check_cmd->add_option("--max-params", check.max_params, "Parameters sampled")->capture_default_str();
    check_cmd->add_option("--tolerance", check.tolerance, "Pass threshold on the max relative error")->capture_default_str();

    std::string suite = "all";
    auto* self_cmd = app.add_subcommand("selftest", "Run the T-conorm, distribution, special-function and gradient suites");
    add_common(self_cmd, common, false, false);
    self_cmd->add_option("--suite", suite, "all, tconorms, distributions, special or gradients")
        ->check(CLI::IsMember({"all", "tconorms", "distributions", "special", "gradients"}))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (render_cmd->parsed()) {
            render.format = render_pgm ? "pgm" : "png";
            if (normalized) render.distance_scale = 2.0 / render.size;
            if (depth_tau > 0.0) render.depth_tau = depth_tau;
            return cmd_render(render, common);
        }
        if (shape_cmd->parsed()) return cmd_shape(shape, common);
        if (pose_cmd->parsed()) return cmd_pose(pose, common);
        if (grid_cmd->parsed()) return cmd_grid(grid, common);
        if (enum_cmd->parsed()) return cmd_enumerate(common, enumerate_write);
        if (check_cmd->parsed()) {
            if (normalized) check.render.distance_scale = 2.0 / check.render.size;
            return cmd_check(check, common);
        }
        if (self_cmd->parsed()) return cmd_selftest(suite, common);
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumeric;
    }
    return 0;
}
