#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "softsil/gradients.hpp"
#include "softsil/rasterizer.hpp"

namespace softsil {

/// Multi-view silhouette fitting: an icosphere is deformed until its soft
/// renders match hard renders of the target from a ring of azimuths. Each
/// elevation is an independent run; the metric is the final multi-view loss
/// averaged over elevations.
struct ShapeTaskConfig {
    Mesh target;  // normalized to a unit bounding sphere before use
    std::string target_name = "cube";
    int n_azimuths = 24;
    std::vector<double> elevations_deg{-60.0, -30.0, 0.0, 30.0, 60.0};
    int steps = 100;
    std::vector<double> lr_grid;   // defaults to 10^-1.25, 10^-1.5, 10^-1.75
    std::vector<double> tau_grid;  // defaults to 10^(-0.1 n), n = 0..80
    LossKind loss = LossKind::Iou;
    std::uint64_t seed = 0;
    int resolution = 64;
    int icosphere_subdivisions = 2;
    double init_radius = 0.6;
    double camera_distance = 4.0;
    double fov_deg = 30.0;
    double laplacian_weight = 0.0;

    ShapeTaskConfig();
    /// The reduced setting used by the acceptance tests and `--preset desk`.
    static ShapeTaskConfig desk();
    void validate() const;
};

/// Camera pose recovery from a single hard reference silhouette.
struct PoseTaskConfig {
    Mesh target;
    std::string target_name = "teapot";
    int n_trials = 20;
    double init_angle_min_deg = 15.0;
    double init_angle_max_deg = 75.0;
    int steps = 1000;
    std::vector<double> lr_grid{0.1, 0.3};
    double sigma_start = 1e-1;
    double sigma_end = 1e-7;
    double success_threshold_deg = 3.0;
    double distance_min = 2.0;  // times the bounding radius (1 after normalization)
    double distance_max = 3.5;
    double fov_min_deg = 25.0;
    double fov_max_deg = 35.0;
    double elevation_limit_deg = 30.0;
    bool randomize_init_distance = true;
    LossKind loss = LossKind::Iou;
    std::uint64_t seed = 0;
    int resolution = 64;

    static PoseTaskConfig desk();
    void validate() const;
};

/// One row of the results table.
struct RunRecord {
    std::string distribution;
    std::string tconorm;
    std::string tau;  // a number, or `log:START:END` for a schedule
    double lr = 0.0;
    std::string loss;
    std::uint64_t seed = 0;
    double metric = 0.0;  // NaN when the run failed
    int steps = 0;
    std::optional<double> wall_ms;
    std::string fingerprint;
    std::vector<double> trace;  // per-step loss; not serialized

    bool failed() const;
    std::string csv_row() const;
    static RunRecord parse_csv_row(const std::string& row);
};

inline constexpr const char* kCsvHeader = "distribution,tconorm,tau,lr,loss,seed,metric,steps,wall_ms,fingerprint";

/// Runs one (renderer, lr) point. `renderer.tau` is the temperature in
/// normalized image units; width, height and distance_scale are overridden.
RunRecord run_shape_optimization(const ShapeTaskConfig& cfg, const RenderConfig& renderer, double lr);

/// Success fraction over the trials for one learning rate. The temperature
/// follows the configured schedule; `renderer.tau` is ignored.
RunRecord run_pose_optimization(const PoseTaskConfig& cfg, const RenderConfig& renderer, double lr);

/// Sampled ground truth and initialization of one pose trial.
struct PoseTrial {
    Camera truth;
    Camera init;
    double init_error_deg = 0.0;
};
std::vector<PoseTrial> sample_pose_trials(const PoseTaskConfig& cfg);

struct GridSpec {
    std::vector<DistributionSpec> distributions;
    std::vector<TConormSpec> tconorms;
};

struct GridCell {
    std::string distribution;
    std::string tconorm;
    double metric = 0.0;
    std::string best_tau;
    double best_lr = 0.0;
    bool tau_at_extreme = false;  // best tau is the first or last grid value
};

struct GridResult {
    bool higher_is_better = false;
    std::vector<RunRecord> records;  // sorted by distribution, tconorm, tau, lr
    std::vector<GridCell> cells;     // sorted by distribution, tconorm
};

struct GridOptions {
    int jobs = 1;
    bool timing = false;  // fill wall_ms; breaks byte-identical output
};

GridResult grid_search(const ShapeTaskConfig& cfg, const GridSpec& grid, const GridOptions& options);
GridResult grid_search(const PoseTaskConfig& cfg, const GridSpec& grid, const GridOptions& options);

void write_records_csv(std::ostream& out, const std::vector<RunRecord>& records);
/// Rows are T-conorms, columns are distributions, in first-appearance order.
void write_heatmap_csv(std::ostream& out, const GridResult& result);

/// Every differentiable renderer of the benchmark space.
struct RendererEnumeration {
    std::vector<std::pair<DistributionSpec, TConormSpec>> renderers;
    std::vector<DistributionSpec> distributions;
    std::vector<TConormSpec> tconorms;
};
RendererEnumeration enumerate_renderers();

/// The distribution variants plotted in the benchmark table, without squares.
std::vector<DistributionSpec> benchmark_base_distributions();
std::vector<TConormSpec> benchmark_tconorms();

/// Appearance counts of each distribution and T-conorm among the best
/// ceil(n / 10) cells. Ties in metric are broken by `distribution|tconorm` text.
/// Throws ConfigError for fewer than 10 cells.
struct TopDecileHistogram {
    std::size_t top_count = 0;
    std::map<std::string, int> by_distribution;
    std::map<std::string, int> by_tconorm;
};
TopDecileHistogram top_decile_histogram(const std::vector<GridCell>& cells, bool higher_is_better);

}  // namespace softsil
