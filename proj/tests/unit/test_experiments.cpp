#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "softsil/errors.hpp"
#include "softsil/experiments.hpp"

using namespace softsil;

namespace {

ShapeTaskConfig tiny_shape() {
    ShapeTaskConfig cfg;
    cfg.target = cube(1.0);
    cfg.n_azimuths = 2;
    cfg.elevations_deg = {30.0};
    cfg.steps = 4;
    cfg.resolution = 16;
    cfg.icosphere_subdivisions = 1;
    cfg.lr_grid = {0.01, 0.03, 0.1};
    cfg.tau_grid = {0.05};
    return cfg;
}

PoseTaskConfig tiny_pose() {
    PoseTaskConfig cfg;
    cfg.target = icosphere(1);
    for (Vec3& v : cfg.target.vertices) v.x *= 1.8;
    cfg.target_name = "ellipsoid";
    cfg.n_trials = 3;
    cfg.steps = 20;
    cfg.resolution = 24;
    cfg.lr_grid = {0.01};
    return cfg;
}

RenderConfig renderer(const char* dist, const char* tc, double tau = 0.05) {
    RenderConfig c;
    c.distribution = DistributionSpec::parse(dist);
    c.tconorm = TConormSpec::parse(tc);
    c.tau = tau;
    return c;
}

GridCell cell(const std::string& d, const std::string& t, double metric) {
    GridCell c;
    c.distribution = d;
    c.tconorm = t;
    c.metric = metric;
    return c;
}

}  // namespace

TEST(Grid, ShapeGridHasOneRecordPerPointAndCellsTakeTheMinimum) {
    GridSpec grid;
    grid.distributions = {DistributionSpec::parse("logistic"), DistributionSpec::parse("gaussian")};
    grid.tconorms = {TConormSpec::parse("probabilistic"), TConormSpec::parse("max")};
    const GridResult res = grid_search(tiny_shape(), grid, GridOptions{});
    ASSERT_EQ(res.records.size(), 12U);
    ASSERT_EQ(res.cells.size(), 4U);
    EXPECT_FALSE(res.higher_is_better);
    for (const GridCell& c : res.cells) {
        double best = INFINITY;
        for (const RunRecord& r : res.records) {
            if (r.distribution == c.distribution && r.tconorm == c.tconorm) best = std::min(best, r.metric);
        }
        EXPECT_EQ(c.metric, best);
        EXPECT_FALSE(c.tau_at_extreme);  // needs at least three temperatures
    }
    for (const RunRecord& r : res.records) {
        EXPECT_FALSE(r.wall_ms.has_value());
        EXPECT_EQ(r.trace.size(), 4U);
    }
}

TEST(Grid, JobsDoNotChangeTheOutput) {
    GridSpec grid;
    grid.distributions = {DistributionSpec::parse("logistic"), DistributionSpec::parse("cauchy")};
    grid.tconorms = {TConormSpec::parse("probabilistic"), TConormSpec::parse("einstein")};
    std::ostringstream a, b;
    write_records_csv(a, grid_search(tiny_shape(), grid, GridOptions{1, false}).records);
    write_records_csv(b, grid_search(tiny_shape(), grid, GridOptions{2, false}).records);
    EXPECT_EQ(a.str(), b.str());
}

TEST(Grid, HeavisideIsRejected) {
    GridSpec grid;
    grid.distributions = {DistributionSpec::parse("heaviside")};
    grid.tconorms = {TConormSpec::parse("max")};
    EXPECT_THROW(grid_search(tiny_shape(), grid, GridOptions{}), NonDifferentiableError);
    EXPECT_THROW(run_shape_optimization(tiny_shape(), renderer("heaviside", "max"), 0.1), NonDifferentiableError);
}

TEST(Grid, HeatmapHasTconormRowsAndDistributionColumns) {
    GridResult res;
    res.cells = {cell("logistic", "max", 0.25), cell("logistic", "einstein", 0.5), cell("cauchy", "max", 0.75),
                 cell("cauchy", "einstein", std::nan(""))};
    std::ostringstream out;
    write_heatmap_csv(out, res);
    EXPECT_EQ(out.str(), "tconorm,logistic,cauchy\nmax,0.25,0.75\neinstein,0.5,nan\n");
}

TEST(Records, CsvRoundTrip) {
    RunRecord r;
    r.distribution = "gamma(p=0.5,rev,sq)";
    r.tconorm = "yager(p=2)";
    r.tau = "log:0.1:1e-07";
    r.lr = 0.031622776601683791;
    r.loss = "iou";
    r.seed = 18446744073709551615ULL;
    r.metric = 0.123456789012345;
    r.steps = 100;
    r.fingerprint = "task=shape;status=ok";
    std::ostringstream out;
    write_records_csv(out, {r});
    std::istringstream in(out.str());
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    EXPECT_EQ(header, kCsvHeader);
    const RunRecord back = RunRecord::parse_csv_row(row);
    EXPECT_EQ(back.distribution, r.distribution);
    EXPECT_EQ(back.tconorm, r.tconorm);
    EXPECT_EQ(back.tau, r.tau);
    EXPECT_EQ(back.lr, r.lr);
    EXPECT_EQ(back.seed, r.seed);
    EXPECT_EQ(back.metric, r.metric);
    EXPECT_FALSE(back.wall_ms.has_value());
    EXPECT_EQ(back.csv_row(), row);

    r.metric = std::nan("");
    r.wall_ms = 12.5;
    const RunRecord failed = RunRecord::parse_csv_row(r.csv_row());
    EXPECT_TRUE(failed.failed());
    EXPECT_EQ(*failed.wall_ms, 12.5);
    EXPECT_THROW(RunRecord::parse_csv_row("a,b,c"), ParseError);
}

TEST(TopDecile, CountsTheBestTenthWithTextTieBreak) {
    std::vector<GridCell> cells;
    for (int i = 0; i < 19; ++i) cells.push_back(cell("d" + std::to_string(i % 5), "t" + std::to_string(i), 1.0 + i));
    cells.push_back(cell("winner", "tw", 0.1));
    const TopDecileHistogram h = top_decile_histogram(cells, false);
    EXPECT_EQ(h.top_count, 2U);
    EXPECT_EQ(h.by_distribution.at("winner"), 1);
    EXPECT_EQ(h.by_distribution.at("d0"), 1);  // metric 1.0, second best

    std::vector<GridCell> ties;
    for (const char* d : {"b", "a", "d", "c", "e", "f", "g", "h", "i", "j", "k"}) ties.push_back(cell(d, "t", 0.5));
    const TopDecileHistogram th = top_decile_histogram(ties, true);
    EXPECT_EQ(th.top_count, 2U);
    EXPECT_EQ(th.by_distribution.count("a"), 1U);
    EXPECT_EQ(th.by_distribution.count("b"), 1U);
    EXPECT_EQ(th.by_tconorm.at("t"), 2);

    ties.resize(9);
    EXPECT_THROW(top_decile_histogram(ties, true), ConfigError);
}

TEST(Enumeration, DuplicateFreeAndRoundTrips) {
    const RendererEnumeration e = enumerate_renderers();
    EXPECT_EQ(e.renderers.size(), e.distributions.size() * e.tconorms.size());
    EXPECT_EQ(e.distributions.size(), 42U);
    EXPECT_EQ(e.tconorms.size(), 27U);
    EXPECT_EQ(e.renderers.size(), 1134U);
    std::set<std::string> seen;
    for (const auto& [d, t] : e.renderers) {
        EXPECT_TRUE(d.differentiable());
        EXPECT_TRUE(seen.insert(d.to_string() + "|" + t.to_string()).second);
        EXPECT_EQ(DistributionSpec::parse(d.to_string()), d);
        EXPECT_EQ(TConormSpec::parse(t.to_string()), t);
    }
    EXPECT_EQ(benchmark_base_distributions().size(), 21U);
    EXPECT_EQ(benchmark_tconorms().size(), 27U);
}

TEST(Shape, TargetEqualToTheInitialSphereDoesNotGetWorse) {
    ShapeTaskConfig cfg = tiny_shape();
    cfg.target = icosphere(cfg.icosphere_subdivisions);
    for (Vec3& v : cfg.target.vertices) v = v * cfg.init_radius;
    cfg.steps = 5;
    const RunRecord r = run_shape_optimization(cfg, renderer("logistic", "probabilistic", 0.02), 0.001);
    ASSERT_FALSE(r.failed());
    ASSERT_EQ(r.trace.size(), 5U);
    EXPECT_LE(r.metric, r.trace.front() + 1e-9);
}

TEST(Shape, IsDeterministic) {
    const ShapeTaskConfig cfg = tiny_shape();
    const RunRecord a = run_shape_optimization(cfg, renderer("logistic", "probabilistic"), 0.05);
    const RunRecord b = run_shape_optimization(cfg, renderer("logistic", "probabilistic"), 0.05);
    EXPECT_EQ(a.csv_row(), b.csv_row());
    EXPECT_EQ(a.trace, b.trace);
}

TEST(Pose, ZeroPerturbationAlwaysSucceeds) {
    PoseTaskConfig cfg = tiny_pose();
    cfg.init_angle_min_deg = 0.0;
    cfg.init_angle_max_deg = 0.0;
    cfg.randomize_init_distance = false;
    for (const PoseTrial& t : sample_pose_trials(cfg)) EXPECT_NEAR(t.init_error_deg, 0.0, 1e-6);
    const RunRecord r = run_pose_optimization(cfg, renderer("logistic", "probabilistic"), 0.01);
    EXPECT_EQ(r.metric, 1.0);
}

TEST(Pose, TrialsRespectTheSamplingRanges) {
    PoseTaskConfig cfg = tiny_pose();
    cfg.n_trials = 50;
    cfg.init_angle_min_deg = 15.0;
    cfg.init_angle_max_deg = 30.0;
    for (const PoseTrial& t : sample_pose_trials(cfg)) {
        const auto eye = [](const Camera& c) {
            const double az = c.azimuth_deg * M_PI / 180.0, el = c.elevation_deg * M_PI / 180.0;
            return Vec3{std::cos(el) * std::sin(az), std::sin(el), std::cos(el) * std::cos(az)};
        };
        const double angle = std::acos(std::clamp(dot(eye(t.truth), eye(t.init)), -1.0, 1.0)) * 180.0 / M_PI;
        EXPECT_GE(angle, 15.0 - 1e-6);
        EXPECT_LE(angle, 30.0 + 1e-6);
        EXPECT_GE(t.init_error_deg, angle - 1e-6);  // the look-at geodesic also counts the induced roll
        EXPECT_LE(std::abs(t.truth.elevation_deg), cfg.elevation_limit_deg + 1e-9);
        EXPECT_GE(t.truth.distance, cfg.distance_min);
        EXPECT_LE(t.truth.distance, cfg.distance_max);
        EXPECT_GE(t.truth.fov_deg, cfg.fov_min_deg);
        EXPECT_LE(t.truth.fov_deg, cfg.fov_max_deg);
    }
}

TEST(Pose, IsDeterministicAndRejectsHeaviside) {
    const PoseTaskConfig cfg = tiny_pose();
    const RunRecord a = run_pose_optimization(cfg, renderer("logistic", "probabilistic"), 0.1);
    const RunRecord b = run_pose_optimization(cfg, renderer("logistic", "probabilistic"), 0.1);
    EXPECT_EQ(a.csv_row(), b.csv_row());
    EXPECT_GE(a.metric, 0.0);
    EXPECT_LE(a.metric, 1.0);
    EXPECT_THROW(run_pose_optimization(cfg, renderer("heaviside", "max"), 0.1), NonDifferentiableError);
}

TEST(Config, ValidationRejectsBadGrids) {
    ShapeTaskConfig s = tiny_shape();
    s.tau_grid.clear();
    EXPECT_THROW(s.validate(), ConfigError);
    PoseTaskConfig p = tiny_pose();
    p.init_angle_min_deg = 40.0;
    p.init_angle_max_deg = 20.0;
    EXPECT_THROW(p.validate(), ConfigError);
    EXPECT_EQ(ShapeTaskConfig::desk().n_azimuths, 8);
}
