#include <benchmark/benchmark.h>

#include "softsil/gradients.hpp"
#include "softsil/rasterizer.hpp"

using namespace softsil;

namespace {

const char* const kDistributions[] = {"logistic", "gaussian", "cauchy", "gamma(p=0.5)", "uniform"};

Camera bench_camera(int size) {
    Camera cam;
    cam.width = cam.height = size;
    cam.azimuth_deg = 30.0;
    cam.elevation_deg = 20.0;
    cam.distance = 3.0;
    return cam;
}

RenderConfig bench_config(const char* dist, int size) {
    RenderConfig rc;
    rc.distribution = DistributionSpec::parse(dist);
    rc.tconorm = TConormSpec::parse("probabilistic");
    rc.width = rc.height = size;
    rc.distance_scale = 2.0 / size;
    rc.tau = 1e-2;
    return rc;
}

void BM_RenderSilhouette(benchmark::State& state) {
    const ScreenMesh mesh = transform_project(icosphere(static_cast<int>(state.range(0))), bench_camera(64));
    const RenderConfig rc = bench_config(kDistributions[state.range(1)], 64);
    for (auto _ : state) benchmark::DoNotOptimize(render_silhouette(mesh, rc));
    state.SetLabel(std::to_string(mesh.faces.size()) + " faces, " + kDistributions[state.range(1)]);
}
BENCHMARK(BM_RenderSilhouette)->ArgsProduct({{1, 2, 3}, {0, 1, 2, 3, 4}})->Unit(benchmark::kMicrosecond);

void BM_VertexGradient(benchmark::State& state) {
    const Mesh mesh = icosphere(static_cast<int>(state.range(0)));
    const Camera cam = bench_camera(64);
    Camera other = cam;
    other.azimuth_deg += 10.0;
    const Image target = hard_render(transform_project(mesh, other), 64, 64);
    const RenderConfig rc = bench_config("logistic", 64);
    for (auto _ : state) benchmark::DoNotOptimize(grad_loss_wrt_vertices(mesh, cam, rc, target, LossKind::Iou));
}
BENCHMARK(BM_VertexGradient)->DenseRange(1, 3)->Unit(benchmark::kMicrosecond);

void BM_HardRender(benchmark::State& state) {
    const ScreenMesh mesh = transform_project(icosphere(static_cast<int>(state.range(0))), bench_camera(64));
    for (auto _ : state) benchmark::DoNotOptimize(hard_render(mesh, 64, 64));
}
BENCHMARK(BM_HardRender)->DenseRange(1, 3)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
