#include "softsil/property_suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "softsil/distributions.hpp"
#include "softsil/experiments.hpp"
#include "softsil/gradients.hpp"
#include "softsil/random.hpp"
#include "softsil/special_functions.hpp"
#include "softsil/tconorms.hpp"
#include "softsil/text.hpp"

namespace softsil {
namespace {

class SuiteBuilder {
public:
    explicit SuiteBuilder(std::string name) : start_(std::chrono::steady_clock::now()) { report_.suite = std::move(name); }

    void add(std::string name, bool passed, std::string detail = {}) {
        report_.checks.push_back({std::move(name), passed, std::move(detail)});
    }

    SuiteReport finish() {
        report_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        return std::move(report_);
    }

private:
    std::chrono::steady_clock::time_point start_;
    SuiteReport report_;
};

// Largest violation seen so far and where it happened.
struct Worst {
    double error = 0.0;
    std::string where;

    void update(double e, const std::string& at) {
        if (e > error || std::isnan(e)) {
            error = std::isnan(e) ? INFINITY : e;
            where = at;
        }
    }
    std::string text() const { return "max error " + format_real(error) + (where.empty() ? "" : " at " + where); }
};

std::string triple(double a, double b, double c) {
    return "(" + format_real(a) + ", " + format_real(b) + ", " + format_real(c) + ")";
}

// 10 delta for Lipschitz families. Yager, Aczel-Alsina and Dombi with p < 1 are
// only Holder-p continuous at the axes (the partial derivative diverges at 0).
double continuity_bound(const TConormSpec& tc, double delta) {
    const bool holder = tc.family == TConormFamily::Yager || tc.family == TConormFamily::AczelAlsina ||
                        tc.family == TConormFamily::Dombi;
    return 10.0 * (holder && tc.p < 1.0 ? std::pow(delta, tc.p) : delta);
}

std::vector<TConormSpec> axiom_grid() {
    std::vector<TConormSpec> out{TConormSpec{TConormFamily::Max, 0.0}, TConormSpec{TConormFamily::Probabilistic, 0.0},
                                 TConormSpec{TConormFamily::Einstein, 0.0}};
    for (TConormFamily family : {TConormFamily::Hamacher, TConormFamily::Frank, TConormFamily::Yager,
                                 TConormFamily::AczelAlsina, TConormFamily::Dombi, TConormFamily::SchweizerSklar}) {
        for (double p : {0.5, 1.0, 2.0, 4.0}) {
            if (family == TConormFamily::Frank && p == 1.0) continue;
            out.push_back(TConormSpec{family, family == TConormFamily::SchweizerSklar ? -p : p});
        }
    }
    return out;
}

// Every family and variant the grammar accepts, with a few Gamma shapes.
std::vector<DistributionSpec> distribution_variants() {
    std::vector<DistributionSpec> out;
    for (Family family : kAllFamilies) {
        std::vector<double> shapes{0.0};
        if (family == Family::Gamma) shapes = {0.5, 1.0, 2.0};
        for (double shape : shapes) {
            for (bool reversed : {false, true}) {
                if (reversed && is_symmetric(family)) continue;
                for (bool squares : {false, true}) {
                    DistributionSpec spec;
                    spec.family = family;
                    spec.shape = shape;
                    spec.reversed = reversed;
                    spec.squares = squares;
                    out.push_back(spec);
                }
            }
        }
    }
    return out;
}

long double erf_reference(long double x) {
    // Maclaurin series is cancellation-free enough in long double up to |x| = 3;
    // beyond that erfc < 3e-5 and the Laplace continued fraction is evaluated bottom-up.
    if (std::fabs(x) <= 3.0L) {
        long double term = x;
        long double sum = x;
        for (int n = 1; n < 200; ++n) {
            term *= -x * x / n;
            sum += term / (2 * n + 1);
        }
        return sum * 2.0L / std::sqrt(3.14159265358979323846264338327950288L);
    }
    const long double ax = std::fabs(x);
    long double frac = ax;
    for (int k = 400; k >= 1; --k) frac = ax + (k * 0.5L) / frac;
    const long double tail = std::exp(-ax * ax) / std::sqrt(3.14159265358979323846264338327950288L) / frac;
    return x > 0 ? 1.0L - tail : tail - 1.0L;
}

// P(p, x) from the all-positive series x^p e^-x / Gamma(p + 1) * sum x^n / ((p + 1)...(p + n)).
long double gamma_p_reference(long double p, long double x) {
    long double term = 1.0L;
    long double sum = 1.0L;
    for (int n = 1; n < 5000; ++n) {
        term *= x / (p + n);
        sum += term;
        if (term < sum * 1e-22L) break;
    }
    return sum * std::exp(p * std::log(x) - x - std::lgamma(p + 1.0L));
}

}  // namespace

bool SuiteReport::passed() const { return failures() == 0; }

std::size_t SuiteReport::failures() const {
    return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const SuiteCheck& c) { return !c.passed; }));
}

SuiteReport run_tconorm_axiom_suite(std::uint64_t seed, int triples) {
    constexpr double kTol = 1e-9;
    SuiteBuilder suite("tconorm-axioms");
    std::vector<std::array<double, 3>> samples(static_cast<std::size_t>(std::max(1, triples)));
    Rng rng(seed);
    for (auto& s : samples) s = {rng.uniform(), rng.uniform(), rng.uniform()};

    for (const TConormSpec& tc : axiom_grid()) {
        const std::string name = tc.to_string();
        Worst comm, assoc, mono, neutral, bound, absorb;
        for (const auto& [a, b, c] : samples) {
            const std::string at = triple(a, b, c);
            comm.update(std::abs(tconorm(tc, a, b) - tconorm(tc, b, a)), at);
            assoc.update(std::abs(tconorm(tc, tconorm(tc, a, b), c) - tconorm(tc, a, tconorm(tc, b, c))), at);
            const double lo = std::min(b, c);
            const double hi = std::max(b, c);
            mono.update(tconorm(tc, a, lo) - tconorm(tc, a, hi), at);
            neutral.update(std::abs(tconorm(tc, a, 0.0) - a), at);
            neutral.update(std::abs(tconorm(tc, 0.0, a) - a), at);
            bound.update(std::max(a, b) - tconorm(tc, a, b), at);
            absorb.update(std::abs(1.0 - tconorm(tc, 1.0, a)), at);
        }
        suite.add(name + " commutativity", comm.error <= kTol, comm.text());
        suite.add(name + " associativity", assoc.error <= kTol, assoc.text());
        suite.add(name + " monotonicity", mono.error <= kTol, mono.text());
        suite.add(name + " neutral element", neutral.error <= kTol, neutral.text());
        suite.add(name + " max lower bound", bound.error <= kTol, bound.text());
        suite.add(name + " absorbing one", absorb.error <= kTol, absorb.text());

        constexpr double delta = 1e-6;
        constexpr int grid = 200;
        Worst jump;
        for (int i = 0; i <= grid; ++i) {
            for (int j = 0; j <= grid; ++j) {
                const double a = std::min(1.0 - delta, static_cast<double>(i) / grid);
                const double b = static_cast<double>(j) / grid;
                jump.update(std::abs(tconorm(tc, a + delta, b) - tconorm(tc, a, b)), triple(a, b, delta));
            }
        }
        suite.add(name + " continuity", jump.error <= continuity_bound(tc, delta), jump.text());
    }

    const TConormSpec average{TConormFamily::Average, 0.0};
    Worst avg;
    for (const auto& [a, b, c] : samples) {
        avg.update(std::abs(tconorm(average, tconorm(average, a, b), c) - tconorm(average, a, tconorm(average, b, c))),
                   triple(a, b, c));
    }
    suite.add("average breaks associativity", avg.error > kTol, avg.text());

    Worst h1, h2;
    const TConormSpec prob{TConormFamily::Probabilistic, 0.0};
    const TConormSpec einstein{TConormFamily::Einstein, 0.0};
    const TConormSpec ham1{TConormFamily::Hamacher, 1.0};
    const TConormSpec ham2{TConormFamily::Hamacher, 2.0};
    const TConormSpec aczel1{TConormFamily::AczelAlsina, 1.0};
    for (const auto& [a, b, c] : samples) {
        const std::string at = triple(a, b, c);
        h1.update(std::abs(tconorm(ham1, a, b) - tconorm(prob, a, b)), at);
        h1.update(std::abs(tconorm(aczel1, a, b) - tconorm(prob, a, b)), at);
        h2.update(std::abs(tconorm(ham2, a, b) - tconorm(einstein, a, b)), at);
    }
    suite.add("hamacher(p=1) = aczel-alsina(p=1) = probabilistic", h1.error <= 1e-12, h1.text());
    suite.add("hamacher(p=2) = einstein", h2.error <= 1e-12, h2.text());
    return suite.finish();
}

SuiteReport run_distribution_suite() {
    SuiteBuilder suite("distributions");
    constexpr double kFar = 1e6;
    constexpr double kFdStep = 1e-5;

    for (const DistributionSpec& spec : distribution_variants()) {
        const std::string name = spec.to_string();

        bool monotone = true;
        std::string mono_at;
        double prev = cdf(spec, -20.0);
        for (int i = 1; i < 1000; ++i) {
            const double x = -20.0 + 40.0 * i / 999.0;
            const double v = cdf(spec, x);
            if (v < prev && monotone) {
                monotone = false;
                mono_at = "x = " + format_real(x);
            }
            prev = v;
        }
        suite.add(name + " monotone", monotone, mono_at);

        const double left = cdf(spec, -kFar);
        const double right = cdf(spec, kFar);
        // A bounded left support is bounded on the reversed side when the spec is reversed.
        const bool exact_zero = has_bounded_left_support(spec.family) && !spec.reversed;
        const bool left_ok = exact_zero ? left == 0.0 : left <= 1e-6;
        suite.add(name + " left limit", left_ok, "F(-1e6) = " + format_real(left));
        suite.add(name + " right limit", right >= 1.0 - 1e-6, "F(1e6) = " + format_real(right));

        Worst sym, rev, sq, deriv;
        DistributionSpec plain = spec;
        plain.squares = false;
        DistributionSpec forward = spec;
        forward.reversed = !spec.reversed;
        const std::vector<double> kinks = cdf_kinks(spec);
        for (int i = 0; i <= 1000; ++i) {
            const double x = -10.0 + 20.0 * i / 1000.0 + 1e-3;
            const std::string at = "x = " + format_real(x);
            if (is_symmetric(spec.family)) sym.update(std::abs(cdf(spec, x) + cdf(spec, -x) - 1.0), at);
            if (spec.reversed) rev.update(std::abs(cdf(spec, x) - (1.0 - cdf(forward, -x))), at);
            if (spec.squares && !spec.reversed) sq.update(std::abs(cdf(spec, x) - cdf(plain, std::abs(x) * x)), at);
            const bool near_kink = std::any_of(kinks.begin(), kinks.end(),
                                               [x](double k) { return std::abs(x - k) < 1e-2; });
            if (spec.differentiable() && !near_kink) {
                const double fd = (cdf(spec, x + kFdStep) - cdf(spec, x - kFdStep)) / (2.0 * kFdStep);
                deriv.update(std::abs(fd - pdf(spec, x)), at);
            }
        }
        if (is_symmetric(spec.family)) suite.add(name + " symmetry", sym.error <= 1e-12, sym.text());
        if (spec.reversed) suite.add(name + " reversal", rev.error == 0.0, rev.text());
        if (spec.squares && !spec.reversed) suite.add(name + " squares", sq.error <= 1e-12, sq.text());
        if (spec.differentiable()) suite.add(name + " pdf", deriv.error <= 1e-5, deriv.text());
    }

    for (bool reversed : {false, true}) {
        for (bool squares : {false, true}) {
            DistributionSpec gamma;
            gamma.family = Family::Gamma;
            gamma.shape = 1.0;
            gamma.reversed = reversed;
            gamma.squares = squares;
            DistributionSpec expo = gamma;
            expo.family = Family::Exponential;
            expo.shape = 0.0;
            Worst diff;
            for (int i = 0; i <= 2000; ++i) {
                const double x = -20.0 + 40.0 * i / 2000.0;
                diff.update(std::abs(cdf(gamma, x) - cdf(expo, x)), "x = " + format_real(x));
            }
            suite.add(gamma.to_string() + " = " + expo.to_string(), diff.error <= 1e-10, diff.text());
        }
    }
    return suite.finish();
}

SuiteReport run_special_function_suite() {
    SuiteBuilder suite("special-functions");
    const double erf_tol = kSpecialFunctionTolerances.erf_abs_tol;
    const double gamma_tol = kSpecialFunctionTolerances.lower_incomplete_gamma_rel_tol;

    Worst e, ec;
    for (int i = 0; i <= 2400; ++i) {
        const double x = -6.0 + 12.0 * i / 2400.0;
        const long double ref = erf_reference(x);
        e.update(std::abs(static_cast<double>(erf(x) - ref)), "x = " + format_real(x));
        ec.update(std::abs(static_cast<double>(erfc(x) - (1.0L - ref))), "x = " + format_real(x));
    }
    suite.add("erf on [-6, 6]", e.error <= erf_tol, e.text());
    suite.add("erfc on [-6, 6]", ec.error <= erf_tol, ec.text());
    suite.add("erf(6) = 1", std::abs(erf(6.0) - 1.0) <= 1e-12, format_real(erf(6.0)));

    Worst g;
    for (double p : {0.1, 0.5, 1.0, 1.5, 2.0, 3.0, 5.0, 10.0}) {
        for (int i = 1; i <= 400; ++i) {
            const double x = 30.0 * i / 400.0;
            const long double ref = gamma_p_reference(p, x);
            const double rel = std::abs(static_cast<double>((regularized_lower_gamma(p, x) - ref) / ref));
            g.update(rel, "p = " + format_real(p) + ", x = " + format_real(x));
        }
    }
    suite.add("regularized lower gamma, p in [0.1, 10], x in (0, 30]", g.error <= gamma_tol, g.text());

    Worst half;
    for (int i = 0; i <= 400; ++i) {
        const double x = 25.0 * i / 400.0;
        half.update(std::abs(regularized_lower_gamma(0.5, x) - erf(std::sqrt(x))), "x = " + format_real(x));
    }
    suite.add("P(1/2, x) = erf(sqrt(x))", half.error <= 1e-12, half.text());
    return suite.finish();
}

SuiteReport run_gradient_suite(std::uint64_t seed) {
    constexpr int kSize = 32;
    constexpr int kTriangles = 6;
    constexpr double kStep = 1e-5;
    constexpr double kTol = 1e-3;
    SuiteBuilder suite("gradients");

    Rng rng(seed);
    GradientScene scene;
    for (int t = 0; t < kTriangles; ++t) {
        const Vec3 centre{rng.uniform(-0.6, 0.6), rng.uniform(-0.6, 0.6), rng.uniform(-0.6, 0.6)};
        const int base = static_cast<int>(scene.mesh.vertices.size());
        for (int k = 0; k < 3; ++k) {
            scene.mesh.vertices.push_back(centre + Vec3{rng.uniform(-0.4, 0.4), rng.uniform(-0.4, 0.4),
                                                        rng.uniform(-0.4, 0.4)});
        }
        scene.mesh.faces.push_back({base, base + 1, base + 2});
    }
    scene.camera.azimuth_deg = 20.0;
    scene.camera.elevation_deg = 15.0;
    scene.camera.distance = 3.0;
    scene.camera.width = scene.camera.height = kSize;
    scene.loss = LossKind::Mse;
    // Target: a hard render of the same triangles seen from a nearby viewpoint.
    Camera other = scene.camera;
    other.azimuth_deg += 8.0;
    scene.target = hard_render(transform_project(scene.mesh, other), kSize, kSize);

    const RendererEnumeration all = enumerate_renderers();
    const std::vector<TConormSpec> tconorms{TConormSpec{TConormFamily::Probabilistic, 0.0},
                                            TConormSpec{TConormFamily::Einstein, 0.0},
                                            TConormSpec{TConormFamily::Yager, 2.0}};
    for (const DistributionSpec& dist : all.distributions) {
        for (const TConormSpec& tc : tconorms) {
            RenderConfig rc;
            rc.distribution = dist;
            rc.tconorm = tc;
            rc.width = rc.height = kSize;
            rc.distance_scale = 2.0 / kSize;
            rc.tau = dist.squares ? 0.01 : 0.1;
            const GradientReport r =
                finite_difference_check(scene, rc, GradientParameters::Vertices, kStep, seed + 1);
            std::ostringstream detail;
            detail << "max rel error " << format_real(r.max_rel_error) << " at parameter " << r.argmax << ", checked "
                   << r.checked << ", excluded " << r.excluded.size();
            suite.add(dist.to_string() + " x " + tc.to_string(), r.max_rel_error < kTol && r.checked > 0,
                      detail.str());
        }
    }
    return suite.finish();
}

std::vector<SuiteReport> run_selftest(std::uint64_t seed) {
    std::vector<SuiteReport> out;
    out.push_back(run_tconorm_axiom_suite(seed));
    out.push_back(run_distribution_suite());
    out.push_back(run_special_function_suite());
    out.push_back(run_gradient_suite(seed));
    return out;
}

}  // namespace softsil
