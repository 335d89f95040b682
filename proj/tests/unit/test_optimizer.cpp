#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "softsil/errors.hpp"
#include "softsil/optimizer.hpp"

using namespace softsil;

TEST(Adam, ZeroGradientLeavesParametersAlone) {
    AdamState s = AdamState::create({1.0, -2.0, 3.5}, 0.1);
    const std::vector<double> g(3, 0.0);
    for (int i = 0; i < 5; ++i) adam_step(s, g);
    EXPECT_EQ(s.params, (std::vector<double>{1.0, -2.0, 3.5}));
    EXPECT_EQ(s.step, 5);
}

TEST(Adam, FirstStepMovesByLearningRateAgainstTheSign) {
    AdamState s = AdamState::create({0.0, 0.0, 0.0}, 0.05);
    const std::vector<double> g{3.0, -0.002, 1e4};
    adam_step(s, g);
    EXPECT_NEAR(s.params[0], -0.05, 1e-9);
    EXPECT_NEAR(s.params[1], 0.05, 1e-6);
    EXPECT_NEAR(s.params[2], -0.05, 1e-9);
}

TEST(Adam, ConstantGradientKeepsTheStepNearTheLearningRate) {
    AdamState s = AdamState::create({0.0}, 0.2);
    const std::vector<double> g{0.7};
    adam_step(s, g);
    const double after_one = s.params[0];
    adam_step(s, g);
    EXPECT_NEAR(s.params[0] - after_one, -0.2, 1e-8);
}

TEST(Adam, InvariantToGradientScale) {
    std::mt19937_64 gen(41);
    std::normal_distribution<double> n(0.0, 1.0);
    AdamState a = AdamState::create({0.3, -0.1}, 0.01);
    AdamState b = a;
    for (int i = 0; i < 20; ++i) {
        const std::vector<double> g{n(gen), n(gen)};
        const std::vector<double> big{g[0] * 1000.0, g[1] * 1000.0};
        adam_step(a, g);
        adam_step(b, big);
    }
    EXPECT_NEAR(a.params[0], b.params[0], 1e-6);
    EXPECT_NEAR(a.params[1], b.params[1], 1e-6);
}

TEST(Adam, MatchesAReferenceUpdate) {
    std::mt19937_64 gen(42);
    std::normal_distribution<double> n(0.0, 1.0);
    AdamState s = AdamState::create({0.5}, 0.03);
    double x = 0.5, m = 0.0, v = 0.0;
    for (int t = 1; t <= 30; ++t) {
        const double g = n(gen);
        adam_step(s, std::vector<double>{g});
        m = 0.5 * m + 0.5 * g;
        v = 0.95 * v + 0.05 * g * g;
        x -= 0.03 * (m / (1 - std::pow(0.5, t))) / (std::sqrt(v / (1 - std::pow(0.95, t))) + 1e-8);
    }
    EXPECT_NEAR(s.params[0], x, 1e-12);
}

TEST(Adam, NonFiniteGradientIsReportedWithItsIndex) {
    AdamState s = AdamState::create({1.0, 2.0, 3.0}, 0.1);
    const AdamState before = s;
    const std::vector<double> g{0.1, 0.2, std::numeric_limits<double>::quiet_NaN()};
    try {
        adam_step(s, g);
        FAIL() << "expected NumericError";
    } catch (const NumericError& e) {
        EXPECT_NE(std::string(e.what()).find("2"), std::string::npos);
    }
    EXPECT_EQ(s.params, before.params);
    EXPECT_EQ(s.step, 0);
    const std::vector<double> inf{INFINITY, 0.0, 0.0};
    EXPECT_THROW(adam_step(s, inf), NumericError);
    EXPECT_THROW(adam_step(s, std::vector<double>{1.0}), ConfigError);
}

TEST(Schedule, LogInterpolationEndpointsAndMidpoint) {
    Schedule s{Schedule::Kind::LogInterpolate, 1e-1, 1e-7, 100};
    EXPECT_DOUBLE_EQ(schedule_value(s, 0), 1e-1);
    EXPECT_DOUBLE_EQ(schedule_value(s, 100), 1e-7);
    EXPECT_NEAR(schedule_value(s, 50), 1e-4, 1e-16);
    double previous = INFINITY;
    for (long i = 0; i <= 100; ++i) {
        const double v = schedule_value(s, i);
        EXPECT_LT(v, previous);
        previous = v;
    }
    EXPECT_THROW(schedule_value(s, 101), ConfigError);
    EXPECT_THROW(schedule_value(s, -1), ConfigError);
}

TEST(Schedule, ConstantIgnoresTheStep) {
    Schedule s{Schedule::Kind::Constant, 0.3, 0.3, 10};
    for (long i = 0; i <= 10; ++i) EXPECT_EQ(schedule_value(s, i), 0.3);
    s.start = 0.0;
    EXPECT_THROW(schedule_value(s, 0), ConfigError);
}
