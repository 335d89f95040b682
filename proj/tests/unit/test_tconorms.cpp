#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "softsil/errors.hpp"
#include "softsil/tconorms.hpp"

using namespace softsil;

namespace {

TConormSpec tc(const char* text) { return TConormSpec::parse(text); }

// T-norm closed forms, written out independently of the library.
struct TNormForm {
    std::string text;
    std::function<double(double, double)> f;
};

std::string with_p(const char* family, double p) {
    const std::string v = p == 0.5 ? "0.5" : p == 2.0 ? "2" : "4";
    return std::string(family) + "(p=" + v + ")";
}

std::vector<TNormForm> tnorm_forms() {
    std::vector<TNormForm> out = {
        {"max", [](double a, double b) { return std::min(a, b); }},
        {"probabilistic", [](double a, double b) { return a * b; }},
        {"einstein", [](double a, double b) { return a * b / (2 - a - b + a * b); }},
    };
    for (double p : {0.5, 2.0, 4.0}) {
        out.push_back({with_p("hamacher", p),
                       [p](double a, double b) { return a * b / (p + (1 - p) * (a + b - a * b)); }});
        out.push_back({with_p("frank", p), [p](double a, double b) {
                           return std::log1p((std::pow(p, a) - 1) * (std::pow(p, b) - 1) / (p - 1)) / std::log(p);
                       }});
        out.push_back({with_p("yager", p), [p](double a, double b) {
                           return std::max(0.0, 1 - std::pow(std::pow(1 - a, p) + std::pow(1 - b, p), 1 / p));
                       }});
        out.push_back({with_p("aczel-alsina", p), [p](double a, double b) {
                           return std::exp(-std::pow(std::pow(std::abs(std::log(a)), p) +
                                                         std::pow(std::abs(std::log(b)), p),
                                                     1 / p));
                       }});
        out.push_back({with_p("dombi", p), [p](double a, double b) {
                           return 1 / (1 + std::pow(std::pow((1 - a) / a, p) + std::pow((1 - b) / b, p), 1 / p));
                       }});
        out.push_back({"schweizer-sklar(p=-" + with_p("", p).substr(3), [p](double a, double b) {
                           return std::pow(std::pow(a, -p) + std::pow(b, -p) - 1, -1 / p);
                       }});
    }
    return out;
}

}  // namespace

TEST(TConorm, DocumentedExamples) {
    EXPECT_DOUBLE_EQ(tconorm(tc("probabilistic"), 0.5, 0.5), 0.75);
    EXPECT_DOUBLE_EQ(tconorm(tc("einstein"), 0.5, 0.5), 0.8);
    EXPECT_EQ(tconorm(tc("yager(p=2)"), 0.8, 0.8), 1.0);
    EXPECT_DOUBLE_EQ(tconorm(tc("average"), 0.2, 0.6), 0.4);
    for (const char* text : {"max", "probabilistic", "einstein", "hamacher(p=0.5)", "frank(p=4)", "yager(p=0.5)",
                             "aczel-alsina(p=2)", "dombi(p=4)", "schweizer-sklar(p=-2)"}) {
        for (double a : {0.0, 0.13, 0.5, 0.99, 1.0}) {
            EXPECT_NEAR(tconorm(tc(text), a, 0.0), a, 1e-12) << text;
            EXPECT_NEAR(tconorm(tc(text), 0.0, a), a, 1e-12) << text;
            EXPECT_EQ(tconorm(tc(text), 1.0, a), 1.0) << text;
        }
    }
}

TEST(TConorm, HamacherCoincidences) {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 10000; ++i) {
        const double a = u(gen), b = u(gen);
        EXPECT_NEAR(tconorm(tc("hamacher(p=1)"), a, b), tconorm(tc("probabilistic"), a, b), 1e-12);
        EXPECT_NEAR(tconorm(tc("aczel-alsina(p=1)"), a, b), tconorm(tc("probabilistic"), a, b), 1e-12);
        EXPECT_NEAR(tconorm(tc("hamacher(p=2)"), a, b), tconorm(tc("einstein"), a, b), 1e-12);
    }
}

TEST(TConorm, MaxIsTheLowerBound) {
    std::mt19937_64 gen(12);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (const char* text : {"probabilistic", "einstein", "hamacher(p=4)", "frank(p=0.5)", "yager(p=1)",
                             "aczel-alsina(p=0.5)", "dombi(p=1)", "schweizer-sklar(p=-0.5)"}) {
        for (int i = 0; i < 10000; ++i) {
            const double a = u(gen), b = u(gen);
            EXPECT_GE(tconorm(tc(text), a, b), std::max(a, b) - 1e-12) << text;
        }
    }
}

TEST(TNormDual, MatchesClosedForms) {
    std::mt19937_64 gen(13);
    std::uniform_real_distribution<double> u(0.01, 0.99);
    for (const auto& form : tnorm_forms()) {
        for (int i = 0; i < 2000; ++i) {
            const double a = u(gen), b = u(gen);
            EXPECT_NEAR(tnorm_dual(TConormSpec::parse(form.text), a, b), form.f(a, b), 1e-12) << form.text << " at " << a << ", " << b;
        }
    }
}

TEST(TNormDual, Examples) {
    EXPECT_DOUBLE_EQ(tnorm_dual(tc("probabilistic"), 0.5, 0.5), 0.25);
    EXPECT_NEAR(tnorm_dual(tc("yager(p=2)"), 0.5, 0.5), 1 - std::sqrt(0.5), 1e-15);
    for (const char* text : {"max", "einstein", "frank(p=2)", "dombi(p=0.5)", "aczel-alsina(p=4)"}) {
        for (double a : {0.0, 0.3, 1.0}) EXPECT_NEAR(tnorm_dual(tc(text), a, 1.0), a, 1e-12) << text;
    }
}

TEST(Aggregate, ProbabilisticEqualsProductForm) {
    std::mt19937_64 gen(14);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> p(10);
        long double keep = 1.0L;
        for (double& v : p) {
            v = u(gen);
            keep *= 1.0L - v;
        }
        EXPECT_NEAR(aggregate(tc("probabilistic"), p), static_cast<double>(1.0L - keep), 1e-12);
    }
}

TEST(Aggregate, SmallCases) {
    const std::vector<double> v{0.2, 0.9, 0.4};
    EXPECT_EQ(aggregate(tc("max"), v), 0.9);
    EXPECT_EQ(aggregate(tc("probabilistic"), std::vector<double>{}), 0.0);
    EXPECT_NEAR(aggregate(tc("average"), v), 0.5, 1e-15);
    // Left fold in the given order.
    const TConormSpec y = tc("yager(p=0.5)");
    EXPECT_EQ(aggregate(y, v), tconorm(y, tconorm(y, 0.2, 0.9), 0.4));
}

TEST(Partials, MatchCentralDifferences) {
    const double h = 1e-6;
    for (const char* text : {"probabilistic", "einstein", "hamacher(p=0.5)", "frank(p=4)", "yager(p=2)",
                             "aczel-alsina(p=2)", "dombi(p=0.5)", "schweizer-sklar(p=-4)", "average"}) {
        const TConormSpec s = tc(text);
        for (double a : {0.1, 0.35, 0.6}) {
            for (double b : {0.05, 0.3, 0.55}) {
                const TConormPartials p = tconorm_partials(s, a, b);
                EXPECT_DOUBLE_EQ(p.value, tconorm(s, a, b)) << text;
                EXPECT_NEAR(p.da, (tconorm(s, a + h, b) - tconorm(s, a - h, b)) / (2 * h), 1e-6) << text;
                EXPECT_NEAR(p.db, (tconorm(s, a, b + h) - tconorm(s, a, b - h)) / (2 * h), 1e-6) << text;
            }
        }
    }
}

TEST(Partials, YagerPlateauIsFlat) {
    const TConormPartials p = tconorm_partials(tc("yager(p=2)"), 0.8, 0.8);
    EXPECT_EQ(p.value, 1.0);
    EXPECT_EQ(p.da, 0.0);
    EXPECT_EQ(p.db, 0.0);
}

TEST(Regime, MarksBranchSides) {
    EXPECT_NE(tconorm_regime(tc("max"), 0.2, 0.7), tconorm_regime(tc("max"), 0.7, 0.2));
    EXPECT_NE(tconorm_regime(tc("yager(p=2)"), 0.8, 0.8), tconorm_regime(tc("yager(p=2)"), 0.3, 0.3));
    EXPECT_EQ(tconorm_regime(tc("probabilistic"), 0.2, 0.7), tconorm_regime(tc("probabilistic"), 0.9, 0.1));
}

TEST(Spec, RoundTripAndRanges) {
    for (const char* text : {"max", "probabilistic", "einstein", "average", "yager(p=2)", "schweizer-sklar(p=-2)",
                             "aczel-alsina(p=0.5)", "hamacher(p=4)", "frank(p=0.5)", "dombi(p=1)"}) {
        EXPECT_EQ(tc(text).to_string(), text);
    }
    for (const char* text : {"frank(p=1)", "frank(p=0)", "yager(p=-1)", "schweizer-sklar(p=1)", "dombi",
                             "hamacher(p=0)", "max(p=2)", "drastic", "yager(p=inf)"}) {
        EXPECT_THROW(TConormSpec::parse(text), ConfigError) << text;
    }
    EXPECT_FALSE(tc("average").is_tconorm());
    EXPECT_TRUE(tc("max").is_tconorm());
}
