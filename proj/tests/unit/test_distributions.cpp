#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <string>

#include "softsil/distributions.hpp"
#include "softsil/errors.hpp"

using namespace softsil;

namespace {

constexpr double kPi = 3.14159265358979323846;

DistributionSpec spec(const std::string& text) { return DistributionSpec::parse(text); }

double normal(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// P(p, x) by its positive Taylor series, long double.
double gamma_oracle(double p, double x) {
    if (x <= 0.0) return 0.0;
    long double term = 1.0L / p;
    long double sum = term;
    for (int n = 1; n < 20000; ++n) {
        term *= static_cast<long double>(x) / (p + n);
        sum += term;
        if (term < 1e-24L * sum) break;
    }
    return static_cast<double>(sum * std::exp(p * std::log(static_cast<long double>(x)) - x - std::lgamma(p)));
}

struct ClosedForm {
    const char* text;
    std::function<double(double)> f;
};

const std::vector<ClosedForm>& closed_forms() {
    static const std::vector<ClosedForm> forms = {
        {"uniform", [](double x) { return x < -1 ? 0.0 : x > 1 ? 1.0 : 0.5 * (1 + x); }},
        {"cubic-hermite",
         [](double x) {
             const double y = (x + 1) / 2;
             return x < -1 ? 0.0 : x > 1 ? 1.0 : 3 * y * y - 2 * y * y * y;
         }},
        {"wigner-semicircle",
         [](double x) {
             return x < -1 ? 0.0 : x > 1 ? 1.0 : 0.5 + x * std::sqrt(1 - x * x) / kPi + std::asin(x) / kPi;
         }},
        {"gaussian", [](double x) { return 0.5 * (1 + std::erf(x / std::sqrt(2.0))); }},
        {"laplace", [](double x) { return x <= 0 ? 0.5 * std::exp(x) : 1 - 0.5 * std::exp(-x); }},
        {"logistic", [](double x) { return 1 / (1 + std::exp(-x)); }},
        {"hyperbolic-secant", [](double x) { return 2 / kPi * std::atan(std::exp(kPi / 2 * x)); }},
        {"cauchy", [](double x) { return std::atan(x) / kPi + 0.5; }},
        {"reciprocal", [](double x) { return x / (2 + 2 * std::abs(x)) + 0.5; }},
        {"gumbel-max", [](double x) { return std::exp(-std::exp(-x)); }},
        {"gumbel-min", [](double x) { return 1 - std::exp(-std::exp(x)); }},
        {"exponential", [](double x) { return x < 0 ? 0.0 : 1 - std::exp(-x); }},
        {"levy", [](double x) { return x <= 0 ? 0.0 : 2 - 2 * normal(std::sqrt(1 / x)); }},
        {"gamma(p=0.5)", [](double x) { return gamma_oracle(0.5, x); }},
        {"gamma(p=2)", [](double x) { return gamma_oracle(2.0, x); }},
    };
    return forms;
}

}  // namespace

TEST(Cdf, MatchesClosedForms) {
    for (const auto& form : closed_forms()) {
        const DistributionSpec s = spec(form.text);
        for (int i = 0; i <= 800; ++i) {
            const double x = -8.0 + 16.0 * i / 800.0 + 1e-3;
            EXPECT_NEAR(cdf(s, x), form.f(x), 1e-12) << form.text << " at x = " << x;
        }
    }
}

TEST(Cdf, DocumentedExamples) {
    EXPECT_EQ(cdf(spec("logistic"), 0.0), 0.5);
    EXPECT_EQ(cdf(spec("uniform"), 1.0), 1.0);
    EXPECT_EQ(cdf(spec("uniform"), -1.0), 0.0);
    EXPECT_NEAR(cdf(spec("gamma(p=1)"), 1.0), 1.0 - std::exp(-1.0), 1e-12);
    EXPECT_NEAR(cdf(spec("gamma(p=1)"), 1.0), 0.63212, 1e-5);
    for (double x : {-5.0, -1e-9, 0.0}) EXPECT_EQ(cdf(spec("levy"), x), 0.0);
    EXPECT_EQ(cdf(spec("heaviside"), 0.0), 1.0);
    EXPECT_EQ(cdf(spec("heaviside"), -1e-300), 0.0);
}

TEST(Cdf, GumbelMinIsTheIncreasingForm) {
    // The increasing Gumbel-Min CDF is 1 - exp(-exp(x)); exp(-exp(x)) is its survival function.
    EXPECT_NEAR(cdf(spec("gumbel-min"), 0.0), 1.0 - std::exp(-1.0), 1e-15);
    EXPECT_NEAR(cdf(spec("gumbel-min"), 0.0), 0.63212, 1e-5);
    EXPECT_LT(cdf(spec("gumbel-min"), -1.0), cdf(spec("gumbel-min"), 1.0));
}

TEST(Cdf, ReversalIsExact) {
    for (const char* text : {"exponential", "levy", "gumbel-max", "gamma(p=0.5)", "gamma(p=2,sq)"}) {
        DistributionSpec base = spec(text);
        DistributionSpec rev = base;
        rev.reversed = true;
        for (int i = 0; i <= 200; ++i) {
            const double x = -5.0 + 10.0 * i / 200.0;
            EXPECT_EQ(cdf(rev, x), 1.0 - cdf(base, -x)) << text << " at " << x;
        }
    }
}

TEST(Cdf, SquaresAppliesToSignedSquare) {
    for (const char* text : {"logistic", "cauchy", "gamma(p=0.5)", "levy", "uniform"}) {
        const DistributionSpec base = spec(text);
        DistributionSpec sq = base;
        sq.squares = true;
        for (int i = 0; i <= 200; ++i) {
            const double x = -4.0 + 8.0 * i / 200.0;
            EXPECT_NEAR(cdf(sq, x), cdf(base, std::abs(x) * x), 1e-12) << text << " at " << x;
        }
    }
}

TEST(Cdf, ReversedSquaresComposesReversalOutside) {
    const DistributionSpec rs = spec("levy(rev,sq)");
    const DistributionSpec s = spec("levy(sq)");
    for (double x : {-2.0, -0.5, 0.3, 1.7}) EXPECT_EQ(cdf(rs, x), 1.0 - cdf(s, -x));
}

TEST(Cdf, ShiftMovesTheArgument) {
    const DistributionSpec s = spec("exponential(shift=0.25)");
    EXPECT_EQ(cdf(s, 0.25), 0.0);
    EXPECT_NEAR(cdf(s, 1.25), 1.0 - std::exp(-1.0), 1e-15);
}

TEST(Pdf, DocumentedExamples) {
    const DistributionSpec logistic = spec("logistic");
    const double h = 1e-5;
    EXPECT_NEAR(pdf(logistic, 0.0), (cdf(logistic, h) - cdf(logistic, -h)) / (2 * h), 1e-10);
    EXPECT_DOUBLE_EQ(pdf(logistic, 0.0), 0.25);
    for (double x : {-3.0, -0.1, 0.1, 3.0}) EXPECT_EQ(pdf(spec("heaviside"), x), 0.0);
    EXPECT_EQ(pdf(spec("uniform"), 0.0), 0.5);
    EXPECT_EQ(pdf(spec("uniform"), 1.0), 0.5);
    EXPECT_EQ(pdf(spec("uniform"), 1.5), 0.0);
}

TEST(Pdf, CentralDifferencesAwayFromKinks) {
    const double h = 1e-6;
    for (const auto& form : closed_forms()) {
        for (const char* suffix : {"", "sq"}) {
            std::string text = form.text;
            if (*suffix) text = text.back() == ')' ? text.substr(0, text.size() - 1) + ",sq)" : text + "(sq)";
            const DistributionSpec s = spec(text);
            const auto kinks = cdf_kinks(s);
            for (int i = 0; i <= 400; ++i) {
                const double x = -6.0 + 12.0 * i / 400.0 + 7e-3;
                bool near = false;
                for (double k : kinks) near = near || std::abs(x - k) < 0.05;
                if (near) continue;
                const double fd = (cdf(s, x + h) - cdf(s, x - h)) / (2 * h);
                EXPECT_NEAR(pdf(s, x), fd, 1e-5 * std::max(1.0, std::abs(fd))) << text << " at " << x;
            }
        }
    }
}

TEST(CdfAndPdf, AgreesWithSeparateCalls) {
    for (const char* text : {"logistic", "logistic(sq)", "gaussian", "gamma(p=0.5,rev)", "uniform"}) {
        const DistributionSpec s = spec(text);
        for (int i = 0; i <= 100; ++i) {
            const double x = -5.0 + 0.1 * i;
            const CdfPdf both = cdf_and_pdf(s, x);
            EXPECT_EQ(both.cdf, cdf(s, x)) << text;
            EXPECT_EQ(both.pdf, pdf(s, x)) << text;
        }
    }
}

TEST(ScaledArgument, SquaresUsesRootTemperature) {
    const ScaledArgument plain = scaled_argument(spec("logistic"), 2.0, 0.5);
    EXPECT_EQ(plain.x, 4.0);
    EXPECT_EQ(plain.dx_dd, 2.0);
    const DistributionSpec sq = spec("logistic(sq)");
    const ScaledArgument a = scaled_argument(sq, -3.0, 0.25);
    // cdf(sq, x) = F(|x| x) must equal F(|d| d / tau).
    EXPECT_NEAR(std::abs(a.x) * a.x, -9.0 / 0.25, 1e-12);
}

TEST(LeftCutoff, BracketsTheThreshold) {
    for (const char* text : {"logistic", "gaussian", "gumbel-max", "uniform", "levy(rev)"}) {
        const DistributionSpec s = spec(text);
        const double c = left_cutoff(s, 1e-6, 1e3);
        if (c > -1e3) {
            EXPECT_LT(cdf(s, c - 1e-6), 1e-6) << text;
            EXPECT_GE(cdf(s, c + 1e-6), 1e-6 * (1 - 1e-9)) << text;
        }
    }
    EXPECT_EQ(left_cutoff(spec("cauchy"), 1e-6, 100.0), -100.0);
    EXPECT_EQ(left_cutoff(spec("exponential"), 1e-6, 100.0), 0.0);
}

TEST(Kinks, SupportEdgesTransformWithTheSpec) {
    EXPECT_EQ(cdf_kinks(spec("uniform")), (std::vector<double>{-1.0, 1.0}));
    EXPECT_EQ(cdf_kinks(spec("logistic")), std::vector<double>{});
    EXPECT_EQ(cdf_kinks(spec("exponential(rev)")), std::vector<double>{-0.0});
    const auto k = cdf_kinks(spec("exponential(shift=4,sq)"));
    ASSERT_EQ(k.size(), 1U);
    EXPECT_DOUBLE_EQ(k[0], 2.0);
}

TEST(Spec, RoundTripsThroughText) {
    for (const char* text : {"logistic", "cauchy(sq)", "gamma(p=0.5,rev,sq)", "levy(rev,shift=0.25)", "heaviside",
                             "gumbel-min(sq)", "exponential(rev)"}) {
        const DistributionSpec s = spec(text);
        EXPECT_EQ(s.to_string(), text);
        EXPECT_EQ(DistributionSpec::parse(s.to_string()), s);
    }
}

TEST(Spec, RejectsInvalidCombinations) {
    for (const char* text : {"gamma", "gamma(p=0)", "gamma(p=-1)", "logistic(rev)", "cauchy(p=2)", "levy(bogus)",
                             "nosuch", "logistic(sq,sq)", "logistic()", "gamma(p=nan)", ""}) {
        EXPECT_THROW(DistributionSpec::parse(text), ConfigError) << text;
    }
}

TEST(Families, SymmetryFlags) {
    for (Family f : kAllFamilies) {
        DistributionSpec s;
        s.family = f;
        s.shape = f == Family::Gamma ? 1.0 : 0.0;
        if (!is_symmetric(f)) continue;
        for (double x : {0.1, 0.5, 0.9, 2.0, 7.0}) EXPECT_NEAR(cdf(s, x) + cdf(s, -x), 1.0, 1e-12) << family_name(f);
    }
}
