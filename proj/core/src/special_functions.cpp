#include "softsil/special_functions.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "softsil/errors.hpp"

namespace softsil {
namespace {

constexpr int kMaxIterations = 10000;
constexpr double kEps = 1e-17;
constexpr double kTiny = 1e-300;
// Lentz iterations stop once the update factor is within rounding of 1.
constexpr double kFractionEps = 2.0 * std::numeric_limits<double>::epsilon();

constexpr int kSeriesTable = 64;

struct ReciprocalTables {
    std::array<double, kSeriesTable> inv{};      // 1 / n
    std::array<double, kSeriesTable> inv_odd{};  // 1 / (2n + 1)
    constexpr ReciprocalTables() {
        for (int n = 1; n < kSeriesTable; ++n) {
            inv[n] = 1.0 / n;
            inv_odd[n] = 1.0 / (2 * n + 1);
        }
    }
};
constexpr ReciprocalTables kReciprocals;

// Maclaurin series of erf; converges for all x but is only used on |x| <= 2
// where cancellation stays below 1e-15 and fewer than 64 terms are needed.
double erf_series(double x) {
    const double x2 = x * x;
    double term = x;  // (-1)^n x^(2n+1) / n!
    double sum = x;
    for (int n = 1; n < kSeriesTable; ++n) {
        term *= -x2 * kReciprocals.inv[n];
        const double contribution = term * kReciprocals.inv_odd[n];
        sum += contribution;
        if (std::abs(contribution) <= kEps * std::abs(sum)) {
            return sum * (2.0 / std::sqrt(std::numbers::pi));
        }
    }
    throw NumericError("erf series did not converge for x = " + std::to_string(x));
}

// erfc(x) = exp(-x^2)/sqrt(pi) / (x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))), x > 0.
// Evaluated with the modified Lentz algorithm.
double erfc_continued_fraction(double x) {
    double f = x;
    double c = x;
    double d = 0.0;
    for (int k = 1; k < kMaxIterations; ++k) {
        const double a = 0.5 * k;
        d = x + a * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = x + a / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = c * d;
        f *= delta;
        if (std::abs(delta - 1.0) <= kFractionEps) {
            return std::exp(-x * x) / std::sqrt(std::numbers::pi) / f;
        }
    }
    throw NumericError("erfc continued fraction did not converge for x = " + std::to_string(x));
}

void check_gamma_domain(double p, double x) {
    if (!(p > 0.0) || !std::isfinite(p)) {
        throw ConfigError("incomplete gamma: shape p must be positive and finite, got " + std::to_string(p));
    }
    if (!(x >= 0.0) || std::isnan(x)) {
        throw ConfigError("incomplete gamma: x must be nonnegative, got " + std::to_string(x));
    }
}

// P(p, x) by the power series, x < p + 1.
double gamma_p_series(double p, double x) {
    double term = 1.0 / p;
    double sum = term;
    double ap = p;
    for (int n = 1; n < kMaxIterations; ++n) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::abs(term) <= kEps * std::abs(sum)) {
            return sum * std::exp(p * std::log(x) - x - std::lgamma(p));
        }
    }
    throw NumericError("incomplete gamma series did not converge for p = " + std::to_string(p) +
                       ", x = " + std::to_string(x));
}

// Q(p, x) by the Legendre continued fraction, x >= p + 1.
double gamma_q_continued_fraction(double p, double x) {
    double b = x + 1.0 - p;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxIterations; ++i) {
        const double an = -i * (i - p);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) <= kFractionEps) {
            return std::exp(p * std::log(x) - x - std::lgamma(p)) * h;
        }
    }
    throw NumericError("incomplete gamma continued fraction did not converge for p = " +
                       std::to_string(p) + ", x = " + std::to_string(x));
}

}  // namespace

double erf(double x) {
    if (std::isnan(x)) return x;
    if (std::abs(x) <= 2.0) return erf_series(x);
    if (std::abs(x) > 27.0) return std::copysign(1.0, x);
    const double tail = erfc_continued_fraction(std::abs(x));
    return std::copysign(1.0 - tail, x);
}

double erfc(double x) {
    if (std::isnan(x)) return x;
    if (x > 27.0) return 0.0;
    if (x < -27.0) return 2.0;
    if (std::abs(x) <= 2.0) return 1.0 - erf_series(x);
    const double tail = erfc_continued_fraction(std::abs(x));
    return x > 0.0 ? tail : 2.0 - tail;
}

double normal_cdf(double x) { return 0.5 * erfc(-x / std::numbers::sqrt2); }

double regularized_lower_gamma(double p, double x) {
    check_gamma_domain(p, x);
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    if (x < p + 1.0) return gamma_p_series(p, x);
    return 1.0 - gamma_q_continued_fraction(p, x);
}

double lower_incomplete_gamma(double p, double x) {
    return regularized_lower_gamma(p, x) * std::tgamma(p);
}

}  // namespace softsil
