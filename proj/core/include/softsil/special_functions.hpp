#pragma once

namespace softsil {

/// Accuracy targets the special-function routines are held to.
struct SpecialFunctionTolerances {
    double erf_abs_tol = 1e-10;
    double lower_incomplete_gamma_rel_tol = 1e-10;
};

inline constexpr SpecialFunctionTolerances kSpecialFunctionTolerances{};

/// Error function. Maclaurin series on |x| <= 2, continued fraction for erfc beyond.
double erf(double x);

/// Complementary error function, 1 - erf(x), accurate in the right tail.
double erfc(double x);

/// Standard normal CDF.
double normal_cdf(double x);

/// Lower incomplete gamma function gamma(p, x) (not regularized).
/// Requires p > 0 and x >= 0; throws ConfigError otherwise and NumericError
/// if the expansion fails to converge.
double lower_incomplete_gamma(double p, double x);

/// Regularized lower incomplete gamma P(p, x) = gamma(p, x) / Gamma(p).
double regularized_lower_gamma(double p, double x);

}  // namespace softsil
