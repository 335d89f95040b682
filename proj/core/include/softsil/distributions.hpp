#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace softsil {

/// Perturbation distributions whose CDFs turn a scaled signed distance into
/// an occlusion probability.
enum class Family {
    Heaviside,
    Uniform,
    CubicHermite,
    WignerSemicircle,
    Gaussian,
    Laplace,
    Logistic,
    HyperbolicSecant,
    Cauchy,
    Reciprocal,
    GumbelMax,
    GumbelMin,
    Exponential,
    Levy,
    Gamma,
};

inline constexpr std::array<Family, 15> kAllFamilies = {
    Family::Heaviside,   Family::Uniform,     Family::CubicHermite, Family::WignerSemicircle,
    Family::Gaussian,    Family::Laplace,     Family::Logistic,     Family::HyperbolicSecant,
    Family::Cauchy,      Family::Reciprocal,  Family::GumbelMax,    Family::GumbelMin,
    Family::Exponential, Family::Levy,        Family::Gamma,
};

std::string_view family_name(Family family);

/// True when F(x) + F(-x) = 1, i.e. reversal is the identity.
bool is_symmetric(Family family);

/// True for families whose CDF is identically zero below some finite x.
bool has_bounded_left_support(Family family);

/// A concrete sigmoid: family, the squared-argument variant, the reversed
/// variant F_rev(x) = 1 - F(-x), the Gamma shape and an optional shift.
///
/// Textual form (round-trippable): `logistic`, `cauchy(sq)`,
/// `gamma(p=0.5,rev,sq)`, `levy(rev,shift=0.25)`.
struct DistributionSpec {
    Family family = Family::Logistic;
    bool squares = false;
    bool reversed = false;
    double shape = 0.0;  // Gamma only
    double shift = 0.0;

    /// Throws ConfigError when the combination is not meaningful.
    void validate() const;

    bool differentiable() const { return family != Family::Heaviside; }

    std::string to_string() const;
    static DistributionSpec parse(std::string_view text);

    friend bool operator==(const DistributionSpec&, const DistributionSpec&) = default;
};

/// Value of the (possibly squared / reversed / shifted) CDF at x.
double cdf(const DistributionSpec& spec, double x);

/// Derivative of cdf with respect to x. At the kinks of the finite-support
/// families the inner one-sided derivative is returned (0.5 for Uniform at +-1).
double pdf(const DistributionSpec& spec, double x);

/// cdf and pdf at the same argument, sharing work where the family allows it.
struct CdfPdf {
    double cdf = 0.0;
    double pdf = 0.0;
};
CdfPdf cdf_and_pdf(const DistributionSpec& spec, double x);

/// Maps a signed distance to the CDF argument so that cdf(spec, x) equals
/// F(d / tau) or, for the squared variant, F(|d| d / tau).
struct ScaledArgument {
    double x = 0.0;
    double dx_dd = 0.0;
};
ScaledArgument scaled_argument(const DistributionSpec& spec, double distance, double tau);

/// Smallest argument below which cdf stays under `threshold`, searched on
/// [-x_cap, 0]. Returns -x_cap when the left tail is heavier than the cap.
double left_cutoff(const DistributionSpec& spec, double threshold, double x_cap);

/// Arguments x at which cdf is not continuously differentiable (support edges
/// and one-sided origins), sorted ascending. Empty for smooth families.
std::vector<double> cdf_kinks(const DistributionSpec& spec);

/// Grammar summary for --help output.
std::string distribution_grammar_help();

}  // namespace softsil
