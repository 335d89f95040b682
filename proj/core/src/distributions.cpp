#include "softsil/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "softsil/errors.hpp"
#include "softsil/special_functions.hpp"
#include "softsil/text.hpp"

namespace softsil {
namespace {

constexpr double kPi = std::numbers::pi;

struct FamilyInfo {
    Family family;
    std::string_view name;
    bool symmetric;
    bool bounded_left;
};

constexpr std::array<FamilyInfo, 15> kFamilyInfo = {{
    {Family::Heaviside, "heaviside", false, true},
    {Family::Uniform, "uniform", true, true},
    {Family::CubicHermite, "cubic-hermite", true, true},
    {Family::WignerSemicircle, "wigner-semicircle", true, true},
    {Family::Gaussian, "gaussian", true, false},
    {Family::Laplace, "laplace", true, false},
    {Family::Logistic, "logistic", true, false},
    {Family::HyperbolicSecant, "hyperbolic-secant", true, false},
    {Family::Cauchy, "cauchy", true, false},
    {Family::Reciprocal, "reciprocal", true, false},
    {Family::GumbelMax, "gumbel-max", false, false},
    {Family::GumbelMin, "gumbel-min", false, false},
    {Family::Exponential, "exponential", false, true},
    {Family::Levy, "levy", false, true},
    {Family::Gamma, "gamma", false, true},
}};

const FamilyInfo& info(Family family) { return kFamilyInfo[static_cast<std::size_t>(family)]; }

// Base CDF F of each family, before the squares / reversal / shift transforms.
double base_cdf(const DistributionSpec& spec, double y) {
    switch (spec.family) {
        case Family::Heaviside:
            return y < 0.0 ? 0.0 : 1.0;
        case Family::Uniform:
            if (y < -1.0) return 0.0;
            if (y > 1.0) return 1.0;
            return 0.5 * (1.0 + y);
        case Family::CubicHermite: {
            if (y < -1.0) return 0.0;
            if (y > 1.0) return 1.0;
            const double t = 0.5 * (y + 1.0);
            return t * t * (3.0 - 2.0 * t);
        }
        case Family::WignerSemicircle:
            if (y < -1.0) return 0.0;
            if (y > 1.0) return 1.0;
            return 0.5 + (y * std::sqrt(1.0 - y * y) + std::asin(y)) / kPi;
        case Family::Gaussian:
            return normal_cdf(y);
        case Family::Laplace:
            return y <= 0.0 ? 0.5 * std::exp(y) : 1.0 - 0.5 * std::exp(-y);
        case Family::Logistic: {
            const double e = std::exp(-std::abs(y));
            const double inv = 1.0 / (1.0 + e);
            return y >= 0.0 ? inv : e * inv;
        }
        case Family::HyperbolicSecant:
            return 2.0 / kPi * std::atan(std::exp(0.5 * kPi * y));
        case Family::Cauchy:
            return std::atan(y) / kPi + 0.5;
        case Family::Reciprocal:
            return y / (2.0 + 2.0 * std::abs(y)) + 0.5;
        case Family::GumbelMax:
            return std::exp(-std::exp(-y));
        case Family::GumbelMin:
            // Mirror of Gumbel-Max, 1 - exp(-exp(y)).
            return -std::expm1(-std::exp(y));
        case Family::Exponential:
            return y <= 0.0 ? 0.0 : -std::expm1(-y);
        case Family::Levy:
            return y <= 0.0 ? 0.0 : erfc(1.0 / std::sqrt(2.0 * y));
        case Family::Gamma:
            if (y <= 0.0) return 0.0;
            if (std::isinf(y)) return 1.0;
            return regularized_lower_gamma(spec.shape, y);
    }
    return 0.0;
}

double base_pdf(const DistributionSpec& spec, double y) {
    switch (spec.family) {
        case Family::Heaviside:
            return 0.0;
        case Family::Uniform:
            return std::abs(y) <= 1.0 ? 0.5 : 0.0;
        case Family::CubicHermite:
            return std::abs(y) <= 1.0 ? 0.75 * (1.0 - y * y) : 0.0;
        case Family::WignerSemicircle:
            return std::abs(y) <= 1.0 ? 2.0 / kPi * std::sqrt(1.0 - y * y) : 0.0;
        case Family::Gaussian:
            return std::exp(-0.5 * y * y) / std::sqrt(2.0 * kPi);
        case Family::Laplace:
            return 0.5 * std::exp(-std::abs(y));
        case Family::Logistic: {
            const double e = std::exp(-std::abs(y));
            const double inv = 1.0 / (1.0 + e);
            return e * inv * inv;
        }
        case Family::HyperbolicSecant:
            return 0.5 / std::cosh(0.5 * kPi * y);
        case Family::Cauchy:
            return 1.0 / (kPi * (1.0 + y * y));
        case Family::Reciprocal: {
            const double s = 1.0 + std::abs(y);
            return 0.5 / (s * s);
        }
        case Family::GumbelMax:
            return std::exp(-y - std::exp(-y));
        case Family::GumbelMin:
            return std::exp(y - std::exp(y));
        case Family::Exponential:
            return y < 0.0 ? 0.0 : std::exp(-y);
        case Family::Levy:
            if (y <= 0.0) return 0.0;
            return std::exp(-0.5 / y) / (std::sqrt(2.0 * kPi) * y * std::sqrt(y));
        case Family::Gamma:
            if (y <= 0.0 || std::isinf(y)) return 0.0;
            return std::exp((spec.shape - 1.0) * std::log(y) - y - std::lgamma(spec.shape));
    }
    return 0.0;
}

}  // namespace

std::string_view family_name(Family family) { return info(family).name; }

bool is_symmetric(Family family) { return info(family).symmetric; }

bool has_bounded_left_support(Family family) { return info(family).bounded_left; }

void DistributionSpec::validate() const {
    if (family == Family::Gamma) {
        if (!(shape > 0.0) || !std::isfinite(shape)) {
            throw ConfigError("gamma distribution requires a positive finite shape p");
        }
    } else if (shape != 0.0) {
        throw ConfigError(std::string(family_name(family)) + " does not take a shape parameter");
    }
    if (reversed && is_symmetric(family)) {
        throw ConfigError(std::string(family_name(family)) + " is symmetric; reversal has no effect");
    }
    if (!std::isfinite(shift)) throw ConfigError("distribution shift must be finite");
}

std::string DistributionSpec::to_string() const {
    std::string options;
    auto add = [&options](const std::string& item) {
        if (!options.empty()) options += ',';
        options += item;
    };
    if (family == Family::Gamma) add("p=" + format_real(shape));
    if (reversed) add("rev");
    if (squares) add("sq");
    if (shift != 0.0) add("shift=" + format_real(shift));
    std::string out(family_name(family));
    if (!options.empty()) out += "(" + options + ")";
    return out;
}

DistributionSpec DistributionSpec::parse(std::string_view text) {
    const SpecText parts = split_spec_text(text);
    DistributionSpec spec;
    bool found = false;
    for (const auto& fi : kFamilyInfo) {
        if (fi.name == parts.name) {
            spec.family = fi.family;
            found = true;
            break;
        }
    }
    if (!found) throw ConfigError("unknown distribution '" + parts.name + "'");

    bool have_shape = false;
    std::vector<std::string> keys;
    for (const auto& option : parts.options) {
        const std::string key = option.substr(0, option.find('='));
        if (std::find(keys.begin(), keys.end(), key) != keys.end()) {
            throw ConfigError("option '" + key + "' given twice in '" + std::string(text) + "'");
        }
        keys.push_back(key);
        if (option == "rev") {
            spec.reversed = true;
        } else if (option == "sq") {
            spec.squares = true;
        } else if (option.starts_with("p=")) {
            const auto value = parse_real(std::string_view(option).substr(2));
            if (!value) throw ConfigError("bad shape value in '" + option + "'");
            spec.shape = *value;
            have_shape = true;
            if (spec.family != Family::Gamma) {
                throw ConfigError(parts.name + " does not take a shape parameter");
            }
        } else if (option.starts_with("shift=")) {
            const auto value = parse_real(std::string_view(option).substr(6));
            if (!value) throw ConfigError("bad shift value in '" + option + "'");
            spec.shift = *value;
        } else {
            throw ConfigError("unknown distribution option '" + option + "'");
        }
    }
    if (spec.family == Family::Gamma && !have_shape) {
        throw ConfigError("gamma requires a shape, e.g. gamma(p=0.5)");
    }
    spec.validate();
    return spec;
}

double cdf(const DistributionSpec& spec, double x) {
    const double z = spec.reversed ? -x : x;
    const double w = spec.squares ? std::abs(z) * z : z;
    const double v = base_cdf(spec, w - spec.shift);
    return spec.reversed ? 1.0 - v : v;
}

double pdf(const DistributionSpec& spec, double x) {
    const double z = spec.reversed ? -x : x;
    const double w = spec.squares ? std::abs(z) * z : z;
    const double f = base_pdf(spec, w - spec.shift);
    if (f == 0.0) return 0.0;
    return spec.squares ? f * 2.0 * std::abs(z) : f;
}

CdfPdf cdf_and_pdf(const DistributionSpec& spec, double x) {
    if (spec.family != Family::Logistic) return {cdf(spec, x), pdf(spec, x)};
    const double z = spec.reversed ? -x : x;
    const double w = spec.squares ? std::abs(z) * z : z;
    const double y = w - spec.shift;
    const double e = std::exp(-std::abs(y));
    const double inv = 1.0 / (1.0 + e);
    const double v = y >= 0.0 ? inv : e * inv;
    const double f = e * inv * inv;
    return {spec.reversed ? 1.0 - v : v, spec.squares ? f * 2.0 * std::abs(z) : f};
}

ScaledArgument scaled_argument(const DistributionSpec& spec, double distance, double tau) {
    // For squares, cdf applies F(|x| x); choosing x = d / sqrt(tau) yields F(|d| d / tau).
    const double inv = spec.squares ? 1.0 / std::sqrt(tau) : 1.0 / tau;
    return {distance * inv, inv};
}

double left_cutoff(const DistributionSpec& spec, double threshold, double x_cap) {
    if (cdf(spec, -x_cap) >= threshold) return -x_cap;
    if (cdf(spec, 0.0) < threshold) return 0.0;
    double lo = -x_cap;  // cdf(lo) < threshold
    double hi = 0.0;     // cdf(hi) >= threshold
    for (int i = 0; i < 200 && hi - lo > 1e-12 * (1.0 + std::abs(lo)); ++i) {
        const double mid = 0.5 * (lo + hi);
        (cdf(spec, mid) < threshold ? lo : hi) = mid;
    }
    return lo;
}

std::vector<double> cdf_kinks(const DistributionSpec& spec) {
    std::vector<double> base;
    switch (spec.family) {
        case Family::Uniform:
        case Family::CubicHermite:
        case Family::WignerSemicircle:
            base = {-1.0, 1.0};
            break;
        case Family::Heaviside:
        case Family::Exponential:
        case Family::Levy:
        case Family::Gamma:
            base = {0.0};
            break;
        default:
            break;
    }
    std::vector<double> out;
    for (double k : base) {
        const double w = k + spec.shift;
        double z = spec.squares ? std::copysign(std::sqrt(std::abs(w)), w) : w;
        out.push_back(spec.reversed ? -z : z);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string distribution_grammar_help() {
    std::string names;
    for (const auto& fi : kFamilyInfo) {
        if (!names.empty()) names += ", ";
        names += fi.name;
    }
    return "Distribution grammar: NAME[(OPTIONS)] where NAME is one of\n  " + names +
           "\n  and OPTIONS is a comma-separated list of\n"
           "    p=REAL      Gamma shape (required for gamma)\n"
           "    rev         reversed variant 1 - F(-x) (asymmetric families only)\n"
           "    sq          squared-distance variant F(|d| d / tau)\n"
           "    shift=REAL  argument shift F(x - shift)\n"
           "  e.g. logistic, cauchy(sq), gamma(p=0.5,rev,sq)\n";
}

}  // namespace softsil
