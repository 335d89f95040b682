#include "softsil/tconorms.hpp"

#include <algorithm>
#include <cmath>

#include "softsil/errors.hpp"
#include "softsil/text.hpp"

namespace softsil {
namespace {

struct TConormInfo {
    TConormFamily family;
    std::string_view name;
    bool parametric;
};

constexpr std::array<TConormInfo, 10> kTConormInfo = {{
    {TConormFamily::Max, "max", false},
    {TConormFamily::Probabilistic, "probabilistic", false},
    {TConormFamily::Einstein, "einstein", false},
    {TConormFamily::Hamacher, "hamacher", true},
    {TConormFamily::Frank, "frank", true},
    {TConormFamily::Yager, "yager", true},
    {TConormFamily::AczelAlsina, "aczel-alsina", true},
    {TConormFamily::Dombi, "dombi", true},
    {TConormFamily::SchweizerSklar, "schweizer-sklar", true},
    {TConormFamily::Average, "average", false},
}};

const TConormInfo& info(TConormFamily family) { return kTConormInfo[static_cast<std::size_t>(family)]; }

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

// Non-finite partials only arise at a = 0 for p < 1 (infinite slope); they never
// reach the renderer because zero occupancies are skipped by the fold.
double finite_or_zero(double v) { return std::isfinite(v) ? v : 0.0; }

}  // namespace

std::string_view tconorm_family_name(TConormFamily family) { return info(family).name; }

bool is_parametric(TConormFamily family) { return info(family).parametric; }

void TConormSpec::validate() const {
    const std::string name(tconorm_family_name(family));
    if (!is_parametric(family)) {
        if (p != 0.0) throw ConfigError(name + " does not take a parameter");
        return;
    }
    if (!std::isfinite(p)) throw ConfigError(name + " parameter must be finite");
    switch (family) {
        case TConormFamily::SchweizerSklar:
            if (!(p < 0.0)) throw ConfigError("schweizer-sklar requires p in (-inf, 0), got " + format_real(p));
            break;
        case TConormFamily::Frank:
            if (!(p > 0.0) || p == 1.0) {
                throw ConfigError("frank requires p in (0, inf) with p != 1, got " + format_real(p));
            }
            break;
        default:
            if (!(p > 0.0)) throw ConfigError(name + " requires p in (0, inf), got " + format_real(p));
            break;
    }
}

std::string TConormSpec::to_string() const {
    std::string out(tconorm_family_name(family));
    if (is_parametric(family)) out += "(p=" + format_real(p) + ")";
    return out;
}

TConormSpec TConormSpec::parse(std::string_view text) {
    const SpecText parts = split_spec_text(text);
    TConormSpec spec;
    bool found = false;
    for (const auto& ti : kTConormInfo) {
        if (ti.name == parts.name) {
            spec.family = ti.family;
            found = true;
            break;
        }
    }
    if (!found) throw ConfigError("unknown t-conorm '" + parts.name + "'");
    if (is_parametric(spec.family)) {
        if (parts.options.size() != 1 || !parts.options[0].starts_with("p=")) {
            throw ConfigError(parts.name + " requires exactly one option p=REAL");
        }
        const auto value = parse_real(std::string_view(parts.options[0]).substr(2));
        if (!value) throw ConfigError("bad parameter in '" + std::string(text) + "'");
        spec.p = *value;
    } else if (!parts.options.empty()) {
        throw ConfigError(parts.name + " takes no options");
    }
    spec.validate();
    return spec;
}

double tconorm(const TConormSpec& spec, double a, double b) {
    if (spec.family == TConormFamily::Average) return 0.5 * (a + b);
    if (a == 0.0) return b;
    if (b == 0.0) return a;
    if (a == 1.0 || b == 1.0) return 1.0;
    const double p = spec.p;
    switch (spec.family) {
        case TConormFamily::Max:
            return std::max(a, b);
        case TConormFamily::Probabilistic:
            return clamp01(a + b - a * b);
        case TConormFamily::Einstein:
            return clamp01((a + b) / (1.0 + a * b));
        case TConormFamily::Hamacher:
            return clamp01((a + b + (p - 2.0) * a * b) / (1.0 + (p - 1.0) * a * b));
        case TConormFamily::Frank: {
            const double ea = std::pow(p, 1.0 - a) - 1.0;
            const double eb = std::pow(p, 1.0 - b) - 1.0;
            return clamp01(1.0 - std::log1p(ea * eb / (p - 1.0)) / std::log(p));
        }
        case TConormFamily::Yager:
            return std::min(1.0, std::pow(std::pow(a, p) + std::pow(b, p), 1.0 / p));
        case TConormFamily::AczelAlsina: {
            const double la = -std::log1p(-a);
            const double lb = -std::log1p(-b);
            const double z = std::pow(std::pow(la, p) + std::pow(lb, p), 1.0 / p);
            return clamp01(-std::expm1(-z));
        }
        case TConormFamily::Dombi: {
            const double ra = a / (1.0 - a);
            const double rb = b / (1.0 - b);
            const double z = std::pow(std::pow(ra, p) + std::pow(rb, p), 1.0 / p);
            return clamp01(z / (1.0 + z));
        }
        case TConormFamily::SchweizerSklar: {
            const double w = std::pow(1.0 - a, p) + std::pow(1.0 - b, p) - 1.0;
            return clamp01(1.0 - std::pow(w, 1.0 / p));
        }
        case TConormFamily::Average:
            break;
    }
    return 0.0;
}

int tconorm_regime(const TConormSpec& spec, double a, double b) {
    switch (spec.family) {
        case TConormFamily::Max:
            return a >= b ? 0 : 1;
        case TConormFamily::Yager:
            return std::pow(a, spec.p) + std::pow(b, spec.p) >= 1.0 ? 1 : 0;
        default:
            return 0;
    }
}

TConormPartials tconorm_partials(const TConormSpec& spec, double a, double b) {
    TConormPartials out;
    const double p = spec.p;
    if (spec.family == TConormFamily::Average) return {0.5 * (a + b), 0.5, 0.5};
    if (spec.family == TConormFamily::Max) {
        const bool first = a >= b;
        return {first ? a : b, first ? 1.0 : 0.0, first ? 0.0 : 1.0};
    }
    if (a == 1.0 || b == 1.0) return {1.0, 0.0, 0.0};
    out.value = tconorm(spec, a, b);
    switch (spec.family) {
        case TConormFamily::Probabilistic:
            out.da = 1.0 - b;
            out.db = 1.0 - a;
            break;
        case TConormFamily::Einstein: {
            const double den = (1.0 + a * b) * (1.0 + a * b);
            out.da = (1.0 - b * b) / den;
            out.db = (1.0 - a * a) / den;
            break;
        }
        case TConormFamily::Hamacher: {
            const double num = a + b + (p - 2.0) * a * b;
            const double den = 1.0 + (p - 1.0) * a * b;
            out.da = ((1.0 + (p - 2.0) * b) * den - num * (p - 1.0) * b) / (den * den);
            out.db = ((1.0 + (p - 2.0) * a) * den - num * (p - 1.0) * a) / (den * den);
            break;
        }
        case TConormFamily::Frank: {
            const double pa = std::pow(p, 1.0 - a);
            const double pb = std::pow(p, 1.0 - b);
            const double w = 1.0 + (pa - 1.0) * (pb - 1.0) / (p - 1.0);
            out.da = pa * (pb - 1.0) / ((p - 1.0) * w);
            out.db = pb * (pa - 1.0) / ((p - 1.0) * w);
            break;
        }
        case TConormFamily::Yager: {
            const double s = std::pow(std::pow(a, p) + std::pow(b, p), 1.0 / p);
            if (s >= 1.0) break;  // plateau
            out.da = finite_or_zero(std::pow(s, 1.0 - p) * std::pow(a, p - 1.0));
            out.db = finite_or_zero(std::pow(s, 1.0 - p) * std::pow(b, p - 1.0));
            break;
        }
        case TConormFamily::AczelAlsina: {
            const double la = -std::log1p(-a);
            const double lb = -std::log1p(-b);
            const double z = std::pow(std::pow(la, p) + std::pow(lb, p), 1.0 / p);
            const double common = std::exp(-z) * std::pow(z, 1.0 - p);
            out.da = finite_or_zero(common * std::pow(la, p - 1.0) / (1.0 - a));
            out.db = finite_or_zero(common * std::pow(lb, p - 1.0) / (1.0 - b));
            break;
        }
        case TConormFamily::Dombi: {
            const double ra = a / (1.0 - a);
            const double rb = b / (1.0 - b);
            const double z = std::pow(std::pow(ra, p) + std::pow(rb, p), 1.0 / p);
            const double outer = std::pow(z, 1.0 - p) / ((1.0 + z) * (1.0 + z));
            out.da = finite_or_zero(outer * std::pow(ra, p - 1.0) / ((1.0 - a) * (1.0 - a)));
            out.db = finite_or_zero(outer * std::pow(rb, p - 1.0) / ((1.0 - b) * (1.0 - b)));
            break;
        }
        case TConormFamily::SchweizerSklar: {
            const double w = std::pow(1.0 - a, p) + std::pow(1.0 - b, p) - 1.0;
            const double outer = std::pow(w, 1.0 / p - 1.0);
            out.da = outer * std::pow(1.0 - a, p - 1.0);
            out.db = outer * std::pow(1.0 - b, p - 1.0);
            break;
        }
        default:
            break;
    }
    // Neutral element: tconorm(0, b) = b identically in b, and vice versa.
    if (a == 0.0) out.db = 1.0;
    if (b == 0.0) out.da = 1.0;
    return out;
}

double tnorm_dual(const TConormSpec& spec, double a, double b) {
    return clamp01(1.0 - tconorm(spec, 1.0 - a, 1.0 - b));
}

double aggregate(const TConormSpec& spec, std::span<const double> values) {
    if (spec.family == TConormFamily::Average) {
        if (values.empty()) return 0.0;
        double sum = 0.0;
        for (double v : values) sum += v;
        return sum / static_cast<double>(values.size());
    }
    double acc = 0.0;
    for (double v : values) acc = tconorm(spec, acc, v);
    return acc;
}

std::string tconorm_grammar_help() {
    std::string names;
    for (const auto& ti : kTConormInfo) {
        if (!names.empty()) names += ", ";
        names += ti.name;
        if (ti.parametric) names += "(p=REAL)";
    }
    return "T-conorm grammar: " + names +
           "\n  p ranges: hamacher, yager, aczel-alsina, dombi: p > 0; frank: p > 0, p != 1;\n"
           "  schweizer-sklar: p < 0. `average` is the arithmetic mean (not a T-conorm).\n";
}

}  // namespace softsil
