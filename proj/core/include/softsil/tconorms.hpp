#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>

namespace softsil {

enum class TConormFamily {
    Max,
    Probabilistic,
    Einstein,
    Hamacher,
    Frank,
    Yager,
    AczelAlsina,
    Dombi,
    SchweizerSklar,
    Average,  // arithmetic mean; not a T-conorm, kept as a baseline
};

inline constexpr std::array<TConormFamily, 10> kAllTConormFamilies = {
    TConormFamily::Max,    TConormFamily::Probabilistic, TConormFamily::Einstein,
    TConormFamily::Hamacher, TConormFamily::Frank,       TConormFamily::Yager,
    TConormFamily::AczelAlsina, TConormFamily::Dombi,    TConormFamily::SchweizerSklar,
    TConormFamily::Average,
};

std::string_view tconorm_family_name(TConormFamily family);
bool is_parametric(TConormFamily family);

/// A soft `or`. Parametric families carry p; valid ranges are
/// (0, inf) for Hamacher, Yager, Aczel-Alsina and Dombi, (0, inf) \ {1} for Frank,
/// and (-inf, 0) for Schweizer-Sklar.
///
/// Textual form: `max`, `probabilistic`, `einstein`, `average`, `yager(p=2)`,
/// `schweizer-sklar(p=-2)`, `aczel-alsina(p=0.5)`.
struct TConormSpec {
    TConormFamily family = TConormFamily::Probabilistic;
    double p = 0.0;

    void validate() const;
    bool is_tconorm() const { return family != TConormFamily::Average; }

    std::string to_string() const;
    static TConormSpec parse(std::string_view text);

    friend bool operator==(const TConormSpec&, const TConormSpec&) = default;
};

/// Binary T-conorm, clamped to [0, 1]. For `average` this is (a + b) / 2.
double tconorm(const TConormSpec& spec, double a, double b);

/// Partial derivatives of tconorm with respect to both arguments.
struct TConormPartials {
    double value = 0.0;
    double da = 0.0;
    double db = 0.0;
};
TConormPartials tconorm_partials(const TConormSpec& spec, double a, double b);

/// Index of the smooth piece of tconorm containing (a, b): the argmax side
/// for `max`, inside/outside the saturation plateau for `yager`, 0 otherwise.
int tconorm_regime(const TConormSpec& spec, double a, double b);

/// De Morgan dual 1 - tconorm(1 - a, 1 - b).
double tnorm_dual(const TConormSpec& spec, double a, double b);

/// Occupancy of a pixel: left fold of tconorm over `values` in the given order,
/// 0 for an empty sequence. `average` returns the arithmetic mean instead.
double aggregate(const TConormSpec& spec, std::span<const double> values);

std::string tconorm_grammar_help();

}  // namespace softsil
