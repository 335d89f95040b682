#include "softsil/optimizer.hpp"

#include <cmath>
#include <string>

#include "softsil/errors.hpp"

namespace softsil {

AdamState AdamState::create(std::vector<double> params, double lr) {
    AdamState state;
    state.m.assign(params.size(), 0.0);
    state.v.assign(params.size(), 0.0);
    state.params = std::move(params);
    state.lr = lr;
    state.validate();
    return state;
}

void AdamState::validate() const {
    if (m.size() != params.size() || v.size() != params.size()) {
        throw ConfigError("Adam moment vectors must match the parameter count");
    }
    if (!(lr > 0.0) || !std::isfinite(lr)) throw ConfigError("learning rate must be positive");
    if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0)) {
        throw ConfigError("Adam betas must lie in [0, 1)");
    }
    if (!(eps > 0.0)) throw ConfigError("Adam eps must be positive");
}

void adam_step(AdamState& s, std::span<const double> grads) {
    if (grads.size() != s.params.size()) {
        throw ConfigError("gradient has " + std::to_string(grads.size()) + " entries, expected " +
                          std::to_string(s.params.size()));
    }
    for (std::size_t i = 0; i < grads.size(); ++i) {
        if (!std::isfinite(grads[i])) {
            throw NumericError("non-finite gradient at parameter " + std::to_string(i));
        }
    }
    ++s.step;
    const double c1 = 1.0 - std::pow(s.beta1, static_cast<double>(s.step));
    const double c2 = 1.0 - std::pow(s.beta2, static_cast<double>(s.step));
    for (std::size_t i = 0; i < grads.size(); ++i) {
        const double g = grads[i];
        s.m[i] = s.beta1 * s.m[i] + (1.0 - s.beta1) * g;
        s.v[i] = s.beta2 * s.v[i] + (1.0 - s.beta2) * g * g;
        const double m_hat = s.m[i] / c1;
        const double v_hat = s.v[i] / c2;
        s.params[i] -= s.lr * m_hat / (std::sqrt(v_hat) + s.eps);
    }
}

void Schedule::validate() const {
    if (!(start > 0.0) || !(end > 0.0) || !std::isfinite(start) || !std::isfinite(end)) {
        throw ConfigError("schedule endpoints must be positive and finite");
    }
    if (total_steps < 1) throw ConfigError("schedule needs at least one step");
}

double schedule_value(const Schedule& s, long step) {
    s.validate();
    if (step < 0 || step > s.total_steps) {
        throw ConfigError("schedule step " + std::to_string(step) + " outside [0, " +
                          std::to_string(s.total_steps) + "]");
    }
    if (s.kind == Schedule::Kind::Constant) return s.start;
    if (step == s.total_steps) return s.end;
    const double t = static_cast<double>(step) / static_cast<double>(s.total_steps);
    return std::exp(std::lerp(std::log(s.start), std::log(s.end), t));
}

}  // namespace softsil
