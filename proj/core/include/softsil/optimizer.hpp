#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace softsil {

/// Adam with bias correction. Defaults follow the experiment protocol
/// (beta1 = 0.5, beta2 = 0.95).
struct AdamState {
    std::vector<double> params;
    std::vector<double> m;
    std::vector<double> v;
    long step = 0;
    double lr = 0.01;
    double beta1 = 0.5;
    double beta2 = 0.95;
    double eps = 1e-8;

    static AdamState create(std::vector<double> params, double lr);
    void validate() const;
};

/// One update in place. Throws NumericError naming the first non-finite
/// gradient entry; the state is unchanged in that case.
void adam_step(AdamState& state, std::span<const double> grads);

struct Schedule {
    enum class Kind { Constant, LogInterpolate };
    Kind kind = Kind::Constant;
    double start = 1.0;
    double end = 1.0;
    long total_steps = 1;

    void validate() const;
};

/// exp(lerp(ln start, ln end, step / total_steps)) for LogInterpolate,
/// `start` for Constant. Throws ConfigError when step is outside [0, total_steps].
double schedule_value(const Schedule& schedule, long step);

}  // namespace softsil
