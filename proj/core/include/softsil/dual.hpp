#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace softsil {

/// Forward-mode dual number carrying N directional derivatives.
/// Used for the small, dense Jacobians of the projection stage.
template <std::size_t N>
struct Dual {
    double v = 0.0;
    std::array<double, N> d{};

    Dual() = default;
    Dual(double value) : v(value) {}  // NOLINT: implicit promotion of constants is intended
    Dual(double value, std::size_t seed) : v(value) { d[seed] = 1.0; }
};

template <std::size_t N> Dual<N> operator+(const Dual<N>& a, const Dual<N>& b) {
    Dual<N> r(a.v + b.v);
    for (std::size_t i = 0; i < N; ++i) r.d[i] = a.d[i] + b.d[i];
    return r;
}
template <std::size_t N> Dual<N> operator-(const Dual<N>& a, const Dual<N>& b) {
    Dual<N> r(a.v - b.v);
    for (std::size_t i = 0; i < N; ++i) r.d[i] = a.d[i] - b.d[i];
    return r;
}
template <std::size_t N> Dual<N> operator-(const Dual<N>& a) {
    Dual<N> r(-a.v);
    for (std::size_t i = 0; i < N; ++i) r.d[i] = -a.d[i];
    return r;
}
template <std::size_t N> Dual<N> operator*(const Dual<N>& a, const Dual<N>& b) {
    Dual<N> r(a.v * b.v);
    for (std::size_t i = 0; i < N; ++i) r.d[i] = a.d[i] * b.v + a.v * b.d[i];
    return r;
}
template <std::size_t N> Dual<N> operator/(const Dual<N>& a, const Dual<N>& b) {
    Dual<N> r(a.v / b.v);
    const double inv = 1.0 / (b.v * b.v);
    for (std::size_t i = 0; i < N; ++i) r.d[i] = (a.d[i] * b.v - a.v * b.d[i]) * inv;
    return r;
}
template <std::size_t N> Dual<N> sin(const Dual<N>& a) {
    Dual<N> r(std::sin(a.v));
    const double c = std::cos(a.v);
    for (std::size_t i = 0; i < N; ++i) r.d[i] = c * a.d[i];
    return r;
}
template <std::size_t N> Dual<N> cos(const Dual<N>& a) {
    Dual<N> r(std::cos(a.v));
    const double s = -std::sin(a.v);
    for (std::size_t i = 0; i < N; ++i) r.d[i] = s * a.d[i];
    return r;
}

inline double value_of(double x) { return x; }
template <std::size_t N> double value_of(const Dual<N>& x) { return x.v; }

}  // namespace softsil
