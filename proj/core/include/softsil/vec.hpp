#pragma once

#include <cmath>

namespace softsil {

template <typename T>
struct Vec2T {
    T x{}, y{};
};

template <typename T>
struct Vec3T {
    T x{}, y{}, z{};
};

using Vec2 = Vec2T<double>;
using Vec3 = Vec3T<double>;

template <typename T> constexpr Vec2T<T> operator+(const Vec2T<T>& a, const Vec2T<T>& b) { return {a.x + b.x, a.y + b.y}; }
template <typename T> constexpr Vec2T<T> operator-(const Vec2T<T>& a, const Vec2T<T>& b) { return {a.x - b.x, a.y - b.y}; }
template <typename T> constexpr Vec2T<T> operator*(const Vec2T<T>& a, T s) { return {a.x * s, a.y * s}; }
template <typename T> constexpr Vec2T<T> operator*(T s, const Vec2T<T>& a) { return {a.x * s, a.y * s}; }
template <typename T> constexpr Vec2T<T>& operator+=(Vec2T<T>& a, const Vec2T<T>& b) { a.x += b.x; a.y += b.y; return a; }
template <typename T> constexpr T dot(const Vec2T<T>& a, const Vec2T<T>& b) { return a.x * b.x + a.y * b.y; }
/// z-component of the 3D cross product; twice the signed area of (0, a, b).
template <typename T> constexpr T cross(const Vec2T<T>& a, const Vec2T<T>& b) { return a.x * b.y - a.y * b.x; }

template <typename T> constexpr Vec3T<T> operator+(const Vec3T<T>& a, const Vec3T<T>& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
template <typename T> constexpr Vec3T<T> operator-(const Vec3T<T>& a, const Vec3T<T>& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
template <typename T> constexpr Vec3T<T> operator-(const Vec3T<T>& a) { return {-a.x, -a.y, -a.z}; }
template <typename T> constexpr Vec3T<T> operator*(const Vec3T<T>& a, T s) { return {a.x * s, a.y * s, a.z * s}; }
template <typename T> constexpr Vec3T<T> operator*(T s, const Vec3T<T>& a) { return {a.x * s, a.y * s, a.z * s}; }
template <typename T> constexpr Vec3T<T>& operator+=(Vec3T<T>& a, const Vec3T<T>& b) { a.x += b.x; a.y += b.y; a.z += b.z; return a; }
template <typename T> constexpr T dot(const Vec3T<T>& a, const Vec3T<T>& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
template <typename T> constexpr Vec3T<T> cross(const Vec3T<T>& a, const Vec3T<T>& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec2& a) { return std::sqrt(dot(a, a)); }
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 normalized(const Vec3& a) { return a * (1.0 / norm(a)); }

}  // namespace softsil
