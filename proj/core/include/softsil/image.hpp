#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

namespace softsil {

/// Row-major single-channel image with values in [0, 1].
struct Image {
    int width = 0;
    int height = 0;
    std::vector<double> values;

    Image() = default;
    Image(int w, int h, double fill = 0.0) : width(w), height(h), values(static_cast<std::size_t>(w) * h, fill) {}

    double& at(int x, int y) { return values[static_cast<std::size_t>(y) * width + x]; }
    double at(int x, int y) const { return values[static_cast<std::size_t>(y) * width + x]; }

    friend bool operator==(const Image&, const Image&) = default;
};

/// round(v * 255) after clamping to [0, 1].
std::vector<std::uint8_t> quantize(const Image& image);

/// Binary PGM (P5, maxval 255).
void write_pgm(const std::filesystem::path& path, const Image& image);

/// 8-bit grayscale PNG.
void write_png(const std::filesystem::path& path, const Image& image);

}  // namespace softsil
